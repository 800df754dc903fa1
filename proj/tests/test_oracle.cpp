#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "euclidvote/generate.hpp"
#include "euclidvote/oracle.hpp"
#include "euclidvote/solver.hpp"
#include "support/rng.hpp"

using namespace euclidvote;
using euclidvote::testing::Rng;

namespace {

Point pt1(long long x) { return {Scalar(x)}; }
Point pt2(long long x, long long y) { return {Scalar(x), Scalar(y)}; }
Point pt3(long long x, long long y, long long z) {
    return {Scalar(x), Scalar(y), Scalar(z)};
}

long long margin_of_reply(const VoterSet& S, const Point& a, const Point& b) {
    Scores sc = evaluate(S, a, b);
    return static_cast<long long>(sc.v_b) - static_cast<long long>(sc.v_a);
}

// Bob's point realizing the bisector {<x,c> = t}; needs t > <a,c>.
Point reflect_reply(const Point& a, const Vec& c, const Scalar& t) {
    Scalar gap = t - dot(a, c);
    return add(a, mul(c, Scalar(2) * gap / dot(c, c)));
}

VoterSet random_distinct_set(Rng& rng, int d, std::size_t n, long long box) {
    while (true) {
        std::vector<Point> pts;
        std::set<std::vector<long long>> seen;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<long long> raw(d);
            for (auto& c : raw) c = rng.range(-box, box);
            if (!seen.insert(raw).second) { pts.clear(); break; }
            Point p(d);
            for (int k = 0; k < d; ++k) p[k] = Scalar(raw[k]);
            pts.push_back(std::move(p));
        }
        if (pts.size() == n) return VoterSet(d, std::move(pts));
    }
}

Point random_point(Rng& rng, int d, long long box) {
    Point p(d);
    for (int k = 0; k < d; ++k)
        p[k] = Scalar(rng.range(-box, box), 1 + rng.below(5));
    return p;
}

}  // namespace

// ---- score evaluation -------------------------------------------------------

TEST_CASE("scores count strictly closer voters and abstaining midpoints") {
    VoterSet two(2, {pt2(0, 0), pt2(10, 0)});
    Scores sc = evaluate(two, pt2(1, 0), pt2(9, 0));
    CHECK(sc.v_a == 1);
    CHECK(sc.v_b == 1);
    CHECK(sc.abstentions == 0);

    VoterSet three(2, {pt2(0, 0), pt2(4, 0), pt2(2, 0)});
    sc = evaluate(three, pt2(1, 0), pt2(3, 0));
    CHECK(sc.v_a == 1);
    CHECK(sc.v_b == 1);
    CHECK(sc.abstentions == 1);  // the middle voter sits on the bisector

    sc = evaluate(three, pt2(1, 0), pt2(1, 0));  // equal placements
    CHECK(sc.v_a == 0);
    CHECK(sc.v_b == 0);
    CHECK(sc.abstentions == 3);

    CHECK_THROWS_AS(evaluate(three, pt1(0), pt2(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(three, pt2(0, 0), pt1(0)), std::invalid_argument);
}

TEST_CASE("swapping the placements swaps the scores") {
    Rng rng(555);
    for (int iter = 0; iter < 60; ++iter) {
        int d = 1 + static_cast<int>(rng.below(3));
        VoterSet S = random_distinct_set(rng, d, 3 + rng.below(6), 7);
        Point a = random_point(rng, d, 8), b = random_point(rng, d, 8);
        Scores ab = evaluate(S, a, b), ba = evaluate(S, b, a);
        CHECK(ab.v_a == ba.v_b);
        CHECK(ab.v_b == ba.v_a);
        CHECK(ab.abstentions == ba.abstentions);
        CHECK(ab.v_a + ab.v_b + ab.abstentions == S.size());
    }
}

TEST_CASE("scores survive translations, axis swaps, and sign flips") {
    Rng rng(556);
    for (int iter = 0; iter < 40; ++iter) {
        VoterSet S = random_distinct_set(rng, 2, 3 + rng.below(5), 6);
        Point a = random_point(rng, 2, 7), b = random_point(rng, 2, 7);
        Scores base = evaluate(S, a, b);

        Vec shift = {Scalar(7, 3), Scalar(-4)};
        auto iso = [&](const Point& p) -> Point {
            // swap axes, negate the second, then translate
            return {p[1] + shift[0], -p[0] + shift[1]};
        };
        std::vector<Point> moved;
        for (const Point& p : S) moved.push_back(iso(p));
        Scores mapped = evaluate(VoterSet(2, std::move(moved)), iso(a), iso(b));
        CHECK(mapped.v_a == base.v_a);
        CHECK(mapped.v_b == base.v_b);
        CHECK(mapped.abstentions == base.abstentions);
    }
}

// ---- best response ----------------------------------------------------------

TEST_CASE("a lone voter under the placement always votes for it") {
    // the voter at a is strictly closer to a than to any b, so Bob's best
    // margin is -1, and no reply reaches 0
    VoterSet S(2, {pt2(3, 1)});
    BestResponse r = best_response(S, pt2(3, 1));
    CHECK(r.margin == -1);
    CHECK(r.scores.v_a == 1);
    CHECK(r.scores.v_b == 0);
    CHECK(r.scores.abstentions == 0);
    Rng rng(12);
    for (int iter = 0; iter < 50; ++iter)
        CHECK(margin_of_reply(S, pt2(3, 1), random_point(rng, 2, 9)) == -1);
}

TEST_CASE("projection onto a triangle face claims two of three voters") {
    VoterSet S(2, {pt2(0, 0), pt2(1, 0), pt2(0, 1)});
    Point a = {Scalar(1, 3), Scalar(1, 3)};
    BestResponse r = best_response(S, a);
    CHECK(r.margin == 1);
    CHECK(r.scores.v_b == 2);
    CHECK(r.scores.v_a == 1);
}

TEST_CASE("no reply beats the hub of the odd generator figure") {
    VoterSet S = generate_voters({.name = "fig1"});
    CHECK(best_response(S, pt2(0, 0)).margin <= 0);
    CHECK(guaranteed_votes(S, pt2(0, 0)) == 10);  // best open half plane takes 9
}

TEST_CASE("best response rejects four dimensional input") {
    VoterSet S(4, {{Scalar(0), Scalar(0), Scalar(0), Scalar(0)},
                   {Scalar(1), Scalar(0), Scalar(0), Scalar(0)}});
    CHECK_THROWS_AS(best_response(S, S[0]), std::invalid_argument);
    CHECK_THROWS_AS(guaranteed_votes(S, S[0]), std::invalid_argument);
    CHECK_THROWS_AS(find_rado_point(S), std::invalid_argument);
}

TEST_CASE("the returned scores and separator describe the realized reply") {
    Rng rng(777);
    for (int iter = 0; iter < 60; ++iter) {
        int d = 1 + static_cast<int>(rng.below(3));
        VoterSet S = random_distinct_set(rng, d, 2 + rng.below(7), 6);
        Point a = rng.coin() ? S[0] : random_point(rng, d, 7);
        BestResponse r = best_response(S, a);

        Scores replay = evaluate(S, a, r.b);
        CHECK(replay.v_a == r.scores.v_a);
        CHECK(replay.v_b == r.scores.v_b);
        CHECK(replay.abstentions == r.scores.abstentions);
        CHECK(r.margin == static_cast<long long>(r.scores.v_b) -
                              static_cast<long long>(r.scores.v_a));

        // the separator is the bisector: sides match votes exactly, up to the
        // canonical orientation of the stored normal
        int sa = side_of_hyperplane(a, r.separating);
        CHECK(sa != 0);
        CHECK(side_of_hyperplane(r.b, r.separating) == -sa);
        for (const Point& x : S) {
            int side = side_of_hyperplane(x, r.separating);
            Scalar da = squared_distance(x, a), db = squared_distance(x, r.b);
            if (side == sa) CHECK(da < db);
            if (side == -sa) CHECK(db < da);
            if (side == 0) CHECK(da == db);
        }

        CHECK(r.margin == best_response_margin(S, a));
        CHECK(r.margin ==
              static_cast<long long>(S.size()) -
                  2 * static_cast<long long>(guaranteed_votes(S, a)));
    }
}

TEST_CASE("no random reply ever beats the best response") {
    Rng rng(20250820);
    int total_probes = 0;
    for (int iter = 0; iter < 100; ++iter) {
        int d = 1 + static_cast<int>(rng.below(3));
        VoterSet S = random_distinct_set(rng, d, 2 + rng.below(7), 5);
        Point a = rng.coin() ? S[rng.below(S.size())] : random_point(rng, d, 6);
        long long best = best_response_margin(S, a);
        for (int probe = 0; probe < 1000; ++probe) {
            Point b = random_point(rng, d, 6);
            if (probe % 3 == 0) {
                // replies closing in on a stress the limit placements
                b = a;
                b[rng.below(d)] += Scalar(rng.coin() ? 1 : -1, 97 + rng.below(900));
            }
            if (b == a) continue;
            ++total_probes;
            CHECK(margin_of_reply(S, a, b) <= best);
        }
    }
    CHECK(total_probes >= 95000);  // the rare probe collides with a and is skipped
}

TEST_CASE("per direction threshold sweeps never beat the best response") {
    Rng rng(424242);
    for (int iter = 0; iter < 40; ++iter) {
        int d = 1 + static_cast<int>(rng.below(2));
        VoterSet S = random_distinct_set(rng, d, 2 + rng.below(6), 5);
        Point a = rng.coin() ? S[0] : random_point(rng, d, 6);
        long long best = best_response_margin(S, a);

        std::vector<Vec> dirs;
        if (d == 1) {
            dirs = {{Scalar(1)}, {Scalar(-1)}};
        } else {
            for (const Point& x : S) {
                Vec w = sub(x, a);
                if (!is_zero_vec(w)) {
                    dirs.push_back({-w[1], w[0]});
                    dirs.push_back({w[1], -w[0]});
                    dirs.push_back(w);
                }
            }
            for (int extra = 0; extra < 40; ++extra) {
                Vec c = {Scalar(rng.range(-30, 30)), Scalar(rng.range(-30, 30))};
                if (!is_zero_vec(c)) dirs.push_back(std::move(c));
            }
        }
        for (const Vec& c : dirs) {
            // thresholds at every projection, between neighbours, and beyond
            std::vector<Scalar> vals = {dot(a, c)};
            for (const Point& x : S) vals.push_back(dot(x, c));
            std::sort(vals.begin(), vals.end());
            vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
            std::vector<Scalar> ts = vals;
            for (std::size_t k = 0; k + 1 < vals.size(); ++k)
                ts.push_back((vals[k] + vals[k + 1]) / Scalar(2));
            ts.push_back(vals.back() + Scalar(1));
            Scalar pa = dot(a, c);
            for (const Scalar& t : ts) {
                if (!(pa < t)) continue;
                CHECK(margin_of_reply(S, a, reflect_reply(a, c, t)) <= best);
            }
        }
    }
}

// ---- guaranteed votes -------------------------------------------------------

TEST_CASE("halfspace depth examples") {
    VoterSet tri(2, {pt2(0, 0), pt2(6, 0), pt2(0, 6)});
    CHECK(guaranteed_votes(tri, pt2(100, 100)) == 0);  // separating direction
    CHECK(guaranteed_votes(tri, pt2(2, 2)) == 1);      // the centroid
    CHECK(guaranteed_votes(tri, pt2(0, 0)) == 1);

    VoterSet simplex3(3, {pt3(0, 0, 0), pt3(1, 0, 0), pt3(0, 1, 0), pt3(0, 0, 1)});
    Point centroid = {Scalar(1, 4), Scalar(1, 4), Scalar(1, 4)};
    CHECK(guaranteed_votes(simplex3, centroid) == 1);

    VoterSet line(1, {pt1(0), pt1(1), pt1(2)});
    CHECK(guaranteed_votes(line, pt1(1)) == 2);
    CHECK(guaranteed_votes(line, pt1(0)) == 1);
    CHECK(guaranteed_votes(line, pt1(5)) == 0);
}

TEST_CASE("both planar depth algorithms agree") {
    Rng rng(818);
    for (int iter = 0; iter < 120; ++iter) {
        VoterSet S = random_distinct_set(rng, 2, 2 + rng.below(9), 6);
        Point p = rng.coin() ? S[rng.below(S.size())] : random_point(rng, 2, 7);
        CHECK(detail::planar_depth(S, p) == guaranteed_votes(S, p));
    }
}

TEST_CASE("depth never exceeds any probed closed halfspace count") {
    Rng rng(819);
    for (int iter = 0; iter < 30; ++iter) {
        VoterSet S = random_distinct_set(rng, 3, 4 + rng.below(5), 5);
        Point p = rng.coin() ? S[0] : random_point(rng, 3, 6);
        std::size_t dep = guaranteed_votes(S, p);
        for (int probe = 0; probe < 300; ++probe) {
            Vec c = {Scalar(rng.range(-20, 20)), Scalar(rng.range(-20, 20)),
                     Scalar(rng.range(-20, 20))};
            if (is_zero_vec(c)) continue;
            std::size_t cnt = 0;
            for (const Point& x : S)
                if (dot(sub(x, p), c).sign() <= 0) ++cnt;
            CHECK(dep <= cnt);
        }
    }
}

// ---- deepest candidate search -----------------------------------------------

TEST_CASE("deepest point search on a line picks the median") {
    VoterSet S(1, {pt1(0), pt1(2), pt1(1)});
    auto [p, c] = find_rado_point(S);
    CHECK(p == pt1(1));
    CHECK(c == 2);
}

TEST_CASE("deepest point search meets the one in d plus one bound") {
    VoterSet tri(2, {pt2(0, 0), pt2(6, 0), pt2(0, 6)});
    auto [tp, tc] = find_rado_point(tri);
    CHECK(tc == 1);  // exactly one in three is achievable here

    VoterSet fig1 = generate_voters({.name = "fig1"});
    auto [fp, fc] = find_rado_point(fig1);
    CHECK(fc >= 7);  // ceil(19 / 3)
    CHECK(fc == 10);
    CHECK(fp == pt2(0, 0));

    // octahedron with center: the three axis lines cross at the center
    VoterSet octa(3, {pt3(1, 0, 0), pt3(-1, 0, 0), pt3(0, 1, 0), pt3(0, -1, 0),
                      pt3(0, 0, 1), pt3(0, 0, -1), pt3(0, 0, 0)});
    auto [op, oc] = find_rado_point(octa);
    CHECK(op == pt3(0, 0, 0));
    CHECK(oc == 4);

    VoterSet simplex3(3, {pt3(0, 0, 0), pt3(1, 0, 0), pt3(0, 1, 0), pt3(0, 0, 1)});
    auto [sp, sc] = find_rado_point(simplex3);
    CHECK(sc >= 1);

    Rng rng(929);
    for (int iter = 0; iter < 25; ++iter) {
        int d = 1 + static_cast<int>(rng.below(2));
        VoterSet S = random_distinct_set(rng, d, 3 + rng.below(10), 8);
        auto [p, c] = find_rado_point(S);  // bound asserted inside
        CHECK(c >= (S.size() + d) / (d + 1));
        CHECK(c == guaranteed_votes(S, p));
    }
}

TEST_CASE("candidate set can fall short off the plane and says so") {
    // eight hull vertices of a cyclic polytope: every voter has depth one,
    // no two voter lines cross, so no candidate reaches ceil(8/4) = 2 and
    // the search reports the shortfall instead of guessing
    std::vector<Point> pts;
    for (long long t = 1; t <= 8; ++t) pts.push_back(pt3(t, t * t, t * t * t));
    VoterSet S(3, std::move(pts));
    CHECK_THROWS_AS(find_rado_point(S), std::logic_error);
}

// ---- agreement with the solver ----------------------------------------------

namespace {

void check_solver_oracle_agreement(const VoterSet& S) {
    Verdict v = solve(S);
    if (v.outcome == Outcome::alice_wins) {
        if (v.winning_point) {
            INFO("winning point should be unbeatable");
            CHECK(best_response_margin(S, *v.winning_point) <= 0);
        } else {
            REQUIRE(v.winning_segment);
            CHECK(best_response_margin(S, v.winning_segment->first) <= 0);
            CHECK(best_response_margin(S, v.winning_segment->second) <= 0);
            Point mid = mul(add(v.winning_segment->first, v.winning_segment->second),
                            Scalar(1, 2));
            CHECK(best_response_margin(S, mid) <= 0);
        }
    } else {
        // Bob beats every candidate placement
        if (S.size() % 2 == 1) {
            for (const Point& x : S) CHECK(best_response_margin(S, x) > 0);
        } else {
            for (const Point& x : enumerate_candidates_even(S))
                CHECK(best_response_margin(S, x) > 0);
        }
    }
}

}  // namespace

TEST_CASE("solver verdicts agree with best response margins") {
    Rng rng(20250821);
    for (int iter = 0; iter < 70; ++iter) {
        std::size_t n = 2 + rng.below(9);
        check_solver_oracle_agreement(random_distinct_set(rng, 2, n, 5));
    }
    for (int iter = 0; iter < 25; ++iter) {
        std::size_t n = 2 + rng.below(7);
        check_solver_oracle_agreement(random_distinct_set(rng, 3, n, 4));
    }
    // force collinear triples through a tiny coordinate range
    for (int iter = 0; iter < 25; ++iter) {
        std::size_t n = 3 + rng.below(6);
        check_solver_oracle_agreement(random_distinct_set(rng, 2, n, 2));
    }

    for (const char* name : {"fig1", "fig1-even", "fig2", "quadrilateral"}) {
        check_solver_oracle_agreement(generate_voters({.name = name}));
    }
}
