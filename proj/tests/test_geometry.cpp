#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "euclidvote/generate.hpp"
#include "euclidvote/geometry.hpp"
#include "support/rng.hpp"

using namespace euclidvote;
using euclidvote::testing::Rng;

namespace {

Scalar rs(Rng& rng, long long lo = -10, long long hi = 10, long long maxden = 20) {
    return Scalar(rng.range(lo, hi), rng.range(1, maxden));
}

Vec rvec(Rng& rng, int d) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = rs(rng);
    return v;
}

Point pt2(long long x, long long y) { return {Scalar(x), Scalar(y)}; }

}  // namespace

TEST_CASE("voter sets validate dimensions and reject duplicates with indices") {
    CHECK_THROWS_AS(VoterSet(0, {{}}), std::invalid_argument);
    CHECK_THROWS_AS(VoterSet(2, {}), std::invalid_argument);
    CHECK_THROWS_AS(VoterSet(2, {{Scalar(1)}}), std::invalid_argument);
    try {
        VoterSet(2, {pt2(0, 0), pt2(1, 1), pt2(2, 2), pt2(1, 1)});
        FAIL("expected DuplicatePointError");
    } catch (const DuplicatePointError& e) {
        CHECK(e.first == 1);
        CHECK(e.second == 3);
    }
    VoterSet s(2, {pt2(0, 0), pt2(1, 1)});
    CHECK(s.size() == 2);
    CHECK(s.contains(pt2(1, 1)));
    CHECK_FALSE(s.contains(pt2(1, 2)));
}

TEST_CASE("canonical directions are coprime integers with positive lead") {
    CHECK(canonical_direction({Scalar(2), Scalar(4)}) == Vec{Scalar(1), Scalar(2)});
    CHECK(canonical_direction({Scalar(-1), Scalar(-2)}) == Vec{Scalar(1), Scalar(2)});
    CHECK(canonical_direction({Scalar(0), Scalar(-3)}) == Vec{Scalar(0), Scalar(1)});
    CHECK(canonical_direction({Scalar(1, 2), Scalar(1, 3)}) == Vec{Scalar(3), Scalar(2)});
    CHECK_THROWS_AS(canonical_direction({Scalar(0), Scalar(0)}), std::invalid_argument);

    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        Vec v = rvec(rng, 3);
        if (is_zero_vec(v)) continue;
        Vec c = canonical_direction(v);
        // invariant under positive rational scaling
        CHECK(canonical_direction(mul(v, Scalar(rng.range(1, 9), rng.range(1, 9)))) == c);
        // negation gives the same canonical ray representative for the line
        Vec neg(v.size());
        for (std::size_t k = 0; k < v.size(); ++k) neg[k] = -v[k];
        CHECK(canonical_direction(neg) == c);
    }
}

TEST_CASE("line_through and half-line sides") {
    Line l = line_through(pt2(0, 0), pt2(2, 4));
    CHECK(l.dir == Vec{Scalar(1), Scalar(2)});
    CHECK(halfline_side(l, pt2(2, 4)) == 1);
    CHECK(halfline_side(l, pt2(-1, -2)) == -1);
    CHECK(halfline_side(l, pt2(0, 0)) == 0);
    CHECK_THROWS_AS(line_through(pt2(1, 1), pt2(1, 1)), std::domain_error);

    Line l2 = line_through(pt2(0, 0), pt2(-1, -2));
    CHECK(l2.dir == l.dir);  // same canonical direction
    CHECK(halfline_side(l2, pt2(-1, -2)) == -1);
}

TEST_CASE("perpendicular bisector matches the squared-distance oracle") {
    Point a = pt2(0, 0), b = pt2(2, 0);
    Hyperplane h = perpendicular_bisector(a, b);
    CHECK(side_of_hyperplane(pt2(1, 7), h) == 0);
    CHECK(side_of_hyperplane(a, h) * side_of_hyperplane(b, h) == -1);
    CHECK(project_onto_hyperplane({Scalar(5), Scalar(7)}, h) == pt2(1, 7));

    Rng rng(501);
    for (int d : {1, 2, 3}) {
        for (int i = 0; i < 300; ++i) {
            Vec pa = rvec(rng, d), pb = rvec(rng, d);
            if (pa == pb) continue;
            Hyperplane bis = perpendicular_bisector(pa, pb);
            CHECK(bis == perpendicular_bisector(pb, pa));
            int b_side = side_of_hyperplane(pb, bis);
            REQUIRE(b_side != 0);
            Vec p = rvec(rng, d);
            // sign of (dist to a)^2 - (dist to b)^2 holds exactly: positive
            // means closer to b, which is p landing on b's side
            int closer = (squared_distance(p, pa) - squared_distance(p, pb)).sign();
            CHECK(side_of_hyperplane(p, bis) * b_side == closer);
        }
    }
}

TEST_CASE("hyperplane sides agree with floating evaluation away from zero") {
    Rng rng(733);
    for (int i = 0; i < 500; ++i) {
        int d = 1 + static_cast<int>(rng.below(3));
        Vec n = rvec(rng, d);
        if (is_zero_vec(n)) continue;
        Hyperplane h = make_hyperplane(n, rs(rng));
        Vec p = rvec(rng, d);
        double approx = -h.offset.to_double();
        for (int k = 0; k < d; ++k) approx += p[k].to_double() * h.normal[k].to_double();
        if (std::fabs(approx) > 1e-6)
            CHECK(side_of_hyperplane(p, h) == (approx > 0 ? 1 : -1));
    }
}

TEST_CASE("projection lands on the hyperplane along the normal") {
    Rng rng(9212);
    for (int i = 0; i < 300; ++i) {
        int d = 1 + static_cast<int>(rng.below(3));
        Vec n = rvec(rng, d);
        if (is_zero_vec(n)) continue;
        Hyperplane h = make_hyperplane(n, rs(rng));
        Vec p = rvec(rng, d);
        Point q = project_onto_hyperplane(p, h);
        CHECK(side_of_hyperplane(q, h) == 0);
        CHECK(parallel_vecs(sub(p, q), h.normal));
        CHECK(project_onto_hyperplane(q, h) == q);
    }
}

TEST_CASE("grouping about the common point of five concurrent families") {
    VoterSet fig1 = generate_voters({.name = "fig1"});
    REQUIRE(fig1.size() == 19);
    Point center = pt2(0, 0);
    auto groups = group_by_lines(center, fig1);
    REQUIRE(groups.size() == 5);
    std::vector<std::pair<std::size_t, std::size_t>> splits;
    std::size_t total = 0;
    for (const auto& g : groups) {
        splits.push_back({g.plus.size(), g.minus.size()});
        total += g.plus.size() + g.minus.size();
    }
    CHECK(total == 18);  // pivot itself excluded
    CHECK(splits == std::vector<std::pair<std::size_t, std::size_t>>{
                        {2, 2}, {2, 2}, {3, 3}, {1, 1}, {1, 1}});
    // slope 2/3 family leads (first occurrence), its +side is x > 0
    CHECK(groups[0].line.dir == Vec{Scalar(3), Scalar(2)});
    CHECK(groups[0].plus == std::vector<std::size_t>{2, 3});
    CHECK(groups[0].minus == std::vector<std::size_t>{0, 1});
}

TEST_CASE("grouping from an outside pivot") {
    VoterSet s(2, {pt2(0, 0), pt2(1, 0), pt2(2, 0), pt2(0, 1)});
    auto groups = group_by_lines(pt2(0, 2), s);
    // (0,0), (0,1) share the vertical line through the pivot; others are alone
    REQUIRE(groups.size() == 3);
    CHECK(groups[0].plus.size() + groups[0].minus.size() == 2);
    CHECK(groups[0].line.dir == Vec{Scalar(0), Scalar(1)});
}

TEST_CASE("circular order sweeps counterclockwise from +x") {
    std::vector<Vec> dirs = {
        {Scalar(0), Scalar(-1)}, {Scalar(1), Scalar(2)}, {Scalar(1), Scalar(0)},
        {Scalar(-1), Scalar(0)}, {Scalar(2), Scalar(1)}, {Scalar(0), Scalar(1)},
    };
    auto idx = circular_order(dirs);
    // (1,0), (2,1), (1,2), (0,1), (-1,0), (0,-1)
    CHECK(idx == std::vector<std::size_t>{2, 4, 1, 5, 3, 0});
    CHECK_THROWS_AS(circular_order({{Scalar(0), Scalar(0)}}), std::invalid_argument);
    CHECK_THROWS_AS(circular_order({{Scalar(1)}}), std::invalid_argument);
}

TEST_CASE("circular order agrees with atan2 ordering") {
    Rng rng(60001);
    for (int trial = 0; trial < 200; ++trial) {
        std::set<std::string> seen;
        std::vector<Vec> dirs;
        while (dirs.size() < 12) {
            long long x = rng.range(-50, 50), y = rng.range(-50, 50);
            if (x == 0 && y == 0) continue;
            // dedup equal and opposite rays so all angles are distinct
            Vec c = canonical_direction({Scalar(x), Scalar(y)});
            if (!seen.insert(c[0].to_string() + "," + c[1].to_string()).second) continue;
            dirs.push_back({Scalar(x), Scalar(y)});
        }
        auto idx = circular_order(dirs);
        auto angle = [](const Vec& v) {
            double a = std::atan2(v[1].to_double(), v[0].to_double());
            if (a < 0) a += 2 * std::acos(-1.0);
            return a;
        };
        for (std::size_t k = 1; k < idx.size(); ++k)
            CHECK(angle(dirs[idx[k - 1]]) < angle(dirs[idx[k]]));
    }
}

TEST_CASE("circular order is stable under input shuffling") {
    Rng rng(777);
    std::vector<Vec> dirs;
    for (int i = 0; i < 9; ++i) {
        long long x = rng.range(-9, 9), y = rng.range(-9, 9);
        if (x == 0 && y == 0) { --i; continue; }
        dirs.push_back({Scalar(x), Scalar(y)});
    }
    auto sorted_dirs = [&](const std::vector<Vec>& in) {
        std::vector<Vec> out;
        for (auto i : circular_order(in)) out.push_back(canonical_direction(in[i]));
        return out;
    };
    std::vector<Vec> shuffled = dirs;
    for (std::size_t i = shuffled.size(); i > 1; --i)
        std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
    auto a = sorted_dirs(dirs);
    auto b = sorted_dirs(shuffled);
    // compare as canonical-ray sequences after collapsing duplicates
    a.erase(std::unique(a.begin(), a.end()), a.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    CHECK(a == b);
}

TEST_CASE("affine rank probe classifies point, line, plane, full") {
    VoterSet one(3, {{Scalar(1), Scalar(2), Scalar(3)}});
    CHECK(affine_rank_probe(one).kind == AffineClass::single);

    // collinear inside d=3
    VoterSet lin(3, {{Scalar(0), Scalar(0), Scalar(0)},
                     {Scalar(2), Scalar(4), Scalar(6)},
                     {Scalar(-1), Scalar(-2), Scalar(-3)}});
    auto lc = affine_rank_probe(lin);
    REQUIRE(lc.kind == AffineClass::collinear);
    CHECK(lc.line->dir == Vec{Scalar(1), Scalar(2), Scalar(3)});

    VoterSet pl(3, {{Scalar(0), Scalar(0), Scalar(1)},
                    {Scalar(1), Scalar(0), Scalar(1)},
                    {Scalar(0), Scalar(1), Scalar(1)},
                    {Scalar(3), Scalar(-2), Scalar(1)}});
    auto pc = affine_rank_probe(pl);
    REQUIRE(pc.kind == AffineClass::coplanar);
    CHECK(in_span2(pc.plane->u, pc.plane->v, sub(pl[3], pc.plane->origin)));

    VoterSet fu = generate_voters({.name = "simplex", .d = 3});
    CHECK(affine_rank_probe(fu).kind == AffineClass::full);

    VoterSet tri = generate_voters({.name = "simplex", .d = 2});
    CHECK(affine_rank_probe(tri).kind == AffineClass::coplanar);

    VoterSet d1(1, {{Scalar(3)}, {Scalar(7)}});
    auto dc = affine_rank_probe(d1);
    REQUIRE(dc.kind == AffineClass::collinear);
    CHECK(dc.line->dir == Vec{Scalar(1)});
}

TEST_CASE("canonical line keys identify lines regardless of presentation") {
    LineKey a = line_key_through(pt2(0, 0), pt2(2, 4));
    LineKey b = line_key_through(pt2(4, 8), pt2(-1, -2));
    CHECK(a == b);
    CHECK(LineKeyHash{}(a) == LineKeyHash{}(b));
    LineKey c = line_key_through(pt2(0, 1), pt2(2, 5));  // parallel, shifted
    CHECK_FALSE(a == c);
}

TEST_CASE("line intersections: crossing, parallel, skew") {
    auto diag = line_intersection(pt2(0, 0), {Scalar(5), Scalar(3)},
                                  pt2(4, 0), {Scalar(-3), Scalar(2)});
    REQUIRE(diag.has_value());
    CHECK(*diag == Point{Scalar(40, 19), Scalar(24, 19)});

    CHECK_FALSE(line_intersection(pt2(0, 0), {Scalar(1), Scalar(2)},
                                  pt2(0, 1), {Scalar(2), Scalar(4)})
                    .has_value());

    // skew in d=3
    Point p0 = {Scalar(0), Scalar(0), Scalar(0)};
    Vec u = {Scalar(1), Scalar(0), Scalar(0)};
    Point q0 = {Scalar(0), Scalar(0), Scalar(1)};
    Vec v = {Scalar(0), Scalar(1), Scalar(0)};
    CHECK_FALSE(line_intersection(p0, u, q0, v).has_value());

    // concurrent in d=3
    Point q1 = {Scalar(1), Scalar(1), Scalar(1)};
    auto meet = line_intersection(p0, {Scalar(1), Scalar(1), Scalar(1)}, q1,
                                  {Scalar(0), Scalar(0), Scalar(1)});
    REQUIRE(meet.has_value());
    CHECK(*meet == q1);
}

TEST_CASE("predicates are invariant under positive scaling and translation") {
    Rng rng(314159);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Point> pts;
        while (pts.size() < 7) {
            Point p = pt2(rng.range(-30, 30), rng.range(-30, 30));
            bool dup = false;
            for (auto& q : pts) dup |= q == p;
            if (!dup) pts.push_back(p);
        }
        Scalar sx(rng.range(1, 12), rng.range(1, 12));
        Vec t = {rs(rng, -20, 20), rs(rng, -20, 20)};
        auto tf = [&](const Point& p) { return add(mul(p, sx), t); };

        std::vector<Point> mapped;
        for (auto& p : pts) mapped.push_back(tf(p));

        for (int i = 0; i < 5; ++i) {
            std::size_t a = rng.below(7), b = rng.below(7), c = rng.below(7);
            if (a == b || b == c || a == c) continue;
            CHECK(orientation2(pts[a], pts[b], pts[c]) ==
                  orientation2(mapped[a], mapped[b], mapped[c]));
        }

        VoterSet s1(2, pts), s2(2, mapped);
        auto g1 = group_by_lines(pts[0], s1);
        auto g2 = group_by_lines(mapped[0], s2);
        REQUIRE(g1.size() == g2.size());
        for (std::size_t k = 0; k < g1.size(); ++k) {
            CHECK(g1[k].plus == g2[k].plus);
            CHECK(g1[k].minus == g2[k].minus);
            CHECK(g1[k].line.dir == g2[k].line.dir);
        }
    }
}

TEST_CASE("planar intersection integer fast path matches the rational path") {
    // Scaling by 1/7 turns every coordinate rational, which forces the
    // generic branch; the intersection must scale along.
    Rng rng(0xfa57u);
    Scalar seventh(1, 7);
    int met = 0;
    for (int iter = 0; iter < 400; ++iter) {
        long long lo = iter % 2 ? -40 : -(1LL << 29);
        long long hi = -lo;
        Point p = {Scalar(rng.range(lo, hi)), Scalar(rng.range(lo, hi))};
        Point q = {Scalar(rng.range(lo, hi)), Scalar(rng.range(lo, hi))};
        Vec u = {Scalar(rng.range(lo, hi)), Scalar(rng.range(lo, hi))};
        Vec v = {Scalar(rng.range(lo, hi)), Scalar(rng.range(lo, hi))};
        if (is_zero_vec(u) || is_zero_vec(v)) continue;

        auto fast = line_intersection(p, u, q, v);
        auto slow = line_intersection(mul(p, seventh), mul(u, seventh),
                                      mul(q, seventh), mul(v, seventh));
        REQUIRE(fast.has_value() == slow.has_value());
        if (fast) {
            CHECK(mul(*fast, seventh) == *slow);
            ++met;
        }
    }
    CHECK(met > 300);
}
