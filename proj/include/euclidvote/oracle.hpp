#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "euclidvote/geometry.hpp"
#include "euclidvote/solver.hpp"

namespace euclidvote {

// ---- score evaluation ------------------------------------------------------

// Voters vote for the strictly closer of the two placements; equidistant
// voters abstain.
struct Scores {
    std::size_t v_a = 0, v_b = 0, abstentions = 0;
};

inline Scores evaluate(const VoterSet& S, const Point& a, const Point& b) {
    std::size_t d = static_cast<std::size_t>(S.dim());
    if (a.size() != d || b.size() != d)
        throw std::invalid_argument("evaluate: placement dimension mismatch");
    Scores sc;
    for (const Point& x : S) {
        Scalar da = squared_distance(x, a);
        Scalar db = squared_distance(x, b);
        if (da < db)
            ++sc.v_a;
        else if (db < da)
            ++sc.v_b;
        else
            ++sc.abstentions;
    }
    return sc;
}

// ---- halfspace depth and Bob's best answer ---------------------------------

namespace detail {

// Direction c nudged infinitesimally toward c2; an empty c2 means plain c.
// Signs against it are evaluated lexicographically, which samples the side
// pattern just inside the cell the nudge points into.
struct SymDir {
    Vec c;
    Vec c2;
};

inline int sym_sign(const Vec& w, const SymDir& s) {
    int sgn = dot(w, s.c).sign();
    if (sgn != 0 || s.c2.empty()) return sgn;
    return dot(w, s.c2).sign();
}

// Shortest integer vector pointing the same way as v.
inline Vec ray_direction(const Vec& v) {
    Scalar f;
    Vec r = canonical_direction_with_factor(v, &f);
    if (f.sign() < 0)
        for (Scalar& c : r) c = -c;
    return r;
}

inline Vec rot90ccw(const Vec& v) { return {-v[1], v[0]}; }

// One candidate direction per sign pattern the voter offsets can realize.
// The pattern of signs of <x - a, c> is constant on the cells cut out of the
// direction space by the perpendicular conditions <x - a, c> = 0; listing a
// representative of every cell makes a plain scan over the candidates an
// exact optimizer for any function of the pattern.
inline std::vector<SymDir> candidate_directions(const VoterSet& S, const Point& a) {
    int d = S.dim();
    std::vector<Vec> diffs;
    for (const Point& x : S) {
        Vec w = sub(x, a);
        if (!is_zero_vec(w)) diffs.push_back(std::move(w));
    }
    std::vector<SymDir> out;
    if (diffs.empty()) {
        Vec e1(d, Scalar(0));
        e1[0] = Scalar(1);
        out.push_back({std::move(e1), {}});
        return out;
    }
    if (d == 1) {
        out.push_back({{Scalar(1)}, {}});
        out.push_back({{Scalar(-1)}, {}});
        return out;
    }
    if (d == 2) {
        // critical rays where some voter changes sides, both orientations
        std::vector<Vec> rays;
        std::unordered_set<Vec, VecHash> seen;
        for (const Vec& w : diffs) {
            Vec r = ray_direction(rot90ccw(w));
            Vec nr = mul(r, Scalar(-1));
            if (seen.insert(r).second) rays.push_back(std::move(r));
            if (seen.insert(nr).second) rays.push_back(std::move(nr));
        }
        std::vector<std::size_t> order = circular_order(rays);
        for (std::size_t k = 0; k < order.size(); ++k) {
            const Vec& r1 = rays[order[k]];
            const Vec& r2 = rays[order[(k + 1) % order.size()]];
            out.push_back({r1, {}});
            Vec mid = add(r1, r2);
            // rays come in opposite pairs, so a gap is at most a half turn
            if (is_zero_vec(mid)) mid = rot90ccw(r1);
            out.push_back({std::move(mid), {}});
        }
        return out;
    }
    if (d == 3) {
        // one entry per perpendicularity circle on the direction sphere
        std::vector<Vec> circles;
        {
            std::unordered_set<Vec, VecHash> seen;
            for (const Vec& w : diffs) {
                Vec u = canonical_direction(w);
                if (seen.insert(u).second) circles.push_back(std::move(u));
            }
        }
        if (circles.size() == 1) {
            out.push_back({circles[0], {}});
            out.push_back({mul(circles[0], Scalar(-1)), {}});
            return out;
        }
        // crossing points of the circles; distinct canonical directions are
        // never parallel, so every pair crosses
        std::vector<Vec> verts;
        {
            std::unordered_set<Vec, VecHash> seen;
            for (std::size_t i = 0; i < circles.size(); ++i)
                for (std::size_t j = i + 1; j < circles.size(); ++j) {
                    Vec v = canonical_direction(cross3(circles[i], circles[j]));
                    if (seen.insert(v).second) verts.push_back(std::move(v));
                }
        }
        // every cell of the arrangement touches a crossing point, so nudging
        // away from each crossing into each of its sectors reaches them all
        for (const Vec& vpos : verts)
            for (int vs : {1, -1}) {
                Vec v = vs > 0 ? vpos : mul(vpos, Scalar(-1));
                std::vector<const Vec*> through;
                for (const Vec& u : circles)
                    if (dot(u, v).is_zero()) through.push_back(&u);
                // tangent frame at v; the shadow coordinates scale each axis
                // positively, which keeps the circular order intact
                const Vec& p = *through[0];
                Vec q = cross3(v, p);
                std::vector<Vec> rays3;
                std::vector<Vec> shadows;
                for (const Vec* u : through)
                    for (int rs : {1, -1}) {
                        Vec t = cross3(v, *u);
                        if (rs < 0) t = mul(t, Scalar(-1));
                        shadows.push_back({dot(t, p), dot(t, q)});
                        rays3.push_back(std::move(t));
                    }
                std::vector<std::size_t> order = circular_order(shadows);
                for (std::size_t k = 0; k < order.size(); ++k) {
                    const Vec& r1 = rays3[order[k]];
                    const Vec& r2 = rays3[order[(k + 1) % order.size()]];
                    Vec mid = add(r1, r2);
                    if (is_zero_vec(mid))
                        throw std::logic_error(
                            "candidate_directions: antipodal sector gap");
                    out.push_back({v, r1});
                    out.push_back({v, std::move(mid)});
                }
            }
        return out;
    }
    throw std::invalid_argument("candidate_directions: supported dimensions are 1 to 3");
}

inline std::size_t le0_count(const VoterSet& S, const Point& a, const SymDir& s) {
    std::size_t cnt = 0;
    for (const Point& x : S)
        if (sym_sign(sub(x, a), s) <= 0) ++cnt;
    return cnt;
}

struct DepthSearch {
    std::size_t min_count = 0;
    SymDir arg;
};

inline DepthSearch min_halfspace_count(const VoterSet& S, const Point& a) {
    if (a.size() != static_cast<std::size_t>(S.dim()))
        throw std::invalid_argument("halfspace depth: placement dimension mismatch");
    DepthSearch best;
    bool first = true;
    for (SymDir& s : candidate_directions(S, a)) {
        std::size_t c = le0_count(S, a, s);
        if (first || c < best.min_count) {
            best.min_count = c;
            best.arg = std::move(s);
            first = false;
        }
    }
    return best;
}

// Planar depth by the widest open half plane: sort the voter rays around p
// and slide a window of less than a half turn.
inline std::size_t planar_depth(const VoterSet& S, const Point& p) {
    std::vector<Vec> rays;
    for (const Point& x : S) {
        Vec w = sub(x, p);
        if (!is_zero_vec(w)) rays.push_back(ray_direction(w));
    }
    if (rays.empty()) return S.size();
    std::sort(rays.begin(), rays.end(), circular_less);
    std::size_t m = rays.size(), widest = 0, j = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (j < i) j = i;
        while (j - i < m) {
            const Vec& rj = rays[j % m];
            Scalar cr = cross2(rays[i], rj);
            if (!(cr.sign() > 0 || (cr.is_zero() && dot(rays[i], rj).sign() > 0)))
                break;
            ++j;
        }
        widest = std::max(widest, j - i);
    }
    return S.size() - widest;
}

}  // namespace detail

// Closed-halfspace (Tukey) depth of a: the fewest voters Bob can leave Alice
// when she stands at a, over bisectors approaching a.
inline std::size_t guaranteed_votes(const VoterSet& S, const Point& a) {
    return detail::min_halfspace_count(S, a).min_count;
}

inline long long best_response_margin(const VoterSet& S, const Point& a) {
    return static_cast<long long>(S.size()) -
           2 * static_cast<long long>(detail::min_halfspace_count(S, a).min_count);
}

struct BestResponse {
    Point b;
    Scores scores;
    long long margin = 0;
    Hyperplane separating;
};

// Bob's exact best reply to the placement a: the realized point b, its exact
// scores, the margin v_b - v_a, and the bisector between a and b.
inline BestResponse best_response(const VoterSet& S, const Point& a) {
    detail::DepthSearch best = detail::min_halfspace_count(S, a);

    // realize the symbolic direction with every voter sign preserved
    Vec c = best.arg.c;
    if (!best.arg.c2.empty()) {
        Scalar eps(1);
        for (const Point& x : S) {
            Vec w = sub(x, a);
            Scalar al = dot(w, c), be = dot(w, best.arg.c2);
            if (al.is_zero() || be.is_zero()) continue;
            Scalar cand = al.abs() / (be.abs() * Scalar(2));
            if (cand < eps) eps = cand;
        }
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = c[i] + eps * best.arg.c2[i];
        for (const Point& x : S) {
            Vec w = sub(x, a);
            if (dot(w, c).sign() != detail::sym_sign(w, best.arg))
                throw std::logic_error("best_response: realization changed a side");
        }
    }

    // bisector strictly between a and the nearest voter on Bob's side
    Scalar mp;
    bool have_pos = false;
    for (const Point& x : S) {
        Scalar pr = dot(sub(x, a), c);
        if (pr.sign() > 0 && (!have_pos || pr < mp)) {
            mp = pr;
            have_pos = true;
        }
    }
    Scalar tau = have_pos ? mp / Scalar(2) : Scalar(1);

    BestResponse r;
    r.b = add(a, mul(c, Scalar(2) * tau / dot(c, c)));
    r.separating = make_hyperplane(c, dot(a, c) + tau);
    r.margin = static_cast<long long>(S.size()) -
               2 * static_cast<long long>(best.min_count);
    r.scores = evaluate(S, a, r.b);
    if (r.scores.v_a != best.min_count || r.scores.abstentions != 0 ||
        static_cast<long long>(r.scores.v_b) -
            static_cast<long long>(r.scores.v_a) != r.margin)
        throw std::logic_error("best_response: realized scores disagree");
    return r;
}

// ---- depth maximization ----------------------------------------------------

// A deepest point among the voters and the crossings of voter-spanned lines.
// The depth bound of one in d+1 is checked, not assumed.
inline std::pair<Point, std::size_t> find_rado_point(const VoterSet& S) {
    if (S.dim() > 3)
        throw std::invalid_argument("find_rado_point: supported dimensions are 1 to 3");
    std::size_t n = S.size();
    int d = S.dim();

    Vec lo = S[0], hi = S[0];
    for (const Point& x : S)
        for (int k = 0; k < d; ++k) {
            if (x[k] < lo[k]) lo[k] = x[k];
            if (hi[k] < x[k]) hi[k] = x[k];
        }

    Point best_p;
    std::size_t best_c = 0;
    bool first = true;
    for (Point& cand : enumerate_candidates_even(S)) {
        // crossings outside the bounding box have a separating direction
        bool inside = true;
        for (int k = 0; k < d; ++k)
            if (cand[k] < lo[k] || hi[k] < cand[k]) { inside = false; break; }
        if (!inside) continue;
        std::size_t dep =
            d == 2 ? detail::planar_depth(S, cand) : guaranteed_votes(S, cand);
        if (first || dep > best_c) {
            best_p = std::move(cand);
            best_c = dep;
            first = false;
        }
    }

    std::size_t need = (n + d) / (d + 1);
    if (best_c < need)
        throw std::logic_error("find_rado_point: depth bound violated");
    return {std::move(best_p), best_c};
}

}  // namespace euclidvote
