#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "euclidvote/scalar.hpp"

namespace euclidvote {

using Vec = std::vector<Scalar>;
using Point = Vec;

struct VecHash {
    std::size_t operator()(const Vec& v) const {
        std::size_t h = 0x811c9dc5u ^ v.size();
        for (const Scalar& s : v) h = (h ^ s.hash()) * 0x100000001b3ULL;
        return h;
    }
};

inline void check_same_dim(const Vec& a, const Vec& b, const char* where) {
    if (a.size() != b.size())
        throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

inline Vec sub(const Vec& a, const Vec& b) {
    check_same_dim(a, b, "sub");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec add(const Vec& a, const Vec& b) {
    check_same_dim(a, b, "add");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec mul(const Vec& a, const Scalar& s) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

inline Scalar dot(const Vec& a, const Vec& b) {
    check_same_dim(a, b, "dot");
    Scalar r(0);
    for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

inline bool is_zero_vec(const Vec& v) {
    for (const Scalar& s : v)
        if (!s.is_zero()) return false;
    return true;
}

inline Scalar cross2(const Vec& a, const Vec& b) {
    return a[0] * b[1] - a[1] * b[0];
}

inline Vec cross3(const Vec& a, const Vec& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

// sign of the signed area of triangle (a, b, c); 2D only. Inline-integer
// coordinates below 2^30 take a machine-arithmetic shortcut.
inline int orientation2(const Point& a, const Point& b, const Point& c) {
    long long ax, ay, bx, by, cx, cy;
    if (a[0].small_int(ax) && a[1].small_int(ay) && b[0].small_int(bx) &&
        b[1].small_int(by) && c[0].small_int(cx) && c[1].small_int(cy)) {
        constexpr long long lim = 1LL << 30;
        if (ax > -lim && ax < lim && ay > -lim && ay < lim && bx > -lim &&
            bx < lim && by > -lim && by < lim && cx > -lim && cx < lim &&
            cy > -lim && cy < lim) {
            __int128 det = (__int128)(bx - ax) * (cy - ay) -
                           (__int128)(by - ay) * (cx - ax);
            return (det > 0) - (det < 0);
        }
    }
    return cross2(sub(b, a), sub(c, a)).sign();
}

// Scales v by a positive rational and possibly -1 into coprime integers with
// the first nonzero component positive. The same scale factor is applied to
// any quantity that must stay attached to v (hyperplane offsets).
inline Vec canonical_direction_with_factor(const Vec& v, Scalar* factor_out) {
    Scalar l(1);
    for (const Scalar& c : v) {
        Scalar d = c.denominator();
        l = l / integer_gcd(l, d) * d;
    }
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * l;
    Scalar g(0);
    for (const Scalar& c : r) g = integer_gcd(g, c);
    if (g.is_zero()) throw std::invalid_argument("canonical_direction: zero vector");
    Scalar f = l / g;
    bool decided = false, flip = false;
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] /= g;
        if (!decided && r[i].sign() != 0) {
            decided = true;
            flip = r[i].sign() < 0;
        }
    }
    if (flip)
        for (Scalar& c : r) c = -c;
    if (factor_out) *factor_out = flip ? -f : f;
    return r;
}

inline Vec canonical_direction(const Vec& v) {
    return canonical_direction_with_factor(v, nullptr);
}

// ---- voter sets -----------------------------------------------------------

struct DuplicatePointError : std::invalid_argument {
    std::size_t first, second;
    DuplicatePointError(std::size_t i, std::size_t j)
        : std::invalid_argument("duplicate voter points at indices " +
                                std::to_string(i) + " and " + std::to_string(j)),
          first(i), second(j) {}
};

class VoterSet {
public:
    VoterSet(int dim, std::vector<Point> pts) : dim_(dim), pts_(std::move(pts)) {
        if (dim_ < 1) throw std::invalid_argument("VoterSet: dimension must be >= 1");
        if (pts_.empty()) throw std::invalid_argument("VoterSet: empty");
        std::unordered_map<Point, std::size_t, VecHash> seen;
        seen.reserve(pts_.size());
        for (std::size_t i = 0; i < pts_.size(); ++i) {
            if (pts_[i].size() != static_cast<std::size_t>(dim_))
                throw std::invalid_argument("VoterSet: point " + std::to_string(i) +
                                            " has wrong dimension");
            auto [it, inserted] = seen.emplace(pts_[i], i);
            if (!inserted) throw DuplicatePointError(it->second, i);
        }
    }

    int dim() const { return dim_; }
    std::size_t size() const { return pts_.size(); }
    const Point& operator[](std::size_t i) const { return pts_[i]; }
    const std::vector<Point>& points() const { return pts_; }
    auto begin() const { return pts_.begin(); }
    auto end() const { return pts_.end(); }

    bool contains(const Point& p) const {
        for (const Point& q : pts_)
            if (q == p) return true;
        return false;
    }

private:
    int dim_;
    std::vector<Point> pts_;
};

// ---- lines and hyperplanes ------------------------------------------------

struct Line {
    Point base;
    Vec dir;  // canonical integer direction

    friend bool operator==(const Line& a, const Line& b) {
        return a.base == b.base && a.dir == b.dir;
    }
};

inline Line line_through(const Point& p, const Point& q) {
    check_same_dim(p, q, "line_through");
    if (p == q) throw std::domain_error("line_through: coincident points");
    return Line{p, canonical_direction(sub(q, p))};
}

// Parameter sign of r relative to the line (base, dir): r = base + t dir.
// Positive means r lies on the open half-line in the +dir sense.
inline int halfline_side(const Line& l, const Point& r) {
    Vec d = sub(r, l.base);
    for (std::size_t i = 0; i < l.dir.size(); ++i)
        if (!l.dir[i].is_zero()) return d[i].sign() * l.dir[i].sign();
    throw std::logic_error("halfline_side: zero direction");
}

struct Hyperplane {
    Vec normal;     // canonical integer direction
    Scalar offset;  // H = { x : <x, normal> = offset }

    friend bool operator==(const Hyperplane& a, const Hyperplane& b) {
        return a.normal == b.normal && a.offset == b.offset;
    }
};

inline Hyperplane make_hyperplane(const Vec& raw_normal, const Scalar& raw_offset) {
    Scalar f;
    Vec n = canonical_direction_with_factor(raw_normal, &f);
    return Hyperplane{std::move(n), raw_offset * f};
}

inline int side_of_hyperplane(const Point& p, const Hyperplane& h) {
    check_same_dim(p, h.normal, "side_of_hyperplane");
    return (dot(p, h.normal) - h.offset).sign();
}

inline Point project_onto_hyperplane(const Point& p, const Hyperplane& h) {
    check_same_dim(p, h.normal, "project_onto_hyperplane");
    Scalar t = (dot(p, h.normal) - h.offset) / dot(h.normal, h.normal);
    return sub(p, mul(h.normal, t));
}

inline Hyperplane perpendicular_bisector(const Point& a, const Point& b) {
    check_same_dim(a, b, "perpendicular_bisector");
    if (a == b) throw std::domain_error("perpendicular_bisector: coincident points");
    Vec n = sub(b, a);
    Scalar lambda = (dot(b, b) - dot(a, a)) / Scalar(2);
    return make_hyperplane(n, lambda);
}

inline Scalar squared_distance(const Point& a, const Point& b) {
    Vec d = sub(a, b);
    return dot(d, d);
}

// ---- grouping about a point ----------------------------------------------

struct LineGroup {
    Line line;                      // base is the pivot point
    std::vector<std::size_t> plus;  // indices into S on the +dir open half-line
    std::vector<std::size_t> minus;
};

// Groups S minus {x} into maximal collinear families through x, tagged with
// the open half-line each member lies on. Group order is by first occurrence.
inline std::vector<LineGroup> group_by_lines(const Point& x, const VoterSet& S) {
    if (x.size() != static_cast<std::size_t>(S.dim()))
        throw std::invalid_argument("group_by_lines: dimension mismatch");
    std::vector<LineGroup> groups;
    std::unordered_map<Vec, std::size_t, VecHash> index;
    for (std::size_t i = 0; i < S.size(); ++i) {
        Vec d = sub(S[i], x);
        if (is_zero_vec(d)) continue;
        Vec dir = canonical_direction(d);
        auto [it, inserted] = index.emplace(dir, groups.size());
        if (inserted) groups.push_back(LineGroup{Line{x, dir}, {}, {}});
        LineGroup& g = groups[it->second];
        int side = 0;
        for (std::size_t k = 0; k < dir.size(); ++k)
            if (!dir[k].is_zero()) { side = d[k].sign(); break; }
        (side > 0 ? g.plus : g.minus).push_back(i);
    }
    return groups;
}

// ---- circular order of planar directions ----------------------------------

// Counterclockwise order starting at direction (1, 0): the upper half plane
// (including +x, excluding -x) precedes the lower, and within a half plane
// the cross product decides. Returns -1, 0, +1; 0 means the same ray.
inline int circular_compare(const Vec& a, const Vec& b) {
    auto half = [](const Vec& v) {
        return (v[1].sign() > 0 || (v[1].is_zero() && v[0].sign() > 0)) ? 0 : 1;
    };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb ? -1 : 1;
    return -cross2(a, b).sign();
}

inline bool circular_less(const Vec& a, const Vec& b) {
    return circular_compare(a, b) < 0;
}

// Sorted index permutation of dirs under the circular order; equal rays keep
// their input order.
inline std::vector<std::size_t> circular_order(const std::vector<Vec>& dirs) {
    for (const Vec& v : dirs) {
        if (v.size() != 2) throw std::invalid_argument("circular_order: need 2D directions");
        if (is_zero_vec(v)) throw std::invalid_argument("circular_order: zero direction");
    }
    std::vector<std::size_t> idx(dirs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        return circular_less(dirs[i], dirs[j]);
    });
    return idx;
}

// ---- affine rank probe -----------------------------------------------------

struct PlaneBasis {
    Point origin;
    Vec u, v;  // independent canonical integer directions spanning the plane
};

struct AffineClass {
    enum Kind { single, collinear, coplanar, full } kind;
    std::optional<Line> line;         // set when collinear
    std::optional<PlaneBasis> plane;  // set when coplanar
};

// Writes the span coefficients of w in {u, v} if w lies in it.
inline bool in_span2(const Vec& u, const Vec& v, const Vec& w,
                     Scalar* alpha_out = nullptr, Scalar* beta_out = nullptr) {
    std::size_t d = u.size();
    std::size_t i = d, j = d;
    for (std::size_t a = 0; a < d && i == d; ++a)
        for (std::size_t b = a + 1; b < d && i == d; ++b)
            if (!(u[a] * v[b] - u[b] * v[a]).is_zero()) { i = a; j = b; }
    if (i == d) throw std::invalid_argument("in_span2: dependent basis");
    Scalar det = u[i] * v[j] - u[j] * v[i];
    Scalar alpha = (w[i] * v[j] - w[j] * v[i]) / det;
    Scalar beta = (u[i] * w[j] - u[j] * w[i]) / det;
    for (std::size_t k = 0; k < d; ++k)
        if (u[k] * alpha + v[k] * beta != w[k]) return false;
    if (alpha_out) *alpha_out = alpha;
    if (beta_out) *beta_out = beta;
    return true;
}

inline bool parallel_vecs(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
    return true;
}

inline AffineClass affine_rank_probe(const VoterSet& S) {
    const Point& o = S[0];
    std::size_t first_off = 0;
    for (std::size_t i = 1; i < S.size(); ++i)
        if (S[i] != o) { first_off = i; break; }
    if (first_off == 0) return AffineClass{AffineClass::single, {}, {}};

    Vec u = canonical_direction(sub(S[first_off], o));
    std::size_t first_non = 0;
    for (std::size_t i = first_off + 1; i < S.size(); ++i)
        if (!parallel_vecs(sub(S[i], o), u)) { first_non = i; break; }
    if (first_non == 0)
        return AffineClass{AffineClass::collinear, Line{o, u}, {}};

    Vec v = canonical_direction(sub(S[first_non], o));
    for (std::size_t i = first_non + 1; i < S.size(); ++i)
        if (!in_span2(u, v, sub(S[i], o)))
            return AffineClass{AffineClass::full, {}, {}};
    return AffineClass{AffineClass::coplanar, {}, PlaneBasis{o, u, v}};
}

// ---- canonical line identity and intersections -----------------------------

// Base-independent identity of an unoriented line: canonical direction plus
// the foot of the perpendicular from the origin.
struct LineKey {
    Vec dir;
    Point foot;

    friend bool operator==(const LineKey& a, const LineKey& b) {
        return a.dir == b.dir && a.foot == b.foot;
    }
};

struct LineKeyHash {
    std::size_t operator()(const LineKey& k) const {
        return VecHash{}(k.dir) * 0x9e3779b97f4a7c15ULL ^ VecHash{}(k.foot);
    }
};

inline LineKey line_key(const Point& p, const Vec& canonical_dir) {
    Scalar t = dot(p, canonical_dir) / dot(canonical_dir, canonical_dir);
    return LineKey{canonical_dir, sub(p, mul(canonical_dir, t))};
}

inline LineKey line_key_through(const Point& p, const Point& q) {
    return line_key(p, canonical_direction(sub(q, p)));
}

// Unique intersection point of two lines, or nullopt when parallel or skew.
inline std::optional<Point> line_intersection(const Point& p, const Vec& u,
                                              const Point& q, const Vec& v) {
    std::size_t d = p.size();
    if (d == 2) {
        // mirror of the orientation2 fast path: planar integer inputs resolve
        // in 128-bit arithmetic, falling through on any overflow risk
        constexpr long long lim = 1LL << 30;
        auto small = [](const Scalar& s, long long& out) {
            return s.small_int(out) && out > -lim && out < lim;
        };
        long long px, py, ux, uy, qx, qy, vx, vy;
        if (small(p[0], px) && small(p[1], py) && small(u[0], ux) && small(u[1], uy) &&
            small(q[0], qx) && small(q[1], qy) && small(v[0], vx) && small(v[1], vy)) {
            __int128 det = (__int128)ux * vy - (__int128)uy * vx;
            if (det == 0) return std::nullopt;  // parallel or equal
            __int128 tnum = (__int128)(qx - px) * vy - (__int128)(qy - py) * vx;
            auto coord = [&](long long base, long long dir) -> std::optional<Scalar> {
                __int128 num = (__int128)base * det + tnum * dir;
                __int128 den = det;
                if (den < 0) { num = -num; den = -den; }
                __int128 a = num < 0 ? -num : num, b = den;
                while (b) { __int128 t = a % b; a = b; b = t; }
                if (a > 1) { num /= a; den /= a; }
                constexpr __int128 ll_max = std::numeric_limits<long long>::max();
                if (num > ll_max || num < -ll_max || den > ll_max)
                    return std::nullopt;
                return Scalar(static_cast<long long>(num), static_cast<long long>(den));
            };
            auto c0 = coord(px, ux), c1 = coord(py, uy);
            if (c0 && c1) return Point{std::move(*c0), std::move(*c1)};
        }
    }
    std::size_t i = d, j = d;
    Scalar det;
    for (std::size_t a = 0; a < d && i == d; ++a)
        for (std::size_t b = a + 1; b < d && i == d; ++b) {
            Scalar m = u[a] * v[b] - u[b] * v[a];
            if (!m.is_zero()) { i = a; j = b; det = m; }
        }
    if (i == d) return std::nullopt;  // parallel (or equal)
    Vec w = sub(q, p);
    // p + t u = q + s v restricted to rows i, j
    Scalar t = (w[i] * v[j] - w[j] * v[i]) / det;
    Point r(d);
    for (std::size_t k = 0; k < d; ++k) r[k] = p[k] + t * u[k];
    // verify the remaining rows; failure means skew
    Scalar s = (u[j] * w[i] - u[i] * w[j]) / det;
    for (std::size_t k = 0; k < d; ++k)
        if (r[k] != q[k] + s * v[k]) return std::nullopt;
    return r;
}

}  // namespace euclidvote
