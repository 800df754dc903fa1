#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "euclidvote/geometry.hpp"

namespace euclidvote {

enum class LineBalance { even_balanced, odd_balanced, unbalanced };

// Counts of voters on the two open half-lines of a line through a pivot.
// u counts the +dir side, v the -dir side; the pivot itself is never counted.
// u == v == 0 is the trivially even-balanced case.
struct BalanceReport {
    Line line;
    std::size_t u = 0, v = 0;
    LineBalance kind = LineBalance::even_balanced;

    bool heavy_positive() const {
        if (kind != LineBalance::odd_balanced)
            throw std::logic_error("heavy side defined only for odd-balanced lines");
        return u > v;
    }
};

inline LineBalance balance_kind(std::size_t u, std::size_t v) {
    std::size_t diff = u > v ? u - v : v - u;
    if (diff == 0) return LineBalance::even_balanced;
    if (diff == 1) return LineBalance::odd_balanced;
    return LineBalance::unbalanced;
}

inline BalanceReport classify_line(const LineGroup& g) {
    return BalanceReport{g.line, g.plus.size(), g.minus.size(),
                         balance_kind(g.plus.size(), g.minus.size())};
}

// Classifies the specific line through x with the given direction.
inline BalanceReport classify_line(const Point& x, const VoterSet& S, const Vec& dir) {
    Vec cd = canonical_direction(dir);
    Line l{x, cd};
    BalanceReport r{l, 0, 0, LineBalance::even_balanced};
    for (const Point& p : S) {
        Vec d = sub(p, x);
        if (is_zero_vec(d)) continue;
        if (!parallel_vecs(d, cd)) continue;
        if (halfline_side(l, p) > 0)
            ++r.u;
        else
            ++r.v;
    }
    r.kind = balance_kind(r.u, r.v);
    return r;
}

// All lines through x meeting S, classified; order is by first occurrence in S.
inline std::vector<BalanceReport> classify_lines_about(const Point& x, const VoterSet& S) {
    std::vector<BalanceReport> out;
    for (const LineGroup& g : group_by_lines(x, S)) out.push_back(classify_line(g));
    return out;
}

// ---- hyperplane splits -----------------------------------------------------

struct HyperplaneReport {
    std::size_t plus = 0, on = 0, minus = 0;
    bool good = false;          // |S| odd: equal strict sides
    bool perfect_odd = false;   // good with exactly one voter on H
    bool perfect_even = false;  // |S| even: both strict sides below |S|/2
};

inline HyperplaneReport hyperplane_report(const VoterSet& S, const Hyperplane& h) {
    HyperplaneReport r;
    for (const Point& p : S) {
        int s = side_of_hyperplane(p, h);
        if (s > 0)
            ++r.plus;
        else if (s < 0)
            ++r.minus;
        else
            ++r.on;
    }
    std::size_t n = S.size();
    if (n % 2 == 1) {
        r.good = r.plus == r.minus;
        r.perfect_odd = r.good && r.on == 1;
    } else {
        r.perfect_even = r.plus < n / 2 && r.minus < n / 2;
    }
    return r;
}

// ---- coplanarity of odd-balanced lines -------------------------------------

// Common plane through x containing every reported line, if one exists. With
// no odd lines, or a single one, any plane works and a standard completion is
// returned. All reports must be odd-balanced lines through x.
inline std::optional<PlaneBasis> odd_lines_coplanar(
    const Point& x, const std::vector<BalanceReport>& odd_reports) {
    std::size_t d = x.size();
    if (d < 2) throw std::invalid_argument("odd_lines_coplanar: need dimension >= 2");
    for (const BalanceReport& r : odd_reports) {
        if (r.kind != LineBalance::odd_balanced)
            throw std::invalid_argument("odd_lines_coplanar: non-odd-balanced line");
        if (r.line.base != x)
            throw std::invalid_argument("odd_lines_coplanar: line not through x");
    }
    auto axis = [&](std::size_t i) {
        Vec e(d, Scalar(0));
        e[i] = Scalar(1);
        return e;
    };
    if (odd_reports.empty()) return PlaneBasis{x, axis(0), axis(1)};

    const Vec& u = odd_reports[0].line.dir;
    Vec v;
    std::size_t next = 1;
    for (; next < odd_reports.size(); ++next)
        if (!parallel_vecs(odd_reports[next].line.dir, u)) {
            v = odd_reports[next].line.dir;
            break;
        }
    if (v.empty()) {
        // single direction: complete with the first independent axis
        for (std::size_t i = 0; i < d; ++i)
            if (!parallel_vecs(axis(i), u)) { v = axis(i); break; }
    }
    for (std::size_t i = next + 1; i < odd_reports.size(); ++i)
        if (!in_span2(u, v, odd_reports[i].line.dir)) return std::nullopt;
    return PlaneBasis{x, u, v};
}

// ---- alternation around a candidate ----------------------------------------

// Heavy and light open half-lines of the odd-balanced lines through x must
// strictly alternate in the circular order within the plane. Equivalent to the
// existence of a rotation labeling l1+ ... lk+ l1- ... lk- with heavy sides at
// precisely the odd positions or precisely the even ones, k odd.
inline bool alternation_check(const Point& x, const PlaneBasis& plane,
                              const std::vector<BalanceReport>& odd_reports) {
    if (odd_reports.empty())
        throw std::invalid_argument("alternation_check: no odd-balanced lines");
    struct Entry {
        Vec coords;  // 2D coordinates in the plane basis
        bool heavy;
    };
    std::vector<Entry> entries;
    entries.reserve(odd_reports.size() * 2);
    for (const BalanceReport& r : odd_reports) {
        if (r.kind != LineBalance::odd_balanced)
            throw std::invalid_argument("alternation_check: non-odd-balanced line");
        if (r.line.base != x)
            throw std::invalid_argument("alternation_check: line not through x");
        Scalar alpha, beta;
        if (!in_span2(plane.u, plane.v, r.line.dir, &alpha, &beta))
            throw std::invalid_argument("alternation_check: line outside the plane");
        bool hp = r.heavy_positive();
        Vec heavy = hp ? Vec{alpha, beta} : Vec{-alpha, -beta};
        entries.push_back({heavy, true});
        entries.push_back({{-heavy[0], -heavy[1]}, false});
    }
    std::vector<std::size_t> idx(entries.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return circular_less(entries[a].coords, entries[b].coords);
    });
    for (std::size_t i = 0; i < idx.size(); ++i) {
        // distinct lines have distinct ray pairs; equal neighbors mean bad input
        if (circular_compare(entries[idx[i]].coords,
                             entries[idx[(i + 1) % idx.size()]].coords) == 0)
            throw std::invalid_argument("alternation_check: coincident lines");
        if (entries[idx[i]].heavy == entries[idx[(i + 1) % idx.size()]].heavy)
            return false;
    }
    return true;
}

}  // namespace euclidvote
