#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "euclidvote/balance.hpp"
#include "euclidvote/geometry.hpp"
#include "euclidvote/telemetry.hpp"

namespace euclidvote {

enum class Outcome { alice_wins, bob_wins };

enum class WitnessKind {
    unbalanced_line,         // a line through the candidate violates its balance bound
    non_coplanar_odd_lines,  // the candidate's odd-balanced lines span more than a plane
    alternation_failure,     // heavy and light half-lines fail to alternate
    perfect_hyperplane_missed,  // a perfect hyperplane avoids the candidate
    halfspace_majority,         // a hyperplane through the candidate has a strict majority side
};

struct WitnessData {
    WitnessKind kind;
    Point candidate;
    std::optional<Line> line;
    std::optional<Hyperplane> hyperplane;
};

struct Verdict {
    Outcome outcome;
    std::optional<Point> winning_point;
    std::optional<std::pair<Point, Point>> winning_segment;
    bool unique = false;
    std::optional<WitnessData> witness;
};

struct SolveOptions {
    int threads = 1;
};

// ---- witness replay --------------------------------------------------------

// Machine-checks a claimed refutation of the candidate against S. Balance
// violations are replayed through the balance module; hyperplane witnesses
// through the split counts.
inline bool witness_confirms(const VoterSet& S, const WitnessData& w) {
    std::size_t n = S.size();
    bool odd = n % 2 == 1;
    switch (w.kind) {
        case WitnessKind::unbalanced_line: {
            if (!w.line) return false;
            if (w.line->base != w.candidate) return false;
            BalanceReport r = classify_line(w.candidate, S, w.line->dir);
            if (odd) return S.contains(w.candidate) && r.u != r.v;
            if (S.contains(w.candidate)) return r.kind == LineBalance::unbalanced;
            return r.u != r.v;
        }
        case WitnessKind::non_coplanar_odd_lines: {
            std::vector<BalanceReport> odds;
            for (const BalanceReport& r : classify_lines_about(w.candidate, S))
                if (r.kind == LineBalance::odd_balanced) odds.push_back(r);
            if (odds.empty()) return false;
            return !odd_lines_coplanar(w.candidate, odds).has_value();
        }
        case WitnessKind::alternation_failure: {
            if (odd || !S.contains(w.candidate)) return false;
            std::vector<BalanceReport> odds;
            for (const BalanceReport& r : classify_lines_about(w.candidate, S)) {
                if (r.kind == LineBalance::unbalanced) return false;
                if (r.kind == LineBalance::odd_balanced) odds.push_back(r);
            }
            if (odds.empty()) return false;
            auto plane = odd_lines_coplanar(w.candidate, odds);
            if (!plane) return false;
            return !alternation_check(w.candidate, *plane, odds);
        }
        case WitnessKind::perfect_hyperplane_missed: {
            if (!w.hyperplane) return false;
            if (side_of_hyperplane(w.candidate, *w.hyperplane) == 0) return false;
            HyperplaneReport r = hyperplane_report(S, *w.hyperplane);
            return odd ? r.perfect_odd : r.perfect_even;
        }
        case WitnessKind::halfspace_majority: {
            if (!w.hyperplane) return false;
            if (side_of_hyperplane(w.candidate, *w.hyperplane) != 0) return false;
            HyperplaneReport r = hyperplane_report(S, *w.hyperplane);
            return 2 * r.plus > n || 2 * r.minus > n;
        }
    }
    return false;
}

// ---- collinear case --------------------------------------------------------

// S on a common line (any ambient dimension). Odd: the median voter wins
// uniquely. Even: every point of the closed segment between the two middle
// voters wins.
inline Verdict solve_1d(const VoterSet& S, SolveStats* stats = nullptr) {
    AffineClass cls = affine_rank_probe(S);
    if (cls.kind != AffineClass::single && cls.kind != AffineClass::collinear)
        throw std::invalid_argument("solve_1d: voters are not collinear");
    if (stats) stats->candidates_scanned += 1;
    if (S.size() == 1)
        return Verdict{Outcome::alice_wins, S[0], std::nullopt, true, std::nullopt};

    const Vec& dir = cls.line->dir;
    std::vector<std::size_t> order(S.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<Scalar> t(S.size());
    for (std::size_t i = 0; i < S.size(); ++i) t[i] = dot(sub(S[i], S[0]), dir);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });

    std::size_t n = S.size();
    if (n % 2 == 1)
        return Verdict{Outcome::alice_wins, S[order[n / 2]], std::nullopt, true,
                       std::nullopt};
    return Verdict{Outcome::alice_wins, std::nullopt,
                   std::make_pair(S[order[n / 2 - 1]], S[order[n / 2]]), false,
                   std::nullopt};
}

// ---- odd case --------------------------------------------------------------

// x wins an odd-sized S iff every line through x splits the rest evenly.
inline bool check_point_odd(const Point& x, const VoterSet& S) {
    if (S.size() % 2 == 0) throw std::invalid_argument("check_point_odd: |S| must be odd");
    if (!S.contains(x)) throw std::invalid_argument("check_point_odd: x must be a voter");
    for (const LineGroup& g : group_by_lines(x, S))
        if (g.plus.size() != g.minus.size()) return false;
    return true;
}

inline Verdict solve_odd(const VoterSet& S, SolveStats* stats = nullptr) {
    std::size_t n = S.size();
    if (n % 2 == 0) throw std::invalid_argument("solve_odd: |S| must be odd");
    for (std::size_t i = 0; i < n; ++i) {
        if (stats) {
            stats->candidates_scanned += 1;
            stats->points_grouped += n - 1;
        }
        auto groups = group_by_lines(S[i], S);
        if (stats) stats->lines_classified += groups.size();
        bool ok = true;
        for (const LineGroup& g : groups)
            if (g.plus.size() != g.minus.size()) { ok = false; break; }
        if (ok)
            return Verdict{Outcome::alice_wins, S[i], std::nullopt, true, std::nullopt};
    }

    // Bob wins. Witness the nearest miss: the voter with the fewest uneven
    // lines, earliest on ties, with one of its uneven lines attached.
    std::size_t best = 0, best_score = SIZE_MAX;
    for (std::size_t i = 0; i < n; ++i) {
        if (stats) stats->points_grouped += n - 1;
        std::size_t score = 0;
        for (const LineGroup& g : group_by_lines(S[i], S))
            if (g.plus.size() != g.minus.size()) ++score;
        if (score < best_score) { best_score = score; best = i; }
    }
    WitnessData w{WitnessKind::unbalanced_line, S[best], std::nullopt, std::nullopt};
    for (const LineGroup& g : group_by_lines(S[best], S))
        if (g.plus.size() != g.minus.size()) { w.line = g.line; break; }
    if (!w.line || !witness_confirms(S, w))
        throw std::logic_error("solve_odd: witness replay failed");
    return Verdict{Outcome::bob_wins, std::nullopt, std::nullopt, false, std::move(w)};
}

// ---- even case -------------------------------------------------------------

// x wins an even-sized S iff every line through x is balanced, the
// odd-balanced ones lie in a common plane, there is at least one exactly when
// x is a voter, and around x the heavy and light half-lines alternate.
inline bool check_point_even(const Point& x, const VoterSet& S) {
    if (S.size() % 2 == 1) throw std::invalid_argument("check_point_even: |S| must be even");
    if (S.dim() < 2) throw std::invalid_argument("check_point_even: need dimension >= 2");
    auto groups = group_by_lines(x, S);
    if (S.contains(x)) {
        std::vector<BalanceReport> odds;
        for (const LineGroup& g : groups) {
            BalanceReport r = classify_line(g);
            if (r.kind == LineBalance::unbalanced) return false;
            if (r.kind == LineBalance::odd_balanced) odds.push_back(std::move(r));
        }
        // |S| - 1 voters split over the groups force an odd number of odd lines
        if (odds.size() % 2 == 0)
            throw std::logic_error("check_point_even: parity law violated");
        auto plane = odd_lines_coplanar(x, odds);
        if (!plane) return false;
        return alternation_check(x, *plane, odds);
    }
    for (const LineGroup& g : groups)
        if (g.plus.size() != g.minus.size()) return false;
    return true;
}

namespace detail {

// Lines spanned by at least two voters, each with its members in index order
// and the parameter extremes along the direction.
struct SpanLine {
    Vec dir;
    Point base;
    std::vector<std::uint32_t> pts;
    Scalar tmin, tmax;
    std::uint32_t arg_tmin = 0, arg_tmax = 0;  // voter indices at the extremes
};

inline std::vector<SpanLine> build_span_lines(const VoterSet& S) {
    std::vector<SpanLine> lines;
    std::unordered_map<LineKey, std::size_t, LineKeyHash> index;
    std::size_t n = S.size();
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) {
            Vec dir = canonical_direction(sub(S[j], S[i]));
            LineKey key = line_key(S[i], dir);
            auto [it, inserted] = index.emplace(std::move(key), lines.size());
            if (inserted) {
                lines.push_back(SpanLine{std::move(dir), S[i], {i, j}, Scalar(), Scalar()});
            } else {
                // pairs arrive in lexicographic order, so every point except a
                // strictly new maximum is already recorded
                auto& rec = lines[it->second];
                if (j > rec.pts.back()) rec.pts.push_back(j);
            }
        }
    for (auto& rec : lines) {
        bool first = true;
        for (std::uint32_t k : rec.pts) {
            Scalar t = dot(S[k], rec.dir);
            if (first || t < rec.tmin) { rec.tmin = t; rec.arg_tmin = k; }
            if (first || t > rec.tmax) { rec.tmax = t; rec.arg_tmax = k; }
            first = false;
        }
    }
    return lines;
}

// First failed requirement at a voter candidate, as a solver witness.
inline WitnessData even_witness_at(const Point& x, const VoterSet& S) {
    auto groups = group_by_lines(x, S);
    std::vector<BalanceReport> odds;
    for (const LineGroup& g : groups) {
        BalanceReport r = classify_line(g);
        if (r.kind == LineBalance::unbalanced)
            return WitnessData{WitnessKind::unbalanced_line, x, g.line, std::nullopt};
        if (r.kind == LineBalance::odd_balanced) odds.push_back(std::move(r));
    }
    auto plane = odd_lines_coplanar(x, odds);
    if (!plane)
        return WitnessData{WitnessKind::non_coplanar_odd_lines, x, std::nullopt,
                           std::nullopt};
    if (!alternation_check(x, *plane, odds))
        return WitnessData{WitnessKind::alternation_failure, x, std::nullopt, std::nullopt};
    throw std::logic_error("even_witness_at: candidate actually wins");
}

}  // namespace detail

// Scan order of the even-case candidate set: the voters themselves, then each
// pairwise intersection of distinct voter-spanned lines, deduplicated.
inline std::vector<Point> enumerate_candidates_even(const VoterSet& S) {
    std::vector<Point> out;
    std::unordered_set<Point, VecHash> seen;
    for (const Point& p : S) {
        out.push_back(p);
        seen.insert(p);
    }
    auto lines = detail::build_span_lines(S);
    for (std::size_t a = 0; a < lines.size(); ++a)
        for (std::size_t b = a + 1; b < lines.size(); ++b) {
            auto x = line_intersection(lines[a].base, lines[a].dir, lines[b].base,
                                       lines[b].dir);
            if (!x) continue;
            if (seen.insert(*x).second) out.push_back(std::move(*x));
        }
    return out;
}

inline Verdict solve_even(const VoterSet& S, SolveStats* stats = nullptr,
                          const SolveOptions& opts = {}) {
    std::size_t n = S.size();
    if (n % 2 == 1) throw std::invalid_argument("solve_even: |S| must be even");
    if (S.dim() < 2 || affine_rank_probe(S).kind == AffineClass::collinear)
        throw std::invalid_argument("solve_even: collinear input belongs to solve_1d");

    std::vector<Point> passers;

    // voters first
    for (std::size_t i = 0; i < n; ++i) {
        if (stats) {
            stats->candidates_scanned += 1;
            stats->points_grouped += n - 1;
        }
        auto groups = group_by_lines(S[i], S);
        if (stats) stats->lines_classified += groups.size();
        bool ok = true;
        std::vector<BalanceReport> odds;
        for (const LineGroup& g : groups) {
            BalanceReport r = classify_line(g);
            if (r.kind == LineBalance::unbalanced) { ok = false; break; }
            if (r.kind == LineBalance::odd_balanced) odds.push_back(std::move(r));
        }
        if (ok) {
            if (odds.size() % 2 == 0)
                throw std::logic_error("solve_even: parity law violated");
            auto plane = odd_lines_coplanar(S[i], odds);
            ok = plane && alternation_check(S[i], *plane, odds);
        }
        if (ok) passers.push_back(S[i]);
    }

    // intersection candidates: only properly crossing line pairs can produce a
    // winner off the voter set, since such a winner has voters strictly on
    // both sides along every incident line
    auto lines = detail::build_span_lines(S);
    const bool planar = S.dim() == 2;
    std::unordered_set<Point, VecHash> voter_hash(S.begin(), S.end(), n * 2, VecHash{});

    using Incidence = std::unordered_map<Point, std::vector<std::uint32_t>, VecHash>;
    auto scan_pairs = [&](std::size_t lo, std::size_t hi, Incidence& inc,
                          SolveStats& st) {
        for (std::size_t a = 0; a < lines.size(); ++a) {
            if (hi <= a + 1) break;
            std::size_t bstart = std::max(lo, a + 1);
            for (std::size_t b = bstart; b < hi; ++b) {
                st.line_pairs_examined += 1;
                const auto& la = lines[a];
                const auto& lb = lines[b];
                std::optional<Point> x;
                if (planar) {
                    const Point &p1 = S[la.arg_tmin], &p2 = S[la.arg_tmax];
                    const Point &q1 = S[lb.arg_tmin], &q2 = S[lb.arg_tmax];
                    if (orientation2(q1, q2, p1) * orientation2(q1, q2, p2) >= 0)
                        continue;
                    if (orientation2(p1, p2, q1) * orientation2(p1, p2, q2) >= 0)
                        continue;
                    x = line_intersection(la.base, la.dir, lb.base, lb.dir);
                } else {
                    x = line_intersection(la.base, la.dir, lb.base, lb.dir);
                    if (x) {
                        Scalar ta = dot(*x, la.dir), tb = dot(*x, lb.dir);
                        if (!(la.tmin < ta && ta < la.tmax && lb.tmin < tb && tb < lb.tmax))
                            x = std::nullopt;
                    }
                }
                if (!x) continue;
                if (voter_hash.count(*x)) continue;
                st.intersections_found += 1;
                auto& ids = inc[std::move(*x)];
                ids.push_back(static_cast<std::uint32_t>(a));
                ids.push_back(static_cast<std::uint32_t>(b));
            }
        }
    };

    // crossings are bounded by one per 4-subset of voters
    std::size_t reserve_hint = n < 120 ? n * (n - 1) * (n - 2) * (n - 3) / 24 + n : 8u << 20;

    Incidence incidence;
    SolveStats local;
    int threads = std::max(1, opts.threads);
    if (threads > 1 && lines.size() >= 64) {
        std::vector<Incidence> incs(threads);
        std::vector<SolveStats> stats_parts(threads);
        std::vector<std::thread> pool;
        std::size_t chunk = (lines.size() + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            std::size_t lo = t * chunk, hi = std::min(lines.size(), lo + chunk);
            incs[t].reserve(reserve_hint / threads + 1);
            pool.emplace_back([&, lo, hi, t] { scan_pairs(lo, hi, incs[t], stats_parts[t]); });
        }
        for (auto& th : pool) th.join();
        incidence.reserve(reserve_hint);
        for (int t = 0; t < threads; ++t) {
            local.add(stats_parts[t]);
            for (auto& [pt, ids] : incs[t]) {
                auto& dst = incidence[pt];
                dst.insert(dst.end(), ids.begin(), ids.end());
            }
        }
    } else {
        incidence.reserve(reserve_hint);
        scan_pairs(0, lines.size(), incidence, local);
    }
    if (stats) stats->add(local);

    for (auto& [x, ids] : incidence) {
        if (stats) stats->candidates_scanned += 1;
        if (ids.size() > 2) {
            // the same concurrency point arises once per incident line pair
            std::sort(ids.begin(), ids.end());
            ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        }
        std::size_t covered = 0;
        for (std::uint32_t id : ids) covered += lines[id].pts.size();
        // concurrent distinct lines meet only at x, which is no voter, so the
        // member sets are disjoint and the sum decides coverage
        if (covered != n) continue;
        bool ok = true;
        for (std::uint32_t id : ids) {
            const auto& rec = lines[id];
            Scalar tx = dot(x, rec.dir);
            if (stats) stats->points_grouped += rec.pts.size();
            std::size_t u = 0, v = 0;
            for (std::uint32_t k : rec.pts)
                (dot(S[k], rec.dir) > tx ? u : v) += 1;
            if (u != v) { ok = false; break; }
        }
        if (stats) stats->lines_classified += ids.size();
        if (ok) passers.push_back(x);
    }

    if (!passers.empty()) {
        Point win = *std::min_element(
            passers.begin(), passers.end(), [](const Point& a, const Point& b) {
                return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
            });
        return Verdict{Outcome::alice_wins, std::move(win), std::nullopt, true,
                       std::nullopt};
    }

    WitnessData w = detail::even_witness_at(S[0], S);
    if (!witness_confirms(S, w))
        throw std::logic_error("solve_even: witness replay failed");
    return Verdict{Outcome::bob_wins, std::nullopt, std::nullopt, false, std::move(w)};
}

// ---- dispatch --------------------------------------------------------------

inline Verdict solve(const VoterSet& S, SolveStats* stats = nullptr,
                     const SolveOptions& opts = {}) {
    if (S.size() == 1)
        return Verdict{Outcome::alice_wins, S[0], std::nullopt, true, std::nullopt};
    AffineClass cls = affine_rank_probe(S);
    if (cls.kind == AffineClass::collinear) return solve_1d(S, stats);
    if (S.size() % 2 == 1) return solve_odd(S, stats);
    return solve_even(S, stats, opts);
}

}  // namespace euclidvote
