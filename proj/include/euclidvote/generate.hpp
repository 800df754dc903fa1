#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "euclidvote/geometry.hpp"

namespace euclidvote {

// Deterministic bounded draws: mt19937_64's sequence is fixed by the standard
// and rejection sampling avoids the implementation-defined distribution adaptors.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % n;
    }

    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    std::mt19937_64 eng_;
};

struct GenConfig {
    std::string name;
    int n = 0;              // 0 means the config's default
    int d = 0;
    std::uint64_t seed = 1;
    Scalar shift = Scalar(1, 10);
    long long box = 2048;
};

namespace detail {

// Figure transcriptions. The first figure is five concurrent lines through the
// origin with an even split on every line plus the common point itself; the
// second extends its four-line core with five more concurrent families whose
// splits are uneven by exactly one.
inline const std::vector<std::pair<const char*, const char*>>& fig1_table() {
    static const std::vector<std::pair<const char*, const char*>> t = {
        // slope 2/3
        {"-1", "-2/3"}, {"-1.5", "-1"}, {"1.2", "0.8"}, {"2.7", "1.8"},
        // slope -4/3
        {"1", "-4/3"}, {"0.6", "-0.8"}, {"-0.3", "0.4"}, {"-1.2", "1.6"},
        // slope 2
        {"-0.9", "-1.8"}, {"-0.8", "-1.6"}, {"-0.6", "-1.2"},
        {"0.2", "0.4"}, {"0.45", "0.9"}, {"0.9", "1.8"},
        // slope -4/5
        {"2", "-1.6"}, {"-1", "0.8"},
        // slope 1/3
        {"-2", "-2/3"}, {"1.5", "0.5"},
        // common point
        {"0", "0"},
    };
    return t;
}

inline const std::vector<std::pair<const char*, const char*>>& fig2_table() {
    static const std::vector<std::pair<const char*, const char*>> t = {
        // balanced families: slopes 2/3, -4/3, 2, 1/3
        {"-1", "-2/3"}, {"-1.5", "-1"}, {"1.2", "0.8"}, {"2.7", "1.8"},
        {"1", "-4/3"}, {"0.6", "-0.8"}, {"-0.3", "0.4"}, {"-1.2", "1.6"},
        {"-0.9", "-1.8"}, {"-0.8", "-1.6"}, {"-0.6", "-1.2"},
        {"0.2", "0.4"}, {"0.45", "0.9"}, {"0.9", "1.8"},
        {"-2", "-2/3"}, {"1.5", "0.5"},
        // uneven families: vertical, 2 up / 1 down
        {"0", "-1.3"}, {"0", "0.5"}, {"0", "1.2"},
        // slope 4/3, 3 up / 4 down
        {"0.75", "1"}, {"0.9", "1.2"}, {"1.4", "28/15"},
        {"-0.2", "-4/15"}, {"-0.5", "-2/3"}, {"-1", "-4/3"}, {"-1.2", "-1.6"},
        // slope 1/6, 1 up / 0 down
        {"2", "1/3"},
        // slope -1/4, 2 up / 3 down
        {"2.5", "-0.625"}, {"1.5", "-0.375"}, {"-2", "0.5"}, {"-1", "0.25"}, {"-0.8", "0.2"},
        // slope -1, 2 up / 1 down
        {"0.8", "-0.8"}, {"1.9", "-1.9"}, {"-1.4", "1.4"},
        // common point
        {"0", "0"},
    };
    return t;
}

inline std::vector<Point> from_table(
    const std::vector<std::pair<const char*, const char*>>& t, bool drop_last) {
    std::vector<Point> pts;
    std::size_t count = t.size() - (drop_last ? 1 : 0);
    for (std::size_t i = 0; i < count; ++i)
        pts.push_back({Scalar::from_string(t[i].first), Scalar::from_string(t[i].second)});
    return pts;
}

// Integer point on the circle of radius `radius` at angle index i of m,
// starting from straight up. Rounding to integers keeps all later predicate
// arithmetic narrow.
inline Point circle_point(int i, int m, long long radius) {
    double th = std::acos(-1.0) * (0.5 + 2.0 * i / m);
    return {Scalar(static_cast<long long>(std::llround(radius * std::cos(th)))),
            Scalar(static_cast<long long>(std::llround(radius * std::sin(th))))};
}

inline bool breaks_general_position(const std::vector<Point>& pts, const Point& cand, int d) {
    for (const Point& p : pts)
        if (p == cand) return true;
    if (d == 1) return false;  // distinctness is all there is
    // no three collinear
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (parallel_vecs(sub(pts[j], pts[i]), sub(cand, pts[i]))) return true;
    if (d >= 3) {
        // no four coplanar
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                for (std::size_t k = j + 1; k < pts.size(); ++k) {
                    Vec u = sub(pts[j], pts[i]);
                    Vec v = sub(pts[k], pts[i]);
                    if (parallel_vecs(u, v)) continue;
                    if (in_span2(u, v, sub(cand, pts[i]))) return true;
                }
    }
    return false;
}

}  // namespace detail

inline VoterSet generate_voters(const GenConfig& cfg) {
    const std::string& name = cfg.name;
    if (name == "fig1")
        return VoterSet(2, detail::from_table(detail::fig1_table(), false));
    if (name == "fig1-even")
        return VoterSet(2, detail::from_table(detail::fig1_table(), true));
    if (name == "fig2")
        return VoterSet(2, detail::from_table(detail::fig2_table(), false));
    if (name == "polygon-center") {
        int m = cfg.n ? cfg.n : 5;
        if (m < 3 || m % 2 == 0)
            throw std::invalid_argument("polygon-center: n must be odd and >= 3");
        std::vector<Point> pts;
        for (int i = 0; i < m; ++i) pts.push_back(detail::circle_point(i, m, 1000000));
        pts.push_back({Scalar(0), Scalar(0)});
        return VoterSet(2, std::move(pts));
    }
    if (name == "perturbed-circle") {
        int m = cfg.n ? cfg.n : 6;
        if (m < 3) throw std::invalid_argument("perturbed-circle: n must be >= 3");
        std::vector<Point> pts;
        for (int i = 0; i < m; ++i) pts.push_back(detail::circle_point(i, m, 1000000));
        Scalar r(1000000);
        pts[0][0] += cfg.shift * r;
        pts[0][1] += cfg.shift * r / Scalar(2);
        return VoterSet(2, std::move(pts));
    }
    if (name == "simplex") {
        int d = cfg.d ? cfg.d : 2;
        if (d < 1) throw std::invalid_argument("simplex: d must be >= 1");
        std::vector<Point> pts;
        pts.emplace_back(d, Scalar(0));
        for (int i = 0; i < d; ++i) {
            Point p(d, Scalar(0));
            p[i] = Scalar(1);
            pts.push_back(std::move(p));
        }
        return VoterSet(d, std::move(pts));
    }
    if (name == "quadrilateral") {
        return VoterSet(2, {{Scalar(0), Scalar(0)},
                            {Scalar(4), Scalar(0)},
                            {Scalar(5), Scalar(3)},
                            {Scalar(1), Scalar(2)}});
    }
    if (name == "random-general-position") {
        int n = cfg.n ? cfg.n : 8;
        int d = cfg.d ? cfg.d : 2;
        if (n < 1 || d < 1)
            throw std::invalid_argument("random-general-position: need n >= 1, d >= 1");
        DetRng rng(cfg.seed);
        std::vector<Point> pts;
        long long attempts = 0;
        while (static_cast<int>(pts.size()) < n) {
            if (++attempts > 1000000)
                throw std::runtime_error("random-general-position: box too tight for n");
            Point cand(d);
            for (int k = 0; k < d; ++k) cand[k] = Scalar(rng.range(-cfg.box, cfg.box));
            if (detail::breaks_general_position(pts, cand, d)) continue;
            pts.push_back(std::move(cand));
        }
        return VoterSet(d, std::move(pts));
    }
    throw std::invalid_argument("unknown generator config \"" + name + "\"");
}

}  // namespace euclidvote
