#pragma once

#include <cstdint>

namespace euclidvote {

// Deterministic operation counters, independent of wall clock and platform.
// candidates_scanned and points_grouped bound the odd-case work (quadratic in
// the voter count); line_pairs_examined dominates the even case (the pair scan
// over concurrency lines is the n^5 term's driver).
struct SolveStats {
    std::uint64_t candidates_scanned = 0;
    std::uint64_t points_grouped = 0;
    std::uint64_t lines_classified = 0;
    std::uint64_t line_pairs_examined = 0;
    std::uint64_t intersections_found = 0;

    std::uint64_t total() const {
        return candidates_scanned + points_grouped + lines_classified +
               line_pairs_examined + intersections_found;
    }

    void add(const SolveStats& o) {
        candidates_scanned += o.candidates_scanned;
        points_grouped += o.points_grouped;
        lines_classified += o.lines_classified;
        line_pairs_examined += o.line_pairs_examined;
        intersections_found += o.intersections_found;
    }
};

}  // namespace euclidvote
