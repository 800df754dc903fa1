#pragma once

// Text I/O for voter sets and solver results.  Coordinates travel as strings
// ("3/4", "-2", or a finite decimal like "0.25") so nothing is rounded on the
// way in or out.  Emission is canonical: fixed key order, two-space indent,
// one trailing newline.  Re-emitting a parsed canonical document reproduces
// it byte for byte.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "euclidvote/generate.hpp"
#include "euclidvote/oracle.hpp"
#include "euclidvote/solver.hpp"

namespace euclidvote {

using ordered_json = nlohmann::ordered_json;

enum class InputFormat { csv, json };

// ---- coordinate strings ---------------------------------------------------

namespace detail {

inline std::string_view trim_ws(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline Scalar parse_coord(std::string_view text, std::size_t point, std::size_t coord) {
    try {
        return Scalar::from_string(trim_ws(text));
    } catch (const std::exception& e) {
        throw std::invalid_argument("point " + std::to_string(point) + ", coordinate " +
                                    std::to_string(coord) + ": " + e.what());
    }
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

}  // namespace detail

// Comma-separated coordinate list, e.g. "1/2,-3,0.25".  Used for CLI flags.
inline Point parse_coords(std::string_view text) {
    if (detail::trim_ws(text).empty()) throw std::invalid_argument("empty coordinate list");
    Point p;
    auto cells = detail::split(text, ',');
    p.reserve(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k)
        p.push_back(detail::parse_coord(cells[k], 0, k));
    return p;
}

// ---- input documents ------------------------------------------------------

// CSV: one voter per row, coordinates separated by commas.  Blank lines are
// skipped; every row must have the same width.  Duplicate rows are rejected
// by the VoterSet constructor, which names both offending indices.
inline VoterSet parse_points_csv(std::string_view text) {
    std::vector<Point> pts;
    std::size_t width = 0;
    for (std::string_view raw : detail::split(text, '\n')) {
        std::string_view row = detail::trim_ws(raw);
        if (row.empty()) continue;
        auto cells = detail::split(row, ',');
        if (pts.empty()) {
            width = cells.size();
        } else if (cells.size() != width) {
            throw std::invalid_argument("point " + std::to_string(pts.size()) + " has " +
                                        std::to_string(cells.size()) + " coordinates, expected " +
                                        std::to_string(width));
        }
        Point p;
        p.reserve(cells.size());
        for (std::size_t k = 0; k < cells.size(); ++k)
            p.push_back(detail::parse_coord(cells[k], pts.size(), k));
        pts.push_back(std::move(p));
    }
    if (pts.empty()) throw std::invalid_argument("no points in input");
    return VoterSet(static_cast<int>(width), std::move(pts));
}

// JSON: {"dim": d, "points": [["x", "y"], ...]}.  Coordinates must be strings
// (or JSON integers); non-integer JSON numbers are rejected because a binary
// double cannot represent most decimals exactly.
inline VoterSet parse_points_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("points"))
        throw std::invalid_argument("input document needs \"dim\" and \"points\"");
    if (!doc["dim"].is_number_integer())
        throw std::invalid_argument("\"dim\" must be an integer");
    const int dim = doc["dim"].get<int>();
    const auto& arr = doc["points"];
    if (!arr.is_array() || arr.empty())
        throw std::invalid_argument("\"points\" must be a non-empty array");
    std::vector<Point> pts;
    pts.reserve(arr.size());
    for (const auto& row : arr) {
        if (!row.is_array())
            throw std::invalid_argument("point " + std::to_string(pts.size()) +
                                        " is not an array");
        if (static_cast<int>(row.size()) != dim)
            throw std::invalid_argument("point " + std::to_string(pts.size()) + " has " +
                                        std::to_string(row.size()) + " coordinates, expected " +
                                        std::to_string(dim));
        Point p;
        p.reserve(row.size());
        for (std::size_t k = 0; k < row.size(); ++k) {
            const auto& cell = row[k];
            if (cell.is_string()) {
                p.push_back(detail::parse_coord(cell.get<std::string>(), pts.size(), k));
            } else if (cell.is_number_integer()) {
                p.push_back(Scalar(cell.get<long long>()));
            } else {
                throw std::invalid_argument("point " + std::to_string(pts.size()) +
                                            ", coordinate " + std::to_string(k) +
                                            ": write coordinates as strings so they stay exact");
            }
        }
        pts.push_back(std::move(p));
    }
    return VoterSet(dim, std::move(pts));
}

inline InputFormat sniff_format(std::string_view text) {
    std::string_view t = detail::trim_ws(text);
    while (!t.empty() && t.front() == '\n') t = detail::trim_ws(t.substr(1));
    return (!t.empty() && t.front() == '{') ? InputFormat::json : InputFormat::csv;
}

inline VoterSet parse_points(const std::string& text, InputFormat fmt) {
    return fmt == InputFormat::json ? parse_points_json(text) : parse_points_csv(text);
}

// ---- emission -------------------------------------------------------------

inline ordered_json point_to_json(const Point& p) {
    auto arr = ordered_json::array();
    for (const Scalar& c : p) arr.push_back(c.to_string());
    return arr;
}

inline Point point_from_json(const ordered_json& arr) {
    if (!arr.is_array() || arr.empty()) throw std::invalid_argument("point must be an array");
    Point p;
    p.reserve(arr.size());
    for (std::size_t k = 0; k < arr.size(); ++k)
        p.push_back(detail::parse_coord(arr[k].get<std::string>(), 0, k));
    return p;
}

inline std::string emit_points_json(const VoterSet& s) {
    ordered_json doc;
    doc["dim"] = s.dim();
    auto arr = ordered_json::array();
    for (const Point& p : s) arr.push_back(point_to_json(p));
    doc["points"] = std::move(arr);
    return doc.dump(2) + "\n";
}

inline std::string emit_points_csv(const VoterSet& s) {
    std::string out;
    for (const Point& p : s) {
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (k) out += ',';
            out += p[k].to_string();
        }
        out += '\n';
    }
    return out;
}

// ---- result documents -----------------------------------------------------

inline ordered_json hyperplane_to_json(const Hyperplane& h) {
    ordered_json out;
    out["normal"] = point_to_json(h.normal);
    out["offset"] = h.offset.to_string();
    return out;
}

inline ordered_json line_to_json(const Line& l) {
    ordered_json out;
    out["base"] = point_to_json(l.base);
    out["dir"] = point_to_json(l.dir);
    return out;
}

inline std::string witness_kind_name(WitnessKind k) {
    switch (k) {
        case WitnessKind::unbalanced_line: return "unbalanced_line";
        case WitnessKind::non_coplanar_odd_lines: return "non_coplanar_odd_lines";
        case WitnessKind::alternation_failure: return "alternation_failure";
        case WitnessKind::perfect_hyperplane_missed: return "perfect_hyperplane_missed";
        case WitnessKind::halfspace_majority: return "halfspace_majority";
    }
    throw std::logic_error("witness_kind_name: unknown kind");
}

inline ordered_json witness_to_json(const WitnessData& w) {
    ordered_json out;
    out["kind"] = witness_kind_name(w.kind);
    out["candidate"] = point_to_json(w.candidate);
    if (w.line) out["line"] = line_to_json(*w.line);
    if (w.hyperplane) out["hyperplane"] = hyperplane_to_json(*w.hyperplane);
    return out;
}

inline ordered_json stats_to_json(const SolveStats& st) {
    ordered_json out;
    out["candidates_scanned"] = st.candidates_scanned;
    out["points_grouped"] = st.points_grouped;
    out["lines_classified"] = st.lines_classified;
    out["line_pairs_examined"] = st.line_pairs_examined;
    out["intersections_found"] = st.intersections_found;
    return out;
}

// Key order is part of the format: outcome, winning_point, winning_segment,
// unique, witness, stats.  Absent fields are omitted, not null.
inline ordered_json verdict_to_json(const Verdict& v, const SolveStats* stats = nullptr) {
    ordered_json out;
    out["outcome"] = v.outcome == Outcome::alice_wins ? "alice" : "bob";
    if (v.winning_point) out["winning_point"] = point_to_json(*v.winning_point);
    if (v.winning_segment) {
        auto seg = ordered_json::array();
        seg.push_back(point_to_json(v.winning_segment->first));
        seg.push_back(point_to_json(v.winning_segment->second));
        out["winning_segment"] = std::move(seg);
    }
    out["unique"] = v.unique;
    if (v.witness) out["witness"] = witness_to_json(*v.witness);
    if (stats) out["stats"] = stats_to_json(*stats);
    return out;
}

inline ordered_json scores_to_json(const Scores& s) {
    ordered_json out;
    out["v_a"] = s.v_a;
    out["v_b"] = s.v_b;
    out["abstentions"] = s.abstentions;
    return out;
}

inline ordered_json best_response_to_json(const BestResponse& br) {
    ordered_json out;
    out["b"] = point_to_json(br.b);
    out["scores"] = scores_to_json(br.scores);
    out["margin"] = br.margin;
    out["separating"] = hyperplane_to_json(br.separating);
    return out;
}

}  // namespace euclidvote
