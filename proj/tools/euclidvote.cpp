// euclidvote: exact placement decisions for finite voter sets.
//
// Subcommands read a voter set from --in PATH or stdin (CSV rows or a JSON
// document, sniffed unless --format says otherwise) and print one JSON
// result on stdout.  Exit 0 means the run completed, whatever the outcome;
// --check turns an unexpected outcome into exit 1; any error exits 2.
// Set EUCLIDVOTE_LOG=1 for timing and size diagnostics on stderr.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "euclidvote/io.hpp"
#include "euclidvote/svg.hpp"

namespace {

using namespace euclidvote;

bool log_enabled() {
    const char* v = std::getenv("EUCLIDVOTE_LOG");
    return v && *v;
}

std::string read_stream(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

VoterSet load_voters(const std::string& path, const std::string& format) {
    std::string text;
    if (path.empty()) {
        text = read_stream(std::cin);
    } else {
        std::ifstream file(path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open " + path);
        text = read_stream(file);
    }
    InputFormat fmt;
    if (format == "csv")
        fmt = InputFormat::csv;
    else if (format == "json")
        fmt = InputFormat::json;
    else
        fmt = sniff_format(text);
    VoterSet s = parse_points(text, fmt);
    if (log_enabled())
        std::cerr << "euclidvote: " << s.size() << " voters, dim " << s.dim() << "\n";
    return s;
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + path);
    file << bytes;
}

void print_json(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact two-candidate placement solver"};
    app.require_subcommand(1);

    std::string in_path, in_format = "auto";
    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("--in", in_path, "input file (default: stdin)");
        cmd->add_option("--format", in_format, "input format: auto, csv, json")
            ->check(CLI::IsMember({"auto", "csv", "json"}));
    };

    auto* solve_cmd = app.add_subcommand("solve", "decide who wins the instance");
    add_input(solve_cmd);
    std::string check, svg_path;
    int threads = 1;
    solve_cmd->add_option("--check", check, "exit 1 unless this side wins")
        ->check(CLI::IsMember({"alice", "bob"}));
    solve_cmd->add_option("--threads", threads, "worker threads for the even stage")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--svg", svg_path, "also draw the instance (dim 2) to this path");

    auto* eval_cmd = app.add_subcommand("eval", "score one fixed pair of placements");
    add_input(eval_cmd);
    std::string alice_arg, bob_arg, point_arg;
    eval_cmd->add_option("--alice", alice_arg, "first placement, e.g. 1/2,-3")->required();
    eval_cmd->add_option("--bob", bob_arg, "second placement")->required();

    auto* br_cmd = app.add_subcommand("best-response", "strongest reply to a placement");
    add_input(br_cmd);
    br_cmd->add_option("--alice", alice_arg, "placement to reply to")->required();

    auto* depth_cmd = app.add_subcommand("depth", "guaranteed votes at a point");
    add_input(depth_cmd);
    depth_cmd->add_option("--point", point_arg, "query point")->required();

    auto* rado_cmd = app.add_subcommand("rado", "deepest enumerated candidate point");
    add_input(rado_cmd);

    auto* gen_cmd = app.add_subcommand("gen", "emit a named voter configuration");
    std::string config, shift = "1/10", gen_format = "json";
    int gen_n = 0, gen_d = 0;
    std::uint64_t seed = 1;
    long long box = 2048;
    gen_cmd->add_option("--config", config, "configuration name")->required();
    gen_cmd->add_option("--n", gen_n, "point count (0 = config default)");
    gen_cmd->add_option("--d", gen_d, "dimension (0 = config default)");
    gen_cmd->add_option("--seed", seed, "generator seed");
    gen_cmd->add_option("--shift", shift, "perturbation as p/q");
    gen_cmd->add_option("--box", box, "coordinate range for random configs");
    gen_cmd->add_option("--format", gen_format, "output format: json, csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* plot_cmd = app.add_subcommand("plot", "solve and draw the instance (dim 2)");
    add_input(plot_cmd);
    plot_cmd->add_option("--svg", svg_path, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*solve_cmd) {
            VoterSet s = load_voters(in_path, in_format);
            SolveStats st;
            SolveOptions opt;
            opt.threads = threads;
            auto t0 = std::chrono::steady_clock::now();
            Verdict v = solve(s, &st, opt);
            if (log_enabled()) {
                std::chrono::duration<double, std::milli> ms =
                    std::chrono::steady_clock::now() - t0;
                std::cerr << "euclidvote: solve took " << ms.count() << " ms\n";
            }
            print_json(verdict_to_json(v, &st));
            if (!svg_path.empty()) write_file(svg_path, render_svg(s, &v));
            if (!check.empty()) {
                const bool alice = v.outcome == Outcome::alice_wins;
                if (check == "alice" ? !alice : alice) {
                    std::cerr << "check failed: outcome is " << (alice ? "alice" : "bob")
                              << "\n";
                    return 1;
                }
            }
        } else if (*eval_cmd) {
            VoterSet s = load_voters(in_path, in_format);
            print_json(scores_to_json(evaluate(s, parse_coords(alice_arg),
                                               parse_coords(bob_arg))));
        } else if (*br_cmd) {
            VoterSet s = load_voters(in_path, in_format);
            print_json(best_response_to_json(best_response(s, parse_coords(alice_arg))));
        } else if (*depth_cmd) {
            VoterSet s = load_voters(in_path, in_format);
            Point p = parse_coords(point_arg);
            const std::size_t depth = guaranteed_votes(s, p);
            ordered_json out;
            out["point"] = point_to_json(p);
            out["guaranteed_votes"] = depth;
            out["best_response_margin"] =
                static_cast<long long>(s.size()) - 2 * static_cast<long long>(depth);
            print_json(out);
        } else if (*rado_cmd) {
            VoterSet s = load_voters(in_path, in_format);
            auto [p, count] = find_rado_point(s);
            ordered_json out;
            out["point"] = point_to_json(p);
            out["count"] = count;
            out["required"] = (s.size() + s.dim()) / (s.dim() + 1);
            print_json(out);
        } else if (*gen_cmd) {
            GenConfig cfg;
            cfg.name = config;
            cfg.n = gen_n;
            cfg.d = gen_d;
            cfg.seed = seed;
            cfg.shift = Scalar::from_string(shift);
            cfg.box = box;
            VoterSet s = generate_voters(cfg);
            std::cout << (gen_format == "csv" ? emit_points_csv(s) : emit_points_json(s));
        } else if (*plot_cmd) {
            VoterSet s = load_voters(in_path, in_format);
            Verdict v = solve(s);
            std::string svg = render_svg(s, &v);
            if (svg_path.empty())
                std::cout << svg;
            else
                write_file(svg_path, svg);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
