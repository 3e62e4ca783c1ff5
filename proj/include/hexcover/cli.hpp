#pragma once

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hexcover/bench.hpp"
#include "hexcover/bounds.hpp"
#include "hexcover/io.hpp"
#include "hexcover/placement_combined.hpp"
#include "hexcover/placement_fixed.hpp"

namespace hexcover::cli {

// Exit codes: 0 success, 2 input/validation error, 3 budget exceeded.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitBudget = 3;

namespace detail {

inline int cmd_cover(const std::string& input_path, const std::string& algorithm, int sweep_angles,
                     long long budget, const std::string& output_path, const std::string& svg_path,
                     std::ostream& out, std::ostream& err) {
    const PolygonFile file = read_polygon_file(input_path);
    Covering cov;
    if (algorithm == "nonconvex") {
        const SimplePolygon gamma(file.vertices);
        cov = cover_nonconvex(gamma, budget);
    } else {
        const ConvexPolygon omega(file.vertices);
        if (algorithm == "fixed")
            cov = cover_fixed(omega);
        else if (algorithm == "combined")
            cov = cover_combined(omega, budget);
        else if (algorithm == "sweep")
            cov = cover_sweep(omega, sweep_angles);
        else {
            err << "unknown algorithm: " << algorithm << "\n";
            return kExitInvalid;
        }
    }
    write_covering_file(cov, output_path);
    if (!svg_path.empty()) render_svg(file.vertices, cov, svg_path);
    out << "count " << cov.count << " (toth " << cov.bounds.toth_upper << ", improved "
        << cov.bounds.improved_upper << ", lower " << hexcover::detail::fmt_double(cov.bounds.lower_explicit)
        << ")\n";
    return kExitOk;
}

inline int cmd_bounds(const std::string& input_path, std::ostream& out) {
    const PolygonFile file = read_polygon_file(input_path);
    const ConvexPolygon omega(file.vertices);
    const Point2 c = centroid(omega);
    const ConvexPolygon centered = translate(omega, -c);
    const ObjectiveReport obj = minimize_f(centered);
    const BoundsReport r = make_bounds_report(centered, obj.theta_star);
    char line[256];
    std::snprintf(line, sizeof line,
                  "area %.6f\nperimeter %.6f\ntheta_star %.9f\ntoth_upper %lld\nimproved_upper %lld\n"
                  "lower_asymptotic %.6f\nlower_explicit %.6f\nratio_bound %.6f\n",
                  area(omega), perimeter(omega), obj.theta_star.rad, r.toth_upper, r.improved_upper,
                  r.lower_asymptotic, r.lower_explicit, r.ratio_bound);
    out << line;
    return kExitOk;
}

inline int cmd_verify(const std::string& input_path, const std::string& covering_path, int samples,
                      std::ostream& out) {
    const PolygonFile file = read_polygon_file(input_path);
    const Covering cov = read_covering_file(covering_path);

    std::vector<Point2> raw = file.vertices;
    CoverageReport report;
    const SimplePolygon gamma(raw);
    const Point2 c = centroid(gamma);
    std::vector<Point2> lattice_centers;
    for (const Point2& p : cov.centers)
        lattice_centers.push_back(input_to_lattice(p, cov.translation, cov.theta, c));

    bool convex_input = true;
    try {
        const ConvexPolygon omega(raw);
        report = verify_coverage(placed_polygon(translate(omega, -c), cov.translation, Angle(cov.theta)),
                                 lattice_centers, samples);
    } catch (const DegenerateInput&) {
        convex_input = false;
    }
    if (!convex_input) {
        const SimplePolygon placed = placed_polygon(translate(gamma, -c), cov.translation, Angle(cov.theta));
        const auto cells = hexcover::detail::union_cells_at_pose(
            triangulate(translate(gamma, -c)).triangles, cov.translation, Angle(cov.theta));
        report = verify_coverage(placed, lattice_centers, cells, samples);
    }

    if (report.valid) {
        out << "valid (" << report.samples_checked << " samples, " << report.cells_checked << " cells)\n";
        return kExitOk;
    }
    out << "INVALID max_violation " << hexcover::detail::fmt_double(report.max_violation_distance);
    if (report.uncovered_witness)
        out << " witness [" << hexcover::detail::fmt_double(report.uncovered_witness->x) << ", "
            << hexcover::detail::fmt_double(report.uncovered_witness->y) << "]";
    out << "\n";
    return 1;
}

inline int cmd_bench(unsigned long long seed, const std::string& sizes_csv, int trials,
                     const std::string& report_path, std::ostream& out) {
    std::vector<int> sizes;
    std::stringstream ss(sizes_csv);
    for (std::string tok; std::getline(ss, tok, ',');) {
        try {
            sizes.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw ParseError("sizes must be a comma-separated list of integers");
        }
    }
    if (sizes.empty()) throw ParseError("sizes must be a comma-separated list of integers");
    const std::vector<BenchRow> rows = run_bench(seed, sizes, trials);
    write_bench_report(rows, report_path);
    out << rows.size() << " rows written to " << report_path << "\n";
    return kExitOk;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"hexagonal-lattice unit-disc covering of polygonal regions"};
    app.require_subcommand(1);

    std::string input_path, output_path, svg_path, covering_path, report_path;
    std::string algorithm = "fixed";
    std::string sizes_csv = "5,10,20";
    int sweep_angles = 360;
    long long budget = kDefaultTripleBudget;
    int samples = 10000;
    int trials = 3;
    unsigned long long seed = 1;

    CLI::App* cover = app.add_subcommand("cover", "compute a unit-disc covering");
    cover->add_option("--input", input_path)->required();
    cover->add_option("--algorithm", algorithm)
        ->check(CLI::IsMember({"fixed", "combined", "nonconvex", "sweep"}));
    cover->add_option("--sweep-angles", sweep_angles);
    cover->add_option("--output", output_path)->required();
    cover->add_option("--svg", svg_path);
    cover->add_option("--budget", budget);

    CLI::App* bounds = app.add_subcommand("bounds", "print the covering bounds for a region");
    bounds->add_option("--input", input_path)->required();

    CLI::App* verify = app.add_subcommand("verify", "check a covering file against its region");
    verify->add_option("--input", input_path)->required();
    verify->add_option("--covering", covering_path)->required();
    verify->add_option("--samples", samples);

    CLI::App* bench = app.add_subcommand("bench", "run the randomized benchmark harness");
    bench->add_option("--seed", seed);
    bench->add_option("--sizes", sizes_csv);
    bench->add_option("--trials", trials);
    bench->add_option("--report", report_path)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << e.what() << "\n";
        return kExitInvalid;
    }

    try {
        if (cover->parsed())
            return detail::cmd_cover(input_path, algorithm, sweep_angles, budget, output_path, svg_path, out,
                                     err);
        if (bounds->parsed()) return detail::cmd_bounds(input_path, out);
        if (verify->parsed()) return detail::cmd_verify(input_path, covering_path, samples, out);
        if (bench->parsed()) return detail::cmd_bench(seed, sizes_csv, trials, report_path, out);
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}

}  // namespace hexcover::cli
