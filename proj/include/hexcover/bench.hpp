#pragma once

#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "hexcover/bounds.hpp"
#include "hexcover/placement_combined.hpp"
#include "hexcover/placement_fixed.hpp"

namespace hexcover {

struct BenchRow {
    int k = 0;
    int trial = 0;
    int n_vertices = 0;
    double area_value = 0.0;
    double perimeter_value = 0.0;
    long long count_fixed = 0;
    long long count_sweep = 0;
    double theta_fixed = 0.0;
    double theta_sweep = 0.0;
    long long toth = 0;
    long long improved = 0;         // at the fixed algorithm's angle
    long long improved_sweep = 0;   // at the sweep winner's angle
    double lower_explicit = 0.0;
    double ratio = 0.0;             // count_fixed / lower_explicit
    double fixed_ms = 0.0;
};

namespace detail {

// Bit-derived uniforms keep the generator reproducible across standard
// library implementations.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline ConvexPolygon random_hull_in_box(std::mt19937_64& rng, double box, int points) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Point2> pts;
        pts.reserve(static_cast<size_t>(points));
        for (int i = 0; i < points; ++i)
            pts.push_back({box * uniform_unit(rng), box * uniform_unit(rng)});
        try {
            return convex_hull(std::move(pts));
        } catch (const DegenerateInput&) {
            continue;
        }
    }
    throw DegenerateInput("could not sample a nondegenerate hull");
}

}  // namespace detail

inline std::vector<BenchRow> run_bench(unsigned long long seed, const std::vector<int>& sizes, int trials,
                                       int sweep_angles = 60) {
    std::vector<BenchRow> rows;
    for (int k : sizes) {
        for (int trial = 0; trial < trials; ++trial) {
            std::mt19937_64 rng(seed * 1000003ULL + static_cast<unsigned long long>(k) * 1009ULL +
                                static_cast<unsigned long long>(trial));
            const ConvexPolygon poly = detail::random_hull_in_box(rng, static_cast<double>(k), 16);
            BenchRow row;
            row.k = k;
            row.trial = trial;
            row.n_vertices = poly.size();
            row.area_value = area(poly);
            row.perimeter_value = perimeter(poly);

            const Covering fixed = cover_fixed(poly);
            row.count_fixed = fixed.count;
            row.theta_fixed = fixed.theta;
            row.fixed_ms = fixed.diagnostics.runtime_ms;

            const Covering sweep = cover_sweep(poly, sweep_angles);
            row.count_sweep = sweep.count;
            row.theta_sweep = sweep.theta;

            row.toth = toth_upper(row.area_value, row.perimeter_value);
            const Point2 c = centroid(poly);
            const ConvexPolygon centered = translate(poly, -c);
            row.improved = improved_upper(centered, Angle(fixed.theta));
            row.improved_sweep = improved_upper(centered, Angle(sweep.theta));
            row.lower_explicit = lower_bound(row.area_value, row.perimeter_value, true);
            row.ratio = approximation_ratio(row.count_fixed, row.area_value, row.perimeter_value);
            rows.push_back(row);
        }
    }
    return rows;
}

// Plain-text table, one row per instance. Timings are wall-clock and
// nondeterministic, so they go to a sidecar file and the table itself is
// byte-identical for a given seed.
inline void write_bench_report(const std::vector<BenchRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path);
    char line[512];
    out << "k N A L count_fixed count_sweep toth improved lower ratio\n";
    for (const BenchRow& r : rows) {
        std::snprintf(line, sizeof line, "%d %d %.6f %.6f %lld %lld %lld %lld %.6f %.6f\n", r.k,
                      r.n_vertices, r.area_value, r.perimeter_value, r.count_fixed, r.count_sweep, r.toth,
                      r.improved, r.lower_explicit, r.ratio);
        out << line;
    }
    std::vector<int> ks;
    for (const BenchRow& r : rows)
        if (ks.empty() || ks.back() != r.k) ks.push_back(r.k);
    out << "# per-k mean ratios\n";
    for (int k : ks) {
        double ratio_sum = 0.0;
        int n = 0;
        for (const BenchRow& r : rows) {
            if (r.k != k) continue;
            ratio_sum += r.ratio;
            ++n;
        }
        std::snprintf(line, sizeof line, "# k=%d mean_ratio=%.6f\n", k, ratio_sum / n);
        out << line;
    }

    std::ofstream timing(path + ".timing");
    timing << "# mean fixed-algorithm runtime per size class; doubling k doubles\n"
              "# the window diameter D and the fixed search grows like D^3 N^2\n";
    for (int k : ks) {
        double sum = 0.0;
        int n = 0;
        for (const BenchRow& r : rows) {
            if (r.k != k) continue;
            sum += r.fixed_ms;
            ++n;
        }
        std::snprintf(line, sizeof line, "k=%d mean_fixed_ms=%.3f\n", k, sum / n);
        timing << line;
    }
}

}  // namespace hexcover
