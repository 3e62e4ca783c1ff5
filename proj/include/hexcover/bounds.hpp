#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hexcover/geometry.hpp"
#include "hexcover/hex_lattice.hpp"
#include "hexcover/orientation.hpp"

namespace hexcover {

// Guaranteed approximation ratio 1 + 8/(pi*sqrt3), up to o(1).
inline const double kRatioBound = 1.0 + 8.0 / (kPi * kSqrt3);

struct BoundsReport {
    long long toth_upper = 0;
    long long improved_upper = 0;
    double lower_asymptotic = 0.0;
    double lower_explicit = 0.0;
    double ratio_bound = kRatioBound;
};

// floor(2A/(3*sqrt3) + 2L/(pi*sqrt3) + 1) unit discs always suffice for a
// convex region of area A and perimeter L.
inline long long toth_upper(double area_value, double perimeter_value) {
    if (area_value < 0.0 || perimeter_value < 0.0) throw DegenerateInput("negative area or perimeter");
    const double v = 2.0 * area_value / (3.0 * kSqrt3) + 2.0 * perimeter_value / (kPi * kSqrt3) + 1.0;
    return static_cast<long long>(std::floor(v));
}

// floor of the expected cell count at the given orientation; at the
// optimal angle this is at most toth_upper + 1 and usually smaller.
inline long long improved_upper(const ConvexPolygon& poly, Angle theta) {
    return static_cast<long long>(std::floor(expected_hexagons(poly, theta)));
}

// Lower bound on any covering: max{2A/(3*sqrt3), L/4} - C. The explicit
// form instantiates the constants from the proofs (2*pi^3/3 inside the
// area term, pi in the perimeter term) and clamps at zero.
inline double lower_bound(double area_value, double perimeter_value, bool explicit_constants) {
    if (area_value < 0.0 || perimeter_value < 0.0) throw DegenerateInput("negative area or perimeter");
    if (!explicit_constants)
        return std::max(2.0 * area_value / (3.0 * kSqrt3), perimeter_value / 4.0);
    const double area_term = 2.0 * (area_value - 2.0 * kPi * kPi * kPi / 3.0) / (3.0 * kSqrt3);
    const double perim_term = perimeter_value / 4.0 - kPi;
    return std::max(0.0, std::max(area_term, perim_term));
}

inline double approximation_ratio(long long n, double area_value, double perimeter_value) {
    const double lb = lower_bound(area_value, perimeter_value, true);
    if (lb <= 0.0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(n) / lb;
}

inline BoundsReport make_bounds_report(const ConvexPolygon& poly, Angle theta_chosen) {
    BoundsReport r;
    const double a = area(poly), l = perimeter(poly);
    r.toth_upper = toth_upper(a, l);
    r.improved_upper = improved_upper(poly, theta_chosen);
    r.lower_asymptotic = lower_bound(a, l, false);
    r.lower_explicit = lower_bound(a, l, true);
    return r;
}

struct CoverageReport {
    bool valid = false;
    double max_violation_distance = 0.0;
    std::optional<Point2> uncovered_witness;
    long long cells_checked = 0;
    long long samples_checked = 0;
};

namespace detail {

// Nearest-center queries on a unit-sized bucket grid.
class CenterGrid {
public:
    explicit CenterGrid(const std::vector<Point2>& centers) : centers_(centers) {
        for (size_t i = 0; i < centers.size(); ++i)
            buckets_.push_back({key(centers[i]), static_cast<int>(i)});
        std::sort(buckets_.begin(), buckets_.end());
    }

    double min_distance(Point2 p) const {
        double best = std::numeric_limits<double>::infinity();
        const auto [kx, ky] = key(p);
        for (long long dx = -2; dx <= 2; ++dx) {
            for (long long dy = -2; dy <= 2; ++dy) {
                auto lo = std::lower_bound(buckets_.begin(), buckets_.end(),
                                           std::pair{std::pair{kx + dx, ky + dy}, -1});
                for (; lo != buckets_.end() && lo->first == std::pair{kx + dx, ky + dy}; ++lo)
                    best = std::min(best, distance(p, centers_[static_cast<size_t>(lo->second)]));
            }
        }
        if (!std::isfinite(best)) {
            for (const Point2& c : centers_) best = std::min(best, distance(p, c));
        }
        return best;
    }

private:
    static std::pair<long long, long long> key(Point2 p) {
        return {static_cast<long long>(std::floor(p.x)), static_cast<long long>(std::floor(p.y))};
    }
    std::vector<Point2> centers_;
    std::vector<std::pair<std::pair<long long, long long>, int>> buckets_;
};

inline std::vector<Point2> boundary_samples(const std::vector<Point2>& verts, int samples) {
    std::vector<Point2> out;
    out.reserve(static_cast<size_t>(samples));
    const double total = ring_perimeter(verts);
    const size_t n = verts.size();
    double step = total / samples;
    double carried = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const Point2 a = verts[i], b = verts[(i + 1) % n];
        const double len = distance(a, b);
        double s = carried;
        while (s < len) {
            out.push_back(a + (s / len) * (b - a));
            s += step;
        }
        carried = s - len;
    }
    return out;
}

template <typename InsideFn>
inline std::vector<Point2> interior_grid(double xmin, double xmax, double ymin, double ymax,
                                         double spacing, const InsideFn& inside) {
    std::vector<Point2> out;
    const double row_h = spacing * kSqrt3 / 2.0;
    int row = 0;
    for (double y = ymin; y <= ymax; y += row_h, ++row) {
        const double off = (row % 2 == 0) ? 0.0 : spacing / 2.0;
        for (double x = xmin + off; x <= xmax; x += spacing) {
            const Point2 p{x, y};
            if (inside(p)) out.push_back(p);
        }
    }
    return out;
}

inline bool centers_are_lattice_points(const std::vector<Point2>& centers, double tol = 1e-6) {
    if (centers.empty()) return false;
    for (const Point2& c : centers) {
        if (distance(c, lattice_point(cell_containing(c))) > tol) return false;
    }
    return true;
}

template <typename Poly>
inline CoverageReport verify_coverage_impl(const Poly& placed, const std::vector<Point2>& centers,
                                           const std::vector<LatticeIndex>& required_cells,
                                           const auto& inside_fn, int samples) {
    CoverageReport report;
    if (centers.empty()) return report;

    const Point2 c0 = ring_centroid(placed.vertices());
    const double d = min_enclosing_circle(placed).radius * 2.0;
    for (const Point2& c : centers) {
        if (std::abs(c.x - c0.x) > d + 3.0 + 1.0 || std::abs(c.y - c0.y) > d + 3.0 + 1.0)
            throw FrameMismatch("covering center lies outside the window of the region");
    }

    const CenterGrid grid(centers);
    double violation = 0.0;
    std::optional<Point2> witness;
    const auto probe = [&](Point2 p) {
        ++report.samples_checked;
        const double v = grid.min_distance(p) - 1.0;
        if (v > violation) {
            violation = v;
            witness = p;
        }
    };

    // Tier (a): exact cell check, applicable when centers are lattice points.
    if (centers_are_lattice_points(centers)) {
        std::vector<LatticeIndex> have;
        for (const Point2& c : centers) have.push_back(cell_containing(c));
        std::sort(have.begin(), have.end());
        for (const LatticeIndex& idx : required_cells) {
            ++report.cells_checked;
            if (std::binary_search(have.begin(), have.end(), idx)) continue;
            // Probe the missing cell against the discs that are present.
            const Point2 cc = lattice_point(idx);
            const ConvexPolygon cell = translate(voronoi_hexagon(), cc);
            const auto in_cell_and_region = [&](Point2 q) {
                return point_in_convex(q, cell, Containment::kClosed) && inside_fn(q);
            };
            const double before = violation;
            for (const Point2& p :
                 interior_grid(cc.x - 1.0, cc.x + 1.0, cc.y - 1.0, cc.y + 1.0, 0.01, in_cell_and_region))
                probe(p);
            if (violation <= before + kEps) {
                // Required cell absent even though its strip happens to be
                // disc-covered; still a certification failure.
                violation = std::max(violation, 2.0 * kEps);
                if (!witness) witness = cc;
            }
        }
    }

    // Tier (b): sampled boundary plus a triangular interior grid.
    for (const Point2& p : boundary_samples(placed.vertices(), samples)) probe(p);
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = xmax;
    for (const Point2& v : placed.vertices()) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }
    for (const Point2& p : interior_grid(xmin, xmax, ymin, ymax, 0.05, inside_fn)) probe(p);

    report.max_violation_distance = violation;
    report.uncovered_witness = violation > kEps ? witness : std::nullopt;
    report.valid = violation <= kEps;
    return report;
}

}  // namespace detail

// Certifies that unit discs at `centers` cover the placed region. When
// the centers are lattice points the check is exact on cells; a sampled
// check (boundary + interior grid) applies either way. Centers must be
// in the same frame as the placed polygon.
inline CoverageReport verify_coverage(const ConvexPolygon& placed, const std::vector<Point2>& centers,
                                      int samples = 10000) {
    return detail::verify_coverage_impl(
        placed, centers, cells_intersecting(placed),
        [&](Point2 p) { return point_in_convex(p, placed, Containment::kClosed); }, samples);
}

inline CoverageReport verify_coverage(const SimplePolygon& placed, const std::vector<Point2>& centers,
                                      const std::vector<LatticeIndex>& required_cells, int samples = 10000) {
    return detail::verify_coverage_impl(
        placed, centers, required_cells, [&](Point2 p) { return point_in_simple(p, placed); }, samples);
}

struct OraclePose {
    Point2 translation{0.0, 0.0};
    double theta = 0.0;
    int count = 0;
};

// Brute-force search over a theta grid and a translation grid on the
// fundamental parallelogram of the lattice; exact cell count per pose.
inline OraclePose oracle_grid_search(const ConvexPolygon& centered, int theta_grid, int trans_grid) {
    OraclePose best;
    best.count = std::numeric_limits<int>::max();
    const HexLattice lattice;
    for (int ti = 0; ti < theta_grid; ++ti) {
        const double theta = ti * kPi / 3.0 / theta_grid;
        for (int a = 0; a < trans_grid; ++a) {
            for (int b = 0; b < trans_grid; ++b) {
                const Point2 t = (static_cast<double>(a) / trans_grid) * lattice.basis1 +
                                 (static_cast<double>(b) / trans_grid) * lattice.basis2;
                const int count = pose_cell_count(centered, t, Angle(theta));
                if (count < best.count) {
                    best = {t, theta, count};
                }
            }
        }
    }
    return best;
}

// |integral of w over [0, pi] minus the perimeter| (Cauchy's formula),
// composite trapezoid rule on 10^4 intervals.
inline double cauchy_residual(const ConvexPolygon& poly) {
    constexpr int kIntervals = 10000;
    double integral = 0.5 * (width(poly, Angle(0.0)) + width(poly, Angle(kPi)));
    for (int i = 1; i < kIntervals; ++i) integral += width(poly, Angle(i * kPi / kIntervals));
    integral *= kPi / kIntervals;
    return std::abs(integral - perimeter(poly));
}

}  // namespace hexcover
