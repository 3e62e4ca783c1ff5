#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_set>
#include <vector>

#include "hexcover/covering.hpp"
#include "hexcover/geometry.hpp"
#include "hexcover/hex_lattice.hpp"
#include "hexcover/orientation.hpp"

namespace hexcover {

// T_mn(theta): Minkowski sum of the reflected, clockwise-rotated region
// with the cell hexagon, translated to its lattice point. A pose
// translation t lies in T_mn(theta) exactly when the placed region meets
// cell (m, n).
struct MinkowskiRegion {
    LatticeIndex index;
    ConvexPolygon polygon;
};

struct CandidateProvenance {
    enum class Kind { kRegionRegion, kRegionHexEdge, kRegionCorner, kHexCorner };
    Kind kind = Kind::kHexCorner;
    int a = -1;
    int b = -1;
};

struct CandidatePoint {
    Point2 point;
    CandidateProvenance provenance;
};

struct PlacementResult {
    Point2 translation{0.0, 0.0};
    Angle theta;
    long long count = 0;
    std::vector<LatticeIndex> indices;
    long long candidates_evaluated = 0;
};

namespace detail {

struct BoundingBox {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
};

inline BoundingBox bounding_box(const ConvexPolygon& p) {
    BoundingBox bb{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Point2& v : p.vertices()) {
        bb.xmin = std::min(bb.xmin, v.x);
        bb.xmax = std::max(bb.xmax, v.x);
        bb.ymin = std::min(bb.ymin, v.y);
        bb.ymax = std::max(bb.ymax, v.y);
    }
    return bb;
}

inline ConvexPolygon reflect_rotate(const ConvexPolygon& poly, Angle theta) {
    return rotate(reflect_origin(poly), Angle(-theta.rad));
}

// Ray angles of every boundary line passing through p (region edges and
// hexagon edges within tol of it). The bisectors of consecutive rays
// point into each wedge of the local arrangement fan.
inline void accumulate_boundary_rays(Point2 p, const ConvexPolygon& poly, std::vector<double>& rays,
                                     double tol = 1e-7) {
    const auto& v = poly.vertices();
    for (size_t i = 0, n = v.size(); i < n; ++i) {
        const Point2 a = v[i], b = v[(i + 1) % n];
        const double len2 = squared_norm(b - a);
        const double t = std::clamp(dot(p - a, b - a) / len2, 0.0, 1.0);
        if (distance(p, a + t * (b - a)) > tol) continue;
        const double ang = normalize_angle(std::atan2(b.y - a.y, b.x - a.x));
        rays.push_back(ang);
        rays.push_back(normalize_angle(ang + kPi));
    }
}

inline void finalize_rays(std::vector<double>& rays) {
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end(), [](double x, double y) { return std::abs(x - y) < 1e-9; }),
               rays.end());
}

inline std::vector<double> boundary_ray_angles(Point2 p, const std::vector<const ConvexPolygon*>& polys) {
    std::vector<double> rays;
    for (const ConvexPolygon* poly : polys) accumulate_boundary_rays(p, *poly, rays);
    finalize_rays(rays);
    return rays;
}

// Probe points that land inside every wedge of the local fan, plus the
// eight compass offsets and the point itself. Multiple radii cover thin
// wedges whose clearance at one radius falls under the incidence eps.
inline std::vector<Point2> realization_probes(Point2 p, const std::vector<double>& rays) {
    std::vector<Point2> probes{p};
    for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
            if (dx || dy) probes.push_back(p + (10.0 * kEps) * Point2{static_cast<double>(dx), static_cast<double>(dy)});
    for (size_t i = 0; i < rays.size(); ++i) {
        const double a = rays[i];
        const double b = i + 1 < rays.size() ? rays[i + 1] : rays[0] + 2.0 * kPi;
        const double mid = 0.5 * (a + b);
        for (double radius : {1e-8, 1e-6}) probes.push_back(p + radius * unit_vector(mid));
    }
    return probes;
}

// Deduplication key on a grid of spacing 10*kEps; near-parallel edge
// intersections cluster tighter than that.
struct PointKey {
    long long x, y;
    explicit PointKey(Point2 p)
        : x(static_cast<long long>(std::llround(p.x / (10.0 * kEps)))),
          y(static_cast<long long>(std::llround(p.y / (10.0 * kEps)))) {}
    bool operator==(const PointKey&) const = default;
};

struct PointKeyHash {
    size_t operator()(const PointKey& k) const {
        return std::hash<long long>()(k.x * 1000003LL + k.y);
    }
};

}  // namespace detail

// One region per window index whose bounding box can reach the origin
// cell; regions that cannot meet the cell are irrelevant for candidate
// generation inside it.
inline std::vector<MinkowskiRegion> build_regions(const ConvexPolygon& centered, Angle theta) {
    const ConvexPolygon base = minkowski_sum_convex(detail::reflect_rotate(centered, theta), voronoi_hexagon());
    const detail::BoundingBox bb = detail::bounding_box(base);
    const detail::BoundingBox hex_bb{-kSqrt3 / 2.0, kSqrt3 / 2.0, -1.0, 1.0};

    const Window window(diameter(centered) + 3.0);
    std::vector<MinkowskiRegion> regions;
    for (const LatticeIndex& idx : indices_in_window(window)) {
        const Point2 c = lattice_point(idx);
        if (bb.xmax + c.x < hex_bb.xmin - kEps || bb.xmin + c.x > hex_bb.xmax + kEps ||
            bb.ymax + c.y < hex_bb.ymin - kEps || bb.ymin + c.y > hex_bb.ymax + kEps)
            continue;
        regions.push_back({idx, translate(base, c)});
    }
    return regions;
}

// Candidate translations inside the closed origin cell: pairwise region
// boundary intersections, region boundary x hexagon edge intersections,
// region corners inside the cell, and the six hexagon corners.
inline std::vector<CandidatePoint> candidate_points(const std::vector<MinkowskiRegion>& regions,
                                                    const ConvexPolygon& hexagon) {
    std::vector<CandidatePoint> out;
    std::unordered_set<detail::PointKey, detail::PointKeyHash> seen;
    const auto push = [&](Point2 p, CandidateProvenance prov) {
        if (!point_in_convex(p, hexagon, Containment::kClosed, 10.0 * kEps)) return;
        if (!seen.insert(detail::PointKey(p)).second) return;
        out.push_back({p, prov});
    };
    const auto edges_of = [](const ConvexPolygon& poly, size_t i) {
        return std::pair{poly.vertex(static_cast<int>(i)),
                         poly.vertex(static_cast<int>((i + 1) % poly.vertices().size()))};
    };

    for (int k = 0; k < hexagon.size(); ++k)
        push(hexagon.vertex(k), {CandidateProvenance::Kind::kHexCorner, k, -1});

    const int nr = static_cast<int>(regions.size());
    for (int i = 0; i < nr; ++i) {
        const ConvexPolygon& pi = regions[static_cast<size_t>(i)].polygon;
        for (int v = 0; v < pi.size(); ++v)
            push(pi.vertex(v), {CandidateProvenance::Kind::kRegionCorner, i, v});

        for (size_t e = 0; e < pi.vertices().size(); ++e) {
            const auto [a, b] = edges_of(pi, e);
            for (size_t h = 0; h < hexagon.vertices().size(); ++h) {
                const auto [c, d] = edges_of(hexagon, h);
                const SegmentClassification cls = classify_segments(a, b, c, d);
                if (cls.relation == SegmentRelation::kPoint)
                    push(cls.point, {CandidateProvenance::Kind::kRegionHexEdge, i, static_cast<int>(h)});
                else if (cls.relation == SegmentRelation::kOverlap) {
                    push(cls.overlap_a, {CandidateProvenance::Kind::kRegionHexEdge, i, static_cast<int>(h)});
                    push(cls.overlap_b, {CandidateProvenance::Kind::kRegionHexEdge, i, static_cast<int>(h)});
                }
            }
        }

        for (int j = i + 1; j < nr; ++j) {
            const ConvexPolygon& pj = regions[static_cast<size_t>(j)].polygon;
            for (size_t ei = 0; ei < pi.vertices().size(); ++ei) {
                const auto [a, b] = edges_of(pi, ei);
                for (size_t ej = 0; ej < pj.vertices().size(); ++ej) {
                    const auto [c, d] = edges_of(pj, ej);
                    const SegmentClassification cls = classify_segments(a, b, c, d);
                    if (cls.relation == SegmentRelation::kPoint)
                        push(cls.point, {CandidateProvenance::Kind::kRegionRegion, i, j});
                    else if (cls.relation == SegmentRelation::kOverlap) {
                        push(cls.overlap_a, {CandidateProvenance::Kind::kRegionRegion, i, j});
                        push(cls.overlap_b, {CandidateProvenance::Kind::kRegionRegion, i, j});
                    }
                }
            }
        }
    }
    return out;
}

// Number of regions whose interior contains p with margin kEps.
inline int count_interior(Point2 p, const std::vector<MinkowskiRegion>& regions) {
    int count = 0;
    for (const MinkowskiRegion& r : regions)
        if (point_in_convex(p, r.polygon, Containment::kInterior)) ++count;
    return count;
}

// Algorithm: score every candidate by its interior region count, then
// realize the smallest achievable closed-cell count by probing into the
// local arrangement wedges around the best-scoring candidates. A
// candidate whose interior count already matches the best exact count
// cannot improve it, so the sweep stops early.
inline PlacementResult optimal_translation(const ConvexPolygon& centered, Angle theta) {
    const std::vector<MinkowskiRegion> regions = build_regions(centered, theta);
    const std::vector<CandidatePoint> candidates = candidate_points(regions, voronoi_hexagon());

    std::vector<std::pair<int, Point2>> scored;
    scored.reserve(candidates.size());
    for (const CandidatePoint& cand : candidates)
        scored.push_back({count_interior(cand.point, regions), cand.point});
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return lex_less(a.second, b.second, 1e-12);
    });

    std::vector<const ConvexPolygon*> fan_polys{&voronoi_hexagon()};
    for (const MinkowskiRegion& r : regions) fan_polys.push_back(&r.polygon);

    PlacementResult result;
    result.theta = theta;
    result.candidates_evaluated = static_cast<long long>(candidates.size());
    long long best_cells = std::numeric_limits<long long>::max();
    for (const auto& [interior_count, point] : scored) {
        if (interior_count >= best_cells) break;
        for (const Point2& probe : detail::realization_probes(point, detail::boundary_ray_angles(point, fan_polys))) {
            const std::vector<LatticeIndex> cells = cells_intersecting(placed_polygon(centered, probe, theta));
            if (static_cast<long long>(cells.size()) < best_cells) {
                best_cells = static_cast<long long>(cells.size());
                result.translation = probe;
                result.indices = cells;
            }
        }
    }
    result.count = best_cells;
    return result;
}

namespace detail {

inline Covering make_single_disc_covering(const Circle& circle, const std::string& algorithm) {
    Covering cov;
    cov.theta = 0.0;
    cov.translation = {0.0, 0.0};
    cov.centers = {circle.center};
    cov.count = 1;
    cov.algorithm = algorithm;
    cov.bounds.ratio_bound = kRatioBound;
    return cov;
}

inline Covering assemble_covering(const ConvexPolygon& input, Point2 input_centroid,
                                  const PlacementResult& res, const std::string& algorithm) {
    Covering cov;
    cov.theta = res.theta.rad;
    cov.translation = res.translation;
    cov.count = res.count;
    cov.algorithm = algorithm;
    for (const LatticeIndex& idx : res.indices)
        cov.centers.push_back(lattice_to_input(lattice_point(idx), res.translation, res.theta.rad, input_centroid));
    cov.bounds = make_bounds_report(input, res.theta);
    cov.diagnostics.candidates_evaluated = res.candidates_evaluated;
    return cov;
}

}  // namespace detail

// Optimal translation at the orientation that minimizes the expected
// cell count; one disc suffices whenever the region fits in a unit
// circle. Centers are reported in the input frame.
inline Covering cover_fixed(const ConvexPolygon& input) {
    const auto start = std::chrono::steady_clock::now();
    const Circle mec = min_enclosing_circle(input);
    if (mec.radius <= 1.0 + kEps) {
        Covering cov = detail::make_single_disc_covering(mec, "fixed");
        cov.bounds = make_bounds_report(input, Angle(0.0));
        cov.diagnostics.runtime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return cov;
    }
    const Point2 c = centroid(input);
    const ConvexPolygon centered = translate(input, -c);
    const ObjectiveReport obj = minimize_f(centered);
    const PlacementResult res = optimal_translation(centered, obj.theta_star);
    Covering cov = detail::assemble_covering(input, c, res, "fixed");
    cov.diagnostics.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return cov;
}

}  // namespace hexcover
