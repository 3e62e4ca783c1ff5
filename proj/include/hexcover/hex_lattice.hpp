#pragma once

#include <cmath>
#include <vector>

#include "hexcover/geometry.hpp"

namespace hexcover {

// Lattice basis: (sqrt3, 0) and (sqrt3/2, 3/2). Voronoi cells are regular
// hexagons of circumradius 1, so every cell fits in a unit disc centered
// at its lattice point.
struct LatticeIndex {
    int m = 0;
    int n = 0;
    friend bool operator==(LatticeIndex a, LatticeIndex b) { return a.m == b.m && a.n == b.n; }
    friend bool operator<(LatticeIndex a, LatticeIndex b) {
        return a.m < b.m || (a.m == b.m && a.n < b.n);
    }
};

struct HexLattice {
    Point2 basis1{kSqrt3, 0.0};
    Point2 basis2{kSqrt3 / 2.0, 1.5};
};

inline constexpr double kHexCellArea = 3.0 * std::numbers::sqrt3 / 2.0;

// Phase conventions for the canonical hexagon: the lattice Voronoi cell
// has its first vertex at angle pi/6 (two vertices on the y axis); the
// zero-phase hexagon has a vertex on the x axis. Only the Voronoi cell
// tiles the plane under lattice translation.
inline constexpr double kZeroPhase = 0.0;
inline const double kVoronoiPhase = kPi / 6.0;

// Square window [-half_extent, half_extent]^2; sized D + 3 so that a
// centered region and every cell it can touch fit inside.
struct Window {
    double half_extent;
    explicit Window(double half) : half_extent(half) {
        if (!(half >= 3.0)) throw DegenerateInput("window half-extent must be at least 3");
    }
};

inline Point2 lattice_point(LatticeIndex idx) {
    return {idx.m * kSqrt3 + idx.n * (kSqrt3 / 2.0), idx.n * 1.5};
}

inline ConvexPolygon canonical_hexagon(Angle phase) {
    const bool zero_phase = std::abs(phase.rad - kZeroPhase) <= kEps;
    const bool voronoi = std::abs(phase.rad - kVoronoiPhase) <= kEps;
    if (!zero_phase && !voronoi) throw UnsupportedPhase("hexagon phase must be 0 or pi/6");
    const double offset = zero_phase ? 0.0 : kVoronoiPhase;
    std::vector<Point2> verts;
    verts.reserve(6);
    for (int k = 0; k < 6; ++k) verts.push_back(unit_vector(offset + k * kPi / 3.0));
    return ConvexPolygon::unsafe(std::move(verts));
}

inline const ConvexPolygon& voronoi_hexagon() {
    static const ConvexPolygon hex = canonical_hexagon(kVoronoiPhase);
    return hex;
}

// Closed-form support of the canonical hexagon: max_k cos(phi - phase - k*pi/3).
inline double hex_support(Angle phi, Angle phase) {
    if (std::abs(phase.rad - kZeroPhase) > kEps && std::abs(phase.rad - kVoronoiPhase) > kEps)
        throw UnsupportedPhase("hexagon phase must be 0 or pi/6");
    double rel = normalize_angle(phi.rad - phase.rad);
    rel = std::fmod(rel, kPi / 3.0);
    // Nearest vertex direction is at most pi/6 away.
    return std::cos(std::min(rel, kPi / 3.0 - rel));
}

// Index of the lattice point whose closed Voronoi cell contains p;
// distance ties go to the lexicographically smallest (m, n).
inline LatticeIndex cell_containing(Point2 p) {
    const double fn = p.y / 1.5;
    const double fm = p.x / kSqrt3 - fn / 2.0;
    const int m0 = static_cast<int>(std::lround(fm));
    const int n0 = static_cast<int>(std::lround(fn));
    LatticeIndex best{m0, n0};
    double best_d = squared_norm(p - lattice_point(best));
    for (int dm = -1; dm <= 1; ++dm) {
        for (int dn = -1; dn <= 1; ++dn) {
            const LatticeIndex idx{m0 + dm, n0 + dn};
            const double d = squared_norm(p - lattice_point(idx));
            if (d < best_d - kEps || (d <= best_d + kEps && idx < best)) {
                best = idx;
                best_d = std::min(best_d, d);
            }
        }
    }
    return best;
}

// All indices whose lattice point lies in the closed window square.
inline std::vector<LatticeIndex> indices_in_window(const Window& w) {
    std::vector<LatticeIndex> out;
    const double h = w.half_extent + kEps;
    const int n_lo = static_cast<int>(std::ceil(-h / 1.5));
    const int n_hi = static_cast<int>(std::floor(h / 1.5));
    for (int n = n_lo; n <= n_hi; ++n) {
        const double m_min = (-h - n * kSqrt3 / 2.0) / kSqrt3;
        const double m_max = (h - n * kSqrt3 / 2.0) / kSqrt3;
        for (int m = static_cast<int>(std::ceil(m_min)); m <= static_cast<int>(std::floor(m_max)); ++m) {
            const Point2 p = lattice_point({m, n});
            if (std::abs(p.x) <= h && std::abs(p.y) <= h) out.push_back({m, n});
        }
    }
    return out;
}

// Exactly the indices whose closed Voronoi hexagon meets the closed
// polygon. Candidates come from the polygon bounding box inflated by one
// cell circumradius.
inline std::vector<LatticeIndex> cells_intersecting(const ConvexPolygon& placed) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = xmax;
    for (const Point2& v : placed.vertices()) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }
    const double pad = 1.0 + 10.0 * kEps;
    std::vector<LatticeIndex> out;
    const int n_lo = static_cast<int>(std::ceil((ymin - pad) / 1.5));
    const int n_hi = static_cast<int>(std::floor((ymax + pad) / 1.5));
    const ConvexPolygon& hex = voronoi_hexagon();
    for (int n = n_lo; n <= n_hi; ++n) {
        const int m_lo = static_cast<int>(std::ceil((xmin - pad - n * kSqrt3 / 2.0) / kSqrt3));
        const int m_hi = static_cast<int>(std::floor((xmax + pad - n * kSqrt3 / 2.0) / kSqrt3));
        for (int m = m_lo; m <= m_hi; ++m) {
            const Point2 c = lattice_point({m, n});
            if (convex_intersect_closed(translate(hex, c), placed)) out.push_back({m, n});
        }
    }
    return out;
}

// Pose convention: pose (t, theta) places a centered region by rotating
// it clockwise by theta and translating by t; the lattice stays fixed.
// Equivalently theta rotates the lattice counterclockwise relative to
// the region.
inline ConvexPolygon placed_polygon(const ConvexPolygon& centered, Point2 t, Angle theta) {
    return translate(rotate(centered, Angle(-theta.rad)), t);
}

inline SimplePolygon placed_polygon(const SimplePolygon& centered, Point2 t, Angle theta) {
    return translate(rotate(centered, Angle(-theta.rad)), t);
}

inline int pose_cell_count(const ConvexPolygon& centered, Point2 t, Angle theta) {
    return static_cast<int>(cells_intersecting(placed_polygon(centered, t, theta)).size());
}

}  // namespace hexcover
