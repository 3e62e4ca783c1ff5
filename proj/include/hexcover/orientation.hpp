#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "hexcover/geometry.hpp"
#include "hexcover/hex_lattice.hpp"

namespace hexcover {

// One piece of the width function on [lo, hi): w(t) = (V[vmax] - V[vmin]) . u(t)
// for the fixed antipodal vertex pair active on that arc.
struct WidthPiece {
    double lo = 0.0;
    double hi = 0.0;
    int vmax = 0;
    int vmin = 0;
};

// Piecewise-sinusoidal width of a convex polygon over [0, pi). Break
// points are the outward edge normal angles reduced mod pi.
struct WidthProfile {
    std::vector<double> breakpoints;
    std::vector<WidthPiece> pieces;
    std::vector<Point2> vertices;

    double evaluate(double theta) const {
        double t = std::fmod(normalize_angle(theta), kPi);
        // Pieces tile [lo_0, lo_0 + pi); shift by the period to land inside.
        if (t < pieces.front().lo - kEps) t += kPi;
        for (const WidthPiece& p : pieces) {
            if (t >= p.lo - kEps && t <= p.hi + kEps)
                return dot(vertices[static_cast<size_t>(p.vmax)] - vertices[static_cast<size_t>(p.vmin)],
                           unit_vector(t));
        }
        const WidthPiece& p = pieces.back();
        return dot(vertices[static_cast<size_t>(p.vmax)] - vertices[static_cast<size_t>(p.vmin)], unit_vector(t));
    }
};

namespace detail {

// Outward normal angles of the CCW polygon edges, in [0, 2*pi); the
// outward normal is the edge direction turned a quarter turn clockwise.
inline std::vector<double> edge_normal_angles(const ConvexPolygon& poly) {
    std::vector<double> out;
    out.reserve(static_cast<size_t>(poly.size()));
    const auto& v = poly.vertices();
    for (size_t i = 0, n = v.size(); i < n; ++i) {
        const Point2 e = v[(i + 1) % n] - v[i];
        out.push_back(normalize_angle(std::atan2(-e.x, e.y)));
    }
    return out;
}

inline std::vector<double> sorted_unique_mod(const std::vector<double>& angles, double period) {
    std::vector<double> r;
    r.reserve(angles.size());
    for (double a : angles) {
        double x = std::fmod(a, period);
        if (x < 0.0) x += period;
        r.push_back(x);
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end(), [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
            r.end());
    if (!r.empty() && r.front() <= 1e-12 && period - r.back() <= 1e-12) r.pop_back();
    return r;
}

}  // namespace detail

inline WidthProfile width_profile(const ConvexPolygon& poly) {
    if (poly.size() < 3) throw DegenerateInput("width profile needs a valid polygon");
    WidthProfile profile;
    profile.vertices = poly.vertices();
    std::vector<double> brk = detail::sorted_unique_mod(detail::edge_normal_angles(poly), kPi);
    if (brk.empty()) brk.push_back(0.0);
    profile.breakpoints = brk;
    const size_t k = brk.size();
    for (size_t i = 0; i < k; ++i) {
        WidthPiece piece;
        piece.lo = brk[i];
        piece.hi = i + 1 < k ? brk[i + 1] : brk[0] + kPi;
        const double mid = 0.5 * (piece.lo + piece.hi);
        piece.vmax = support_vertex(poly, mid);
        piece.vmin = support_vertex(poly, mid + kPi);
        profile.pieces.push_back(piece);
    }
    return profile;
}

// f(theta) = w(theta) + w(theta + pi/3) + w(theta + 2*pi/3); pi/3-periodic.
inline double objective_f(const ConvexPolygon& poly, Angle theta) {
    return width(poly, theta) + width(poly, Angle(theta.rad + kPi / 3.0)) +
           width(poly, Angle(theta.rad + 2.0 * kPi / 3.0));
}

struct ObjectiveReport {
    Angle theta_star;
    double f_min = 0.0;
    int evaluated_candidates = 0;
};

// Exact global minimizer of f over [0, pi/3). Candidates are the edge
// normal angles reduced mod pi/3 (where the active support vertices
// switch) plus the interior critical point of the single sinusoid
// a*cos(theta) + b*sin(theta) each sub-piece reduces to.
inline ObjectiveReport minimize_f(const ConvexPolygon& poly) {
    if (poly.size() < 3) throw DegenerateInput("minimize_f needs a valid polygon");
    const double period = kPi / 3.0;
    std::vector<double> brk = detail::sorted_unique_mod(detail::edge_normal_angles(poly), period);
    if (brk.empty()) brk.push_back(0.0);
    if (brk.front() > 1e-12) brk.insert(brk.begin(), 0.0);

    ObjectiveReport report;
    report.f_min = std::numeric_limits<double>::infinity();
    const auto consider = [&](double theta) {
        if (theta < 0.0) theta += period;
        if (theta >= period) theta = std::fmod(theta, period);
        const double f = objective_f(poly, Angle(theta));
        ++report.evaluated_candidates;
        if (f < report.f_min - 1e-12 ||
            (f <= report.f_min + 1e-12 && theta < report.theta_star.rad - 1e-15)) {
            report.f_min = std::min(report.f_min, f);
            report.theta_star = Angle(theta);
        }
    };

    const size_t k = brk.size();
    for (size_t i = 0; i < k; ++i) {
        const double lo = brk[i];
        const double hi = i + 1 < k ? brk[i + 1] : brk[0] + period;
        consider(lo);
        // On (lo, hi) the six active support vertices are fixed, so
        // f(theta) = a cos(theta) + b sin(theta) for the constants below.
        const double mid = 0.5 * (lo + hi);
        double a = 0.0, b = 0.0;
        for (int j = 0; j < 6; ++j) {
            const double phase = j * kPi / 3.0;
            const Point2 v = poly.vertex(support_vertex(poly, mid + phase));
            a += dot(v, unit_vector(phase));
            b += dot(v, perp(unit_vector(phase)));
        }
        for (double crit : {std::atan2(b, a), std::atan2(b, a) + kPi}) {
            crit = normalize_angle(crit);
            for (double cand : {crit, crit - 2.0 * kPi}) {
                if (cand > lo + 1e-12 && cand < hi - 1e-12) consider(cand);
            }
        }
    }
    return report;
}

// Mean number of lattice cells met by the region over a random
// translation: 2A/(3*sqrt3) + 2 f(theta)/(3*sqrt3) + 1, before flooring.
inline double expected_hexagon_count(double area_value, double f_value) {
    return (area_value + f_value) / kHexCellArea + 1.0;
}

inline double expected_hexagons(const ConvexPolygon& poly, Angle theta) {
    return expected_hexagon_count(area(poly), objective_f(poly, theta));
}

}  // namespace hexcover
