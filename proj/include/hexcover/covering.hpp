#pragma once

#include <string>
#include <vector>

#include "hexcover/bounds.hpp"
#include "hexcover/geometry.hpp"

namespace hexcover {

struct SolveDiagnostics {
    long long candidates_evaluated = 0;
    double runtime_ms = 0.0;
    bool budget_hit = false;
};

// Final answer: pose in the lattice frame plus disc centers mapped back
// into the caller's input coordinates.
struct Covering {
    double theta = 0.0;
    Point2 translation{0.0, 0.0};
    std::vector<Point2> centers;
    long long count = 0;
    BoundsReport bounds;
    std::string algorithm;
    SolveDiagnostics diagnostics;
};

// Inverse of the solve-frame motion: lattice point -> input coordinates.
inline Point2 lattice_to_input(Point2 p, Point2 translation, double theta, Point2 region_centroid) {
    return rotate_point(p - translation, theta) + region_centroid;
}

// Forward motion: input coordinates -> lattice frame.
inline Point2 input_to_lattice(Point2 p, Point2 translation, double theta, Point2 region_centroid) {
    return rotate_point(p - region_centroid, -theta) + translation;
}

}  // namespace hexcover
