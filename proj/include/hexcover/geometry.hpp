#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "hexcover/errors.hpp"

namespace hexcover {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrt3 = std::numbers::sqrt3;

// Single global tolerance for incidence decisions.
inline constexpr double kEps = 1e-9;

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double squared_norm(Point2 a) { return a.x * a.x + a.y * a.y; }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 perp(Point2 a) { return {-a.y, a.x}; }

inline Point2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

inline Point2 rotate_point(Point2 p, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}

inline bool lex_less(Point2 a, Point2 b, double eps = kEps) {
    if (a.x < b.x - eps) return true;
    if (a.x > b.x + eps) return false;
    return a.y < b.y - eps;
}

inline double normalize_angle(double rad) {
    double r = std::fmod(rad, 2.0 * kPi);
    if (r < 0.0) r += 2.0 * kPi;
    if (r >= 2.0 * kPi) r = 0.0;
    return r + 0.0;  // flushes negative zero
}

// Angle stored as its canonical representative in [0, 2*pi).
struct Angle {
    double rad = 0.0;
    Angle() = default;
    Angle(double radians) : rad(normalize_angle(radians)) {}
};

namespace detail {

inline double shoelace(const std::vector<Point2>& v) {
    double twice = 0.0;
    for (size_t i = 0, n = v.size(); i < n; ++i) twice += cross(v[i], v[(i + 1) % n]);
    return 0.5 * twice;
}

inline double ring_perimeter(const std::vector<Point2>& v) {
    double len = 0.0;
    for (size_t i = 0, n = v.size(); i < n; ++i) len += distance(v[i], v[(i + 1) % n]);
    return len;
}

inline Point2 ring_centroid(const std::vector<Point2>& v) {
    double a2 = 0.0;
    Point2 c{0.0, 0.0};
    for (size_t i = 0, n = v.size(); i < n; ++i) {
        const double w = cross(v[i], v[(i + 1) % n]);
        a2 += w;
        c = c + w * (v[i] + v[(i + 1) % n]);
    }
    if (std::abs(a2) < 1e-300) throw DegenerateInput("centroid of zero-area polygon");
    return (1.0 / (3.0 * a2)) * c;
}

inline void drop_duplicate_vertices(std::vector<Point2>& v, double tol) {
    std::vector<Point2> out;
    out.reserve(v.size());
    for (const Point2& p : v) {
        if (out.empty() || distance(out.back(), p) >= tol) out.push_back(p);
    }
    while (out.size() >= 2 && distance(out.front(), out.back()) < tol) out.pop_back();
    v = std::move(out);
}

}  // namespace detail

// Strictly convex CCW polygon. Construction normalizes the input:
// duplicate vertices (within 1e-9) and collinear middle vertices are
// dropped, orientation is forced CCW, and anything that is not strictly
// convex afterwards is rejected.
class ConvexPolygon {
public:
    explicit ConvexPolygon(std::vector<Point2> vertices) : verts_(std::move(vertices)) {
        normalize();
    }

    // Caller guarantees the invariants already hold (isometries of a
    // valid polygon, merged Minkowski sums).
    static ConvexPolygon unsafe(std::vector<Point2> vertices) {
        ConvexPolygon p;
        p.verts_ = std::move(vertices);
        return p;
    }

    const std::vector<Point2>& vertices() const { return verts_; }
    int size() const { return static_cast<int>(verts_.size()); }
    Point2 vertex(int i) const { return verts_[static_cast<size_t>(i)]; }

private:
    ConvexPolygon() = default;

    void normalize() {
        for (const Point2& p : verts_) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                throw DegenerateInput("non-finite vertex coordinate");
        }
        detail::drop_duplicate_vertices(verts_, kEps);
        if (verts_.size() < 3) throw DegenerateInput("convex polygon needs at least 3 distinct vertices");
        if (detail::shoelace(verts_) < 0.0) std::reverse(verts_.begin(), verts_.end());

        // Drop middle vertices whose turn is collinear within kEps of the
        // local edge scale, then require every remaining turn to be a
        // strict left turn.
        bool changed = true;
        while (changed && verts_.size() >= 3) {
            changed = false;
            std::vector<Point2> kept;
            kept.reserve(verts_.size());
            const size_t n = verts_.size();
            for (size_t i = 0; i < n; ++i) {
                const Point2 a = verts_[(i + n - 1) % n];
                const Point2 b = verts_[i];
                const Point2 c = verts_[(i + 1) % n];
                const double turn = cross(b - a, c - b);
                if (turn <= kEps * norm(b - a) * norm(c - b)) {
                    changed = true;
                    continue;
                }
                kept.push_back(b);
            }
            if (kept.size() != verts_.size()) verts_ = std::move(kept);
        }
        if (verts_.size() < 3) throw DegenerateInput("polygon degenerates to a segment");

        for (size_t i = 0, n = verts_.size(); i < n; ++i) {
            const Point2 a = verts_[(i + n - 1) % n];
            const Point2 b = verts_[i];
            const Point2 c = verts_[(i + 1) % n];
            if (cross(b - a, c - b) <= 0.0) throw DegenerateInput("polygon is not convex");
        }

        // Strict local convexity still admits multiply-wound rings; the
        // total exterior turn of a convex ring is exactly 2*pi.
        double total_turn = 0.0;
        for (size_t i = 0, n = verts_.size(); i < n; ++i) {
            const Point2 e0 = verts_[i] - verts_[(i + n - 1) % n];
            const Point2 e1 = verts_[(i + 1) % n] - verts_[i];
            total_turn += std::atan2(cross(e0, e1), dot(e0, e1));
        }
        if (std::abs(total_turn - 2.0 * kPi) > 1e-6) throw DegenerateInput("polygon winds more than once");
    }

    std::vector<Point2> verts_;
};

// Simple (non-self-intersecting) CCW polygon.
class SimplePolygon {
public:
    explicit SimplePolygon(std::vector<Point2> vertices) : verts_(std::move(vertices)) {
        normalize();
    }

    static SimplePolygon unsafe(std::vector<Point2> vertices) {
        SimplePolygon p;
        p.verts_ = std::move(vertices);
        return p;
    }

    const std::vector<Point2>& vertices() const { return verts_; }
    int size() const { return static_cast<int>(verts_.size()); }
    Point2 vertex(int i) const { return verts_[static_cast<size_t>(i)]; }

private:
    SimplePolygon() = default;

    static bool segments_cross_improperly(Point2 a, Point2 b, Point2 c, Point2 d);

    void normalize() {
        for (const Point2& p : verts_) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                throw DegenerateInput("non-finite vertex coordinate");
        }
        detail::drop_duplicate_vertices(verts_, kEps);
        if (verts_.size() < 3) throw DegenerateInput("simple polygon needs at least 3 distinct vertices");

        const size_t n = verts_.size();
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i + 1; j < n; ++j) {
                // Adjacent edges share an endpoint by construction.
                if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
                if (segments_cross_improperly(verts_[i], verts_[(i + 1) % n], verts_[j], verts_[(j + 1) % n]))
                    throw NotSimple("polygon boundary self-intersects");
            }
        }

        const double a = detail::shoelace(verts_);
        if (std::abs(a) <= kEps * kEps) throw DegenerateInput("polygon has zero area");
        if (a < 0.0) std::reverse(verts_.begin(), verts_.end());
    }

    std::vector<Point2> verts_;
};

struct Circle {
    Point2 center{0.0, 0.0};
    double radius = 0.0;
};

inline double area(const ConvexPolygon& p) { return detail::shoelace(p.vertices()); }
inline double area(const SimplePolygon& p) { return detail::shoelace(p.vertices()); }
inline double perimeter(const ConvexPolygon& p) { return detail::ring_perimeter(p.vertices()); }
inline double perimeter(const SimplePolygon& p) { return detail::ring_perimeter(p.vertices()); }
inline Point2 centroid(const ConvexPolygon& p) { return detail::ring_centroid(p.vertices()); }
inline Point2 centroid(const SimplePolygon& p) { return detail::ring_centroid(p.vertices()); }

// Support function h(phi): largest projection of the polygon onto the
// direction (cos phi, sin phi).
inline double support(const ConvexPolygon& p, Angle phi) {
    const Point2 u = unit_vector(phi.rad);
    double best = -std::numeric_limits<double>::infinity();
    for (const Point2& v : p.vertices()) best = std::max(best, dot(v, u));
    return best;
}

inline int support_vertex(const ConvexPolygon& p, double phi) {
    const Point2 u = unit_vector(phi);
    int best = 0;
    double bestval = dot(p.vertex(0), u);
    for (int i = 1; i < p.size(); ++i) {
        const double v = dot(p.vertex(i), u);
        if (v > bestval) {
            bestval = v;
            best = i;
        }
    }
    return best;
}

// w(theta) = h(theta) + h(theta + pi).
inline double width(const ConvexPolygon& p, Angle theta) {
    return support(p, theta) + support(p, Angle(theta.rad + kPi));
}

inline double diameter(const ConvexPolygon& p) {
    double best = 0.0;
    const auto& v = p.vertices();
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j) best = std::max(best, distance(v[i], v[j]));
    return best;
}

inline ConvexPolygon convex_hull(std::vector<Point2> points) {
    if (points.size() < 3) throw DegenerateInput("convex hull needs at least 3 points");
    std::sort(points.begin(), points.end(), [](Point2 a, Point2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    points.erase(std::unique(points.begin(), points.end(), [](Point2 a, Point2 b) {
                     return distance(a, b) <= kEps;
                 }),
                 points.end());
    const size_t n = points.size();
    if (n < 3) throw DegenerateInput("convex hull of coincident points");

    std::vector<Point2> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 1]) <= kEps) --k;
        hull[k++] = points[i];
    }
    for (size_t i = n - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 1]) <= kEps) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) throw DegenerateInput("input points are collinear");
    return ConvexPolygon(std::move(hull));
}

namespace detail {

inline Circle circle_from_2(Point2 a, Point2 b) {
    return {0.5 * (a + b), 0.5 * distance(a, b)};
}

inline Circle circle_from_3(Point2 a, Point2 b, Point2 c) {
    const Point2 ab = b - a, ac = c - a;
    const double d = 2.0 * cross(ab, ac);
    if (std::abs(d) < 1e-14) {
        // Near-collinear support set: fall back to the widest pair.
        Circle best = circle_from_2(a, b);
        for (const Circle& alt : {circle_from_2(a, c), circle_from_2(b, c)})
            if (alt.radius > best.radius) best = alt;
        return best;
    }
    const double na = squared_norm(ab), nc = squared_norm(ac);
    const Point2 center = a + (1.0 / d) * Point2{ac.y * na - ab.y * nc, ab.x * nc - ac.x * na};
    return {center, distance(center, a)};
}

inline bool in_circle(Point2 p, const Circle& c) {
    return distance(p, c.center) <= c.radius + 1e-10 * (1.0 + c.radius);
}

inline Circle welzl(std::vector<Point2>& pts, size_t n, std::vector<Point2>& boundary) {
    if (n == 0 || boundary.size() == 3) {
        switch (boundary.size()) {
            case 0: return {{0.0, 0.0}, 0.0};
            case 1: return {boundary[0], 0.0};
            case 2: return circle_from_2(boundary[0], boundary[1]);
            default: return circle_from_3(boundary[0], boundary[1], boundary[2]);
        }
    }
    const Point2 p = pts[n - 1];
    Circle c = welzl(pts, n - 1, boundary);
    if (in_circle(p, c)) return c;
    boundary.push_back(p);
    c = welzl(pts, n - 1, boundary);
    boundary.pop_back();
    return c;
}

}  // namespace detail

inline Circle min_enclosing_circle(const std::vector<Point2>& points) {
    if (points.empty()) throw DegenerateInput("enclosing circle of no points");
    if (points.size() == 1) return {points[0], 0.0};
    std::vector<Point2> pts = points;
    std::shuffle(pts.begin(), pts.end(), std::mt19937(0x5eed));
    std::vector<Point2> boundary;
    return detail::welzl(pts, pts.size(), boundary);
}

inline Circle min_enclosing_circle(const ConvexPolygon& p) { return min_enclosing_circle(p.vertices()); }
inline Circle min_enclosing_circle(const SimplePolygon& p) { return min_enclosing_circle(p.vertices()); }

namespace detail {

template <typename Poly>
inline Poly transform_vertices(const Poly& p, const auto& fn) {
    std::vector<Point2> out;
    out.reserve(p.vertices().size());
    for (const Point2& v : p.vertices()) out.push_back(fn(v));
    return Poly::unsafe(std::move(out));
}

}  // namespace detail

template <typename Poly>
inline Poly rotate(const Poly& p, Angle theta) {
    const double c = std::cos(theta.rad), s = std::sin(theta.rad);
    return detail::transform_vertices(p, [&](Point2 v) { return Point2{c * v.x - s * v.y, s * v.x + c * v.y}; });
}

template <typename Poly>
inline Poly translate(const Poly& p, Point2 t) {
    return detail::transform_vertices(p, [&](Point2 v) { return v + t; });
}

// Point reflection through the origin; preserves CCW orientation.
template <typename Poly>
inline Poly reflect_origin(const Poly& p) {
    return detail::transform_vertices(p, [](Point2 v) { return -v; });
}

// Minkowski sum of two convex polygons by merging edges in normal order.
inline ConvexPolygon minkowski_sum_convex(const ConvexPolygon& p, const ConvexPolygon& q) {
    // Exact comparisons: starting at the true bottom-left vertex pins the
    // first edge angle into [0, pi] and keeps the angular walk monotone.
    const auto bottom = [](const ConvexPolygon& poly) {
        int best = 0;
        for (int i = 1; i < poly.size(); ++i) {
            const Point2 a = poly.vertex(i), b = poly.vertex(best);
            if (a.y < b.y || (a.y == b.y && a.x < b.x)) best = i;
        }
        return best;
    };
    const auto edge_angle = [](const ConvexPolygon& poly, int start, int step) {
        const Point2 e = poly.vertex((start + step + 1) % poly.size()) - poly.vertex((start + step) % poly.size());
        double a = std::atan2(e.y, e.x);
        if (a < 0.0) a += 2.0 * kPi;
        return a;
    };

    const int np = p.size(), nq = q.size();
    const int ip0 = bottom(p), iq0 = bottom(q);
    std::vector<Point2> out;
    out.reserve(static_cast<size_t>(np + nq));

    int i = 0, j = 0;
    double prev_angle = 0.0;
    while (i < np || j < nq) {
        out.push_back(p.vertex((ip0 + i) % np) + q.vertex((iq0 + j) % nq));
        double ap = i < np ? edge_angle(p, ip0, i) : std::numeric_limits<double>::infinity();
        double aq = j < nq ? edge_angle(q, iq0, j) : std::numeric_limits<double>::infinity();
        // Angles must advance monotonically around the full turn.
        if (ap < prev_angle - kEps && i < np) ap += 2.0 * kPi;
        if (aq < prev_angle - kEps && j < nq) aq += 2.0 * kPi;
        if (std::abs(ap - aq) <= 1e-12) {
            prev_angle = std::min(ap, 2.0 * kPi);
            ++i;
            ++j;
        } else if (ap < aq) {
            prev_angle = std::min(ap, 2.0 * kPi);
            ++i;
        } else {
            prev_angle = std::min(aq, 2.0 * kPi);
            ++j;
        }
    }
    return ConvexPolygon(std::move(out));
}

enum class Containment { kInterior, kClosed };

// Interior mode requires signed distance > eps from every edge; closed
// mode requires signed distance >= -eps.
inline bool point_in_convex(Point2 pt, const ConvexPolygon& poly, Containment mode, double eps = kEps) {
    const auto& v = poly.vertices();
    for (size_t i = 0, n = v.size(); i < n; ++i) {
        const Point2 a = v[i], b = v[(i + 1) % n];
        const double signed_dist = cross(b - a, pt - a) / norm(b - a);
        if (mode == Containment::kInterior ? signed_dist <= eps : signed_dist < -eps) return false;
    }
    return true;
}

// Crossing-number test; closed within eps of the boundary.
inline bool point_in_simple(Point2 pt, const SimplePolygon& poly, double eps = kEps) {
    const auto& v = poly.vertices();
    const size_t n = v.size();
    for (size_t i = 0; i < n; ++i) {
        const Point2 a = v[i], b = v[(i + 1) % n];
        const double len = norm(b - a);
        const double t = std::clamp(dot(pt - a, b - a) / (len * len), 0.0, 1.0);
        if (distance(pt, a + t * (b - a)) <= eps) return true;
    }
    bool inside = false;
    for (size_t i = 0; i < n; ++i) {
        const Point2 a = v[i], b = v[(i + 1) % n];
        if ((a.y > pt.y) != (b.y > pt.y)) {
            const double xcross = a.x + (pt.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (xcross > pt.x) inside = !inside;
        }
    }
    return inside;
}

struct SegmentHit {
    Point2 point;
    bool at_endpoint = false;
};

enum class SegmentRelation { kDisjoint, kPoint, kOverlap };

struct SegmentClassification {
    SegmentRelation relation = SegmentRelation::kDisjoint;
    Point2 point{0.0, 0.0};
    bool at_endpoint = false;
    Point2 overlap_a{0.0, 0.0};
    Point2 overlap_b{0.0, 0.0};
};

// Exhaustive segment/segment classification used by candidate
// enumeration; the public segment_intersect wraps it.
inline SegmentClassification classify_segments(Point2 a, Point2 b, Point2 c, Point2 d, double eps = kEps) {
    SegmentClassification res;
    const Point2 r = b - a, s = d - c;
    const double rxs = cross(r, s);

    if (std::abs(rxs) > eps * norm(r) * norm(s)) {
        const double t = cross(c - a, s) / rxs;
        const double u = cross(c - a, r) / rxs;
        const double tol_t = eps / std::max(norm(r), 1e-300);
        const double tol_u = eps / std::max(norm(s), 1e-300);
        if (t < -tol_t || t > 1.0 + tol_t || u < -tol_u || u > 1.0 + tol_u) return res;
        res.relation = SegmentRelation::kPoint;
        res.point = a + t * r;
        res.at_endpoint = t < tol_t || t > 1.0 - tol_t || u < tol_u || u > 1.0 - tol_u;
        return res;
    }

    // Parallel. Distinct supporting lines cannot meet; the test is on the
    // perpendicular distance of c from the line through a, b.
    if (std::abs(cross(c - a, r)) > eps * std::max(norm(r), 1e-300)) return res;

    const double rr = dot(r, r);
    if (rr < 1e-300) return res;
    double t0 = dot(c - a, r) / rr;
    double t1 = dot(d - a, r) / rr;
    if (t0 > t1) std::swap(t0, t1);
    const double lo = std::max(t0, 0.0), hi = std::min(t1, 1.0);
    const double tol = eps / std::sqrt(rr);
    if (hi < lo - tol) return res;
    if (hi - lo <= tol) {
        res.relation = SegmentRelation::kPoint;
        res.point = a + (0.5 * (lo + hi)) * r;
        res.at_endpoint = true;
        return res;
    }
    res.relation = SegmentRelation::kOverlap;
    res.overlap_a = a + lo * r;
    res.overlap_b = a + hi * r;
    return res;
}

inline std::optional<SegmentHit> segment_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
    const SegmentClassification cls = classify_segments(a, b, c, d);
    switch (cls.relation) {
        case SegmentRelation::kDisjoint: return std::nullopt;
        case SegmentRelation::kPoint: return SegmentHit{cls.point, cls.at_endpoint};
        case SegmentRelation::kOverlap: throw NoUniquePoint("segments overlap along a line");
    }
    return std::nullopt;
}

// Closed-set convex intersection test (separating axes over both edge
// normal fans). Touching within eps counts as intersecting.
inline bool convex_intersect_closed(const ConvexPolygon& a, const ConvexPolygon& b, double eps = kEps) {
    const auto separated_on = [&](const ConvexPolygon& edges, const ConvexPolygon& other) {
        const auto& v = edges.vertices();
        for (size_t i = 0, n = v.size(); i < n; ++i) {
            const Point2 e = v[(i + 1) % n] - v[i];
            const Point2 axis = {e.y / norm(e), -e.x / norm(e)};  // outward normal of CCW edge
            const double self_min = dot(v[i], axis);
            double other_min = std::numeric_limits<double>::infinity();
            for (const Point2& w : other.vertices()) other_min = std::min(other_min, dot(w, axis));
            // All of `edges` lies at projection <= self_min on its outward normal.
            if (other_min > self_min + eps) return true;
        }
        return false;
    };
    return !separated_on(a, b) && !separated_on(b, a);
}

inline bool SimplePolygon::segments_cross_improperly(Point2 a, Point2 b, Point2 c, Point2 d) {
    return classify_segments(a, b, c, d).relation != SegmentRelation::kDisjoint;
}

}  // namespace hexcover
