#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>
#include <unordered_set>
#include <vector>

#include "hexcover/covering.hpp"
#include "hexcover/geometry.hpp"
#include "hexcover/hex_lattice.hpp"
#include "hexcover/orientation.hpp"
#include "hexcover/placement_fixed.hpp"
#include "hexcover/polyroots.hpp"

namespace hexcover {

inline constexpr long long kDefaultTripleBudget = 10'000'000;

// The joint search substitutes z = sin(theta); injective on [0, pi/3].
inline const double kZCap = std::sin(kPi / 3.0);

// Linear form in (z, sqrt(1 - z^2), 1).
struct LinZS {
    double z = 0.0;
    double s = 0.0;
    double c = 0.0;
    double eval(double zv) const { return z * zv + s * std::sqrt(std::max(0.0, 1.0 - zv * zv)) + c; }
};

enum class SurfaceKind { kPolyEdgeHexVertex, kPolyVertexHexEdge, kPrismLateral, kPrismCap };

// One boundary facet of some T_mn swept over theta in [0, pi/3], stored
// as the moving line A(z) x + B(z) y = C(z), plus the prism faces. A and
// B share the scalar magnitude normal_scale at every z, so f = -A/B and
// h = C/B recover the rational slope/intercept form with a common
// denominator.
struct SweptSurface {
    SurfaceKind kind = SurfaceKind::kPrismCap;
    LatticeIndex index{0, 0};
    int piece = -1;  // triangle id in the non-convex search, -1 otherwise
    int feature_region = -1;
    int feature_hex = -1;
    LinZS A, B, C;
    double normal_scale = 1.0;
    double cap_z = -1.0;

    bool is_cap() const { return kind == SurfaceKind::kPrismCap; }
};

// |A(z) x + B(z) y - C(z)| normalized by the line scale; caps measure the
// z offset instead.
inline double surface_residual(const SweptSurface& s, double x, double y, double z) {
    if (s.is_cap()) return std::abs(z - s.cap_z);
    const double r = s.A.eval(z) * x + s.B.eval(z) * y - s.C.eval(z);
    return std::abs(r) / (s.normal_scale * std::max(1.0, std::hypot(x, y)));
}

// Joint search space: the origin cell swept over one lattice period of
// orientations.
struct Prism {
    const ConvexPolygon& base = voronoi_hexagon();
    double theta_min = 0.0;
    double theta_max = kPi / 3.0;
};

struct Candidate3D {
    double x = 0.0;
    double y = 0.0;
    Angle theta;
    int s1 = -1, s2 = -1, s3 = -1;
};

struct CombinedDiagnostics {
    long long triples = 0;
    long long ill_conditioned = 0;
    long long candidates = 0;
};

namespace detail {

// Facet swept by an edge of the (reflected) region and one hexagon
// vertex; the region rotates clockwise by theta.
inline SweptSurface edge_vertex_surface(Point2 p1, Point2 p2, Point2 hex_vertex) {
    const Point2 d = p1 - p2;
    SweptSurface s;
    s.kind = SurfaceKind::kPolyEdgeHexVertex;
    s.A = {d.x, -d.y, 0.0};
    s.B = {d.y, d.x, 0.0};
    s.C = {hex_vertex.x * d.x + hex_vertex.y * d.y, hex_vertex.y * d.x - hex_vertex.x * d.y,
           d.x * p2.y - d.y * p2.x};
    s.normal_scale = norm(d);
    return s;
}

// Facet swept by a vertex of the region along one hexagon edge.
inline SweptSurface vertex_edge_surface(Point2 w, Point2 h1, Point2 h2) {
    const double da = h1.x - h2.x, db = h1.y - h2.y;
    SweptSurface s;
    s.kind = SurfaceKind::kPolyVertexHexEdge;
    s.A = {0.0, 0.0, -db};
    s.B = {0.0, 0.0, da};
    s.C = {-(da * w.x + db * w.y), da * w.y - db * w.x, da * h2.y - db * h2.x};
    s.normal_scale = std::hypot(da, db);
    return s;
}

inline double circular_distance(double a, double b) {
    const double d = std::abs(normalize_angle(a) - normalize_angle(b));
    return std::min(d, 2.0 * kPi - d);
}

inline bool arcs_overlap(double mid_a, double half_a, double mid_b, double half_b) {
    return circular_distance(mid_a, mid_b) <= half_a + half_b + 1e-7;
}

// Minimum of |l(z)| over [zlo, zhi]; exact because the sample set holds
// the stationary points of the smooth part.
inline double min_abs_lin(const LinZS& l, double zlo, double zhi) {
    std::vector<double> zs{zlo, zhi};
    const double h = std::hypot(l.z, l.s);
    if (h > 0.0) {
        for (double cand : {l.z / h, -l.z / h})
            if (cand > zlo && cand < zhi) zs.push_back(cand);
    }
    std::sort(zs.begin(), zs.end());
    double prev = l.eval(zs.front());
    double best = std::abs(prev);
    for (size_t i = 1; i < zs.size(); ++i) {
        const double v = l.eval(zs[i]);
        if ((prev < 0.0) != (v < 0.0)) return 0.0;
        best = std::min(best, std::abs(v));
        prev = v;
    }
    return best;
}

// A surface whose line never comes near the origin cell cannot supply a
// candidate inside it.
inline bool surface_can_reach_cell(const SweptSurface& s) {
    if (s.is_cap()) return true;
    return min_abs_lin(s.C, 0.0, kZCap) / s.normal_scale <= 1.0 + 0.02;
}

struct MixedPoly {
    SmallPoly p, q;  // value = p(z) + sqrt(1 - z^2) q(z)
};

inline MixedPoly mixed_from_lin(const LinZS& l) {
    MixedPoly m;
    m.p.c = {l.c, l.z};
    m.p.deg = 1;
    m.q.c = {l.s};
    m.q.deg = 0;
    return m;
}

inline MixedPoly mixed_mul(const MixedPoly& a, const MixedPoly& b) {
    SmallPoly one_minus_z2;
    one_minus_z2.c = {1.0, 0.0, -1.0};
    one_minus_z2.deg = 2;
    MixedPoly r;
    r.p = poly_add(poly_mul(a.p, b.p), poly_mul(one_minus_z2, poly_mul(a.q, b.q)));
    r.q = poly_add(poly_mul(a.p, b.q), poly_mul(a.q, b.p));
    return r;
}

inline MixedPoly mixed_sub(const MixedPoly& a, const MixedPoly& b) {
    return {poly_sub(a.p, b.p), poly_sub(a.q, b.q)};
}

inline double mixed_eval(const MixedPoly& m, double z) {
    return m.p.eval(z) + std::sqrt(std::max(0.0, 1.0 - z * z)) * m.q.eval(z);
}

// Concurrency condition of the three moving lines as a 3x3 determinant
// over the (z, sqrt) algebra.
inline MixedPoly concurrency_det(const SweptSurface& s0, const SweptSurface& s1, const SweptSurface& s2) {
    const MixedPoly a0 = mixed_from_lin(s0.A), b0 = mixed_from_lin(s0.B), c0 = mixed_from_lin(s0.C);
    const MixedPoly a1 = mixed_from_lin(s1.A), b1 = mixed_from_lin(s1.B), c1 = mixed_from_lin(s1.C);
    const MixedPoly a2 = mixed_from_lin(s2.A), b2 = mixed_from_lin(s2.B), c2 = mixed_from_lin(s2.C);
    const MixedPoly m0 = mixed_mul(a0, mixed_sub(mixed_mul(b1, c2), mixed_mul(b2, c1)));
    const MixedPoly m1 = mixed_mul(b0, mixed_sub(mixed_mul(a1, c2), mixed_mul(a2, c1)));
    const MixedPoly m2 = mixed_mul(c0, mixed_sub(mixed_mul(a1, b2), mixed_mul(a2, b1)));
    return mixed_sub(m0, mixed_sub(m1, m2));
}

// Certified bound on |d/dz (p + sqrt(1-z^2) q)| over [0, kZCap], where
// sqrt(1-z^2) >= 1/2 there.
inline double mixed_derivative_bound(const MixedPoly& g) {
    double bp = 0.0, bq = 0.0, bdq = 0.0;
    for (int i = 1; i <= g.p.deg; ++i) bp += i * std::abs(g.p.c[static_cast<size_t>(i)]);
    for (int i = 0; i <= g.q.deg; ++i) bq += std::abs(g.q.c[static_cast<size_t>(i)]);
    for (int i = 1; i <= g.q.deg; ++i) bdq += i * std::abs(g.q.c[static_cast<size_t>(i)]);
    return bp + kSqrt3 * bq + bdq;
}

// No root of g on [0, kZCap] when every grid sample clears the certified
// per-step variation.
inline bool mixed_has_no_root(const MixedPoly& g) {
    constexpr int kGrid = 32;
    const double step = kZCap / kGrid;
    struct GridPoint {
        double z, s;
    };
    static const std::array<GridPoint, kGrid + 1> grid = [] {
        std::array<GridPoint, kGrid + 1> table{};
        for (int i = 0; i <= kGrid; ++i) {
            const double z = kZCap * i / kGrid;
            table[static_cast<size_t>(i)] = {z, std::sqrt(1.0 - z * z)};
        }
        return table;
    }();
    const double clearance = mixed_derivative_bound(g) * step * 0.55;
    for (const GridPoint& gp : grid) {
        if (std::abs(g.p.eval(gp.z) + gp.s * g.q.eval(gp.z)) <= clearance) return false;
    }
    return true;
}

inline std::optional<Point2> solve_two_lines(const SweptSurface& a, const SweptSurface& b, double z) {
    const double a1 = a.A.eval(z), b1 = a.B.eval(z), c1 = a.C.eval(z);
    const double a2 = b.A.eval(z), b2 = b.B.eval(z), c2 = b.C.eval(z);
    const double det = a1 * b2 - a2 * b1;
    if (std::abs(det) <= 1e-12 * a.normal_scale * b.normal_scale) return std::nullopt;
    return Point2{(c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det};
}

}  // namespace detail

// All triple-intersection points of the three surfaces inside the closed
// hexagonal prism. Clearing sqrt(1-z^2) squares the concurrency equation
// once, giving a polynomial of degree at most 6; spurious roots are
// culled by back-substitution and every accepted candidate satisfies all
// three surface equations.
inline std::vector<Candidate3D> triple_intersection(const SweptSurface& s1, const SweptSurface& s2,
                                                    const SweptSurface& s3,
                                                    CombinedDiagnostics* diag = nullptr) {
    std::vector<Candidate3D> out;
    const SweptSurface* surf[3] = {&s1, &s2, &s3};
    int caps = 0;
    for (const SweptSurface* s : surf)
        if (s->is_cap()) ++caps;
    if (caps >= 2) return out;  // distinct z planes never meet

    const auto emit = [&](double x, double y, double z) {
        if (z < -kEps || z > kZCap + kEps) return;
        for (const SweptSurface* s : surf)
            if (surface_residual(*s, x, y, z) > 1e-8) return;
        if (!point_in_convex({x, y}, voronoi_hexagon(), Containment::kClosed, 10.0 * kEps)) return;
        Candidate3D cand;
        cand.x = x;
        cand.y = y;
        cand.theta = Angle(std::asin(std::clamp(z, 0.0, kZCap)));
        out.push_back(cand);
    };

    if (caps == 1) {
        const SweptSurface* cap = surf[0]->is_cap() ? surf[0] : (surf[1]->is_cap() ? surf[1] : surf[2]);
        const SweptSurface* others[2];
        int k = 0;
        for (const SweptSurface* s : surf)
            if (s != cap) others[k++] = s;
        const double z = cap->cap_z;
        const auto pt = detail::solve_two_lines(*others[0], *others[1], z);
        if (pt) emit(pt->x, pt->y, z);
        return out;
    }

    const detail::MixedPoly g = detail::concurrency_det(s1, s2, s3);
    const double gscale = g.p.max_abs_coef() + g.q.max_abs_coef();
    if (gscale <= 1e-12) {
        if (diag) ++diag->ill_conditioned;
        return out;
    }
    if (detail::mixed_has_no_root(g)) return out;

    // R(z) = P^2 - (1 - z^2) Q^2 vanishes wherever g does.
    SmallPoly one_minus_z2;
    one_minus_z2.c = {1.0, 0.0, -1.0};
    one_minus_z2.deg = 2;
    const SmallPoly r = poly_sub(poly_mul(g.p, g.p), poly_mul(one_minus_z2, poly_mul(g.q, g.q)));
    if (r.max_abs_coef() <= 1e-14 * gscale * gscale) {
        if (diag) ++diag->ill_conditioned;
        return out;
    }

    for (double z : real_roots_in_interval(r, 0.0, kZCap)) {
        if (std::abs(detail::mixed_eval(g, z)) > 1e-8 * gscale) continue;  // squaring artifact
        // Recover (x, y) from the best-conditioned pair of lines.
        std::optional<Point2> best;
        double best_det = 0.0;
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                const double a1 = surf[i]->A.eval(z), b1 = surf[i]->B.eval(z);
                const double a2 = surf[j]->A.eval(z), b2 = surf[j]->B.eval(z);
                const double det = std::abs(a1 * b2 - a2 * b1) / (surf[i]->normal_scale * surf[j]->normal_scale);
                if (det > best_det) {
                    best_det = det;
                    best = detail::solve_two_lines(*surf[i], *surf[j], z);
                }
            }
        }
        if (!best) {
            if (diag) ++diag->ill_conditioned;
            continue;
        }
        emit(best->x, best->y, z);
    }
    return out;
}

// Boundary facets of every region T_mn the origin cell can see, swept
// over theta. Pairings follow the support fans: an edge pairs with a
// hexagon vertex whenever the rotating edge normal crosses that vertex's
// sector, a region vertex pairs with a hexagon edge whenever the edge
// normal enters the vertex's normal cone.
inline std::vector<SweptSurface> build_surfaces(const ConvexPolygon& reflected, int piece_id = -1) {
    std::vector<SweptSurface> out;
    const ConvexPolygon& hex = voronoi_hexagon();
    double rmax = 0.0;
    for (const Point2& v : reflected.vertices()) rmax = std::max(rmax, norm(v));

    const std::vector<double> normals = detail::edge_normal_angles(reflected);
    const int n = reflected.size();

    const Window window(std::max(3.0, rmax + 2.0));
    for (const LatticeIndex& idx : indices_in_window(window)) {
        const Point2 off = lattice_point(idx);
        if (norm(off) > rmax + 2.0 + kEps) continue;

        for (int e = 0; e < n; ++e) {
            const Point2 p1 = reflected.vertex(e);
            const Point2 p2 = reflected.vertex((e + 1) % n);
            const double nu = normals[static_cast<size_t>(e)];
            for (int k = 0; k < 6; ++k) {
                const double vertex_angle = kVoronoiPhase + k * kPi / 3.0;
                if (!detail::arcs_overlap(nu - kPi / 6.0, kPi / 6.0, vertex_angle, kPi / 6.0)) continue;
                SweptSurface s = detail::edge_vertex_surface(p1, p2, hex.vertex(k) + off);
                s.index = idx;
                s.piece = piece_id;
                s.feature_region = e;
                s.feature_hex = k;
                if (detail::surface_can_reach_cell(s)) out.push_back(s);
            }
        }

        for (int v = 0; v < n; ++v) {
            const double nu_in = normals[static_cast<size_t>((v + n - 1) % n)];
            const double nu_out = normals[static_cast<size_t>(v)];
            const double cone_len = normalize_angle(nu_out - nu_in);
            const double cone_mid = nu_in + cone_len / 2.0;
            for (int k = 0; k < 6; ++k) {
                const double edge_normal = (k + 1) * kPi / 3.0;
                if (!detail::arcs_overlap(edge_normal + kPi / 6.0, kPi / 6.0, cone_mid, cone_len / 2.0))
                    continue;
                SweptSurface s = detail::vertex_edge_surface(reflected.vertex(v), hex.vertex(k) + off,
                                                             hex.vertex((k + 1) % 6) + off);
                s.index = idx;
                s.piece = piece_id;
                s.feature_region = v;
                s.feature_hex = k;
                if (detail::surface_can_reach_cell(s)) out.push_back(s);
            }
        }
    }
    return out;
}

// Six lateral faces (cell edge lines swept in theta) and the two caps.
inline std::vector<SweptSurface> prism_surfaces() {
    std::vector<SweptSurface> out;
    for (int k = 0; k < 6; ++k) {
        SweptSurface s;
        s.kind = SurfaceKind::kPrismLateral;
        s.feature_hex = k;
        const Point2 u = unit_vector(k * kPi / 3.0);
        s.A = {0.0, 0.0, u.x};
        s.B = {0.0, 0.0, u.y};
        s.C = {0.0, 0.0, kSqrt3 / 2.0};
        s.normal_scale = 1.0;
        out.push_back(s);
    }
    for (double z : {0.0, kZCap}) {
        SweptSurface s;
        s.kind = SurfaceKind::kPrismCap;
        s.cap_z = z;
        out.push_back(s);
    }
    return out;
}

namespace detail {

// Counts distinct lattice translations whose open region contains a
// point, sharing the per-theta Minkowski rebuild across queries.
class PoseCounter {
public:
    explicit PoseCounter(std::vector<ConvexPolygon> reflected_pieces)
        : pieces_(std::move(reflected_pieces)) {
        double rmax = 0.0;
        for (const ConvexPolygon& p : pieces_)
            for (const Point2& v : p.vertices()) rmax = std::max(rmax, norm(v));
        const Window window(std::max(3.0, rmax + 2.0));
        for (const LatticeIndex& idx : indices_in_window(window)) {
            if (norm(lattice_point(idx)) <= rmax + 2.0 + kEps) offsets_.push_back(lattice_point(idx));
        }
    }

    int count(Point2 p, double theta) {
        ensure_bases(theta);
        int cnt = 0;
        for (const Point2& off : offsets_) {
            for (const ConvexPolygon& base : bases_) {
                if (point_in_convex(p - off, base, Containment::kInterior)) {
                    ++cnt;
                    break;
                }
            }
        }
        return cnt;
    }

    // Local arrangement fan at the theta slice: region boundaries through
    // p plus the cell boundary.
    std::vector<double> boundary_rays(Point2 p, double theta) {
        ensure_bases(theta);
        std::vector<double> rays;
        accumulate_boundary_rays(p, voronoi_hexagon(), rays);
        for (const Point2& off : offsets_)
            for (const ConvexPolygon& base : bases_) accumulate_boundary_rays(p - off, base, rays);
        finalize_rays(rays);
        return rays;
    }

private:
    void ensure_bases(double theta) {
        if (have_theta_ && theta == theta_) return;
        bases_.clear();
        for (const ConvexPolygon& piece : pieces_)
            bases_.push_back(minkowski_sum_convex(rotate(piece, Angle(-theta)), voronoi_hexagon()));
        theta_ = theta;
        have_theta_ = true;
    }

    std::vector<ConvexPolygon> pieces_;
    std::vector<Point2> offsets_;
    std::vector<ConvexPolygon> bases_;
    double theta_ = 0.0;
    bool have_theta_ = false;
};

struct Key3 {
    long long x, y, z;
    bool operator==(const Key3&) const = default;
};

struct Key3Hash {
    size_t operator()(const Key3& k) const {
        size_t h = std::hash<long long>()(k.x);
        h = h * 1000003ULL + static_cast<size_t>(k.y);
        h = h * 1000003ULL + static_cast<size_t>(k.z);
        return h;
    }
};

inline std::vector<LatticeIndex> union_cells_at_pose(const std::vector<ConvexPolygon>& pieces, Point2 t,
                                                     Angle theta) {
    std::vector<LatticeIndex> all;
    for (const ConvexPolygon& piece : pieces) {
        const std::vector<LatticeIndex> cells = cells_intersecting(placed_polygon(piece, t, theta));
        all.insert(all.end(), cells.begin(), cells.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

// Shared core of the joint orientation + translation search.
inline PlacementResult joint_search(const std::vector<ConvexPolygon>& centered_pieces, long long budget,
                                    const std::optional<PlacementResult>& seed,
                                    CombinedDiagnostics* diag_out = nullptr) {
    std::vector<ConvexPolygon> reflected;
    reflected.reserve(centered_pieces.size());
    for (const ConvexPolygon& p : centered_pieces) reflected.push_back(reflect_origin(p));

    std::vector<SweptSurface> surfaces;
    for (size_t i = 0; i < reflected.size(); ++i) {
        std::vector<SweptSurface> s = build_surfaces(reflected[i], static_cast<int>(i));
        surfaces.insert(surfaces.end(), s.begin(), s.end());
    }
    {
        std::vector<SweptSurface> prism = prism_surfaces();
        surfaces.insert(surfaces.end(), prism.begin(), prism.end());
    }

    const long long s_count = static_cast<long long>(surfaces.size());
    const long long triples = s_count * (s_count - 1) * (s_count - 2) / 6;
    if (triples > budget)
        throw BudgetExceeded("joint search needs " + std::to_string(triples) +
                             " surface triples, budget is " + std::to_string(budget));

    CombinedDiagnostics diag;
    diag.triples = triples;
    std::vector<Candidate3D> candidates;
    std::unordered_set<Key3, Key3Hash> seen;
    const double quantum = 10.0 * kEps;
    for (size_t i = 0; i < surfaces.size(); ++i) {
        for (size_t j = i + 1; j < surfaces.size(); ++j) {
            for (size_t k = j + 1; k < surfaces.size(); ++k) {
                for (Candidate3D cand : triple_intersection(surfaces[i], surfaces[j], surfaces[k], &diag)) {
                    cand.s1 = static_cast<int>(i);
                    cand.s2 = static_cast<int>(j);
                    cand.s3 = static_cast<int>(k);
                    const Key3 key{static_cast<long long>(std::llround(cand.x / quantum)),
                                   static_cast<long long>(std::llround(cand.y / quantum)),
                                   static_cast<long long>(std::llround(cand.theta.rad / quantum))};
                    if (seen.insert(key).second) candidates.push_back(cand);
                }
            }
        }
    }
    diag.candidates = static_cast<long long>(candidates.size());
    if (diag_out) *diag_out = diag;

    std::sort(candidates.begin(), candidates.end(), [](const Candidate3D& a, const Candidate3D& b) {
        if (a.theta.rad != b.theta.rad) return a.theta.rad < b.theta.rad;
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });

    PoseCounter counter(reflected);
    std::vector<std::pair<int, Candidate3D>> scored;
    scored.reserve(candidates.size());
    for (const Candidate3D& cand : candidates)
        scored.push_back({counter.count({cand.x, cand.y}, cand.theta.rad), cand});
    const auto tuple_of = [](const Candidate3D& c) { return std::array{c.theta.rad, c.x, c.y}; };
    std::sort(scored.begin(), scored.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return tuple_of(a.second) < tuple_of(b.second);
    });

    PlacementResult result;
    result.candidates_evaluated = diag.candidates;
    long long best_cells = std::numeric_limits<long long>::max();
    const auto try_pose = [&](Point2 t, double theta) {
        const std::vector<LatticeIndex> cells = union_cells_at_pose(centered_pieces, t, Angle(theta));
        if (static_cast<long long>(cells.size()) < best_cells) {
            best_cells = static_cast<long long>(cells.size());
            result.translation = t;
            result.theta = Angle(theta);
            result.indices = cells;
        }
    };
    // Realization sweep: probe the arrangement wedges around the best
    // candidates in nearby theta slices; a candidate whose interior count
    // reaches the best exact count cannot improve it.
    for (const auto& [interior_count, cand] : scored) {
        if (interior_count >= best_cells) break;
        const Point2 p{cand.x, cand.y};
        for (double dtheta : {0.0, -1e-8, 1e-8, -1e-6, 1e-6}) {
            const double theta = cand.theta.rad + dtheta;
            if (theta < -kEps) continue;
            for (const Point2& probe : realization_probes(p, counter.boundary_rays(p, theta)))
                try_pose(probe, theta);
        }
    }
    if (seed) try_pose(seed->translation, seed->theta.rad);
    result.count = best_cells;
    return result;
}

}  // namespace detail

// Counts the regions whose interior holds the candidate, rebuilding the
// 2D arrangement at the candidate's orientation.
inline int count_at(const Candidate3D& cand, const ConvexPolygon& centered) {
    const std::vector<MinkowskiRegion> regions = build_regions(centered, cand.theta);
    return count_interior({cand.x, cand.y}, regions);
}

// Joint orientation and translation optimum over the hexagonal prism.
// Candidate poses are all surface triple intersections; the winner is
// recounted exactly on closed cells after a compass nudge in (x, y,
// theta). A region that fits in a unit circle short-circuits to a single
// disc (empty index list; the disc sits at the enclosing-circle center).
inline PlacementResult optimal_pose(const ConvexPolygon& centered, long long budget = kDefaultTripleBudget,
                                    CombinedDiagnostics* diag = nullptr) {
    if (min_enclosing_circle(centered).radius <= 1.0 + kEps) {
        PlacementResult r;
        r.count = 1;
        return r;
    }
    const ObjectiveReport obj = minimize_f(centered);
    const PlacementResult seed = optimal_translation(centered, obj.theta_star);
    return detail::joint_search({centered}, budget, seed, diag);
}

// Best fixed-orientation placement over K equispaced angles in [0, pi/3).
inline PlacementResult sweep_baseline(const ConvexPolygon& centered, int angles) {
    if (angles <= 0) throw DegenerateInput("sweep needs at least one angle");
    PlacementResult best;
    best.count = std::numeric_limits<long long>::max();
    long long evaluated = 0;
    for (int i = 0; i < angles; ++i) {
        const Angle theta(i * kPi / 3.0 / angles);
        PlacementResult r = optimal_translation(centered, theta);
        evaluated += r.candidates_evaluated;
        const auto key = [](const PlacementResult& p) {
            return std::array{static_cast<double>(p.count), p.theta.rad, p.translation.x, p.translation.y};
        };
        if (key(r) < key(best)) best = std::move(r);
    }
    best.candidates_evaluated = evaluated;
    return best;
}

struct Triangulation {
    std::vector<ConvexPolygon> triangles;
};

// Ear clipping. Quadratic, which is fine next to the candidate
// enumeration this feeds.
inline Triangulation triangulate(const SimplePolygon& gamma) {
    std::vector<Point2> v = gamma.vertices();

    // Flat vertices make zero-area ears; remove them up front.
    for (bool changed = true; changed && v.size() > 3;) {
        changed = false;
        for (size_t i = 0; i < v.size(); ++i) {
            const Point2 a = v[(i + v.size() - 1) % v.size()], b = v[i], c = v[(i + 1) % v.size()];
            if (std::abs(cross(b - a, c - b)) <= kEps * norm(b - a) * norm(c - b)) {
                v.erase(v.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
    }
    if (v.size() < 3) throw DegenerateInput("polygon degenerates under collinearity removal");

    Triangulation out;
    std::vector<size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    while (idx.size() > 3) {
        bool clipped = false;
        for (size_t ii = 0; ii < idx.size() && !clipped; ++ii) {
            const size_t prev = idx[(ii + idx.size() - 1) % idx.size()];
            const size_t cur = idx[ii];
            const size_t next = idx[(ii + 1) % idx.size()];
            const Point2 a = v[prev], b = v[cur], c = v[next];
            const double turn = cross(b - a, c - b);
            if (std::abs(turn) <= kEps * norm(b - a) * norm(c - b)) {
                // Flat corner created by earlier clips; removing it keeps
                // the region unchanged.
                idx.erase(idx.begin() + static_cast<long>(ii));
                clipped = true;
                break;
            }
            if (turn < 0.0) continue;  // reflex
            const ConvexPolygon tri({a, b, c});
            bool ear = true;
            for (size_t other : idx) {
                if (other == prev || other == cur || other == next) continue;
                if (point_in_convex(v[other], tri, Containment::kInterior, 1e-12)) {
                    ear = false;
                    break;
                }
            }
            if (!ear) continue;
            out.triangles.push_back(tri);
            idx.erase(idx.begin() + static_cast<long>(ii));
            clipped = true;
        }
        if (!clipped) throw Error("ear clipping found no ear; input is too degenerate");
    }
    if (idx.size() == 3) out.triangles.push_back(ConvexPolygon({v[idx[0]], v[idx[1]], v[idx[2]]}));
    return out;
}

// Joint search for a simple polygon: surfaces come from every triangle
// of a triangulation, and a lattice translation counts once no matter
// how many triangles it meets.
inline PlacementResult optimal_pose_nonconvex(const SimplePolygon& centered,
                                              long long budget = kDefaultTripleBudget,
                                              CombinedDiagnostics* diag = nullptr) {
    if (min_enclosing_circle(centered).radius <= 1.0 + kEps) {
        PlacementResult r;
        r.count = 1;
        return r;
    }
    const Triangulation tri = triangulate(centered);
    return detail::joint_search(tri.triangles, budget, std::nullopt, diag);
}

// ---- Covering wrappers (centers mapped back to input coordinates) ----

namespace detail {

template <typename Poly>
inline std::optional<Covering> shortcut_covering(const Poly& input, const std::string& algorithm) {
    const Circle mec = min_enclosing_circle(input);
    if (mec.radius > 1.0 + kEps) return std::nullopt;
    return make_single_disc_covering(mec, algorithm);
}

}  // namespace detail

inline Covering cover_combined(const ConvexPolygon& input, long long budget = kDefaultTripleBudget) {
    const auto start = std::chrono::steady_clock::now();
    if (auto quick = detail::shortcut_covering(input, "combined")) {
        quick->bounds = make_bounds_report(input, Angle(0.0));
        return *quick;
    }
    const Point2 c = centroid(input);
    const ConvexPolygon centered = translate(input, -c);
    const PlacementResult res = optimal_pose(centered, budget);
    Covering cov = detail::assemble_covering(input, c, res, "combined");
    cov.diagnostics.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return cov;
}

inline Covering cover_sweep(const ConvexPolygon& input, int angles) {
    const auto start = std::chrono::steady_clock::now();
    if (auto quick = detail::shortcut_covering(input, "sweep")) {
        quick->bounds = make_bounds_report(input, Angle(0.0));
        return *quick;
    }
    const Point2 c = centroid(input);
    const ConvexPolygon centered = translate(input, -c);
    const PlacementResult res = sweep_baseline(centered, angles);
    Covering cov = detail::assemble_covering(input, c, res, "sweep");
    cov.diagnostics.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return cov;
}

inline Covering cover_nonconvex(const SimplePolygon& input, long long budget = kDefaultTripleBudget) {
    const auto start = std::chrono::steady_clock::now();
    const double gamma_area = area(input);
    const ConvexPolygon hull = convex_hull(input.vertices());

    Covering cov;
    const Point2 c = centroid(input);
    if (auto quick = detail::shortcut_covering(input, "nonconvex")) {
        cov = *quick;
    } else {
        const SimplePolygon centered = translate(input, -c);
        const PlacementResult res = optimal_pose_nonconvex(centered, budget);
        cov.theta = res.theta.rad;
        cov.translation = res.translation;
        cov.count = res.count;
        cov.algorithm = "nonconvex";
        for (const LatticeIndex& idx : res.indices)
            cov.centers.push_back(lattice_to_input(lattice_point(idx), res.translation, res.theta.rad, c));
        cov.diagnostics.candidates_evaluated = res.candidates_evaluated;
    }
    // Upper bounds from the hull stay valid for any subset of it; the
    // lower-bound formulas assume convexity, so only the area term is
    // reported for the region itself.
    cov.bounds.toth_upper = toth_upper(area(hull), perimeter(hull));
    cov.bounds.improved_upper = improved_upper(hull, Angle(cov.theta));
    cov.bounds.lower_asymptotic = lower_bound(gamma_area, 0.0, false);
    cov.bounds.lower_explicit = lower_bound(gamma_area, 0.0, true);
    cov.diagnostics.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return cov;
}

}  // namespace hexcover
