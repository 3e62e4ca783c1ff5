#include <catch.hpp>

#include <random>
#include <set>

#include "hexcover/bounds.hpp"
#include "hexcover/placement_combined.hpp"
#include "test_helpers.hpp"

using namespace hexcover;
using testutil::uniform;

namespace {

Point2 rotate_cw(Point2 p, double theta) { return rotate_point(p, -theta); }

}  // namespace

TEST_CASE("swept surfaces agree with the direct construction") {
    std::mt19937_64 rng(61);
    const ConvexPolygon& hex = voronoi_hexagon();
    for (int trial = 0; trial < 6; ++trial) {
        const ConvexPolygon poly = testutil::centered_random_hull(rng, 3.0, 6);
        const ConvexPolygon reflected = reflect_origin(poly);
        for (const SweptSurface& s : build_surfaces(reflected)) {
            for (int sample = 0; sample < 100; ++sample) {
                const double theta = uniform(rng, 0, kPi / 3);
                const double t = uniform(rng, 0, 1);
                Point2 p;
                if (s.kind == SurfaceKind::kPolyEdgeHexVertex) {
                    const Point2 p1 = reflected.vertex(s.feature_region);
                    const Point2 p2 = reflected.vertex((s.feature_region + 1) % reflected.size());
                    p = rotate_cw(t * p1 + (1.0 - t) * p2, theta) + hex.vertex(s.feature_hex) +
                        lattice_point(s.index);
                } else if (s.kind == SurfaceKind::kPolyVertexHexEdge) {
                    const Point2 h1 = hex.vertex(s.feature_hex) + lattice_point(s.index);
                    const Point2 h2 = hex.vertex((s.feature_hex + 1) % 6) + lattice_point(s.index);
                    p = rotate_cw(reflected.vertex(s.feature_region), theta) + t * h1 + (1.0 - t) * h2;
                } else {
                    continue;
                }
                CHECK(surface_residual(s, p.x, p.y, std::sin(theta)) < 1e-7);
            }
        }
    }
}

TEST_CASE("surface slices reproduce the 2D region boundaries near the cell") {
    std::mt19937_64 rng(62);
    for (int trial = 0; trial < 10; ++trial) {
        const ConvexPolygon poly = testutil::centered_random_hull(rng, 3.0, 6);
        const std::vector<SweptSurface> surfaces = build_surfaces(reflect_origin(poly));
        for (int slice = 0; slice < 5; ++slice) {
            const double theta = uniform(rng, 0, kPi / 3);
            const double z = std::sin(theta);
            for (const MinkowskiRegion& region : build_regions(poly, Angle(theta))) {
                const auto& verts = region.polygon.vertices();
                for (size_t e = 0; e < verts.size(); ++e) {
                    const Point2 a = verts[e], b = verts[(e + 1) % verts.size()];
                    // Only facets that can matter inside the origin cell.
                    const double t = std::clamp(dot(-a, b - a) / squared_norm(b - a), 0.0, 1.0);
                    if (norm(a + t * (b - a)) > 0.99) continue;
                    bool matched = false;
                    for (const SweptSurface& s : surfaces) {
                        if (!(s.index == region.index)) continue;
                        if (surface_residual(s, a.x, a.y, z) < 1e-6 &&
                            surface_residual(s, b.x, b.y, z) < 1e-6) {
                            matched = true;
                            break;
                        }
                    }
                    CHECK(matched);
                }
            }
        }
    }
}

TEST_CASE("z substitution stays injective on the sweep range") {
    CHECK(kZCap == Approx(kSqrt3 / 2).margin(1e-15));
    CHECK(kPi / 3 < kPi / 2);
}

TEST_CASE("triple intersection finds prism corners") {
    const std::vector<SweptSurface> prism = prism_surfaces();
    REQUIRE(prism.size() == 8);
    // Lateral faces with normals at 0 and pi/3 meet at the vertex at pi/6;
    // the z=0 cap pins the orientation.
    const std::vector<Candidate3D> corner = triple_intersection(prism[0], prism[1], prism[6]);
    REQUIRE(corner.size() == 1);
    CHECK(distance({corner[0].x, corner[0].y}, {kSqrt3 / 2, 0.5}) < 1e-9);
    CHECK(corner[0].theta.rad == Approx(0.0).margin(1e-12));

    // A duplicated surface never produces candidates.
    CombinedDiagnostics diag;
    CHECK(triple_intersection(prism[0], prism[0], prism[6], &diag).empty());
}

TEST_CASE("triple intersection matches a fine theta scan") {
    // Region boundary of the origin cell for a small off-axis square,
    // crossing the prism edge through the hexagon vertex at pi/6.
    const ConvexPolygon small({{-0.4, -0.3}, {0.4, -0.3}, {0.4, 0.3}, {-0.4, 0.3}});
    const ConvexPolygon reflected = reflect_origin(small);
    const std::vector<SweptSurface> prism = prism_surfaces();
    const Point2 corner{kSqrt3 / 2, 0.5};

    std::vector<SweptSurface> region_surfaces;
    for (const SweptSurface& s : build_surfaces(reflected))
        if (s.index == LatticeIndex{0, 0}) region_surfaces.push_back(s);
    REQUIRE(!region_surfaces.empty());

    int verified = 0;
    for (const SweptSurface& s : region_surfaces) {
        for (const Candidate3D& cand : triple_intersection(prism[0], prism[1], s)) {
            CHECK(surface_residual(s, cand.x, cand.y, std::sin(cand.theta.rad)) < 1e-7);
            CHECK(distance({cand.x, cand.y}, corner) < 1e-9);
            // The scan brackets a sign change of the line value at the
            // corner around the reported orientation.
            const auto corner_value = [&](double theta) {
                const double z = std::sin(theta);
                return s.A.eval(z) * corner.x + s.B.eval(z) * corner.y - s.C.eval(z);
            };
            bool bracketed = false;
            for (double theta = 0.0; theta < kPi / 3; theta += 1e-4) {
                if ((corner_value(theta) < 0) != (corner_value(theta + 1e-4) < 0)) {
                    if (std::abs(theta + 5e-5 - cand.theta.rad) < 1e-3) bracketed = true;
                }
            }
            CHECK(bracketed);
            ++verified;
        }
    }
    CHECK(verified > 0);
}

TEST_CASE("every returned candidate satisfies all three surfaces") {
    std::mt19937_64 rng(63);
    const ConvexPolygon poly = testutil::centered_random_hull(rng, 2.5, 5);
    std::vector<SweptSurface> surfaces = build_surfaces(reflect_origin(poly));
    const std::vector<SweptSurface> prism = prism_surfaces();
    surfaces.insert(surfaces.end(), prism.begin(), prism.end());

    std::uniform_int_distribution<size_t> pick(0, surfaces.size() - 1);
    int produced = 0;
    for (int trial = 0; trial < 4000; ++trial) {
        const size_t i = pick(rng), j = pick(rng), k = pick(rng);
        if (i == j || j == k || i == k) continue;
        for (const Candidate3D& cand : triple_intersection(surfaces[i], surfaces[j], surfaces[k])) {
            const double z = std::sin(cand.theta.rad);
            CHECK(surface_residual(surfaces[i], cand.x, cand.y, z) < 1e-7);
            CHECK(surface_residual(surfaces[j], cand.x, cand.y, z) < 1e-7);
            CHECK(surface_residual(surfaces[k], cand.x, cand.y, z) < 1e-7);
            CHECK(point_in_convex({cand.x, cand.y}, voronoi_hexagon(), Containment::kClosed, 1e-7));
            CHECK(cand.theta.rad >= -1e-12);
            CHECK(cand.theta.rad <= kPi / 3 + 1e-9);
            ++produced;
        }
    }
    CHECK(produced > 50);
}

TEST_CASE("degree-six root finder catches every bracketed root") {
    std::mt19937_64 rng(64);
    for (int trial = 0; trial < 200; ++trial) {
        SmallPoly p;
        p.deg = 6;
        // Build from six random roots, some inside the interval.
        p.c = {1.0};
        p.deg = 0;
        for (int r = 0; r < 6; ++r) {
            SmallPoly lin;
            lin.deg = 1;
            lin.c = {-uniform(rng, -0.4, 1.2), 1.0};
            p = poly_mul(p, lin);
        }
        const std::vector<double> roots = real_roots_in_interval(p, 0.0, kZCap);
        for (double z = 0.0; z < kZCap - 1e-3; z += 1e-3) {
            if ((p.eval(z) < 0) != (p.eval(z + 1e-3) < 0)) {
                bool matched = false;
                for (double r : roots) matched = matched || (r >= z - 1e-6 && r <= z + 1e-3 + 1e-6);
                CHECK(matched);
            }
        }
        for (double r : roots) CHECK(std::abs(p.eval(r)) < 1e-7 * p.max_abs_coef());
    }
}

TEST_CASE("count_at agrees with the fixed-orientation counting") {
    std::mt19937_64 rng(65);
    const ConvexPolygon poly = testutil::centered_random_hull(rng, 3.0, 6);
    const std::vector<MinkowskiRegion> regions = build_regions(poly, Angle(0.0));
    for (int i = 0; i < 200; ++i) {
        Candidate3D cand;
        cand.x = uniform(rng, -0.8, 0.8);
        cand.y = uniform(rng, -0.9, 0.9);
        cand.theta = Angle(0.0);
        CHECK(count_at(cand, poly) == count_interior({cand.x, cand.y}, regions));
    }
    Candidate3D far;
    far.x = 0.85;
    far.y = 0.0;
    far.theta = Angle(0.2);
    const ConvexPolygon dot({{40, 40}, {40.1, 40}, {40, 40.1}});
    CHECK(count_at(far, translate(dot, -centroid(dot))) >= 0);
}

TEST_CASE("optimal pose shortcuts regions inside a unit circle") {
    const PlacementResult r = optimal_pose(testutil::unit_square_centered());
    CHECK(r.count == 1);
    CHECK(r.indices.empty());
}

TEST_CASE("optimal pose matches the oracle on the 3x3 square") {
    const ConvexPolygon sq3({{-1.5, -1.5}, {1.5, -1.5}, {1.5, 1.5}, {-1.5, 1.5}});
    const PlacementResult joint = optimal_pose(sq3);
    const OraclePose oracle = oracle_grid_search(sq3, 90, 100);
    CHECK(joint.count == oracle.count);
    CHECK(joint.count == 7);
}

TEST_CASE("optimal pose matches the dense sweep on the 4x4 square") {
    const ConvexPolygon sq4({{-2, -2}, {2, -2}, {2, 2}, {-2, 2}});
    const PlacementResult joint = optimal_pose(sq4);
    const PlacementResult swept = sweep_baseline(sq4, 720);
    CHECK(joint.count == swept.count);
    const ObjectiveReport rep = minimize_f(sq4);
    CHECK(joint.count <= improved_upper(sq4, rep.theta_star));
}

TEST_CASE("joint search dominates the fixed strategy on a thin strip") {
    const ConvexPolygon thin({{-3, -0.005}, {3, -0.005}, {3, 0.005}, {-3, 0.005}});
    const PlacementResult joint = optimal_pose(thin);
    CHECK(joint.count == 4);  // row-aligned; the fixed strategy needs 5
    CHECK(joint.count <= cover_fixed(thin).count);
}

TEST_CASE("sweep baseline basics") {
    std::mt19937_64 rng(66);
    const ConvexPolygon poly = testutil::centered_random_hull(rng, 3.5, 6);
    const PlacementResult k1 = sweep_baseline(poly, 1);
    const PlacementResult direct = optimal_translation(poly, Angle(0.0));
    CHECK(k1.count == direct.count);
    CHECK(k1.theta.rad == 0.0);

    const PlacementResult k4 = sweep_baseline(poly, 4);
    const PlacementResult k8 = sweep_baseline(poly, 8);
    CHECK(k8.count <= k4.count);

    CHECK_THROWS_AS(sweep_baseline(poly, 0), DegenerateInput);
}

TEST_CASE("triangulation of simple polygons") {
    const SimplePolygon quad({{0, 0}, {2, 0}, {2.2, 1.3}, {0.3, 1.1}});
    const Triangulation tq = triangulate(quad);
    CHECK(tq.triangles.size() == 2);
    double total = 0.0;
    for (const ConvexPolygon& t : tq.triangles) total += area(t);
    CHECK(total == Approx(area(quad)).margin(1e-7));

    const SimplePolygon lshape({{0, 0}, {2, 0}, {2, 2}, {1, 2}, {1, 1}, {0, 1}});
    const Triangulation tl = triangulate(lshape);
    CHECK(tl.triangles.size() == 4);
    total = 0.0;
    for (const ConvexPolygon& t : tl.triangles) {
        total += area(t);
        CHECK(point_in_simple(centroid(t), lshape, 1e-9));
    }
    CHECK(total == Approx(3.0).margin(1e-7));

    CHECK_THROWS_AS(SimplePolygon({{0, 0}, {2, 0}, {0, 2}, {2, 2}}), NotSimple);
}

TEST_CASE("nonconvex search agrees with the convex one on convex input") {
    std::mt19937_64 rng(67);
    const ConvexPolygon poly = testutil::centered_random_hull(rng, 2.6, 5);
    const PlacementResult convex_result = optimal_pose(poly);
    const SimplePolygon as_simple(poly.vertices());
    const PlacementResult nonconvex_result = optimal_pose_nonconvex(as_simple);
    CHECK(nonconvex_result.count == convex_result.count);
}

TEST_CASE("nonconvex search on an L-shape beats its bounding square") {
    // Scaled-down L so the default budget admits the search.
    std::vector<Point2> lverts{{0, 0}, {1.6, 0}, {1.6, 1.6}, {0.8, 1.6}, {0.8, 0.8}, {0, 0.8}};
    SimplePolygon lshape(lverts);
    lshape = translate(lshape, -centroid(lshape));
    const PlacementResult l_result = optimal_pose_nonconvex(lshape);

    const ConvexPolygon square16({{-0.8, -0.8}, {0.8, -0.8}, {0.8, 0.8}, {-0.8, 0.8}});
    const PlacementResult square_result = optimal_pose(square16);
    CHECK(l_result.count <= square_result.count);

    // The winning pose covers the region.
    const Triangulation tri = triangulate(lshape);
    std::vector<Point2> centers;
    for (const LatticeIndex& idx :
         hexcover::detail::union_cells_at_pose(tri.triangles, l_result.translation, l_result.theta))
        centers.push_back(lattice_point(idx));
    CHECK(centers.size() == static_cast<size_t>(l_result.count));
    const SimplePolygon placed = placed_polygon(lshape, l_result.translation, l_result.theta);
    const CoverageReport report = verify_coverage(
        placed, centers,
        hexcover::detail::union_cells_at_pose(tri.triangles, l_result.translation, l_result.theta));
    CHECK(report.valid);
}

TEST_CASE("nonconvex search keeps the union bound on a thin V") {
    // Two thin arms of length 2 opening at +-30 degrees from the elbow.
    const double c30 = std::cos(kPi / 6), s30 = std::sin(kPi / 6);
    const double len = 2.0, w = 0.01;
    const Point2 lower_dir{c30, -s30}, upper_dir{c30, s30};
    const Point2 lower_in = w * perp(lower_dir);   // left normal of the lower arm
    const Point2 upper_in = -w * perp(upper_dir);  // right normal of the upper arm
    SimplePolygon vee({{0, 0},
                       len * lower_dir,
                       len * lower_dir + lower_in,
                       {w / s30, 0.0},
                       len * upper_dir + upper_in,
                       len * upper_dir});
    vee = translate(vee, -centroid(vee));
    const PlacementResult joint = optimal_pose_nonconvex(vee, 40'000'000);

    const ConvexPolygon arm({{0, 0}, {len, 0}, {len, w}, {0, w}});
    const ConvexPolygon arm_centered = translate(arm, -centroid(arm));
    const PlacementResult arm_result = optimal_pose(arm_centered);
    CHECK(joint.count <= 2 * arm_result.count);
    CHECK(joint.count >= arm_result.count);
}

TEST_CASE("budget cap fails loudly") {
    const SimplePolygon lshape({{0, 0}, {2, 0}, {2, 2}, {1, 2}, {1, 1}, {0, 1}});
    const SimplePolygon centered = translate(lshape, -centroid(lshape));
    CHECK_THROWS_AS(optimal_pose_nonconvex(centered, 1000), BudgetExceeded);
}

TEST_CASE("distinct-translation counts sit between max and sum of triangle counts") {
    std::mt19937_64 rng(68);
    SimplePolygon lshape({{0, 0}, {1.6, 0}, {1.6, 1.6}, {0.8, 1.6}, {0.8, 0.8}, {0, 0.8}});
    lshape = translate(lshape, -centroid(lshape));
    const Triangulation tri = triangulate(lshape);
    std::vector<ConvexPolygon> reflected;
    std::vector<hexcover::detail::PoseCounter> singles;
    for (const ConvexPolygon& t : tri.triangles) {
        reflected.push_back(reflect_origin(t));
        singles.emplace_back(std::vector<ConvexPolygon>{reflected.back()});
    }
    hexcover::detail::PoseCounter combined_counter(reflected);
    for (int s = 0; s < 400; ++s) {
        const Point2 p{uniform(rng, -0.8, 0.8), uniform(rng, -0.9, 0.9)};
        const double theta = uniform(rng, 0, kPi / 3);
        int sum = 0, mx = 0;
        for (auto& counter : singles) {
            const int c = counter.count(p, theta);
            sum += c;
            mx = std::max(mx, c);
        }
        const int distinct = combined_counter.count(p, theta);
        CHECK(distinct <= sum);
        CHECK(distinct >= mx);
    }
}

TEST_CASE("joint search never loses to the grid oracle") {
    std::mt19937_64 rng(69);
    for (int trial = 0; trial < 2; ++trial) {
        const ConvexPolygon poly = testutil::centered_random_hull(rng, 2.2, 5);
        const PlacementResult joint = optimal_pose(poly);
        const OraclePose oracle = oracle_grid_search(poly, 18, 24);
        CHECK(joint.count <= oracle.count);
    }
}

TEST_CASE("shortcut keeps all algorithms in agreement on tiny regions") {
    const ConvexPolygon strip({{-0.5, -0.005}, {0.5, -0.005}, {0.5, 0.005}, {-0.5, 0.005}});
    CHECK(optimal_pose(strip).count == 1);
    CHECK(cover_fixed(strip).count == 1);
    const PlacementResult k720 = sweep_baseline(strip, 720);
    const PlacementResult k4 = sweep_baseline(strip, 4);
    CHECK(k720.count <= k4.count);
    CHECK(k720.count == 1);
}

TEST_CASE("covering wrappers map centers into input coordinates") {
    const ConvexPolygon sq3({{10, 10}, {13, 10}, {13, 13}, {10, 13}});
    const Covering cov = cover_combined(sq3);
    CHECK(cov.count == 7);
    CHECK(verify_coverage(sq3, cov.centers).valid);

    const Covering swept = cover_sweep(sq3, 90);
    CHECK(swept.count >= cov.count);
    CHECK(verify_coverage(sq3, swept.centers).valid);
}
