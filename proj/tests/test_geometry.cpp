#include <catch.hpp>

#include <random>

#include "hexcover/geometry.hpp"
#include "hexcover/hex_lattice.hpp"
#include "test_helpers.hpp"

using namespace hexcover;
using testutil::random_hull;
using testutil::square;
using testutil::uniform;

TEST_CASE("convex hull keeps extreme points and drops interior ones") {
    const ConvexPolygon tri = convex_hull({{0, 0}, {1, 0}, {0, 1}});
    CHECK(tri.size() == 3);

    const ConvexPolygon sq = convex_hull({{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}});
    CHECK(sq.size() == 4);
    CHECK(area(sq) == Approx(4.0));

    CHECK_THROWS_AS(convex_hull({{0, 0}, {1, 1}, {2, 2}, {3, 3}}), DegenerateInput);
}

TEST_CASE("convex hull of random points contains every input") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Point2> pts;
        for (int i = 0; i < 100; ++i) {
            const double r = std::sqrt(uniform(rng, 0, 1)), a = uniform(rng, 0, 2 * kPi);
            pts.push_back({r * std::cos(a), r * std::sin(a)});
        }
        const ConvexPolygon hull = convex_hull(pts);
        for (const Point2& p : pts) CHECK(point_in_convex(p, hull, Containment::kClosed, 1e-7));
        for (const Point2& v : hull.vertices()) {
            bool from_input = false;
            for (const Point2& p : pts) from_input = from_input || distance(p, v) < 1e-12;
            CHECK(from_input);
        }
    }
}

TEST_CASE("area and perimeter of reference polygons") {
    CHECK(area(square(1.0)) == Approx(1.0));
    CHECK(area(square(10.0)) == Approx(100.0));
    CHECK(area(ConvexPolygon({{0, 0}, {4, 0}, {0, 3}})) == Approx(6.0));
    CHECK(perimeter(square(1.0)) == Approx(4.0));
    CHECK(perimeter(square(10.0)) == Approx(40.0));
    CHECK(perimeter(ConvexPolygon({{0, 0}, {4, 0}, {0, 3}})) == Approx(12.0));
}

TEST_CASE("support and width of reference polygons") {
    const ConvexPolygon sq = testutil::unit_square_centered();
    CHECK(support(sq, Angle(0.0)) == Approx(0.5));
    CHECK(support(sq, Angle(kPi / 4)) == Approx(std::sqrt(2.0) / 2).epsilon(1e-9));
    CHECK(support(ConvexPolygon({{0, 0}, {1, 0}, {0, 1}}), Angle(kPi / 2)) == Approx(1.0));

    CHECK(width(sq, Angle(0.0)) == Approx(1.0));
    CHECK(width(sq, Angle(kPi / 4)) == Approx(std::sqrt(2.0)));
    const ConvexPolygon thin({{0, 0}, {1, 0}, {1, 1e-9}, {0, 1e-9}});
    CHECK(thin.size() == 4);
    CHECK(width(thin, Angle(kPi / 2)) == Approx(1e-9).margin(1e-12));
}

TEST_CASE("support of a rotated polygon shifts its argument") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const ConvexPolygon poly = random_hull(rng, 4.0, 8);
        const double rho = uniform(rng, 0, 2 * kPi), phi = uniform(rng, 0, 2 * kPi);
        CHECK(support(rotate(poly, Angle(rho)), Angle(phi)) ==
              Approx(support(poly, Angle(phi - rho))).margin(1e-9));
    }
}

TEST_CASE("width is pi-periodic") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const ConvexPolygon poly = random_hull(rng, 5.0, 7);
        const double theta = uniform(rng, 0, 2 * kPi);
        CHECK(std::abs(width(poly, Angle(theta)) - width(poly, Angle(theta + kPi))) < 1e-9);
    }
}

TEST_CASE("diameter of reference polygons") {
    CHECK(diameter(square(1.0)) == Approx(std::sqrt(2.0)));
    CHECK(diameter(square(10.0)) == Approx(10.0 * std::sqrt(2.0)));
    CHECK(diameter(testutil::regular_ngon(6, 1.0)) == Approx(2.0));
}

TEST_CASE("minimum enclosing circle on reference inputs") {
    const Circle c = min_enclosing_circle(testutil::unit_square_centered());
    CHECK(norm(c.center) < 1e-9);
    CHECK(c.radius == Approx(std::sqrt(2.0) / 2));

    const Circle single = min_enclosing_circle(std::vector<Point2>{{3.0, 4.0}});
    CHECK(single.center.x == Approx(3.0));
    CHECK(single.radius == 0.0);
}

namespace {

// Independent oracle: smallest circle over all support pairs and triples.
Circle brute_force_mec(const std::vector<Point2>& pts) {
    Circle best{{0, 0}, std::numeric_limits<double>::infinity()};
    const auto contains_all = [&](const Circle& c) {
        for (const Point2& p : pts)
            if (distance(p, c.center) > c.radius + 1e-9) return false;
        return true;
    };
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            const Circle c{0.5 * (pts[i] + pts[j]), 0.5 * distance(pts[i], pts[j])};
            if (c.radius < best.radius && contains_all(c)) best = c;
        }
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            for (size_t k = j + 1; k < pts.size(); ++k) {
                const Point2 ab = pts[j] - pts[i], ac = pts[k] - pts[i];
                const double d = 2.0 * cross(ab, ac);
                if (std::abs(d) < 1e-12) continue;
                const double na = squared_norm(ab), nc = squared_norm(ac);
                const Point2 center =
                    pts[i] + (1.0 / d) * Point2{ac.y * na - ab.y * nc, ab.x * nc - ac.x * na};
                const Circle c{center, distance(center, pts[i])};
                if (c.radius < best.radius && contains_all(c)) best = c;
            }
    return best;
}

}  // namespace

TEST_CASE("minimum enclosing circle matches the brute-force oracle") {
    const std::vector<Point2> flat{{0, 0}, {2, 0}, {1, 0.1}};
    const Circle got = min_enclosing_circle(flat);
    const Circle want = brute_force_mec(flat);
    CHECK(got.radius == Approx(want.radius).margin(1e-9));
    CHECK(got.radius == Approx(1.0).margin(1e-9));
    CHECK(distance(got.center, {1.0, 0.0}) < 1e-9);

    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 25; ++trial) {
        const ConvexPolygon poly = random_hull(rng, 6.0, 12);
        const Circle a = min_enclosing_circle(poly);
        const Circle b = brute_force_mec(poly.vertices());
        CHECK(a.radius == Approx(b.radius).margin(1e-9));
        for (const Point2& v : poly.vertices()) CHECK(distance(v, a.center) <= a.radius + 1e-9);
    }
}

TEST_CASE("isometries behave as expected") {
    const ConvexPolygon sq = square(1.0);
    const ConvexPolygon back = rotate(sq, Angle(2 * kPi));
    for (int i = 0; i < 4; ++i) CHECK(distance(back.vertex(i), sq.vertex(i)) < 1e-12);

    const ConvexPolygon refl = reflect_origin(ConvexPolygon({{0, 0}, {1, 0}, {0, 1}}));
    for (const Point2 expect : {Point2{0, 0}, Point2{-1, 0}, Point2{0, -1}}) {
        bool found = false;
        for (const Point2& v : refl.vertices()) found = found || distance(v, expect) < 1e-12;
        CHECK(found);
    }
    CHECK(area(refl) == Approx(0.5));  // reflection keeps CCW orientation

    const ConvexPolygon moved = translate(translate(sq, {3, 4}), {-3, -4});
    for (int i = 0; i < 4; ++i) CHECK(distance(moved.vertex(i), sq.vertex(i)) < 1e-12);
}

TEST_CASE("minkowski sum of two unit squares is the doubled square") {
    const ConvexPolygon sum = minkowski_sum_convex(square(1.0), square(1.0));
    CHECK(sum.size() == 4);
    CHECK(area(sum) == Approx(4.0));
}

TEST_CASE("minkowski sum with a shrunken summand approximates translation") {
    const ConvexPolygon sq = square(1.0);
    const Point2 q{2.0, 3.0};
    const double eps = 1e-7;
    const ConvexPolygon spike({q, q + Point2{eps, 0.0}, q + Point2{0.0, eps}});
    const ConvexPolygon sum = minkowski_sum_convex(sq, spike);
    const ConvexPolygon expect = translate(sq, q);
    CHECK(area(sum) == Approx(area(expect)).margin(1e-5));
    for (const Point2& v : expect.vertices()) CHECK(point_in_convex(v, sum, Containment::kClosed, 1e-5));
}

TEST_CASE("minkowski sum of the centered unit square and the canonical hexagon") {
    const double expect = 1.0 + 3.0 * kSqrt3 / 2.0 + 2.0 + kSqrt3;  // 7.3301270...
    for (double phase : {0.0, kPi / 6}) {
        const ConvexPolygon sum =
            minkowski_sum_convex(testutil::unit_square_centered(), canonical_hexagon(Angle(phase)));
        CHECK(area(sum) == Approx(expect).margin(1e-9));
        CHECK(sum.size() <= 10);
    }
    CHECK(1.0 + 3.0 * kSqrt3 / 2.0 + 2.0 + kSqrt3 == Approx(7.33012701892219).margin(1e-9));
}

TEST_CASE("minkowski sum area dominates the sum of areas") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 30; ++trial) {
        const ConvexPolygon p = random_hull(rng, 4.0, 7);
        const ConvexPolygon q = random_hull(rng, 3.0, 6);
        const ConvexPolygon sum = minkowski_sum_convex(p, q);
        CHECK(sum.size() <= p.size() + q.size());
        CHECK(area(sum) >= area(p) + area(q) - 1e-9);
    }
}

TEST_CASE("point containment modes") {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 10; ++trial) {
        const ConvexPolygon poly = random_hull(rng, 5.0, 8);
        CHECK(point_in_convex(centroid(poly), poly, Containment::kInterior));
        CHECK_FALSE(point_in_convex(poly.vertex(0), poly, Containment::kInterior));
        CHECK(point_in_convex(poly.vertex(0), poly, Containment::kClosed));
    }
}

TEST_CASE("segment intersection classification") {
    const auto hit = segment_intersect({0, 0}, {1, 1}, {0, 1}, {1, 0});
    REQUIRE(hit.has_value());
    CHECK(distance(hit->point, {0.5, 0.5}) < 1e-12);
    CHECK_FALSE(hit->at_endpoint);

    CHECK_FALSE(segment_intersect({0, 0}, {1, 0}, {2, 0}, {3, 0}).has_value());

    const auto touch = segment_intersect({0, 0}, {1, 0}, {0, 0}, {0, 1});
    REQUIRE(touch.has_value());
    CHECK(distance(touch->point, {0, 0}) < 1e-9);
    CHECK(touch->at_endpoint);

    CHECK_THROWS_AS(segment_intersect({0, 0}, {2, 0}, {1, 0}, {3, 0}), NoUniquePoint);
}

TEST_CASE("simple polygon accepts an L and rejects a bowtie") {
    CHECK_THROWS_AS(SimplePolygon({{0, 0}, {2, 0}, {0, 2}, {2, 2}}), NotSimple);
    const SimplePolygon lshape({{0, 0}, {2, 0}, {2, 2}, {1, 2}, {1, 1}, {0, 1}});
    CHECK(area(lshape) == Approx(3.0));
    CHECK(point_in_simple({0.5, 0.5}, lshape));
    CHECK(point_in_simple({1.5, 0.5}, lshape));
    CHECK(point_in_simple({1.7, 1.7}, lshape));
    CHECK_FALSE(point_in_simple({0.5, 1.5}, lshape));
}
