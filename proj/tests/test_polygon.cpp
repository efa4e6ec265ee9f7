#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "barnorm/polygon.hpp"
#include "test_util.hpp"

using namespace barnorm;

namespace {
void check_valid(const SymmetricPolygon& p) {
    const auto err = validate(p);
    if (err) FAIL_CHECK("invalid polygon: " << *err);
}
}  // namespace

TEST_CASE("construction from points") {
    const std::vector<Vec2> sq{{1, 1}, {-1, 1}};
    const auto square = SymmetricPolygon::from_points(sq);
    CHECK(square.vertex_count() == 4);
    CHECK(testutil::same_vertex_set(square,
                                    SymmetricPolygon::from_points(std::vector<Vec2>{
                                        {1, 1}, {-1, 1}, {-1, -1}, {1, -1}}),
                                    1e-12));
    check_valid(square);

    const auto diamond = SymmetricPolygon::from_points(std::vector<Vec2>{{1, 0}, {0, 1}});
    CHECK(diamond.vertex_count() == 4);
    check_valid(diamond);

    // regular 8 points on the unit circle: hull removes nothing
    std::vector<Vec2> oct;
    for (int i = 0; i < 8; ++i) oct.push_back(from_polar(1.0, kTau * i / 8));
    const auto octagon = SymmetricPolygon::from_points(oct);
    CHECK(octagon.vertex_count() == 8);
    check_valid(octagon);

    // interior points are dropped by the hull
    std::vector<Vec2> with_inner = oct;
    with_inner.push_back({0.1, 0.05});
    CHECK(SymmetricPolygon::from_points(with_inner).vertex_count() == 8);

    // all points on a line through the origin: degenerate ball
    CHECK_THROWS_AS(SymmetricPolygon::from_points(std::vector<Vec2>{{1, 1}, {2, 2}, {-3, -3}}),
                    DegenerateBallError);
    CHECK_THROWS_AS(SymmetricPolygon::from_points(std::vector<Vec2>{{1, 1}}),
                    std::invalid_argument);
}

TEST_CASE("gauge on reference shapes") {
    const auto square = SymmetricPolygon::from_points(std::vector<Vec2>{{1, 1}, {-1, 1}});
    CHECK(square.gauge({2, 0}) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(square.gauge({1, 1}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(square.gauge({0, 0}) == 0.0);

    const auto diamond = SymmetricPolygon::from_points(std::vector<Vec2>{{1, 0}, {0, 1}});
    CHECK(diamond.gauge({0.3, 0.2}) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("gauge equals the every-edge-scan oracle") {
    testutil::Rng rng(101);
    for (int trial = 0; trial < 30; ++trial) {
        const auto p = testutil::random_polygon(rng, 7);
        check_valid(p);
        for (int i = 0; i < 40; ++i) {
            const Vec2 x = rng.nonzero_vec(3.0);
            const double fast = p.gauge(x);
            const double slow = testutil::gauge_bruteforce(p, x);
            CHECK(fast == doctest::Approx(slow).epsilon(1e-11));
        }
    }
}

TEST_CASE("gauge positive homogeneity and symmetry") {
    testutil::Rng rng(55);
    const auto p = testutil::random_polygon(rng, 8);
    for (int i = 0; i < 500; ++i) {
        const Vec2 x = rng.nonzero_vec();
        const double t = rng.uniform(-3.0, 3.0);
        CHECK(p.gauge(t * x) == doctest::Approx(std::abs(t) * p.gauge(x)).epsilon(1e-10));
    }
}

TEST_CASE("gauge triangle inequality") {
    testutil::Rng rng(77);
    const auto p = testutil::random_polygon(rng, 9);
    for (int i = 0; i < 500; ++i) {
        const Vec2 x = rng.vec(), y = rng.vec();
        CHECK(p.gauge(x + y) <= p.gauge(x) + p.gauge(y) + 1e-10);
    }
}

TEST_CASE("linear preimage") {
    const auto square = SymmetricPolygon::from_points(std::vector<Vec2>{{1, 1}, {-1, 1}});
    const auto half = square.linear_preimage(2.0 * Mat2::identity());
    CHECK(testutil::same_vertex_set(
        half, SymmetricPolygon::from_points(std::vector<Vec2>{{0.5, 0.5}, {-0.5, 0.5}}), 1e-12));
    check_valid(half);

    // rotation: same vertex set rotated
    std::vector<Vec2> oct;
    for (int i = 0; i < 16; ++i) oct.push_back(from_polar(1.0, kTau * i / 16));
    const auto disc = SymmetricPolygon::from_points(oct);
    const auto rot = disc.linear_preimage(Mat2::rotation(0.3));
    check_valid(rot);
    for (std::size_t i = 0; i < disc.vertex_count(); ++i) {
        const Vec2 mapped = Mat2::rotation(-0.3) * disc.vertex(i);
        double best = 1e9;
        for (std::size_t j = 0; j < rot.vertex_count(); ++j)
            best = std::min(best, (mapped - rot.vertex(j)).norm());
        CHECK(best <= 1e-12);
    }

    // shear: gauge identity gauge(A^{-1}P, x) == gauge(P, A x)
    const Mat2 shear{1, 1, 0, 1};
    const auto sheared = square.linear_preimage(shear);
    check_valid(sheared);
    testutil::Rng rng(31);
    for (int i = 0; i < 20; ++i) {
        const Vec2 x = rng.nonzero_vec();
        CHECK(sheared.gauge(x) == doctest::Approx(square.gauge(shear * x)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(square.linear_preimage(Mat2{1, 1, 1, 1}), SingularMatrixError);
}

TEST_CASE("preimage composition") {
    testutil::Rng rng(41);
    const auto p = testutil::random_polygon(rng, 6);
    const Mat2 a{1.2, 0.3, -0.2, 0.9};
    const Mat2 b{0.8, -0.5, 0.4, 1.1};
    const auto two_step = p.linear_preimage(a).linear_preimage(b);
    const auto direct = p.linear_preimage(a * b);
    CHECK(testutil::same_vertex_set(two_step, direct, 1e-9));
}

TEST_CASE("intersection") {
    const auto square = SymmetricPolygon::from_points(std::vector<Vec2>{{1, 1}, {-1, 1}});
    const auto same = intersect(square, square);
    CHECK(testutil::same_vertex_set(same, square, 1e-12));
    check_valid(same);

    const auto diamond =
        SymmetricPolygon::from_points(std::vector<Vec2>{{1.5, 0}, {0, 1.5}});
    const auto octa = intersect(square, diamond);
    CHECK(octa.vertex_count() == 8);
    check_valid(octa);

    testutil::Rng rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = testutil::random_polygon(rng, 6);
        const auto q = testutil::random_polygon(rng, 6);
        const auto r = intersect(p, q);
        check_valid(r);
        for (int i = 0; i < 100; ++i) {
            const Vec2 x = rng.nonzero_vec();
            CHECK(r.gauge(x) ==
                  doctest::Approx(std::max(p.gauge(x), q.gauge(x))).epsilon(1e-10));
        }
        // commutative
        CHECK(testutil::same_vertex_set(r, intersect(q, p), 1e-9));
        // associative
        const auto s = testutil::random_polygon(rng, 5);
        CHECK(testutil::same_vertex_set(intersect(intersect(p, q), s),
                                        intersect(p, intersect(q, s)), 1e-9));
    }
}

TEST_CASE("normalize") {
    const auto square = SymmetricPolygon::from_points(std::vector<Vec2>{{1, 1}, {-1, 1}});
    const auto [scaled, s] = square.normalized({2, 0});
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(scaled.gauge({2, 0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(scaled.max_vertex_radius() == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));

    // direction already on the boundary: scale 1
    const auto [same, s1] = square.normalized({1, 0.3});
    CHECK(s1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(testutil::same_vertex_set(same, square, 1e-12));

    // idempotence
    const auto [twice, s2] = scaled.normalized({2, 0});
    CHECK(s2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(square.normalized({0, 0}), std::invalid_argument);
}

TEST_CASE("prune") {
    testutil::Rng rng(71);
    const auto p = testutil::random_polygon(rng, 10);
    const auto untouched = p.pruned(0.0);
    CHECK(untouched.vertex_count() == p.vertex_count());
    for (std::size_t i = 0; i < p.vertex_count(); ++i)
        CHECK(untouched.vertex(i) == p.vertex(i));

    // hexagon plus one vertex pair sitting 1e-12 off an edge chord: an
    // octagon whose extra pair vanishes under a 1e-9 prune
    std::vector<Vec2> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(from_polar(1.0, kTau * i / 6));
    const Vec2 mid = 0.5 * (pts[0] + pts[1]);
    pts.push_back((1.0 + 1e-12 / mid.norm()) * mid);
    const auto octagon = SymmetricPolygon::from_points(pts);
    REQUIRE(octagon.vertex_count() == 8);
    const auto hexagon = octagon.pruned(1e-9);
    CHECK(hexagon.vertex_count() == 6);
    check_valid(hexagon);

    // Hausdorff(P, prune(P, eps)) <= eps
    for (int trial = 0; trial < 20; ++trial) {
        const auto q = testutil::random_polygon(rng, 12);
        const double eps = rng.uniform(1e-6, 5e-2);
        const auto pruned = q.pruned(eps);
        check_valid(pruned);
        CHECK(testutil::hausdorff(q, pruned) <= eps + 1e-12);
    }
}

TEST_CASE("serialization round trip is bit-exact") {
    testutil::Rng rng(81);
    const auto p = testutil::random_polygon(rng, 9);
    std::ostringstream out;
    p.serialize(out);
    std::istringstream in(out.str());
    const auto q = SymmetricPolygon::deserialize(in);
    REQUIRE(q.vertex_count() == p.vertex_count());
    for (std::size_t i = 0; i < p.vertex_count(); ++i) {
        CHECK(q.vertex(i).x == p.vertex(i).x);  // bitwise
        CHECK(q.vertex(i).y == p.vertex(i).y);
    }
    // second round trip produces identical bytes
    std::ostringstream out2;
    q.serialize(out2);
    CHECK(out.str() == out2.str());
}

TEST_CASE("deserialization rejects malformed input") {
    std::istringstream bad_header("barnorm-polygon v9\nvertices 4\n1 0\n0 1\n-1 0\n0 -1\n");
    CHECK_THROWS_AS(SymmetricPolygon::deserialize(bad_header), std::invalid_argument);
    std::istringstream truncated("barnorm-polygon v1\nvertices 4\n1 0\n0 1\n");
    CHECK_THROWS_AS(SymmetricPolygon::deserialize(truncated), std::invalid_argument);
    std::istringstream asym("barnorm-polygon v1\nvertices 4\n1 0\n0 1\n-1 0\n0.5 -1\n");
    CHECK_THROWS_AS(SymmetricPolygon::deserialize(asym), std::invalid_argument);
}

TEST_CASE("regular polygon factory") {
    const auto p = SymmetricPolygon::regular(64);
    CHECK(p.vertex_count() == 64);
    check_valid(p);
    CHECK(p.inradius() == doctest::Approx(std::cos(kPi / 64)).epsilon(1e-12));
    CHECK_THROWS_AS(SymmetricPolygon::regular(5), std::invalid_argument);
}
