#include <doctest.h>

#include <cmath>

#include "l2man/manifold.hpp"

using namespace l2man;

namespace {

Point unit(int dim, int axis) {
    Point p;
    p.coords = Eigen::VectorXd::Zero(dim);
    p.coords(axis) = 1.0;
    return p;
}

constexpr double kPi = 3.14159265358979323846;

} // namespace

TEST_CASE("spec factories validate dimensions") {
    CHECK_THROWS_AS(ManifoldSpec::sphere(1), InvalidSpec);
    CHECK_THROWS_AS(ManifoldSpec::hyperbolic(1), InvalidSpec);
    CHECK_THROWS_AS(ManifoldSpec::euclidean(0), InvalidSpec);
    CHECK_THROWS_AS(ManifoldSpec::product({ManifoldSpec::sphere(2)}), InvalidSpec);
    CHECK_THROWS_AS(ManifoldSpec::scaled(0.0, ManifoldSpec::sphere(2)), InvalidSpec);

    CHECK(ManifoldSpec::sphere(2).ambient_dim() == 3);
    CHECK(ManifoldSpec::hyperbolic(2).ambient_dim() == 3);
    CHECK(ManifoldSpec::euclidean(3).ambient_dim() == 3);

    CHECK(ManifoldSpec::sphere(2).is_rigid_target());
    CHECK(ManifoldSpec::scaled(2.0, ManifoldSpec::hyperbolic(3)).is_rigid_target());
    CHECK_FALSE(ManifoldSpec::euclidean(2).is_rigid_target());
    CHECK_FALSE(
        ManifoldSpec::product({ManifoldSpec::sphere(2), ManifoldSpec::sphere(2)}).is_rigid_target());
}

TEST_CASE("point validation enforces the chart invariants") {
    const ManifoldSpec s2 = ManifoldSpec::sphere(2);
    Point bad;
    bad.coords = Eigen::VectorXd::Ones(3); // norm sqrt(3)
    CHECK_THROWS_AS(validate_point(s2, bad), InvalidPoint);
    CHECK_NOTHROW(validate_point(s2, unit(3, 0)));

    const ManifoldSpec h2 = ManifoldSpec::hyperbolic(2);
    CHECK_NOTHROW(validate_point(h2, unit(3, 0))); // (1,0,0) is the hyperboloid basepoint
    CHECK_THROWS_AS(validate_point(h2, unit(3, 1)), InvalidPoint);
}

TEST_CASE("sphere distances hit the textbook values") {
    const ManifoldSpec s2 = ManifoldSpec::sphere(2);
    CHECK(dist(s2, unit(3, 0), unit(3, 1)) == doctest::Approx(kPi / 2).epsilon(1e-15));
    Point antipode = unit(3, 0);
    antipode.coords(0) = -1.0;
    CHECK(dist(s2, unit(3, 0), antipode) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(dist(s2, unit(3, 2), unit(3, 2)) == doctest::Approx(0.0));
}

TEST_CASE("hyperbolic distance matches the rapidity parametrization") {
    const ManifoldSpec h2 = ManifoldSpec::hyperbolic(2);
    Point p = unit(3, 0);
    Point q;
    q.coords = Eigen::VectorXd::Zero(3);
    q.coords(0) = std::cosh(1.0);
    q.coords(1) = std::sinh(1.0);
    CHECK(dist(h2, p, q) == doctest::Approx(1.0).epsilon(1e-12));

    // stability near coincidence: tiny boosts keep full relative accuracy
    Point r = q;
    r.coords(0) = std::cosh(1e-8);
    r.coords(1) = std::sinh(1e-8);
    CHECK(dist(h2, p, r) == doctest::Approx(1e-8).epsilon(1e-6));
}

TEST_CASE("slerp midpoint of two orthogonal unit vectors") {
    const ManifoldSpec s2 = ManifoldSpec::sphere(2);
    const Point mid = geodesic_point(s2, unit(3, 0), unit(3, 1), 0.5);
    CHECK(mid.coords(0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(mid.coords(1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(mid.coords(2) == doctest::Approx(0.0));

    Point antipode = unit(3, 0);
    antipode.coords(0) = -1.0;
    CHECK_THROWS_AS(geodesic_point(s2, unit(3, 0), antipode, 0.5), NonUniqueGeodesic);
}

TEST_CASE("geodesics run at constant speed on every backend") {
    Rng rng(7);
    for (const auto& m : {ManifoldSpec::sphere(2), ManifoldSpec::hyperbolic(2),
                          ManifoldSpec::euclidean(3),
                          ManifoldSpec::scaled(1.5, ManifoldSpec::sphere(2)),
                          ManifoldSpec::product({ManifoldSpec::sphere(2),
                                                 ManifoldSpec::euclidean(2)})}) {
        for (int k = 0; k < 20; ++k) {
            const Point p = random_point(m, rng);
            const Point q = random_point(m, rng);
            const double d = dist(m, p, q);
            const Point third = geodesic_point(m, p, q, 1.0 / 3.0);
            CHECK(dist(m, p, third) == doctest::Approx(d / 3.0).epsilon(1e-9));
            CHECK(dist(m, third, q) == doctest::Approx(2.0 * d / 3.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("comparison angle of the equilateral spherical triangle") {
    const ManifoldSpec s2 = ManifoldSpec::sphere(2);
    // all three sides are pi/2, so the Euclidean comparison triangle is equilateral
    CHECK(comparison_angle(s2, unit(3, 0), unit(3, 1), unit(3, 2)) ==
          doctest::Approx(kPi / 3).epsilon(1e-12));
    CHECK_THROWS_AS(comparison_angle(s2, unit(3, 0), unit(3, 0), unit(3, 1)), DegenerateVertex);
}

TEST_CASE("log map has the metric length and the right angles") {
    Rng rng(11);
    for (const auto& m :
         {ManifoldSpec::sphere(2), ManifoldSpec::hyperbolic(2), ManifoldSpec::euclidean(3),
          ManifoldSpec::scaled(2.0, ManifoldSpec::hyperbolic(2))}) {
        for (int k = 0; k < 20; ++k) {
            const Point p = random_point(m, rng);
            const Point q = random_point(m, rng);
            const Tangent v = log_map(m, p, q);
            const double d = dist(m, p, q);
            CHECK(std::sqrt(tangent_inner(m, p, v, v)) == doctest::Approx(d).epsilon(1e-9));
        }
    }
    const ManifoldSpec s2 = ManifoldSpec::sphere(2);
    CHECK(riemannian_angle(s2, unit(3, 0), unit(3, 1), unit(3, 2)) ==
          doctest::Approx(kPi / 2).epsilon(1e-12));
}

TEST_CASE("isometries validate, compose, invert and preserve distances") {
    Rng rng(13);
    for (const auto& m : {ManifoldSpec::sphere(2), ManifoldSpec::hyperbolic(2),
                          ManifoldSpec::euclidean(3),
                          ManifoldSpec::product({ManifoldSpec::sphere(2),
                                                 ManifoldSpec::hyperbolic(2)})}) {
        for (int k = 0; k < 10; ++k) {
            const ManifoldIsometry g = random_isometry(m, rng);
            CHECK_NOTHROW(validate_isometry(m, g));
            const Point p = random_point(m, rng);
            const Point q = random_point(m, rng);
            CHECK(dist(m, apply_isometry(m, g, p), apply_isometry(m, g, q)) ==
                  doctest::Approx(dist(m, p, q)).epsilon(1e-10));

            const ManifoldIsometry h = random_isometry(m, rng);
            const Point lhs = apply_isometry(m, compose_isometries(m, g, h), p);
            const Point rhs = apply_isometry(m, g, apply_isometry(m, h, p));
            CHECK(dist(m, lhs, rhs) < 1e-10);

            const Point back = apply_isometry(m, invert_isometry(m, g), apply_isometry(m, g, p));
            CHECK(dist(m, back, p) < 1e-10);
        }
    }
}

TEST_CASE("fit_isometry recovers a planted isometry from samples") {
    Rng rng(17);
    for (const auto& m :
         {ManifoldSpec::sphere(2), ManifoldSpec::hyperbolic(2), ManifoldSpec::euclidean(3)}) {
        const ManifoldIsometry g = random_isometry(m, rng);
        std::vector<Point> xs, ys;
        for (int k = 0; k < 8; ++k) {
            xs.push_back(random_point(m, rng));
            ys.push_back(apply_isometry(m, g, xs.back()));
        }
        double residual = 1.0;
        const ManifoldIsometry fitted = fit_isometry(m, xs, ys, &residual);
        CHECK(residual < 1e-9);
        const Point p = random_point(m, rng);
        CHECK(dist(m, apply_isometry(m, fitted, p), apply_isometry(m, g, p)) < 1e-9);
    }
}

TEST_CASE("dilations exist only on Euclidean targets") {
    Rng rng(19);
    const ManifoldSpec e3 = ManifoldSpec::euclidean(3);
    const Point x = random_point(e3, rng);
    const Point y = random_point(e3, rng);
    CHECK(dist(e3, scaling_map(e3, 2.5, x), scaling_map(e3, 2.5, y)) ==
          doctest::Approx(2.5 * dist(e3, x, y)).epsilon(1e-14));
    CHECK_THROWS_AS(scaling_map(ManifoldSpec::sphere(2), 2.5, random_point(ManifoldSpec::sphere(2), rng)),
                    UnsupportedVariant);
    CHECK_THROWS_AS(
        scaling_map(ManifoldSpec::hyperbolic(2), 2.5, random_point(ManifoldSpec::hyperbolic(2), rng)),
        UnsupportedVariant);
}

TEST_CASE("scaled targets multiply distances and share isometries") {
    Rng rng(23);
    const ManifoldSpec s2 = ManifoldSpec::sphere(2);
    const ManifoldSpec scaled = ManifoldSpec::scaled(3.0, s2);
    const Point p = random_point(s2, rng);
    const Point q = random_point(s2, rng);
    CHECK(dist(scaled, p, q) == doctest::Approx(3.0 * dist(s2, p, q)).epsilon(1e-14));
    const ManifoldIsometry g = random_isometry(scaled, rng);
    CHECK_NOTHROW(validate_isometry(s2, g));
}
