#include <doctest.h>

#include <cmath>

#include "l2man/l2_space.hpp"

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

TEST_CASE("two-atom distance and geodesic density by hand") {
    const ProbSpace half = uniform_interval(2);
    const ManifoldSpec s2 = ManifoldSpec::sphere(2);
    const L2Function f = make_l2_function(half, s2, {unit(3, 0), unit(3, 0)});
    const L2Function g = make_l2_function(half, s2, {unit(3, 1), unit(3, 0)});

    // only the first atom moves, through pi/2: d = sqrt(1/2) * pi/2
    CHECK(d_l2(f, g) == doctest::Approx(kPi / 2 / std::sqrt(2.0)).epsilon(1e-15));

    const L2Geodesic sigma = geodesic(f, g);
    CHECK(sigma.alpha[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(sigma.alpha[1] == 0.0);
    CHECK(sigma.length == doctest::Approx(kPi / 2 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("function construction validates arity and points") {
    const ProbSpace half = uniform_interval(2);
    const ManifoldSpec s2 = ManifoldSpec::sphere(2);
    CHECK_THROWS_AS(make_l2_function(half, s2, {unit(3, 0)}), ArityMismatch);
    Point bad;
    bad.coords = Eigen::VectorXd::Ones(3);
    CHECK_THROWS_AS(make_l2_function(half, s2, {unit(3, 0), bad}), InvalidPoint);
    CHECK_THROWS_AS(geodesic(constant_function(half, s2, unit(3, 0)),
                             constant_function(half, s2, unit(3, 0))),
                    IdenticalEndpoints);
}

TEST_CASE("geodesics obey the speed law and stay parameterized on [0,1]") {
    Rng rng(31);
    const ProbSpace space = make_prob_space({0.1, 0.2, 0.3, 0.4});
    for (const auto& m :
         {ManifoldSpec::sphere(2), ManifoldSpec::hyperbolic(2), ManifoldSpec::euclidean(3)}) {
        const L2Function f = random_function(space, m, rng);
        const L2Function g = random_function(space, m, rng);
        const L2Geodesic sigma = geodesic(f, g);

        double alpha_mass = 0.0;
        for (std::size_t i = 0; i < space.size(); ++i)
            alpha_mass += space.weight(i) * sigma.alpha[i] * sigma.alpha[i];
        CHECK(alpha_mass == doctest::Approx(1.0).epsilon(1e-12));

        CHECK(d_l2(eval_geodesic(sigma, 0.0), f) < 1e-12);
        CHECK(d_l2(eval_geodesic(sigma, 1.0), g) < 1e-12);
        CHECK(d_l2(eval_geodesic(sigma, 0.25), eval_geodesic(sigma, 0.75)) ==
              doctest::Approx(0.5 * sigma.length).epsilon(1e-10));
        CHECK_THROWS_AS(eval_geodesic(sigma, 1.5), OutOfRange);
        CHECK_THROWS_AS(eval_geodesic(sigma, -0.1), OutOfRange);
    }
}

TEST_CASE("d_eta reduces to d_l2 for the unit density and localizes for indicators") {
    Rng rng(37);
    const ProbSpace space = make_prob_space({0.1, 0.2, 0.3, 0.4});
    const ManifoldSpec m = ManifoldSpec::hyperbolic(2);
    const L2Function f = random_function(space, m, rng);
    const L2Function g = random_function(space, m, rng);

    CHECK(d_eta(DensityFn::ones(4), f, g) == doctest::Approx(d_l2(f, g)).epsilon(1e-14));

    const double da = d_eta(DensityFn::indicator(4, {0, 1}), f, g);
    const double db = d_eta(DensityFn::indicator(4, {2, 3}), f, g);
    CHECK(da * da + db * db == doctest::Approx(d_l2(f, g) * d_l2(f, g)).epsilon(1e-13));
    CHECK_THROWS_AS(d_eta(DensityFn::ones(3), f, g), SpaceMismatch);
}

TEST_CASE("numeric comparison angles converge to the closed form") {
    Rng rng(41);
    const ProbSpace space = make_prob_space({0.1, 0.2, 0.3, 0.4});
    const ManifoldSpec m = ManifoldSpec::sphere(2);
    const L2Function f = random_function(space, m, rng);
    const L2Geodesic s1 = geodesic(f, random_function(space, m, rng));
    const L2Geodesic s2 = geodesic(f, random_function(space, m, rng));

    const AngleTrace trace = alexandrov_angle_numeric(s1, s2, default_angle_scales());
    const double analytic = alexandrov_angle_analytic(s1, s2);
    CHECK(std::abs(trace.extrapolated - analytic) < 1e-6);
    // O(t^2): the raw angle at the last scale is strictly worse than the
    // extrapolated value
    CHECK(std::abs(trace.angles.back() - analytic) > std::abs(trace.extrapolated - analytic));

    const L2Geodesic other = geodesic(random_function(space, m, rng),
                                      random_function(space, m, rng));
    CHECK_THROWS_AS(alexandrov_angle_analytic(s1, other), MismatchedBasepoint);
    CHECK_THROWS_AS(alexandrov_angle_numeric(s1, s2, {0.1, 0.2}), InvalidSpec);
}

TEST_CASE("orthogonal per-atom motions meet at the right angle") {
    // both geodesics move only atom 0, along orthogonal great circles:
    // the L2 angle equals the pointwise angle pi/2
    const ProbSpace half = uniform_interval(2);
    const ManifoldSpec s2 = ManifoldSpec::sphere(2);
    const L2Function f = constant_function(half, s2, unit(3, 0));
    L2Function g1 = f, g2 = f;
    g1.points[0] = unit(3, 1);
    g2.points[0] = unit(3, 2);
    CHECK(alexandrov_angle_analytic(geodesic(f, g1), geodesic(f, g2)) ==
          doctest::Approx(kPi / 2).epsilon(1e-12));
}

TEST_CASE("simple functions place one point per partition block") {
    const ProbSpace space = uniform_interval(4);
    const ManifoldSpec s2 = ManifoldSpec::sphere(2);
    const Partition part(4, {{0, 1}, {2, 3}});
    const L2Function f = simple_embed(space, s2, part, {unit(3, 0), unit(3, 1)});
    CHECK(f.points[0].coords == unit(3, 0).coords);
    CHECK(f.points[1].coords == unit(3, 0).coords);
    CHECK(f.points[2].coords == unit(3, 1).coords);
    CHECK_THROWS_AS(simple_embed(space, s2, part, {unit(3, 0)}), ArityMismatch);
}

TEST_CASE("restriction splits are Pythagorean and glue back") {
    Rng rng(43);
    const ProbSpace space = make_prob_space({0.1, 0.2, 0.3, 0.4});
    const ManifoldSpec m = ManifoldSpec::sphere(2);
    const L2Function f = random_function(space, m, rng);
    const L2Function g = random_function(space, m, rng);

    const auto [fa, fb] = restrict_split(f, {0, 2});
    const auto [ga, gb] = restrict_split(g, {0, 2});
    const double da = d_restricted(fa, ga);
    const double db = d_restricted(fb, gb);
    CHECK(da * da + db * db == doctest::Approx(d_l2(f, g) * d_l2(f, g)).epsilon(1e-13));

    const L2Function back = glue(space, fa, fb);
    CHECK(d_l2(back, f) < 1e-15);

    CHECK_THROWS_AS(restrict_split(f, {}), EmptyOrFullSubset);
    CHECK_THROWS_AS(restrict_split(f, {0, 1, 2, 3}), EmptyOrFullSubset);
    CHECK_THROWS_AS(restrict_split(f, {9}), OutOfRange);
}

TEST_CASE("product targets factor and reassemble") {
    Rng rng(47);
    const ProbSpace space = uniform_interval(3);
    const ManifoldSpec target =
        ManifoldSpec::product({ManifoldSpec::sphere(2), ManifoldSpec::hyperbolic(2)});
    const L2Function f = random_function(space, target, rng);
    const L2Function g = random_function(space, target, rng);

    const auto [f1, f2] = product_split(f);
    const auto [g1, g2] = product_split(g);
    CHECK(d_l2(f1, g1) * d_l2(f1, g1) + d_l2(f2, g2) * d_l2(f2, g2) ==
          doctest::Approx(d_l2(f, g) * d_l2(f, g)).epsilon(1e-13));
    CHECK(d_l2(product_glue(f1, f2), f) < 1e-15);

    const L2Function plain = random_function(space, ManifoldSpec::sphere(2), rng);
    CHECK_THROWS_AS(product_split(plain), NotAProduct);
}
