#include <doctest.h>

#include <cmath>

#include "l2man/affine_maps.hpp"

using namespace l2man;

namespace {

const ProbSpace kSpace = make_prob_space({0.25, 0.25, 0.5});
const ManifoldSpec kSphere = ManifoldSpec::sphere(2);

std::pair<Point, Point> probe_pair(Rng& rng) {
    const Point p = random_point(kSphere, rng);
    Point q = random_point(kSphere, rng);
    while (dist(kSphere, p, q) < 1e-2) q = random_point(kSphere, rng);
    if (dist(kSphere, p, q) > 1.0) q = geodesic_point(kSphere, p, q, 1.0 / dist(kSphere, p, q));
    return {p, q};
}

} // namespace

TEST_CASE("recover_eta inverts the builtin oracles") {
    Rng rng(101);
    const auto [p, q] = probe_pair(rng);

    const DensityFn id_eta = recover_eta(identity_affine_oracle(kSpace, kSphere), p, q);
    for (std::size_t i = 0; i < 3; ++i) CHECK(id_eta[i] == doctest::Approx(1.0).epsilon(1e-12));

    const DensityFn res_eta = recover_eta(restriction_oracle(kSpace, kSphere, {0, 2}), p, q);
    CHECK(res_eta[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res_eta[1] == doctest::Approx(0.0));
    CHECK(res_eta[2] == doctest::Approx(1.0).epsilon(1e-12));

    const std::vector<double> planted = {0.5, 1.5, 1.0};
    const DensityFn deta =
        recover_eta(d_eta_oracle(kSpace, kSphere, DensityFn(planted)), p, q);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::abs(deta[i] - planted[i]) < 1e-10);

    CHECK_THROWS_AS(recover_eta(identity_affine_oracle(kSpace, kSphere), p, p),
                    DegenerateProbe);
}

TEST_CASE("oracle validation accepts metrics and the builtin battery") {
    Rng rng(103);
    for (const auto& oracle :
         {identity_affine_oracle(kSpace, kSphere), constant_oracle(kSpace, kSphere),
          d_eta_oracle(kSpace, kSphere, DensityFn({0.5, 1.5, 1.0})),
          clipped_oracle(kSpace, kSphere, random_point(kSphere, rng), 0.4)}) {
        CHECK_NOTHROW(validate_affine_oracle(oracle, rng, 8));
    }
}

TEST_CASE("well-definedness separates affine from clipped") {
    Rng rng(107);
    std::vector<std::pair<Point, Point>> pairs;
    for (int k = 0; k < 4; ++k) pairs.push_back(probe_pair(rng));

    CHECK(welldefinedness_check(d_eta_oracle(kSpace, kSphere, DensityFn({0.5, 1.5, 1.0})),
                                pairs) < 1e-9);
    CHECK(welldefinedness_check(constant_oracle(kSpace, kSphere), pairs) == 0.0);

    const AffineOracle control = clipped_oracle(kSpace, kSphere, random_point(kSphere, rng), 0.4);
    CHECK(welldefinedness_check(control, pairs) > 1e-3);

    CHECK_THROWS_AS(welldefinedness_check(control, {pairs[0]}), InvalidSpec);
}

TEST_CASE("the distance identity holds with the recovered density") {
    Rng rng(109);
    const auto [p, q] = probe_pair(rng);
    const DensityFn planted({0.5, 1.5, 1.0});
    const AffineOracle oracle = d_eta_oracle(kSpace, kSphere, planted);
    const DensityFn eta = recover_eta(oracle, p, q);

    std::vector<std::pair<L2Function, L2Function>> samples;
    for (int k = 0; k < 50; ++k)
        samples.emplace_back(random_function(kSpace, kSphere, rng),
                             random_function(kSpace, kSphere, rng));
    CHECK(verify_identity(oracle, eta, samples) < 1e-10);
    CHECK(verify_identity(identity_affine_oracle(kSpace, kSphere), DensityFn::ones(3),
                          samples) < 1e-10);
    CHECK(verify_identity(constant_oracle(kSpace, kSphere), DensityFn({0, 0, 0}), samples) ==
          0.0);
    CHECK_THROWS_AS(verify_identity(oracle, eta, {}), InvalidSpec);
}

TEST_CASE("mu~ is additive and dominated by the squared Lipschitz constant") {
    Rng rng(113);
    const AffineOracle id = identity_affine_oracle(kSpace, kSphere);
    const AdditivityReport id_rep =
        additivity_and_bound(id, DensityFn::ones(3), rng);
    CHECK(id_rep.max_additivity_residual < 1e-10);
    CHECK(id_rep.lipschitz_estimate == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(id_rep.bound_holds);

    const DensityFn planted({0.5, 1.5, 1.0});
    const AffineOracle deta = d_eta_oracle(kSpace, kSphere, planted);
    const AdditivityReport deta_rep = additivity_and_bound(deta, planted, rng);
    CHECK(deta_rep.max_additivity_residual < 1e-10);
    CHECK(deta_rep.max_eta == doctest::Approx(1.5));
    // single-atom probes push the estimate up to the max-density atom
    CHECK(deta_rep.lipschitz_estimate * deta_rep.lipschitz_estimate >= 1.5 - 1e-6);
    CHECK(deta_rep.bound_holds);
}

TEST_CASE("factor constants recover planted weights on a product") {
    Rng rng(127);
    const ManifoldSpec product = ManifoldSpec::product({kSphere, kSphere});
    const AffineOracle oracle = weighted_product_oracle(product, {1.0, 0.5});

    Point base = random_point(product, rng);
    std::vector<Point> perturbed;
    for (int i = 0; i < 2; ++i) {
        Point q = random_point(kSphere, rng);
        while (dist(kSphere, base.factors[i], q) < 1e-2) q = random_point(kSphere, rng);
        perturbed.push_back(q);
    }
    const FactorConstants fc = factor_constants(oracle, base, perturbed, rng, 50);
    CHECK(fc.constants[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fc.constants[1] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(fc.mixed_identity_residual < 1e-8);

    // projection onto the first factor is the degenerate weighting (1, 0)
    const AffineOracle proj = weighted_product_oracle(product, {1.0, 0.0});
    const FactorConstants pc = factor_constants(proj, base, perturbed, rng, 50);
    CHECK(pc.constants[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(pc.constants[1] == doctest::Approx(0.0));

    CHECK_THROWS_AS(factor_constants(identity_affine_oracle(kSpace, kSphere), base,
                                     perturbed, rng),
                    NotAProduct);
    CHECK_THROWS_AS(weighted_product_oracle(kSphere, {1.0}), NotAProduct);
    CHECK_THROWS_AS(weighted_product_oracle(product, {1.0}), ArityMismatch);
}

TEST_CASE("a distorted product metric fails the mixed identity") {
    Rng rng(131);
    const ManifoldSpec product = ManifoldSpec::product({kSphere, kSphere});
    AffineOracle warped = weighted_product_oracle(product, {1.0, 0.5});
    auto base_dist = warped.y_dist;
    warped.y_dist = [base_dist](const std::any& a, const std::any& b) {
        const double d = base_dist(a, b);
        return std::sqrt(d); // concave distortion: not affine of the product form
    };
    Point base = random_point(product, rng);
    std::vector<Point> perturbed = {random_point(kSphere, rng), random_point(kSphere, rng)};
    CHECK_THROWS_AS(factor_constants(warped, base, perturbed, rng, 50),
                    InconsistentConstants);
}
