#include <doctest.h>

#include "l2man/json_io.hpp"

using namespace l2man;

TEST_CASE("prob spaces and automorphisms round-trip through JSON") {
    const ProbSpace s = make_prob_space({0.25, 0.25, 0.5});
    CHECK(prob_space_from_json(to_json(s)) == s);
    CHECK_THROWS_AS(prob_space_from_json(Json{{"atoms", 3}}), ConfigParse);
    CHECK_THROWS_AS(prob_space_from_json(Json{{"weights", {0.5, 0.4}}}), NotNormalized);

    const Automorphism phi(s, {1, 0, 2});
    CHECK(automorphism_from_json(s, to_json(phi)) == phi);
    CHECK_THROWS_AS(automorphism_from_json(s, Json{{"perm", {0, 0, 2}}}), NotBijective);
}

TEST_CASE("manifold specs round-trip including nesting") {
    const ManifoldSpec nested = ManifoldSpec::product(
        {ManifoldSpec::sphere(2),
         ManifoldSpec::scaled(1.5, ManifoldSpec::hyperbolic(3)), ManifoldSpec::euclidean(4)});
    CHECK(manifold_from_json(to_json(nested)) == nested);
    CHECK(to_json(ManifoldSpec::sphere(2)).dump() == R"({"sphere":{"dim":2}})");
    CHECK_THROWS_AS(manifold_from_json(Json{{"torus", {{"dim", 2}}}}), ConfigParse);
}

TEST_CASE("points validate while deserializing") {
    const ManifoldSpec s2 = ManifoldSpec::sphere(2);
    Rng rng(173);
    const Point p = random_point(s2, rng);
    const Point back = point_from_json(s2, point_to_json(s2, p));
    CHECK(dist(s2, p, back) < 1e-15);
    CHECK_THROWS_AS(point_from_json(s2, Json::array({1.0, 1.0, 1.0})), InvalidPoint);

    const ManifoldSpec prod = ManifoldSpec::product({s2, ManifoldSpec::euclidean(2)});
    const Point q = random_point(prod, rng);
    const Point qback = point_from_json(prod, point_to_json(prod, q));
    CHECK(dist(prod, q, qback) < 1e-15);
}

TEST_CASE("functions and isometries round-trip") {
    Rng rng(179);
    const ProbSpace s = make_prob_space({0.25, 0.25, 0.5});
    for (const auto& m : {ManifoldSpec::sphere(2), ManifoldSpec::hyperbolic(2),
                          ManifoldSpec::euclidean(3),
                          ManifoldSpec::product({ManifoldSpec::sphere(2),
                                                 ManifoldSpec::euclidean(2)})}) {
        const L2Function f = random_function(s, m, rng);
        const L2Function fback = l2_function_from_json(to_json(f));
        CHECK(d_l2(f, fback) < 1e-15);

        const L2Isometry g = random_l2_isometry(s, m, rng);
        const L2Isometry gback = l2_isometry_from_json(to_json(g));
        CHECK(gback.phi == g.phi);
        const L2Function probe = random_function(s, m, rng);
        CHECK(d_l2(apply(gback, probe), apply(g, probe)) < 1e-12);
    }
}

TEST_CASE("serialization is deterministic and key-ordered") {
    const ProbSpace s = make_prob_space({0.5, 0.5});
    const ManifoldSpec m = ManifoldSpec::euclidean(2);
    Rng rng(181);
    const L2Function f = random_function(s, m, rng);
    CHECK(to_json(f).dump() == to_json(f).dump());
    CHECK(to_json(f).begin().key() == "space"); // ordered_json keeps insertion order
}
