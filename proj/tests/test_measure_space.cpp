#include <doctest.h>

#include "l2man/measure_space.hpp"

using namespace l2man;

TEST_CASE("prob space validates its weights") {
    CHECK_THROWS_AS(make_prob_space({}), InvalidSpec);
    CHECK_THROWS_AS(make_prob_space({0.5, 0.0, 0.5}), NonPositiveWeight);
    CHECK_THROWS_AS(make_prob_space({0.5, -0.1, 0.6}), NonPositiveWeight);
    CHECK_THROWS_AS(make_prob_space({0.5, 0.4}), NotNormalized);

    const ProbSpace s = make_prob_space({0.25, 0.25, 0.5});
    CHECK(s.size() == 3);
    CHECK(s.weight(2) == 0.5);
}

TEST_CASE("uniform grids normalize exactly for awkward sizes") {
    // 1/m is not representable for m = 3, 6, 7, ...; compensated summation
    // keeps the total within the normalization tolerance anyway.
    for (std::size_t m : {1, 2, 3, 6, 7, 12, 97}) {
        const ProbSpace grid = uniform_interval(m);
        CHECK(grid.size() == m);
        CHECK(grid.weight(0) == 1.0 / static_cast<double>(m));
    }
    CHECK_THROWS_AS(uniform_interval(0), InvalidSpec);
}

TEST_CASE("automorphisms must be measure-preserving bijections") {
    const ProbSpace s = make_prob_space({0.25, 0.25, 0.5});
    CHECK_NOTHROW(Automorphism(s, {1, 0, 2}));
    CHECK_THROWS_AS(Automorphism(s, {0, 0, 2}), NotBijective);
    CHECK_THROWS_AS(Automorphism(s, {0, 1}), LengthMismatch);
    // swapping atoms of weight 1/4 and 1/2 does not preserve the measure
    CHECK_THROWS_AS(Automorphism(s, {2, 1, 0}), NotBijective);

    CHECK(check_automorphism(s, {1, 0, 2}));
    CHECK_FALSE(check_automorphism(s, {2, 1, 0}));
}

TEST_CASE("automorphism composition and inverse act on indices") {
    const ProbSpace grid = uniform_interval(4);
    const Automorphism a(grid, {1, 2, 3, 0});
    const Automorphism b(grid, {0, 2, 1, 3});

    const Automorphism ab = a.compose(b); // i -> a(b(i))
    for (std::size_t i = 0; i < 4; ++i) CHECK(ab(i) == a(b(i)));

    const Automorphism inv = a.inverse();
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(inv(a(i)) == i);
        CHECK(a(inv(i)) == i);
    }
    CHECK(a.compose(inv) == Automorphism::identity(grid));
}

TEST_CASE("pushforward density is the atomwise Radon-Nikodym derivative") {
    const ProbSpace s = make_prob_space({0.25, 0.25, 0.5});
    // swap atoms 0 and 2: weight 0.5 lands on atom 0 and 0.25 on atom 2
    const DensityFn d = pushforward_density(s, {2, 1, 0});
    CHECK(d[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(d[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d[2] == doctest::Approx(0.5).epsilon(1e-15));

    const DensityFn id = pushforward_density(s, {0, 1, 2});
    for (std::size_t i = 0; i < 3; ++i) CHECK(id[i] == 1.0);

    CHECK_THROWS_AS(pushforward_density(s, {0, 0, 2}), NotBijective);
}

TEST_CASE("density functions reject negative values") {
    CHECK_THROWS_AS(DensityFn({1.0, -0.5}), InvalidSpec);
    const DensityFn ind = DensityFn::indicator(4, {1, 3});
    CHECK(ind[0] == 0.0);
    CHECK(ind[1] == 1.0);
    CHECK(ind[3] == 1.0);
    CHECK(DensityFn::ones(3)[2] == 1.0);
}

TEST_CASE("partitions are canonical and refinement is transitive") {
    const Partition p(4, {{2, 0}, {1, 3}});
    CHECK(p.block_count() == 2);
    CHECK(p.block(0) == std::vector<std::size_t>{0, 2}); // blocks sorted

    CHECK(Partition::discrete(4).refines(p));
    CHECK(p.refines(Partition::trivial(4)));
    CHECK_FALSE(p.refines(Partition::discrete(4)));
    CHECK(p.refines(p));

    CHECK_THROWS_AS(Partition(4, {{0, 1}, {1, 2, 3}}), InvalidSpec); // overlap
    CHECK_THROWS_AS(Partition(4, {{0, 1}}), InvalidSpec);           // not covering
}

TEST_CASE("common refinement intersects the blocks") {
    const Partition a(4, {{0, 1}, {2, 3}});
    const Partition b(4, {{0, 2}, {1, 3}});
    const Partition fine = common_refinement(a, b);
    CHECK(fine == Partition::discrete(4));
    CHECK(fine.refines(a));
    CHECK(fine.refines(b));
    CHECK(common_refinement(a, Partition::trivial(4)) == a);
}
