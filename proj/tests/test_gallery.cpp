#include <doctest.h>

#include <cmath>
#include <numeric>

#include "l2man/gallery.hpp"

using namespace l2man;

namespace {

const ManifoldSpec kSphere = ManifoldSpec::sphere(2);

bool same_coords(const Point& p, const Point& q) {
    if (p.coords.size() != q.coords.size() || p.factors.size() != q.factors.size())
        return false;
    if (p.coords.size() > 0 && !(p.coords.array() == q.coords.array()).all()) return false;
    for (std::size_t i = 0; i < p.factors.size(); ++i)
        if (!same_coords(p.factors[i], q.factors[i])) return false;
    return true;
}

} // namespace

TEST_CASE("interleaving a constant pair gives the two half-grid blocks") {
    Rng rng(139);
    const ProbSpace grid = uniform_interval(4);
    const ManifoldSpec target = ManifoldSpec::product({kSphere, kSphere});
    Point xy;
    xy.factors = {random_point(kSphere, rng), random_point(kSphere, rng)};
    const L2Function f = constant_function(grid, target, xy);

    const L2Function g = interleave(f, 2);
    CHECK(g.space.size() == 8);
    CHECK(g.manifold.kind() == ManifoldKind::Scaled);
    CHECK(g.manifold.scale() == doctest::Approx(std::sqrt(2.0)));
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(same_coords(g.points[i], i < 4 ? xy.factors[0] : xy.factors[1]));
}

TEST_CASE("interleaving preserves distances and round-trips") {
    Rng rng(149);
    for (std::size_t k : {std::size_t{2}, std::size_t{3}}) {
        const ManifoldSpec target = ManifoldSpec::product(std::vector<ManifoldSpec>(k, kSphere));
        const ProbSpace grid = uniform_interval(6);
        for (int it = 0; it < 10; ++it) {
            const L2Function f = random_function(grid, target, rng);
            const L2Function g = random_function(grid, target, rng);
            CHECK(std::abs(d_l2(f, g) - d_l2(interleave(f, k), interleave(g, k))) < 1e-12);
            const L2Function back = deinterleave(interleave(f, k), k);
            for (std::size_t i = 0; i < 6; ++i) CHECK(same_coords(back.points[i], f.points[i]));
        }
    }
    const ProbSpace odd = uniform_interval(5);
    const ManifoldSpec pair_target = ManifoldSpec::product({kSphere, kSphere});
    CHECK_THROWS_AS(interleave(random_function(odd, pair_target, rng), 2), DivisibilityError);
}

TEST_CASE("the quarter swap fixes the outer quarters") {
    const Automorphism phi = quarter_swap(uniform_interval(8));
    CHECK(phi.perm() == std::vector<std::size_t>{0, 1, 4, 5, 2, 3, 6, 7});
    CHECK(phi.compose(phi) == Automorphism::identity(uniform_interval(8)));
    CHECK_THROWS_AS(quarter_swap(uniform_interval(6)), DivisibilityError);
}

TEST_CASE("the Hilbert rotation maps e to e-prime and preserves norms") {
    Rng rng(151);
    HilbertWitness hw = hilbert_nonrigid(8);

    CHECK(d_l2(hw.oracle.map(hw.e), hw.e_prime) < 1e-12);
    // |e| = |e'| = 1 in the weighted norm, and <e, e'> = 1/sqrt(2)
    CHECK(d_l2(hw.e, hw.zero) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d_l2(hw.e_prime, hw.zero) == doctest::Approx(1.0).epsilon(1e-12));

    for (int k = 0; k < 20; ++k) {
        const L2Function f = random_function(hw.oracle.space, hw.oracle.manifold, rng);
        CHECK(d_l2(hw.oracle.map(f), hw.zero) ==
              doctest::Approx(d_l2(f, hw.zero)).epsilon(1e-10));
    }
    CHECK_NOTHROW(validate_oracle(hw.oracle, rng, 30, 1e-10));
    CHECK_THROWS_AS(hilbert_nonrigid(5), DivisibilityError);
}

TEST_CASE("the Hilbert rotation fails localization with values 1 and 1/2") {
    Rng rng(157);
    HilbertWitness hw = hilbert_nonrigid(8);
    std::vector<std::size_t> first_half(4);
    std::iota(first_half.begin(), first_half.end(), 0);
    std::vector<std::pair<L2Function, L2Function>> probes;
    probes.emplace_back(hw.e, hw.zero);
    while (probes.size() < 16)
        probes.emplace_back(random_function(hw.oracle.space, hw.oracle.manifold, rng),
                            random_function(hw.oracle.space, hw.oracle.manifold, rng));

    const LocalizationResult res = localization_check(hw.oracle, first_half, probes);
    CHECK_FALSE(res.witness.has_value());
    CHECK(res.first_probe_lhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.first_probe_rhs_min == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(res.first_probe_rhs_max == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("the reducible-target witness acts as the displayed two-block map") {
    Rng rng(163);
    const IsometryOracle r1 = r1_nonrigid(kSphere, 8);
    Point xy;
    xy.factors = {random_point(kSphere, rng), random_point(kSphere, rng)};
    const L2Function out = r1.map(constant_function(r1.space, r1.manifold, xy));
    for (std::size_t i = 0; i < 8; ++i) {
        const Point& v = i < 4 ? xy.factors[0] : xy.factors[1];
        CHECK(same_coords(out.points[i].factors[0], v));
        CHECK(same_coords(out.points[i].factors[1], v));
    }
    CHECK_NOTHROW(validate_oracle(r1, rng, 50, 1e-10));
    CHECK_THROWS_AS(r1_nonrigid(kSphere, 6), DivisibilityError);
}

TEST_CASE("an identity middle automorphism collapses the composite") {
    Rng rng(167);
    const IsometryOracle triv =
        interleave_conjugate(kSphere, 8, Automorphism::identity(uniform_interval(16)));
    const L2Function f = random_function(triv.space, triv.manifold, rng);
    const L2Function out = triv.map(f);
    for (std::size_t i = 0; i < 8; ++i) CHECK(same_coords(out.points[i], f.points[i]));
}
