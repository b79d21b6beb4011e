#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "l2man/l2_space.hpp"

namespace l2man {

/// Element of L2(Omega, Isom(M)) ⋊ Aut(Omega), acting by
/// apply(g, f)[i] = rho[phi(i)](f[phi(i)]).
struct L2Isometry {
    ProbSpace space;
    ManifoldSpec manifold;
    Automorphism phi;
    std::vector<ManifoldIsometry> rho;
};

L2Isometry make_l2_isometry(ProbSpace space, ManifoldSpec manifold, Automorphism phi,
                            std::vector<ManifoldIsometry> rho);
L2Isometry identity_l2_isometry(const ProbSpace& space, const ManifoldSpec& manifold);
L2Isometry random_l2_isometry(const ProbSpace& space, const ManifoldSpec& manifold, Rng& rng);

L2Function apply(const L2Isometry& gamma, const L2Function& f);

/// Semidirect composition: apply(compose(g1,g2), f) = apply(g1, apply(g2, f)).
L2Isometry compose(const L2Isometry& g1, const L2Isometry& g2);
L2Isometry inverse(const L2Isometry& g);

/// Conjugation of a pointwise family tau by g:
/// sigma[i] = rho[phi(i)] ∘ tau[phi(i)] ∘ rho[phi(i)]^{-1}.
std::vector<ManifoldIsometry> conjugate_pointwise(const L2Isometry& g,
                                                  const std::vector<ManifoldIsometry>& tau);

/// Black-box isometry of L2(Omega, M). `reentrant` opts the oracle into
/// parallel probing.
struct IsometryOracle {
    ProbSpace space;
    ManifoldSpec manifold;
    std::function<L2Function(const L2Function&)> map;
    bool reentrant = false;
};

IsometryOracle oracle_from(const L2Isometry& g);

/// Checks d_l2 preservation on `pairs` sampled random pairs; throws
/// NotAnIsometry past the tolerance.
void validate_oracle(const IsometryOracle& oracle, Rng& rng, std::size_t pairs = 20,
                     double tol = 1e-9);

struct DecomposeOptions {
    std::size_t fit_samples = 12;     // oracle calls used to fit each rho
    std::size_t holdout_samples = 5;  // fresh random functions for the final check
    double diff_tol = 1e-6;           // atoms moved vs unmoved in a probe
    double weight_tol = 1e-10;        // atom weight matching
    double residual_tol = 1e-8;       // rho fit and held-out reconstruction
    bool parallel = false;            // probe concurrently (reentrant oracles only)
    std::uint64_t seed = 1;
};

struct DecomposeReport {
    L2Isometry recovered;
    std::vector<double> rho_residuals;
    double holdout_residual = 0.0;
};

/// Recover (phi, rho) from a validated black-box isometry over a rigid
/// target. Throws NonRigid when any probe's difference set is not a single
/// atom of matching weight, a rho fit misses the residual tolerance, or the
/// held-out reconstruction fails — the oracle then lies outside the
/// semidirect product.
DecomposeReport decompose(const IsometryOracle& oracle, const Point& p, const Point& p_prime,
                          const DecomposeOptions& opts = {});

struct LocalizationResult {
    std::optional<std::vector<std::size_t>> witness; // B, if found
    double first_probe_lhs = 0.0;
    double first_probe_rhs_min = 0.0; // over all equal-mass candidates B
    double first_probe_rhs_max = 0.0;
};

/// Exhaustive search for B with mu(B) = mu(A) carrying the squared
/// displacement of every probe pair; empty witness signals Failure.
/// Throws AmbiguousWitness if several subsets pass (add probes).
LocalizationResult localization_check(const IsometryOracle& oracle,
                                      const std::vector<std::size_t>& subset,
                                      const std::vector<std::pair<L2Function, L2Function>>& probes,
                                      double mass_tol = 1e-10, double sum_tol = 1e-8);

} // namespace l2man
