#pragma once

#include <any>
#include <functional>
#include <string>
#include <vector>

#include "l2man/l2_space.hpp"

namespace l2man {

/// A map F into an abstract metric space Y, visible only through opaque
/// tokens and the distance between them. No embedding of Y is ever built.
struct AffineOracle {
    ProbSpace space;
    ManifoldSpec manifold;
    std::function<std::any(const L2Function&)> forward;
    std::function<double(const std::any&, const std::any&)> y_dist;
};

double y_distance(const AffineOracle& oracle, const L2Function& f, const L2Function& g);

/// Spot-checks symmetry and the triangle inequality of y_dist on random
/// tokens; throws InvalidSpec past the tolerance.
void validate_affine_oracle(const AffineOracle& oracle, Rng& rng, std::size_t samples = 12,
                            double tol = 1e-9);

// Builtin oracles for the test battery and the CLI.
AffineOracle identity_affine_oracle(const ProbSpace& space, const ManifoldSpec& manifold);
AffineOracle d_eta_oracle(const ProbSpace& space, const ManifoldSpec& manifold, DensityFn eta);
AffineOracle restriction_oracle(const ProbSpace& space, const ManifoldSpec& manifold,
                                std::vector<std::size_t> subset);
AffineOracle constant_oracle(const ProbSpace& space, const ManifoldSpec& manifold);
/// Deliberately non-affine control: pulls every value into the geodesic
/// ball of the given radius around `center` before measuring d_l2.
AffineOracle clipped_oracle(const ProbSpace& space, const ManifoldSpec& manifold, Point center,
                            double radius);

/// eta_i = y_dist(F(const p with p' at atom i), F(const p))^2 / (p_i d^2(p,p')).
DensityFn recover_eta(const AffineOracle& oracle, const Point& p, const Point& p_prime);

/// Max over atoms and probe pairs of |eta_i(probe) - eta_i(first probe)|;
/// small values certify probe independence of the recovered density.
double welldefinedness_check(const AffineOracle& oracle,
                             const std::vector<std::pair<Point, Point>>& probe_pairs);

/// Deviation past which an oracle is flagged NOT_AFFINE.
inline constexpr double kNotAffineThreshold = 1e-6;

/// Max |y_dist(Ff,Fg)^2 - sum eta_i p_i d^2(f_i,g_i)| over the samples.
double verify_identity(const AffineOracle& oracle, const DensityFn& eta,
                       const std::vector<std::pair<L2Function, L2Function>>& samples);

/// Max distance ratio over seeded random pairs; a finite-probe stand-in
/// for the true Lipschitz constant.
double estimate_lipschitz(const AffineOracle& oracle, Rng& rng, std::size_t pairs = 500);

struct AdditivityReport {
    double max_additivity_residual = 0.0; // |mu~(A u B) - mu~(A) - mu~(B)|
    double lipschitz_estimate = 0.0;
    double max_eta = 0.0;
    bool bound_holds = false;             // eta_i <= L^2 + slack for all atoms
};

/// Direct two-block probes of mu~ on sampled disjoint unions plus the
/// atomwise Lipschitz upper bound eta_i <= L^2.
AdditivityReport additivity_and_bound(const AffineOracle& oracle, const DensityFn& eta, Rng& rng,
                                      std::size_t union_samples = 20, double bound_slack = 1e-6);

/// Per-factor constants of an affine map on a single-atom space with a
/// product target, plus verification of the mixed Pythagorean identity.
struct FactorConstants {
    std::vector<double> constants;
    double mixed_identity_residual = 0.0;
};

FactorConstants factor_constants(const AffineOracle& oracle, const Point& basepoint,
                                 const std::vector<Point>& perturbed, Rng& rng,
                                 std::size_t check_pairs = 100, double fail_tol = 1e-6);

/// Builtin oracle with a planted weighted product metric on a single atom.
AffineOracle weighted_product_oracle(const ManifoldSpec& product, std::vector<double> constants);

} // namespace l2man
