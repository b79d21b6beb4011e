#pragma once

#include <utility>
#include <vector>

#include "l2man/manifold.hpp"
#include "l2man/measure_space.hpp"

namespace l2man {

/// One manifold point per atom: the central object of d_{L2}.
struct L2Function {
    ProbSpace space;
    ManifoldSpec manifold;
    std::vector<Point> points;
};

L2Function make_l2_function(ProbSpace space, ManifoldSpec manifold, std::vector<Point> points);
L2Function constant_function(const ProbSpace& space, const ManifoldSpec& manifold, const Point& x);
L2Function random_function(const ProbSpace& space, const ManifoldSpec& manifold, Rng& rng);

double d_l2(const L2Function& f, const L2Function& g);

/// Pseudo-metric sqrt(sum eta_i p_i dist^2); may vanish for f != g.
double d_eta(const DensityFn& eta, const L2Function& f, const L2Function& g);

/// Geodesic between f and g stored as endpoints plus the per-atom speed
/// density alpha with sum p_i alpha_i^2 = 1 and alpha_i * length = dist(f_i, g_i).
struct L2Geodesic {
    L2Function f;
    L2Function g;
    std::vector<double> alpha;
    double length = 0.0;
};

inline constexpr double kAlphaNormTol = 1e-10;

L2Geodesic geodesic(const L2Function& f, const L2Function& g);
L2Function eval_geodesic(const L2Geodesic& sigma, double t);

/// Comparison angles in L2 at shrinking scales plus the extrapolated limit.
struct AngleTrace {
    std::vector<double> scales;
    std::vector<double> angles;
    double extrapolated = 0.0;
};

/// Comparison angle at the common basepoint between eval(s1, t) and
/// eval(s2, t) for each scale t; the limit is Richardson-extrapolated from
/// the last two entries assuming the observed O(t^2) convergence.
AngleTrace alexandrov_angle_numeric(const L2Geodesic& s1, const L2Geodesic& s2,
                                    const std::vector<double>& scales);

/// Default scale ladder: halvings from 1e-1 down to (at or below) 1e-3.
std::vector<double> default_angle_scales();

/// arccos(sum p_i alpha1_i alpha2_i cos(theta_i)) with theta_i the per-atom
/// Riemannian angle at the basepoint; atoms where either alpha vanishes
/// contribute zero.
double alexandrov_angle_analytic(const L2Geodesic& s1, const L2Geodesic& s2);

/// Simple function f_x^alpha: the block's point on each of its atoms.
L2Function simple_embed(const ProbSpace& space, const ManifoldSpec& manifold,
                        const Partition& part, const std::vector<Point>& x);

/// L2 function over a sub-collection of atoms carrying the ambient
/// (unnormalized) weights; what restrict_split hands back.
struct RestrictedFunction {
    std::vector<std::size_t> atoms;   // indices into the parent space
    std::vector<double> weights;      // ambient weights, not renormalized
    ManifoldSpec manifold;
    std::vector<Point> points;
};

double d_restricted(const RestrictedFunction& f, const RestrictedFunction& g);

/// Split f over A and its complement; d_l2^2 = d_A^2 + d_{A^c}^2.
std::pair<RestrictedFunction, RestrictedFunction>
restrict_split(const L2Function& f, const std::vector<std::size_t>& subset);

/// Inverse of restrict_split.
L2Function glue(const ProbSpace& space, const RestrictedFunction& a, const RestrictedFunction& b);

/// Factor a function over a 2-factor product target into its components;
/// d^2 over the product equals the sum of the two component d^2.
std::pair<L2Function, L2Function> product_split(const L2Function& f);

L2Function product_glue(const L2Function& f1, const L2Function& f2);

} // namespace l2man
