#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "l2man/errors.hpp"

namespace l2man {

enum class ManifoldKind { Sphere, Hyperbolic, Euclidean, Product, Scaled };

/// Description of a target manifold. Sphere(d) and Hyperbolic(d), d >= 2,
/// are the rigid targets; Euclidean and Product are kept as the non-rigid
/// foils. Scaled(c, M) carries the metric c * d_M.
class ManifoldSpec {
public:
    static ManifoldSpec sphere(int dim);
    static ManifoldSpec hyperbolic(int dim);
    static ManifoldSpec euclidean(int dim);
    static ManifoldSpec product(std::vector<ManifoldSpec> factors);
    static ManifoldSpec scaled(double c, ManifoldSpec inner);

    ManifoldKind kind() const { return kind_; }
    int dim() const { return dim_; }          // leaf variants only
    double scale() const { return scale_; }   // Scaled only
    const std::vector<ManifoldSpec>& factors() const { return factors_; }
    const ManifoldSpec& inner() const { return factors_.front(); } // Scaled only

    /// Ambient chart size of a leaf: d+1 for Sphere/Hyperbolic, d for Euclidean.
    int ambient_dim() const;

    /// True for targets satisfying the rigidity hypotheses (irreducible
    /// universal cover, dim >= 2): sphere/hyperbolic leaves, possibly rescaled.
    bool is_rigid_target() const;

    bool operator==(const ManifoldSpec& other) const;
    bool operator!=(const ManifoldSpec& other) const { return !(*this == other); }

private:
    ManifoldSpec() = default;
    ManifoldKind kind_ = ManifoldKind::Euclidean;
    int dim_ = 1;
    double scale_ = 1.0;
    std::vector<ManifoldSpec> factors_;
};

/// A manifold point in the ambient chart. Leaf variants use `coords`
/// (unit vector for Sphere, hyperboloid vector with Lorentz norm -1 and
/// x0 > 0 for Hyperbolic, plain vector for Euclidean); Product points hold
/// one entry of `factors` per factor. Tangent vectors share the layout.
struct Point {
    Eigen::VectorXd coords;
    std::vector<Point> factors;
};

using Tangent = Point;

/// Chart tolerance for point invariants.
inline constexpr double kChartTol = 1e-10;

void validate_point(const ManifoldSpec& m, const Point& p);
bool points_equal(const ManifoldSpec& m, const Point& p, const Point& q, double tol = 1e-12);

double dist(const ManifoldSpec& m, const Point& p, const Point& q);

/// Point at parameter t in [0,1] on the unique minimizing geodesic p -> q.
Point geodesic_point(const ManifoldSpec& m, const Point& p, const Point& q, double t);

/// arccos((d²(x,y) + d²(x,z) - d²(y,z)) / (2 d(x,y) d(x,z))), clamped.
double comparison_angle(const ManifoldSpec& m, const Point& x, const Point& y, const Point& z);

/// Initial tangent of the minimizing geodesic p -> q, with |log| = dist(p,q)
/// in the metric of m.
Tangent log_map(const ManifoldSpec& m, const Point& p, const Point& q);

double tangent_inner(const ManifoldSpec& m, const Point& p, const Tangent& u, const Tangent& v);

/// Angle at p between the geodesics toward q1 and q2.
double riemannian_angle(const ManifoldSpec& m, const Point& p, const Point& q1, const Point& q2);

/// Isometry element: orthogonal matrix (Sphere), Lorentz-orthochronous
/// matrix (Hyperbolic), rigid motion mat/trans (Euclidean), factor tuple
/// (Product). Scaled targets share the isometries of the inner manifold.
struct ManifoldIsometry {
    Eigen::MatrixXd mat;
    Eigen::VectorXd trans;
    std::vector<ManifoldIsometry> factors;
};

/// Tolerance for the defining matrix identities (AᵀA = I, LᵀJL = J).
inline constexpr double kIsometryTol = 1e-10;

ManifoldIsometry identity_isometry(const ManifoldSpec& m);
void validate_isometry(const ManifoldSpec& m, const ManifoldIsometry& g);

Point apply_isometry(const ManifoldSpec& m, const ManifoldIsometry& g, const Point& p);
ManifoldIsometry compose_isometries(const ManifoldSpec& m, const ManifoldIsometry& g,
                                    const ManifoldIsometry& h);
ManifoldIsometry invert_isometry(const ManifoldSpec& m, const ManifoldIsometry& g);

using Rng = std::mt19937_64;

Point random_point(const ManifoldSpec& m, Rng& rng);
ManifoldIsometry random_isometry(const ManifoldSpec& m, Rng& rng);

/// x -> lambda * x on Euclidean targets; the dilation dichotomy makes this
/// unavailable anywhere else (UnsupportedVariant).
Point scaling_map(const ManifoldSpec& m, double lambda, const Point& p);

/// Best-fit isometry through the sample pairs (xs[k] -> ys[k]); residual is
/// the max distance between g(xs[k]) and ys[k] after the fit.
ManifoldIsometry fit_isometry(const ManifoldSpec& m, const std::vector<Point>& xs,
                              const std::vector<Point>& ys, double* residual = nullptr);

} // namespace l2man
