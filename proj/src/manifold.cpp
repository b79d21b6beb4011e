#include "l2man/manifold.hpp"

#include <algorithm>
#include <cmath>

namespace l2man {

namespace {

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

Eigen::MatrixXd lorentz_form(int n) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Identity(n, n);
    j(0, 0) = -1.0;
    return j;
}

double lorentz_inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return -x(0) * y(0) + x.tail(x.size() - 1).dot(y.tail(y.size() - 1));
}

// Random orthogonal matrix via QR of a gaussian matrix.
Eigen::MatrixXd random_orthogonal(int n, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        if (r(j, j) < 0) q.col(j) = -q.col(j);
    }
    return q;
}

// Closest orthogonal matrix in Frobenius norm (polar factor, O(n) allowed).
Eigen::MatrixXd project_orthogonal(const Eigen::MatrixXd& a) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().transpose();
}

// Newton cleanup toward the Lorentz group: fixed point of L = J L^{-T} J.
Eigen::MatrixXd project_lorentz(Eigen::MatrixXd l) {
    const Eigen::MatrixXd j = lorentz_form(static_cast<int>(l.rows()));
    for (int it = 0; it < 12; ++it) {
        Eigen::MatrixXd corrected = 0.5 * (l + j * l.inverse().transpose() * j);
        double step = (corrected - l).norm();
        l = corrected;
        if (step < 1e-15) break;
    }
    if (l(0, 0) < 0) l = -l; // orthochronous representative
    return l;
}

} // namespace

// ---------------------------------------------------------------------------
// ManifoldSpec

ManifoldSpec ManifoldSpec::sphere(int dim) {
    if (dim < 2) throw InvalidSpec("Sphere requires dim >= 2");
    ManifoldSpec m;
    m.kind_ = ManifoldKind::Sphere;
    m.dim_ = dim;
    return m;
}

ManifoldSpec ManifoldSpec::hyperbolic(int dim) {
    if (dim < 2) throw InvalidSpec("Hyperbolic requires dim >= 2");
    ManifoldSpec m;
    m.kind_ = ManifoldKind::Hyperbolic;
    m.dim_ = dim;
    return m;
}

ManifoldSpec ManifoldSpec::euclidean(int dim) {
    if (dim < 1) throw InvalidSpec("Euclidean requires dim >= 1");
    ManifoldSpec m;
    m.kind_ = ManifoldKind::Euclidean;
    m.dim_ = dim;
    return m;
}

ManifoldSpec ManifoldSpec::product(std::vector<ManifoldSpec> factors) {
    if (factors.size() < 2) throw InvalidSpec("Product requires at least two factors");
    ManifoldSpec m;
    m.kind_ = ManifoldKind::Product;
    m.factors_ = std::move(factors);
    return m;
}

ManifoldSpec ManifoldSpec::scaled(double c, ManifoldSpec inner) {
    if (!(c > 0.0)) throw InvalidSpec("Scaled requires c > 0");
    ManifoldSpec m;
    m.kind_ = ManifoldKind::Scaled;
    m.scale_ = c;
    m.factors_.push_back(std::move(inner));
    return m;
}

int ManifoldSpec::ambient_dim() const {
    switch (kind_) {
        case ManifoldKind::Sphere:
        case ManifoldKind::Hyperbolic: return dim_ + 1;
        case ManifoldKind::Euclidean: return dim_;
        default: throw VariantMismatch("ambient_dim is defined for leaf variants only");
    }
}

bool ManifoldSpec::is_rigid_target() const {
    switch (kind_) {
        case ManifoldKind::Sphere:
        case ManifoldKind::Hyperbolic: return true;
        case ManifoldKind::Scaled: return inner().is_rigid_target();
        default: return false;
    }
}

bool ManifoldSpec::operator==(const ManifoldSpec& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case ManifoldKind::Product: return factors_ == other.factors_;
        case ManifoldKind::Scaled:
            return scale_ == other.scale_ && inner() == other.inner();
        default: return dim_ == other.dim_;
    }
}

// ---------------------------------------------------------------------------
// Points

void validate_point(const ManifoldSpec& m, const Point& p) {
    switch (m.kind()) {
        case ManifoldKind::Sphere: {
            if (p.coords.size() != m.ambient_dim())
                throw InvalidPoint("sphere point has wrong ambient dimension");
            if (std::abs(p.coords.norm() - 1.0) > kChartTol)
                throw InvalidPoint("sphere point is not on the unit sphere");
            return;
        }
        case ManifoldKind::Hyperbolic: {
            if (p.coords.size() != m.ambient_dim())
                throw InvalidPoint("hyperbolic point has wrong ambient dimension");
            if (std::abs(lorentz_inner(p.coords, p.coords) + 1.0) > kChartTol)
                throw InvalidPoint("hyperbolic point is not on the hyperboloid");
            if (p.coords(0) <= 0.0)
                throw InvalidPoint("hyperbolic point is on the wrong sheet");
            return;
        }
        case ManifoldKind::Euclidean: {
            if (p.coords.size() != m.ambient_dim())
                throw InvalidPoint("euclidean point has wrong dimension");
            return;
        }
        case ManifoldKind::Product: {
            if (p.factors.size() != m.factors().size())
                throw InvalidPoint("product point has wrong factor count");
            for (std::size_t i = 0; i < p.factors.size(); ++i)
                validate_point(m.factors()[i], p.factors[i]);
            return;
        }
        case ManifoldKind::Scaled: return validate_point(m.inner(), p);
    }
}

bool points_equal(const ManifoldSpec& m, const Point& p, const Point& q, double tol) {
    return dist(m, p, q) <= tol;
}

// ---------------------------------------------------------------------------
// Distance and geodesics

namespace {

double sphere_dist(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
    const double c = clamp_unit(p.dot(q));
    // Rejection norm gives a sine that stays accurate near the endpoints.
    const double s = (p - c * q).norm();
    return std::atan2(s, c);
}

double hyperbolic_dist(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    // <x-y, x-y>_L = 2(cosh d - 1); stable for nearby points.
    const Eigen::VectorXd diff = x - y;
    const double u = std::max(0.0, 0.5 * lorentz_inner(diff, diff));
    return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

} // namespace

double dist(const ManifoldSpec& m, const Point& p, const Point& q) {
    switch (m.kind()) {
        case ManifoldKind::Sphere: return sphere_dist(p.coords, q.coords);
        case ManifoldKind::Hyperbolic: return hyperbolic_dist(p.coords, q.coords);
        case ManifoldKind::Euclidean: return (p.coords - q.coords).norm();
        case ManifoldKind::Product: {
            double sq = 0.0;
            for (std::size_t i = 0; i < m.factors().size(); ++i) {
                double d = dist(m.factors()[i], p.factors[i], q.factors[i]);
                sq += d * d;
            }
            return std::sqrt(sq);
        }
        case ManifoldKind::Scaled: return m.scale() * dist(m.inner(), p, q);
    }
    throw VariantMismatch("unreachable");
}

Point geodesic_point(const ManifoldSpec& m, const Point& p, const Point& q, double t) {
    switch (m.kind()) {
        case ManifoldKind::Sphere: {
            const double theta = sphere_dist(p.coords, q.coords);
            if (theta > M_PI - 1e-9)
                throw NonUniqueGeodesic("sphere endpoints are antipodal");
            if (theta < 1e-15) return p;
            Point out;
            out.coords = (std::sin((1.0 - t) * theta) * p.coords +
                          std::sin(t * theta) * q.coords) / std::sin(theta);
            out.coords.normalize();
            return out;
        }
        case ManifoldKind::Hyperbolic: {
            const double theta = hyperbolic_dist(p.coords, q.coords);
            if (theta < 1e-15) return p;
            const Eigen::VectorXd u =
                (q.coords - std::cosh(theta) * p.coords) / std::sinh(theta);
            Point out;
            out.coords = std::cosh(t * theta) * p.coords + std::sinh(t * theta) * u;
            // renormalize onto the hyperboloid
            const double nrm = std::sqrt(-lorentz_inner(out.coords, out.coords));
            out.coords /= nrm;
            return out;
        }
        case ManifoldKind::Euclidean: {
            Point out;
            out.coords = (1.0 - t) * p.coords + t * q.coords;
            return out;
        }
        case ManifoldKind::Product: {
            Point out;
            out.factors.reserve(m.factors().size());
            for (std::size_t i = 0; i < m.factors().size(); ++i)
                out.factors.push_back(geodesic_point(m.factors()[i], p.factors[i], q.factors[i], t));
            return out;
        }
        case ManifoldKind::Scaled: return geodesic_point(m.inner(), p, q, t);
    }
    throw VariantMismatch("unreachable");
}

double comparison_angle(const ManifoldSpec& m, const Point& x, const Point& y, const Point& z) {
    const double dxy = dist(m, x, y);
    const double dxz = dist(m, x, z);
    if (dxy == 0.0 || dxz == 0.0)
        throw DegenerateVertex("comparison angle needs y != x and z != x");
    const double dyz = dist(m, y, z);
    const double c = (dxy * dxy + dxz * dxz - dyz * dyz) / (2.0 * dxy * dxz);
    return std::acos(clamp_unit(c));
}

Tangent log_map(const ManifoldSpec& m, const Point& p, const Point& q) {
    switch (m.kind()) {
        case ManifoldKind::Sphere: {
            const double theta = sphere_dist(p.coords, q.coords);
            Tangent out;
            out.coords = Eigen::VectorXd::Zero(p.coords.size());
            if (theta < 1e-15) return out;
            if (theta > M_PI - 1e-9)
                throw NonUniqueGeodesic("sphere endpoints are antipodal");
            Eigen::VectorXd rej = q.coords - p.coords.dot(q.coords) * p.coords;
            out.coords = theta * rej / rej.norm();
            return out;
        }
        case ManifoldKind::Hyperbolic: {
            const double theta = hyperbolic_dist(p.coords, q.coords);
            Tangent out;
            out.coords = Eigen::VectorXd::Zero(p.coords.size());
            if (theta < 1e-15) return out;
            out.coords = theta * (q.coords - std::cosh(theta) * p.coords) / std::sinh(theta);
            return out;
        }
        case ManifoldKind::Euclidean: {
            Tangent out;
            out.coords = q.coords - p.coords;
            return out;
        }
        case ManifoldKind::Product: {
            Tangent out;
            out.factors.reserve(m.factors().size());
            for (std::size_t i = 0; i < m.factors().size(); ++i)
                out.factors.push_back(log_map(m.factors()[i], p.factors[i], q.factors[i]));
            return out;
        }
        case ManifoldKind::Scaled: return log_map(m.inner(), p, q);
    }
    throw VariantMismatch("unreachable");
}

double tangent_inner(const ManifoldSpec& m, const Point& p, const Tangent& u, const Tangent& v) {
    switch (m.kind()) {
        case ManifoldKind::Sphere:
        case ManifoldKind::Euclidean: return u.coords.dot(v.coords);
        case ManifoldKind::Hyperbolic: return lorentz_inner(u.coords, v.coords);
        case ManifoldKind::Product: {
            double sum = 0.0;
            for (std::size_t i = 0; i < m.factors().size(); ++i)
                sum += tangent_inner(m.factors()[i], p.factors[i], u.factors[i], v.factors[i]);
            return sum;
        }
        case ManifoldKind::Scaled:
            return m.scale() * m.scale() * tangent_inner(m.inner(), p, u, v);
    }
    throw VariantMismatch("unreachable");
}

double riemannian_angle(const ManifoldSpec& m, const Point& p, const Point& q1, const Point& q2) {
    if (dist(m, p, q1) == 0.0 || dist(m, p, q2) == 0.0)
        throw DegenerateVertex("riemannian angle needs q1 != p and q2 != p");
    const Tangent u = log_map(m, p, q1);
    const Tangent v = log_map(m, p, q2);
    const double nu = std::sqrt(tangent_inner(m, p, u, u));
    const double nv = std::sqrt(tangent_inner(m, p, v, v));
    return std::acos(clamp_unit(tangent_inner(m, p, u, v) / (nu * nv)));
}

// ---------------------------------------------------------------------------
// Isometries

ManifoldIsometry identity_isometry(const ManifoldSpec& m) {
    ManifoldIsometry g;
    switch (m.kind()) {
        case ManifoldKind::Sphere:
        case ManifoldKind::Hyperbolic:
            g.mat = Eigen::MatrixXd::Identity(m.ambient_dim(), m.ambient_dim());
            return g;
        case ManifoldKind::Euclidean:
            g.mat = Eigen::MatrixXd::Identity(m.dim(), m.dim());
            g.trans = Eigen::VectorXd::Zero(m.dim());
            return g;
        case ManifoldKind::Product:
            for (const auto& f : m.factors()) g.factors.push_back(identity_isometry(f));
            return g;
        case ManifoldKind::Scaled: return identity_isometry(m.inner());
    }
    throw VariantMismatch("unreachable");
}

void validate_isometry(const ManifoldSpec& m, const ManifoldIsometry& g) {
    switch (m.kind()) {
        case ManifoldKind::Sphere: {
            const int n = m.ambient_dim();
            if (g.mat.rows() != n || g.mat.cols() != n)
                throw VariantMismatch("sphere isometry has wrong shape");
            if ((g.mat.transpose() * g.mat - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > kIsometryTol)
                throw InvalidSpec("sphere isometry matrix is not orthogonal");
            return;
        }
        case ManifoldKind::Hyperbolic: {
            const int n = m.ambient_dim();
            if (g.mat.rows() != n || g.mat.cols() != n)
                throw VariantMismatch("hyperbolic isometry has wrong shape");
            const Eigen::MatrixXd j = lorentz_form(n);
            if ((g.mat.transpose() * j * g.mat - j).cwiseAbs().maxCoeff() > kIsometryTol)
                throw InvalidSpec("hyperbolic isometry does not preserve the Lorentz form");
            if (g.mat(0, 0) <= 0.0)
                throw InvalidSpec("hyperbolic isometry is not orthochronous");
            return;
        }
        case ManifoldKind::Euclidean: {
            const int n = m.dim();
            if (g.mat.rows() != n || g.mat.cols() != n || g.trans.size() != n)
                throw VariantMismatch("euclidean isometry has wrong shape");
            if ((g.mat.transpose() * g.mat - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > kIsometryTol)
                throw InvalidSpec("euclidean isometry matrix is not orthogonal");
            return;
        }
        case ManifoldKind::Product: {
            if (g.factors.size() != m.factors().size())
                throw VariantMismatch("product isometry has wrong factor count");
            for (std::size_t i = 0; i < g.factors.size(); ++i)
                validate_isometry(m.factors()[i], g.factors[i]);
            return;
        }
        case ManifoldKind::Scaled: return validate_isometry(m.inner(), g);
    }
}

Point apply_isometry(const ManifoldSpec& m, const ManifoldIsometry& g, const Point& p) {
    switch (m.kind()) {
        case ManifoldKind::Sphere: {
            if (g.mat.cols() != p.coords.size())
                throw VariantMismatch("isometry/point shape mismatch");
            Point out;
            out.coords = g.mat * p.coords;
            out.coords.normalize();
            return out;
        }
        case ManifoldKind::Hyperbolic: {
            if (g.mat.cols() != p.coords.size())
                throw VariantMismatch("isometry/point shape mismatch");
            Point out;
            out.coords = g.mat * p.coords;
            const double nrm = std::sqrt(-lorentz_inner(out.coords, out.coords));
            out.coords /= nrm;
            return out;
        }
        case ManifoldKind::Euclidean: {
            if (g.mat.cols() != p.coords.size())
                throw VariantMismatch("isometry/point shape mismatch");
            Point out;
            out.coords = g.mat * p.coords + g.trans;
            return out;
        }
        case ManifoldKind::Product: {
            if (g.factors.size() != p.factors.size())
                throw VariantMismatch("isometry/point factor mismatch");
            Point out;
            out.factors.reserve(p.factors.size());
            for (std::size_t i = 0; i < p.factors.size(); ++i)
                out.factors.push_back(apply_isometry(m.factors()[i], g.factors[i], p.factors[i]));
            return out;
        }
        case ManifoldKind::Scaled: return apply_isometry(m.inner(), g, p);
    }
    throw VariantMismatch("unreachable");
}

ManifoldIsometry compose_isometries(const ManifoldSpec& m, const ManifoldIsometry& g,
                                    const ManifoldIsometry& h) {
    ManifoldIsometry out;
    switch (m.kind()) {
        case ManifoldKind::Sphere:
        case ManifoldKind::Hyperbolic:
            if (g.mat.cols() != h.mat.rows())
                throw VariantMismatch("isometry shape mismatch in compose");
            out.mat = g.mat * h.mat;
            return out;
        case ManifoldKind::Euclidean:
            if (g.mat.cols() != h.mat.rows())
                throw VariantMismatch("isometry shape mismatch in compose");
            out.mat = g.mat * h.mat;
            out.trans = g.mat * h.trans + g.trans;
            return out;
        case ManifoldKind::Product:
            if (g.factors.size() != h.factors.size())
                throw VariantMismatch("isometry factor mismatch in compose");
            for (std::size_t i = 0; i < g.factors.size(); ++i)
                out.factors.push_back(compose_isometries(m.factors()[i], g.factors[i], h.factors[i]));
            return out;
        case ManifoldKind::Scaled: return compose_isometries(m.inner(), g, h);
    }
    throw VariantMismatch("unreachable");
}

ManifoldIsometry invert_isometry(const ManifoldSpec& m, const ManifoldIsometry& g) {
    ManifoldIsometry out;
    switch (m.kind()) {
        case ManifoldKind::Sphere:
            out.mat = g.mat.transpose();
            return out;
        case ManifoldKind::Hyperbolic: {
            const Eigen::MatrixXd j = lorentz_form(static_cast<int>(g.mat.rows()));
            out.mat = j * g.mat.transpose() * j;
            return out;
        }
        case ManifoldKind::Euclidean:
            out.mat = g.mat.transpose();
            out.trans = -out.mat * g.trans;
            return out;
        case ManifoldKind::Product:
            for (std::size_t i = 0; i < g.factors.size(); ++i)
                out.factors.push_back(invert_isometry(m.factors()[i], g.factors[i]));
            return out;
        case ManifoldKind::Scaled: return invert_isometry(m.inner(), g);
    }
    throw VariantMismatch("unreachable");
}

// ---------------------------------------------------------------------------
// Random elements

Point random_point(const ManifoldSpec& m, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    switch (m.kind()) {
        case ManifoldKind::Sphere: {
            Point p;
            p.coords.resize(m.ambient_dim());
            do {
                for (int i = 0; i < p.coords.size(); ++i) p.coords(i) = gauss(rng);
            } while (p.coords.norm() < 1e-6);
            p.coords.normalize();
            return p;
        }
        case ManifoldKind::Hyperbolic: {
            // exponential of a moderate random tangent at the basepoint e0
            const int n = m.ambient_dim();
            Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
            for (int i = 1; i < n; ++i) v(i) = 0.7 * gauss(rng);
            const double r = v.norm();
            Point p;
            p.coords = Eigen::VectorXd::Zero(n);
            p.coords(0) = std::cosh(r);
            if (r > 1e-15) p.coords.tail(n - 1) = std::sinh(r) * v.tail(n - 1) / r;
            return p;
        }
        case ManifoldKind::Euclidean: {
            Point p;
            p.coords.resize(m.dim());
            for (int i = 0; i < p.coords.size(); ++i) p.coords(i) = gauss(rng);
            return p;
        }
        case ManifoldKind::Product: {
            Point p;
            for (const auto& f : m.factors()) p.factors.push_back(random_point(f, rng));
            return p;
        }
        case ManifoldKind::Scaled: return random_point(m.inner(), rng);
    }
    throw VariantMismatch("unreachable");
}

ManifoldIsometry random_isometry(const ManifoldSpec& m, Rng& rng) {
    ManifoldIsometry g;
    switch (m.kind()) {
        case ManifoldKind::Sphere:
            g.mat = random_orthogonal(m.ambient_dim(), rng);
            return g;
        case ManifoldKind::Hyperbolic: {
            // rotation * boost * rotation, all orthochronous
            const int n = m.ambient_dim();
            auto rot = [&]() {
                Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n);
                r.bottomRightCorner(n - 1, n - 1) = random_orthogonal(n - 1, rng);
                return r;
            };
            std::uniform_real_distribution<double> rap(-1.2, 1.2);
            const double s = rap(rng);
            Eigen::MatrixXd boost = Eigen::MatrixXd::Identity(n, n);
            boost(0, 0) = std::cosh(s);
            boost(0, 1) = boost(1, 0) = std::sinh(s);
            boost(1, 1) = std::cosh(s);
            g.mat = project_lorentz(rot() * boost * rot());
            return g;
        }
        case ManifoldKind::Euclidean: {
            std::normal_distribution<double> gauss(0.0, 1.0);
            g.mat = random_orthogonal(m.dim(), rng);
            g.trans.resize(m.dim());
            for (int i = 0; i < g.trans.size(); ++i) g.trans(i) = gauss(rng);
            return g;
        }
        case ManifoldKind::Product:
            for (const auto& f : m.factors()) g.factors.push_back(random_isometry(f, rng));
            return g;
        case ManifoldKind::Scaled: return random_isometry(m.inner(), rng);
    }
    throw VariantMismatch("unreachable");
}

Point scaling_map(const ManifoldSpec& m, double lambda, const Point& p) {
    if (m.kind() != ManifoldKind::Euclidean)
        throw UnsupportedVariant("surjective dilations exist only on Euclidean targets");
    if (!(lambda > 0.0)) throw InvalidSpec("dilation factor must be positive");
    Point out;
    out.coords = lambda * p.coords;
    return out;
}

// ---------------------------------------------------------------------------
// Fitting

ManifoldIsometry fit_isometry(const ManifoldSpec& m, const std::vector<Point>& xs,
                              const std::vector<Point>& ys, double* residual) {
    if (xs.size() != ys.size() || xs.empty())
        throw ArityMismatch("fit_isometry needs matching nonempty samples");
    ManifoldIsometry g;
    switch (m.kind()) {
        case ManifoldKind::Sphere: {
            const int n = m.ambient_dim();
            Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
            for (std::size_t k = 0; k < xs.size(); ++k)
                h += ys[k].coords * xs[k].coords.transpose();
            g.mat = project_orthogonal(h);
            break;
        }
        case ManifoldKind::Hyperbolic: {
            const int n = m.ambient_dim();
            Eigen::MatrixXd x(n, static_cast<int>(xs.size()));
            Eigen::MatrixXd y(n, static_cast<int>(xs.size()));
            for (std::size_t k = 0; k < xs.size(); ++k) {
                x.col(static_cast<int>(k)) = xs[k].coords;
                y.col(static_cast<int>(k)) = ys[k].coords;
            }
            // least squares L X = Y, then cleanup toward the Lorentz group
            Eigen::MatrixXd l =
                (x * x.transpose()).ldlt().solve(x * y.transpose()).transpose();
            g.mat = project_lorentz(l);
            break;
        }
        case ManifoldKind::Euclidean: {
            const int n = m.dim();
            Eigen::VectorXd xc = Eigen::VectorXd::Zero(n), yc = Eigen::VectorXd::Zero(n);
            for (std::size_t k = 0; k < xs.size(); ++k) {
                xc += xs[k].coords;
                yc += ys[k].coords;
            }
            xc /= static_cast<double>(xs.size());
            yc /= static_cast<double>(xs.size());
            Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
            for (std::size_t k = 0; k < xs.size(); ++k)
                h += (ys[k].coords - yc) * (xs[k].coords - xc).transpose();
            g.mat = project_orthogonal(h);
            g.trans = yc - g.mat * xc;
            break;
        }
        case ManifoldKind::Product: {
            const std::size_t nf = m.factors().size();
            for (std::size_t f = 0; f < nf; ++f) {
                std::vector<Point> xf, yf;
                xf.reserve(xs.size());
                yf.reserve(xs.size());
                for (std::size_t k = 0; k < xs.size(); ++k) {
                    xf.push_back(xs[k].factors.at(f));
                    yf.push_back(ys[k].factors.at(f));
                }
                g.factors.push_back(fit_isometry(m.factors()[f], xf, yf, nullptr));
            }
            break;
        }
        case ManifoldKind::Scaled:
            g = fit_isometry(m.inner(), xs, ys, nullptr);
            break;
    }
    if (residual) {
        double worst = 0.0;
        for (std::size_t k = 0; k < xs.size(); ++k)
            worst = std::max(worst, dist(m, apply_isometry(m, g, xs[k]), ys[k]));
        *residual = worst;
    }
    return g;
}

} // namespace l2man
