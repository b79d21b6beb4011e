#include "l2man/gallery.hpp"

#include <cmath>

namespace l2man {

bool is_grid_function(const L2Function& f) {
    const double w0 = f.space.weight(0);
    for (std::size_t i = 1; i < f.space.size(); ++i)
        if (f.space.weight(i) != w0) return false;
    return true;
}

namespace {

void require_power_target(const L2Function& f, std::size_t k) {
    if (f.manifold.kind() != ManifoldKind::Product || f.manifold.factors().size() != k)
        throw NotAProduct("expected a k-factor product target");
    for (const auto& factor : f.manifold.factors())
        if (factor != f.manifold.factors().front())
            throw NotAProduct("expected identical product factors");
    if (!is_grid_function(f)) throw SpaceMismatch("expected a uniform grid");
}

} // namespace

L2Function interleave(const L2Function& f, std::size_t k) {
    require_power_target(f, k);
    const std::size_t m = f.space.size();
    if (m % k != 0) throw DivisibilityError("grid size must be divisible by the factor count");
    const ManifoldSpec target =
        ManifoldSpec::scaled(std::sqrt(static_cast<double>(k)), f.manifold.factors().front());
    std::vector<Point> pts(k * m);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < m; ++j) pts[i * m + j] = f.points[j].factors[i];
    return L2Function{uniform_interval(k * m), target, std::move(pts)};
}

L2Function deinterleave(const L2Function& g, std::size_t k) {
    if (g.manifold.kind() != ManifoldKind::Scaled)
        throw NotAProduct("expected the rescaled image of interleave");
    if (!is_grid_function(g)) throw SpaceMismatch("expected a uniform grid");
    const std::size_t n = g.space.size();
    if (n % k != 0) throw DivisibilityError("grid size must be divisible by the factor count");
    const std::size_t m = n / k;
    const ManifoldSpec target =
        ManifoldSpec::product(std::vector<ManifoldSpec>(k, g.manifold.inner()));
    std::vector<Point> pts(m);
    for (std::size_t j = 0; j < m; ++j) {
        pts[j].factors.resize(k);
        for (std::size_t i = 0; i < k; ++i) pts[j].factors[i] = g.points[i * m + j];
    }
    return L2Function{uniform_interval(m), target, std::move(pts)};
}

Automorphism quarter_swap(const ProbSpace& grid) {
    const std::size_t n = grid.size();
    if (n % 4 != 0) throw DivisibilityError("quarter swap needs a grid divisible by 4");
    const std::size_t q = n / 4;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= q && i < 2 * q) perm[i] = i + q;
        else if (i >= 2 * q && i < 3 * q) perm[i] = i - q;
        else perm[i] = i;
    }
    return Automorphism(grid, std::move(perm));
}

HilbertWitness hilbert_nonrigid(std::size_t m) {
    if (m % 2 != 0) throw DivisibilityError("hilbert witness needs an even grid");
    const ProbSpace grid = uniform_interval(m);
    const ManifoldSpec line = ManifoldSpec::euclidean(1);

    auto as_vector = [m](const L2Function& f) {
        Eigen::VectorXd v(static_cast<int>(m));
        for (std::size_t i = 0; i < m; ++i) v(static_cast<int>(i)) = f.points[i].coords(0);
        return v;
    };
    auto as_function = [grid, line, m](const Eigen::VectorXd& v) {
        std::vector<Point> pts(m);
        for (std::size_t i = 0; i < m; ++i) {
            pts[i].coords.resize(1);
            pts[i].coords(0) = v(static_cast<int>(i));
        }
        return L2Function{grid, line, std::move(pts)};
    };

    Eigen::VectorXd e_vec = Eigen::VectorXd::Zero(static_cast<int>(m));
    for (std::size_t i = 0; i < m / 2; ++i) e_vec(static_cast<int>(i)) = std::sqrt(2.0);
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<int>(m));

    const double w = 1.0 / static_cast<double>(m);
    auto inner = [w](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
        return w * a.dot(b);
    };

    // orthonormal frame of span{e, e'}; T rotates e onto e' and fixes the rest
    const Eigen::VectorXd u1 = e_vec;
    const double c = inner(ones, u1); // 1/sqrt(2)
    Eigen::VectorXd u2 = ones - c * u1;
    u2 /= std::sqrt(inner(u2, u2));
    const double cos_t = c;
    const double sin_t = std::sqrt(1.0 - c * c);

    auto rotate = [=](const Eigen::VectorXd& v) {
        const double a = inner(v, u1);
        const double b = inner(v, u2);
        return (v - a * u1 - b * u2) + (a * cos_t - b * sin_t) * u1 +
               (a * sin_t + b * cos_t) * u2;
    };

    IsometryOracle oracle{grid, line,
                          [=](const L2Function& f) { return as_function(rotate(as_vector(f))); },
                          true};
    return HilbertWitness{std::move(oracle), as_function(e_vec), as_function(ones),
                          as_function(Eigen::VectorXd::Zero(static_cast<int>(m)))};
}

IsometryOracle interleave_conjugate(const ManifoldSpec& rigid_factor, std::size_t m,
                                    const Automorphism& middle) {
    if (m % 4 != 0) throw DivisibilityError("needs a grid divisible by 4");
    if (middle.size() != 2 * m)
        throw LengthMismatch("middle automorphism must act on the 2m-grid");
    const ProbSpace grid = uniform_interval(m);
    const ManifoldSpec target = ManifoldSpec::product({rigid_factor, rigid_factor});
    auto map = [middle](const L2Function& f) {
        const L2Function fine = interleave(f, 2);
        std::vector<Point> pts(fine.points.size());
        for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = fine.points[middle(i)];
        const L2Function permuted{fine.space, fine.manifold, std::move(pts)};
        return deinterleave(permuted, 2);
    };
    return IsometryOracle{grid, target, std::move(map), true};
}

IsometryOracle r1_nonrigid(const ManifoldSpec& rigid_factor, std::size_t m) {
    if (m % 4 != 0) throw DivisibilityError("r1 witness needs a grid divisible by 4");
    return interleave_conjugate(rigid_factor, m, quarter_swap(uniform_interval(2 * m)));
}

} // namespace l2man
