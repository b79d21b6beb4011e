#include "l2man/affine_maps.hpp"

#include <algorithm>
#include <cmath>

namespace l2man {

double y_distance(const AffineOracle& oracle, const L2Function& f, const L2Function& g) {
    return oracle.y_dist(oracle.forward(f), oracle.forward(g));
}

void validate_affine_oracle(const AffineOracle& oracle, Rng& rng, std::size_t samples, double tol) {
    std::vector<std::any> tokens;
    tokens.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k)
        tokens.push_back(oracle.forward(random_function(oracle.space, oracle.manifold, rng)));
    for (std::size_t a = 0; a < samples; ++a) {
        if (std::abs(oracle.y_dist(tokens[a], tokens[a])) > tol)
            throw InvalidSpec("y_dist(t,t) != 0");
        for (std::size_t b = a + 1; b < samples; ++b) {
            const double ab = oracle.y_dist(tokens[a], tokens[b]);
            if (ab < -tol || std::abs(ab - oracle.y_dist(tokens[b], tokens[a])) > tol)
                throw InvalidSpec("y_dist is not a symmetric nonnegative form");
            for (std::size_t c = 0; c < samples; ++c) {
                if (ab > oracle.y_dist(tokens[a], tokens[c]) +
                             oracle.y_dist(tokens[c], tokens[b]) + tol)
                    throw InvalidSpec("y_dist violates the triangle inequality");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Builtin oracles

namespace {

const L2Function& as_fn(const std::any& token) { return std::any_cast<const L2Function&>(token); }

} // namespace

AffineOracle identity_affine_oracle(const ProbSpace& space, const ManifoldSpec& manifold) {
    return AffineOracle{
        space, manifold, [](const L2Function& f) { return std::any(f); },
        [](const std::any& a, const std::any& b) { return d_l2(as_fn(a), as_fn(b)); }};
}

AffineOracle d_eta_oracle(const ProbSpace& space, const ManifoldSpec& manifold, DensityFn eta) {
    return AffineOracle{
        space, manifold, [](const L2Function& f) { return std::any(f); },
        [eta](const std::any& a, const std::any& b) { return d_eta(eta, as_fn(a), as_fn(b)); }};
}

AffineOracle restriction_oracle(const ProbSpace& space, const ManifoldSpec& manifold,
                                std::vector<std::size_t> subset) {
    return d_eta_oracle(space, manifold, DensityFn::indicator(space.size(), subset));
}

AffineOracle constant_oracle(const ProbSpace& space, const ManifoldSpec& manifold) {
    return AffineOracle{space, manifold, [](const L2Function&) { return std::any(0); },
                        [](const std::any&, const std::any&) { return 0.0; }};
}

AffineOracle clipped_oracle(const ProbSpace& space, const ManifoldSpec& manifold, Point center,
                            double radius) {
    validate_point(manifold, center);
    auto clip = [manifold, center, radius](const L2Function& f) {
        L2Function out = f;
        for (auto& q : out.points) {
            const double d = dist(manifold, center, q);
            if (d > radius) q = geodesic_point(manifold, center, q, radius / d);
        }
        return std::any(out);
    };
    return AffineOracle{
        space, manifold, std::move(clip),
        [](const std::any& a, const std::any& b) { return d_l2(as_fn(a), as_fn(b)); }};
}

// ---------------------------------------------------------------------------
// Recovery and verification

DensityFn recover_eta(const AffineOracle& oracle, const Point& p, const Point& p_prime) {
    const double d = dist(oracle.manifold, p, p_prime);
    if (d <= 0.0) throw DegenerateProbe("recover_eta needs distinct probe points");
    const std::any base = oracle.forward(constant_function(oracle.space, oracle.manifold, p));
    std::vector<double> eta(oracle.space.size());
    for (std::size_t i = 0; i < eta.size(); ++i) {
        L2Function probe = constant_function(oracle.space, oracle.manifold, p);
        probe.points[i] = p_prime;
        const double y = oracle.y_dist(oracle.forward(probe), base);
        eta[i] = (y * y) / (oracle.space.weight(i) * d * d);
    }
    return DensityFn(std::move(eta));
}

double welldefinedness_check(const AffineOracle& oracle,
                             const std::vector<std::pair<Point, Point>>& probe_pairs) {
    if (probe_pairs.size() < 2)
        throw InvalidSpec("welldefinedness_check needs at least two probe pairs");
    const DensityFn first = recover_eta(oracle, probe_pairs[0].first, probe_pairs[0].second);
    double dev = 0.0;
    for (std::size_t k = 1; k < probe_pairs.size(); ++k) {
        const DensityFn eta = recover_eta(oracle, probe_pairs[k].first, probe_pairs[k].second);
        for (std::size_t i = 0; i < eta.size(); ++i)
            dev = std::max(dev, std::abs(eta[i] - first[i]));
    }
    return dev;
}

double verify_identity(const AffineOracle& oracle, const DensityFn& eta,
                       const std::vector<std::pair<L2Function, L2Function>>& samples) {
    if (samples.empty()) throw InvalidSpec("verify_identity needs samples");
    double worst = 0.0;
    for (const auto& [f, g] : samples) {
        const double y = y_distance(oracle, f, g);
        const double expected = d_eta(eta, f, g);
        worst = std::max(worst, std::abs(y * y - expected * expected));
    }
    return worst;
}

double estimate_lipschitz(const AffineOracle& oracle, Rng& rng, std::size_t pairs) {
    double best = 0.0;
    auto consider = [&](const L2Function& f, const L2Function& g) {
        const double d = d_l2(f, g);
        if (d < 1e-9) return;
        best = std::max(best, y_distance(oracle, f, g) / d);
    };
    // Pairs differing at a single atom reach the per-atom distance ratios
    // that random pairs only average; without them the estimate undershoots
    // the essential sup whenever the map weighs atoms unevenly.
    const Point p = random_point(oracle.manifold, rng);
    Point p2 = random_point(oracle.manifold, rng);
    while (dist(oracle.manifold, p, p2) < 0.1) p2 = random_point(oracle.manifold, rng);
    const L2Function base = constant_function(oracle.space, oracle.manifold, p);
    for (std::size_t i = 0; i < oracle.space.size(); ++i) {
        L2Function probe = base;
        probe.points[i] = p2;
        consider(probe, base);
    }
    for (std::size_t k = 0; k < pairs; ++k)
        consider(random_function(oracle.space, oracle.manifold, rng),
                 random_function(oracle.space, oracle.manifold, rng));
    return best;
}

AdditivityReport additivity_and_bound(const AffineOracle& oracle, const DensityFn& eta, Rng& rng,
                                      std::size_t union_samples, double bound_slack) {
    const std::size_t n = oracle.space.size();
    AdditivityReport report;

    const Point p = random_point(oracle.manifold, rng);
    Point p2 = random_point(oracle.manifold, rng);
    while (dist(oracle.manifold, p, p2) < 0.1) p2 = random_point(oracle.manifold, rng);
    const double dpp = dist(oracle.manifold, p, p2);
    const std::any base = oracle.forward(constant_function(oracle.space, oracle.manifold, p));

    // mu~(A) measured by a two-block simple-function probe
    auto mu_tilde = [&](const std::vector<bool>& mask) {
        L2Function probe = constant_function(oracle.space, oracle.manifold, p);
        for (std::size_t i = 0; i < n; ++i)
            if (mask[i]) probe.points[i] = p2;
        const double y = oracle.y_dist(oracle.forward(probe), base);
        return (y * y) / (dpp * dpp);
    };

    std::uniform_int_distribution<int> coin(0, 2);
    for (std::size_t s = 0; s < union_samples; ++s) {
        std::vector<bool> a(n, false), b(n, false), u(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            switch (coin(rng)) {
                case 0: a[i] = u[i] = true; break;
                case 1: b[i] = u[i] = true; break;
                default: break;
            }
        }
        const double residual = std::abs(mu_tilde(u) - mu_tilde(a) - mu_tilde(b));
        report.max_additivity_residual = std::max(report.max_additivity_residual, residual);
    }

    report.lipschitz_estimate = estimate_lipschitz(oracle, rng);
    for (std::size_t i = 0; i < eta.size(); ++i) report.max_eta = std::max(report.max_eta, eta[i]);
    const double cap = report.lipschitz_estimate * report.lipschitz_estimate + bound_slack;
    report.bound_holds = report.max_eta <= cap;
    return report;
}

AffineOracle weighted_product_oracle(const ManifoldSpec& product, std::vector<double> constants) {
    if (product.kind() != ManifoldKind::Product)
        throw NotAProduct("weighted_product_oracle needs a product target");
    if (constants.size() != product.factors().size())
        throw ArityMismatch("one constant per factor");
    const ProbSpace single = uniform_interval(1);
    auto metric = [product, constants](const std::any& a, const std::any& b) {
        const Point& x = as_fn(a).points[0];
        const Point& y = as_fn(b).points[0];
        double sq = 0.0;
        for (std::size_t i = 0; i < constants.size(); ++i) {
            const double d = dist(product.factors()[i], x.factors[i], y.factors[i]);
            sq += constants[i] * constants[i] * d * d;
        }
        return std::sqrt(sq);
    };
    return AffineOracle{single, product, [](const L2Function& f) { return std::any(f); },
                        std::move(metric)};
}

FactorConstants factor_constants(const AffineOracle& oracle, const Point& basepoint,
                                 const std::vector<Point>& perturbed, Rng& rng,
                                 std::size_t check_pairs, double fail_tol) {
    const ManifoldSpec& m = oracle.manifold;
    if (m.kind() != ManifoldKind::Product)
        throw NotAProduct("factor_constants needs a product target");
    if (oracle.space.size() != 1)
        throw InvalidSpec("factor_constants runs on a single-atom space");
    const std::size_t k = m.factors().size();
    if (perturbed.size() != k) throw ArityMismatch("one perturbed point per factor");

    const std::any base = oracle.forward(constant_function(oracle.space, m, basepoint));
    FactorConstants out;
    out.constants.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double d = dist(m.factors()[i], basepoint.factors[i], perturbed[i]);
        if (d <= 0.0) throw DegenerateProbe("factor perturbation must move the point");
        Point moved = basepoint;
        moved.factors[i] = perturbed[i];
        const double y = oracle.y_dist(oracle.forward(constant_function(oracle.space, m, moved)), base);
        out.constants[i] = y / d;
    }

    for (std::size_t s = 0; s < check_pairs; ++s) {
        const Point x = random_point(m, rng);
        const Point y = random_point(m, rng);
        const double yd = y_distance(oracle, constant_function(oracle.space, m, x),
                                     constant_function(oracle.space, m, y));
        double sq = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double d = dist(m.factors()[i], x.factors[i], y.factors[i]);
            sq += out.constants[i] * out.constants[i] * d * d;
        }
        out.mixed_identity_residual =
            std::max(out.mixed_identity_residual, std::abs(yd * yd - sq));
    }
    if (out.mixed_identity_residual > fail_tol)
        throw InconsistentConstants("mixed identity residual " +
                                    std::to_string(out.mixed_identity_residual));
    return out;
}

} // namespace l2man
