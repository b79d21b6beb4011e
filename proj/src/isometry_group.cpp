#include "l2man/isometry_group.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

namespace l2man {

L2Isometry make_l2_isometry(ProbSpace space, ManifoldSpec manifold, Automorphism phi,
                            std::vector<ManifoldIsometry> rho) {
    if (phi.size() != space.size())
        throw SpaceMismatch("automorphism does not match the space");
    if (rho.size() != space.size())
        throw ArityMismatch("need one manifold isometry per atom");
    for (const auto& r : rho) validate_isometry(manifold, r);
    return L2Isometry{std::move(space), std::move(manifold), std::move(phi), std::move(rho)};
}

L2Isometry identity_l2_isometry(const ProbSpace& space, const ManifoldSpec& manifold) {
    return L2Isometry{space, manifold, Automorphism::identity(space),
                      std::vector<ManifoldIsometry>(space.size(), identity_isometry(manifold))};
}

L2Isometry random_l2_isometry(const ProbSpace& space, const ManifoldSpec& manifold, Rng& rng) {
    // random weight-preserving permutation: shuffle within classes of equal weight
    const std::size_t n = space.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return space.weight(a) < space.weight(b); });
    std::vector<std::size_t> perm(n);
    std::size_t lo = 0;
    while (lo < n) {
        std::size_t hi = lo + 1;
        while (hi < n &&
               std::abs(space.weight(order[hi]) - space.weight(order[lo])) <= kWeightMatchTol)
            ++hi;
        std::vector<std::size_t> cls(order.begin() + lo, order.begin() + hi);
        std::vector<std::size_t> img = cls;
        std::shuffle(img.begin(), img.end(), rng);
        for (std::size_t k = 0; k < cls.size(); ++k) perm[cls[k]] = img[k];
        lo = hi;
    }
    std::vector<ManifoldIsometry> rho;
    rho.reserve(n);
    for (std::size_t i = 0; i < n; ++i) rho.push_back(random_isometry(manifold, rng));
    return L2Isometry{space, manifold, Automorphism(space, std::move(perm)), std::move(rho)};
}

L2Function apply(const L2Isometry& gamma, const L2Function& f) {
    if (!(f.space == gamma.space)) throw SpaceMismatch("function over a different space");
    if (f.manifold != gamma.manifold) throw ManifoldMismatch("function has a different target");
    std::vector<Point> pts(f.points.size());
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        const std::size_t j = gamma.phi(i);
        pts[i] = apply_isometry(gamma.manifold, gamma.rho[j], f.points[j]);
    }
    return L2Function{f.space, f.manifold, std::move(pts)};
}

L2Isometry compose(const L2Isometry& g1, const L2Isometry& g2) {
    if (!(g1.space == g2.space) || g1.manifold != g2.manifold)
        throw SpaceMismatch("composing isometries of different spaces");
    // apply(g1, apply(g2, f))[i] = rho1[phi1(i)]( rho2[phi2(phi1(i))]( f[phi2(phi1(i))] ) )
    const Automorphism phi = g2.phi.compose(g1.phi);
    const Automorphism phi2_inv = g2.phi.inverse();
    std::vector<ManifoldIsometry> rho;
    rho.reserve(g1.rho.size());
    for (std::size_t j = 0; j < g1.rho.size(); ++j) {
        rho.push_back(compose_isometries(g1.manifold, g1.rho[phi2_inv(j)], g2.rho[j]));
    }
    return L2Isometry{g1.space, g1.manifold, phi, std::move(rho)};
}

L2Isometry inverse(const L2Isometry& g) {
    const Automorphism phi_inv = g.phi.inverse();
    std::vector<ManifoldIsometry> rho;
    rho.reserve(g.rho.size());
    for (std::size_t k = 0; k < g.rho.size(); ++k) {
        rho.push_back(invert_isometry(g.manifold, g.rho[g.phi(k)]));
    }
    return L2Isometry{g.space, g.manifold, phi_inv, std::move(rho)};
}

std::vector<ManifoldIsometry> conjugate_pointwise(const L2Isometry& g,
                                                  const std::vector<ManifoldIsometry>& tau) {
    if (tau.size() != g.space.size())
        throw ArityMismatch("pointwise family length does not match atom count");
    std::vector<ManifoldIsometry> sigma;
    sigma.reserve(tau.size());
    for (std::size_t i = 0; i < tau.size(); ++i) {
        const std::size_t j = g.phi(i);
        const ManifoldIsometry inv = invert_isometry(g.manifold, g.rho[j]);
        sigma.push_back(compose_isometries(
            g.manifold, compose_isometries(g.manifold, g.rho[j], tau[j]), inv));
    }
    return sigma;
}

IsometryOracle oracle_from(const L2Isometry& g) {
    return IsometryOracle{g.space, g.manifold,
                          [g](const L2Function& f) { return apply(g, f); }, true};
}

void validate_oracle(const IsometryOracle& oracle, Rng& rng, std::size_t pairs, double tol) {
    for (std::size_t k = 0; k < pairs; ++k) {
        const L2Function f = random_function(oracle.space, oracle.manifold, rng);
        const L2Function g = random_function(oracle.space, oracle.manifold, rng);
        const double before = d_l2(f, g);
        const double after = d_l2(oracle.map(f), oracle.map(g));
        if (std::abs(before - after) > tol)
            throw NotAnIsometry("oracle moved a distance by " +
                                std::to_string(std::abs(before - after)));
    }
}

DecomposeReport decompose(const IsometryOracle& oracle, const Point& p, const Point& p_prime,
                          const DecomposeOptions& opts) {
    const ProbSpace& space = oracle.space;
    const ManifoldSpec& m = oracle.manifold;
    const std::size_t n = space.size();
    if (dist(m, p, p_prime) <= 0.0)
        throw DegenerateVertex("probe points must be distinct");

    const L2Function base = oracle.map(constant_function(space, m, p));

    // (a) per-atom probes: the moved output atoms must be singletons of
    // matching weight, jointly forming the permutation.
    auto probe_atom = [&](std::size_t i) -> std::size_t {
        L2Function probe = constant_function(space, m, p);
        probe.points[i] = p_prime;
        const L2Function out = oracle.map(probe);
        std::size_t hit = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (dist(m, out.points[j], base.points[j]) > opts.diff_tol) {
                if (hit != n) throw NonRigid("probe moved more than one output atom");
                hit = j;
            }
        }
        if (hit == n) throw NonRigid("probe moved no output atom");
        if (std::abs(space.weight(hit) - space.weight(i)) > opts.weight_tol)
            throw NonRigid("probe landed on an atom of different weight");
        return hit;
    };

    std::vector<std::size_t> hits(n);
    if (opts.parallel && oracle.reentrant) {
        std::vector<std::future<std::size_t>> jobs;
        jobs.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            jobs.push_back(std::async(std::launch::async, probe_atom, i));
        for (std::size_t i = 0; i < n; ++i) hits[i] = jobs[i].get();
    } else {
        for (std::size_t i = 0; i < n; ++i) hits[i] = probe_atom(i);
    }

    std::vector<std::size_t> phi_of(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = hits[i];
        if (phi_of[j] != n) throw NonRigid("two probes moved the same output atom");
        phi_of[j] = i; // apply(g,f)[j] reads f[phi(j)], so a change at i shows up at j
    }
    const Automorphism phi(space, phi_of);

    // (b) fit rho from constant-function samples: oracle(const x)[j] = rho[phi(j)](x)
    Rng rng(opts.seed);
    std::vector<Point> xs;
    std::vector<L2Function> outs;
    xs.reserve(opts.fit_samples);
    outs.reserve(opts.fit_samples);
    for (std::size_t k = 0; k < opts.fit_samples; ++k) {
        xs.push_back(random_point(m, rng));
        outs.push_back(oracle.map(constant_function(space, m, xs.back())));
    }
    std::vector<ManifoldIsometry> rho(n);
    std::vector<double> residuals(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Point> ys;
        ys.reserve(xs.size());
        for (const auto& out : outs) ys.push_back(out.points[j]);
        double res = 0.0;
        ManifoldIsometry fitted = fit_isometry(m, xs, ys, &res);
        if (res > opts.residual_tol)
            throw NonRigid("pointwise isometry fit residual " + std::to_string(res));
        try {
            validate_isometry(m, fitted);
        } catch (const Error&) {
            throw NonRigid("fitted element is not a manifold isometry");
        }
        rho[phi_of[j]] = std::move(fitted);
        residuals[phi_of[j]] = res;
    }

    L2Isometry recovered{space, m, phi, std::move(rho)};

    // (c) held-out reconstruction
    double holdout = 0.0;
    for (std::size_t k = 0; k < opts.holdout_samples; ++k) {
        const L2Function h = random_function(space, m, rng);
        holdout = std::max(holdout, d_l2(apply(recovered, h), oracle.map(h)));
    }
    if (holdout > opts.residual_tol)
        throw NonRigid("held-out reconstruction residual " + std::to_string(holdout));

    return DecomposeReport{std::move(recovered), std::move(residuals), holdout};
}

LocalizationResult localization_check(const IsometryOracle& oracle,
                                      const std::vector<std::size_t>& subset,
                                      const std::vector<std::pair<L2Function, L2Function>>& probes,
                                      double mass_tol, double sum_tol) {
    const ProbSpace& space = oracle.space;
    const std::size_t n = space.size();
    if (n > 22) throw InvalidSpec("exhaustive localization search is limited to n <= 22");
    if (probes.size() < 2 * n)
        throw InvalidSpec("localization_check needs at least 2n probe pairs");
    std::vector<bool> in(n, false);
    for (std::size_t i : subset) in.at(i) = true;
    std::size_t count = 0;
    for (bool b : in) count += b;
    if (count == 0 || count == n)
        throw EmptyOrFullSubset("localization subset must be nonempty and proper");

    double target_mass = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (in[i]) target_mass += space.weight(i);

    // per-probe: lhs over A and the per-atom image displacements
    std::vector<double> lhs(probes.size(), 0.0);
    std::vector<std::vector<double>> rhs_atom(probes.size(), std::vector<double>(n, 0.0));
    for (std::size_t t = 0; t < probes.size(); ++t) {
        const auto& [f, g] = probes[t];
        for (std::size_t i = 0; i < n; ++i) {
            const double d = dist(oracle.manifold, f.points[i], g.points[i]);
            if (in[i]) lhs[t] += space.weight(i) * d * d;
        }
        const L2Function gf = oracle.map(f);
        const L2Function gg = oracle.map(g);
        for (std::size_t j = 0; j < n; ++j) {
            const double d = dist(oracle.manifold, gf.points[j], gg.points[j]);
            rhs_atom[t][j] = space.weight(j) * d * d;
        }
    }

    LocalizationResult result;
    result.first_probe_lhs = lhs[0];
    result.first_probe_rhs_min = std::numeric_limits<double>::infinity();
    result.first_probe_rhs_max = -std::numeric_limits<double>::infinity();

    std::vector<std::vector<std::size_t>> matches;
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        double mass = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (mask & (1u << j)) mass += space.weight(j);
        if (std::abs(mass - target_mass) > mass_tol) continue;
        double rhs0 = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (mask & (1u << j)) rhs0 += rhs_atom[0][j];
        result.first_probe_rhs_min = std::min(result.first_probe_rhs_min, rhs0);
        result.first_probe_rhs_max = std::max(result.first_probe_rhs_max, rhs0);
        bool ok = true;
        for (std::size_t t = 0; t < probes.size() && ok; ++t) {
            double rhs = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (mask & (1u << j)) rhs += rhs_atom[t][j];
            ok = std::abs(rhs - lhs[t]) <= sum_tol;
        }
        if (ok) {
            std::vector<std::size_t> b;
            for (std::size_t j = 0; j < n; ++j)
                if (mask & (1u << j)) b.push_back(j);
            matches.push_back(std::move(b));
        }
    }
    if (matches.size() > 1)
        throw AmbiguousWitness("several subsets pass; increase the probe count");
    if (matches.size() == 1) result.witness = std::move(matches.front());
    return result;
}

} // namespace l2man
