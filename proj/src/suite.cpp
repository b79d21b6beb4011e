#include "l2man/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "l2man/affine_maps.hpp"
#include "l2man/gallery.hpp"

namespace l2man {

CheckResult check_le(std::string name, double value, double threshold) {
    return CheckResult{std::move(name), value, threshold, "<=", value <= threshold};
}

CheckResult check_ge(std::string name, double value, double threshold) {
    return CheckResult{std::move(name), value, threshold, ">=", value >= threshold};
}

namespace {

/// n atoms with weights proportional to 1, 2, ..., n: distinct by design.
ProbSpace ramp_space(std::size_t n) {
    std::vector<double> w(n);
    const double total = static_cast<double>(n * (n + 1)) / 2.0;
    for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<double>(i + 1) / total;
    return make_prob_space(std::move(w));
}

/// Weights with repeated values, so atom matching cannot lean on weights.
ProbSpace repeated_space() {
    return make_prob_space({1.0 / 22, 1.0 / 22, 2.0 / 22, 2.0 / 22, 2.0 / 22, 3.0 / 22,
                            3.0 / 22, 4.0 / 22, 4.0 / 22});
}

/// Second point at distance about min(1, reachable) from p.
Point probe_partner(const ManifoldSpec& m, const Point& p, Rng& rng) {
    Point q = random_point(m, rng);
    double d = dist(m, p, q);
    while (d < 1e-3) {
        q = random_point(m, rng);
        d = dist(m, p, q);
    }
    if (d > 1.0) q = geodesic_point(m, p, q, 1.0 / d);
    return q;
}

// Bitwise coordinate equality: the rearrangement maps copy points verbatim,
// so "exact" here means exact, not metric-tolerance equality.
bool coords_equal_exact(const Point& p, const Point& q) {
    if (p.coords.size() != q.coords.size() || p.factors.size() != q.factors.size())
        return false;
    if (p.coords.size() > 0 && !(p.coords.array() == q.coords.array()).all()) return false;
    for (std::size_t i = 0; i < p.factors.size(); ++i)
        if (!coords_equal_exact(p.factors[i], q.factors[i])) return false;
    return true;
}

bool l2_functions_equal_exact(const L2Function& f, const L2Function& g) {
    if (f.points.size() != g.points.size()) return false;
    for (std::size_t i = 0; i < f.points.size(); ++i)
        if (!coords_equal_exact(f.points[i], g.points[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// 1. metric axioms, geodesic speed law, alpha normalization

CriterionResult criterion_metric(std::uint64_t seed) {
    CriterionResult out{1, "metric axioms, geodesic speed law, alpha normalization", {}, false, 0};
    Rng rng(seed + 101);

    const std::vector<std::size_t> sizes = {1, 2, 6, 12};
    const std::vector<ManifoldSpec> targets = {ManifoldSpec::sphere(2),
                                               ManifoldSpec::hyperbolic(2),
                                               ManifoldSpec::euclidean(3)};
    double worst_metric = 0.0, worst_speed = 0.0, worst_alpha = 0.0;
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // 84 iterations over 12 space/target combos: 1008 checks in total
    for (std::size_t n : sizes) {
        const ProbSpace space = ramp_space(n);
        for (const auto& m : targets) {
            for (int it = 0; it < 84; ++it) {
                const L2Function f = random_function(space, m, rng);
                const L2Function g = random_function(space, m, rng);
                const L2Function h = random_function(space, m, rng);

                worst_metric = std::max(worst_metric, std::abs(d_l2(f, g) - d_l2(g, f)));
                worst_metric = std::max(worst_metric, d_l2(f, f));
                worst_metric =
                    std::max(worst_metric, d_l2(f, h) - d_l2(f, g) - d_l2(g, h));

                if (d_l2(f, g) < 1e-9) continue;
                const L2Geodesic sigma = geodesic(f, g);
                double alpha_mass = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    alpha_mass += space.weight(i) * sigma.alpha[i] * sigma.alpha[i];
                worst_alpha = std::max(worst_alpha, std::abs(alpha_mass - 1.0));

                const double s = unit(rng), t = unit(rng);
                const double d_st = d_l2(eval_geodesic(sigma, s), eval_geodesic(sigma, t));
                worst_speed =
                    std::max(worst_speed, std::abs(d_st - std::abs(s - t) * sigma.length));
            }
        }
    }
    out.checks.push_back(check_le("metric_axioms_max_violation", worst_metric, 1e-9));
    out.checks.push_back(check_le("geodesic_speed_law_max_residual", worst_speed, 1e-8));
    out.checks.push_back(check_le("alpha_normalization_max_residual", worst_alpha, 1e-10));
    return out;
}

// ---------------------------------------------------------------------------
// 2. angle convergence against the closed form

CriterionResult criterion_angle(std::uint64_t seed) {
    CriterionResult out{2, "comparison angles converge to the closed form", {}, false, 0};
    Rng rng(seed + 202);

    const ProbSpace space = ramp_space(6);
    const std::vector<ManifoldSpec> targets = {ManifoldSpec::sphere(2),
                                               ManifoldSpec::hyperbolic(2),
                                               ManifoldSpec::euclidean(3)};
    const std::vector<double> scales = default_angle_scales();

    double worst_gap = 0.0;
    double worst_monotonicity = -1.0; // max increase of successive halving differences
    for (int k = 0; k < 200; ++k) {
        const ManifoldSpec& m = targets[static_cast<std::size_t>(k) % targets.size()];
        const L2Function f = random_function(space, m, rng);
        L2Function g1 = random_function(space, m, rng);
        while (d_l2(f, g1) < 1e-6) g1 = random_function(space, m, rng);
        L2Function g2 = random_function(space, m, rng);
        while (d_l2(f, g2) < 1e-6) g2 = random_function(space, m, rng);

        const L2Geodesic s1 = geodesic(f, g1);
        const L2Geodesic s2 = geodesic(f, g2);
        const AngleTrace trace = alexandrov_angle_numeric(s1, s2, scales);
        const double analytic = alexandrov_angle_analytic(s1, s2);
        worst_gap = std::max(worst_gap, std::abs(trace.extrapolated - analytic));

        double prev_diff = -1.0;
        for (std::size_t i = 1; i < scales.size(); ++i) {
            if (scales[i] >= 1e-2) continue;
            const double diff = std::abs(trace.angles[i] - trace.angles[i - 1]);
            if (prev_diff >= 0.0)
                worst_monotonicity = std::max(worst_monotonicity, diff - prev_diff);
            prev_diff = diff;
        }
    }
    out.checks.push_back(check_le("extrapolated_vs_analytic_max_gap", worst_gap, 1e-3));
    out.checks.push_back(
        check_le("halving_difference_max_increase", worst_monotonicity, 1e-12));
    return out;
}

// ---------------------------------------------------------------------------
// 3. semidirect group algebra

CriterionResult criterion_group(std::uint64_t seed) {
    CriterionResult out{3, "semidirect product algebra and normality", {}, false, 0};
    Rng rng(seed + 303);

    const ProbSpace space = repeated_space();
    const ManifoldSpec m = ManifoldSpec::sphere(2);

    double worst_compose = 0.0, worst_inverse = 0.0, worst_conj = 0.0;
    for (int k = 0; k < 100; ++k) {
        const L2Isometry g1 = random_l2_isometry(space, m, rng);
        const L2Isometry g2 = random_l2_isometry(space, m, rng);
        const L2Function f = random_function(space, m, rng);

        worst_compose = std::max(
            worst_compose, d_l2(apply(compose(g1, g2), f), apply(g1, apply(g2, f))));
        worst_inverse = std::max(worst_inverse, d_l2(apply(inverse(g1), apply(g1, f)), f));

        std::vector<ManifoldIsometry> tau(space.size());
        for (auto& t : tau) t = random_isometry(m, rng);
        const L2Isometry tau_iso = make_l2_isometry(space, m, Automorphism::identity(space), tau);
        const L2Isometry sigma_iso = make_l2_isometry(
            space, m, Automorphism::identity(space), conjugate_pointwise(g1, tau));
        const L2Function lhs = apply(sigma_iso, f);
        const L2Function rhs = apply(g1, apply(tau_iso, apply(inverse(g1), f)));
        worst_conj = std::max(worst_conj, d_l2(lhs, rhs));
    }

    // A pure automorphism with phi != id reads another atom's value, which no
    // pointwise family does; a pointwise family with some rho != id moves a
    // constant, which no pure automorphism does. Hence the subgroups meet
    // only at the identity.
    int intersection_failures = 0;
    for (int k = 0; k < 20; ++k) {
        L2Isometry pure_auto = random_l2_isometry(space, m, rng);
        for (auto& r : pure_auto.rho) r = identity_isometry(m);
        std::size_t moved = space.size();
        for (std::size_t i = 0; i < space.size(); ++i)
            if (pure_auto.phi(i) != i) { moved = i; break; }
        if (moved != space.size()) {
            const Point p = random_point(m, rng);
            const Point q = probe_partner(m, p, rng);
            L2Function probe = constant_function(space, m, p);
            probe.points[pure_auto.phi(moved)] = q;
            // the output at `moved` tracks the value at another atom
            if (dist(m, apply(pure_auto, probe).points[moved], q) > 1e-12)
                ++intersection_failures;
        }
        std::vector<ManifoldIsometry> tau(space.size());
        bool any_nontrivial = false;
        for (auto& t : tau) {
            t = random_isometry(m, rng);
            any_nontrivial = true;
        }
        if (any_nontrivial) {
            const L2Isometry pointwise =
                make_l2_isometry(space, m, Automorphism::identity(space), tau);
            const Point p = random_point(m, rng);
            const L2Function c = constant_function(space, m, p);
            // pure automorphisms fix every constant; a generic pointwise family moves it
            if (d_l2(apply(pointwise, c), c) < 1e-9) ++intersection_failures;
        }
    }

    out.checks.push_back(check_le("compose_closed_form_max_gap", worst_compose, 1e-9));
    out.checks.push_back(check_le("inverse_closed_form_max_gap", worst_inverse, 1e-9));
    out.checks.push_back(check_le("conjugation_pointwise_max_gap", worst_conj, 1e-9));
    out.checks.push_back(
        check_le("trivial_intersection_failures", intersection_failures, 0.0));
    return out;
}

// ---------------------------------------------------------------------------
// 4. black-box decomposition round-trip

CriterionResult criterion_decompose(std::uint64_t seed) {
    CriterionResult out{4, "decomposition recovers random isometries", {}, false, 0};
    Rng rng(seed + 404);

    const std::vector<ProbSpace> spaces = {ramp_space(12), repeated_space()};
    const std::vector<ManifoldSpec> targets = {ManifoldSpec::sphere(2),
                                               ManifoldSpec::hyperbolic(2)};
    int perm_mismatches = 0;
    double worst_rho = 0.0, worst_holdout = 0.0;
    for (const auto& m : targets) {
        for (const auto& space : spaces) {
            for (int k = 0; k < 25; ++k) {
                const L2Isometry g = random_l2_isometry(space, m, rng);
                const Point p = random_point(m, rng);
                const Point p_prime = probe_partner(m, p, rng);
                DecomposeOptions opts;
                opts.seed = seed + 404 + static_cast<std::uint64_t>(k);
                const DecomposeReport rep = decompose(oracle_from(g), p, p_prime, opts);
                if (!(rep.recovered.phi == g.phi)) ++perm_mismatches;
                for (double r : rep.rho_residuals) worst_rho = std::max(worst_rho, r);
                worst_holdout = std::max(worst_holdout, rep.holdout_residual);
            }
        }
    }
    out.checks.push_back(check_le("permutation_mismatches", perm_mismatches, 0.0));
    out.checks.push_back(check_le("rho_fit_max_residual", worst_rho, 1e-8));
    out.checks.push_back(check_le("holdout_max_residual", worst_holdout, 1e-8));
    return out;
}

// ---------------------------------------------------------------------------
// 5. non-rigidity witnesses

CriterionResult criterion_witnesses(std::uint64_t seed) {
    CriterionResult out{5, "non-rigid witnesses behave as documented", {}, false, 0};
    Rng rng(seed + 505);

    // (a) the Hilbert rotation: a valid isometry that fails localization
    const std::size_t m_grid = 8;
    HilbertWitness hw = hilbert_nonrigid(m_grid);
    double hilbert_validation = 0.0;
    try {
        validate_oracle(hw.oracle, rng, 30, 1e-10);
    } catch (const NotAnIsometry&) {
        hilbert_validation = 1.0;
    }

    std::vector<std::size_t> first_half(m_grid / 2);
    std::iota(first_half.begin(), first_half.end(), 0);
    std::vector<std::pair<L2Function, L2Function>> probes;
    probes.emplace_back(hw.e, hw.zero);
    while (probes.size() < 2 * m_grid)
        probes.emplace_back(random_function(hw.oracle.space, hw.oracle.manifold, rng),
                            random_function(hw.oracle.space, hw.oracle.manifold, rng));
    const LocalizationResult loc = localization_check(hw.oracle, first_half, probes);

    out.checks.push_back(check_le("hilbert_isometry_validation", hilbert_validation, 0.0));
    out.checks.push_back(
        check_le("hilbert_localization_witness_found", loc.witness.has_value() ? 1.0 : 0.0, 0.0));
    out.checks.push_back(
        check_le("hilbert_probe_lhs_vs_1.0", std::abs(loc.first_probe_lhs - 1.0), 1e-12));
    out.checks.push_back(
        check_le("hilbert_probe_rhs_min_vs_0.5", std::abs(loc.first_probe_rhs_min - 0.5), 1e-12));
    out.checks.push_back(
        check_le("hilbert_probe_rhs_max_vs_0.5", std::abs(loc.first_probe_rhs_max - 0.5), 1e-12));

    // (b) the reducible-target witness: decompose must refuse it
    const ManifoldSpec sphere = ManifoldSpec::sphere(2);
    const IsometryOracle r1 = r1_nonrigid(sphere, 8);
    double r1_validation = 0.0;
    try {
        validate_oracle(r1, rng, 30, 1e-10);
    } catch (const NotAnIsometry&) {
        r1_validation = 1.0;
    }
    double r1_rejected = 0.0;
    try {
        const Point p = random_point(r1.manifold, rng);
        decompose(r1, p, probe_partner(r1.manifold, p, rng));
    } catch (const NonRigid&) {
        r1_rejected = 1.0;
    }

    Point xy;
    xy.factors.push_back(random_point(sphere, rng));
    xy.factors.push_back(random_point(sphere, rng));
    const L2Function image = r1.map(constant_function(r1.space, r1.manifold, xy));
    L2Function expected = image;
    for (std::size_t i = 0; i < 8; ++i) {
        const Point& v = (i < 4) ? xy.factors[0] : xy.factors[1];
        expected.points[i].factors = {v, v};
    }

    out.checks.push_back(check_le("r1_isometry_validation", r1_validation, 0.0));
    out.checks.push_back(check_ge("r1_decompose_raises_nonrigid", r1_rejected, 1.0));
    out.checks.push_back(check_le("r1_constant_action_exact",
                                  l2_functions_equal_exact(image, expected) ? 0.0 : 1.0, 0.0));
    return out;
}

// ---------------------------------------------------------------------------
// 6. affine characterization

CriterionResult criterion_affine(std::uint64_t seed) {
    CriterionResult out{6, "density recovery characterizes affine maps", {}, false, 0};
    Rng rng(seed + 606);

    const ProbSpace space = ramp_space(6);
    const ManifoldSpec m = ManifoldSpec::sphere(2);
    std::uniform_real_distribution<double> eta_dist(0.0, 2.0);

    double worst_recovery = 0.0, worst_welldef = 0.0, worst_identity = 0.0;
    bool bounds_hold = true;
    for (int k = 0; k < 50; ++k) {
        std::vector<double> eta_true(space.size());
        for (auto& e : eta_true) e = eta_dist(rng);
        const DensityFn eta(eta_true);
        const AffineOracle oracle = d_eta_oracle(space, m, eta);

        const Point p = random_point(m, rng);
        const Point p_prime = probe_partner(m, p, rng);
        const DensityFn recovered = recover_eta(oracle, p, p_prime);
        for (std::size_t i = 0; i < space.size(); ++i)
            worst_recovery = std::max(worst_recovery, std::abs(recovered[i] - eta_true[i]));

        std::vector<std::pair<Point, Point>> pairs;
        for (int j = 0; j < 3; ++j) {
            const Point a = random_point(m, rng);
            pairs.emplace_back(a, probe_partner(m, a, rng));
        }
        worst_welldef = std::max(worst_welldef, welldefinedness_check(oracle, pairs));

        if (k < 5) {
            std::vector<std::pair<L2Function, L2Function>> samples;
            for (int j = 0; j < 100; ++j)
                samples.emplace_back(random_function(space, m, rng),
                                     random_function(space, m, rng));
            worst_identity = std::max(worst_identity, verify_identity(oracle, recovered, samples));
            const AdditivityReport add = additivity_and_bound(oracle, recovered, rng);
            bounds_hold = bounds_hold && add.bound_holds &&
                          add.max_additivity_residual <= 1e-8;
        }
    }

    // non-affine control: clipping to a small geodesic ball
    const AffineOracle control = clipped_oracle(space, m, random_point(m, rng), 0.4);
    std::vector<std::pair<Point, Point>> control_pairs;
    for (int j = 0; j < 4; ++j) {
        const Point a = random_point(m, rng);
        control_pairs.emplace_back(a, probe_partner(m, a, rng));
    }
    const double control_dev = welldefinedness_check(control, control_pairs);

    out.checks.push_back(check_le("eta_recovery_max_error", worst_recovery, 1e-10));
    out.checks.push_back(check_le("probe_independence_max_deviation", worst_welldef, 1e-9));
    out.checks.push_back(check_le("distance_identity_max_residual", worst_identity, 1e-8));
    out.checks.push_back(
        check_le("lipschitz_bound_and_additivity_failures", bounds_hold ? 0.0 : 1.0, 0.0));
    out.checks.push_back(check_ge("non_affine_control_deviation", control_dev,
                                  1e3 * kNotAffineThreshold));
    return out;
}

// ---------------------------------------------------------------------------
// 7. factor constants on a product target

CriterionResult criterion_factors(std::uint64_t seed) {
    CriterionResult out{7, "factor constants on a product target", {}, false, 0};
    Rng rng(seed + 707);

    const ManifoldSpec sphere = ManifoldSpec::sphere(2);
    const ManifoldSpec product = ManifoldSpec::product({sphere, sphere});
    const std::vector<double> planted = {1.0, 0.5};
    const AffineOracle oracle = weighted_product_oracle(product, planted);

    Point base = random_point(product, rng);
    std::vector<Point> perturbed;
    for (std::size_t i = 0; i < 2; ++i)
        perturbed.push_back(probe_partner(sphere, base.factors[i], rng));

    double recovery_error = 0.0, residual = 0.0;
    try {
        const FactorConstants fc = factor_constants(oracle, base, perturbed, rng, 100, 1e-6);
        for (std::size_t i = 0; i < 2; ++i)
            recovery_error = std::max(recovery_error, std::abs(fc.constants[i] - planted[i]));
        residual = fc.mixed_identity_residual;
    } catch (const InconsistentConstants&) {
        recovery_error = residual = 1.0;
    }
    out.checks.push_back(check_le("constant_recovery_max_error", recovery_error, 1e-9));
    out.checks.push_back(check_le("mixed_identity_max_residual", residual, 1e-8));
    return out;
}

// ---------------------------------------------------------------------------
// 8. interleaving rescaling isomorphism

CriterionResult criterion_interleave(std::uint64_t seed) {
    CriterionResult out{8, "interleaving preserves distances, round-trips exactly", {}, false, 0};
    Rng rng(seed + 808);

    const ManifoldSpec sphere = ManifoldSpec::sphere(2);
    double worst_distance = 0.0;
    int roundtrip_failures = 0;
    for (std::size_t k : {std::size_t{2}, std::size_t{3}}) {
        const ManifoldSpec target =
            ManifoldSpec::product(std::vector<ManifoldSpec>(k, sphere));
        for (std::size_t m : {std::size_t{6}, std::size_t{12}}) {
            const ProbSpace grid = uniform_interval(m);
            for (int it = 0; it < 25; ++it) {
                const L2Function f = random_function(grid, target, rng);
                const L2Function g = random_function(grid, target, rng);
                const L2Function fi = interleave(f, k);
                const L2Function gi = interleave(g, k);
                worst_distance =
                    std::max(worst_distance, std::abs(d_l2(f, g) - d_l2(fi, gi)));
                if (!l2_functions_equal_exact(deinterleave(fi, k), f)) ++roundtrip_failures;
            }
        }
    }
    out.checks.push_back(check_le("distance_preservation_max_gap", worst_distance, 1e-12));
    out.checks.push_back(check_le("roundtrip_failures", roundtrip_failures, 0.0));
    return out;
}

// ---------------------------------------------------------------------------
// 9. the dilation dichotomy

CriterionResult criterion_dilation(std::uint64_t seed) {
    CriterionResult out{9, "dilations exist on Euclidean targets only", {}, false, 0};
    Rng rng(seed + 909);

    const double lambda = 1.7;
    const ManifoldSpec e3 = ManifoldSpec::euclidean(3);
    double worst_dilation = 0.0, worst_surjective = 0.0;
    for (int k = 0; k < 50; ++k) {
        const Point x = random_point(e3, rng);
        const Point y = random_point(e3, rng);
        worst_dilation = std::max(
            worst_dilation,
            std::abs(dist(e3, scaling_map(e3, lambda, x), scaling_map(e3, lambda, y)) -
                     lambda * dist(e3, x, y)));
        worst_surjective = std::max(
            worst_surjective, dist(e3, scaling_map(e3, lambda, scaling_map(e3, 1.0 / lambda, x)), x));
    }

    int rejections = 0;
    for (const auto& m : {ManifoldSpec::sphere(2), ManifoldSpec::hyperbolic(2)}) {
        try {
            scaling_map(m, lambda, random_point(m, rng));
        } catch (const UnsupportedVariant&) {
            ++rejections;
        }
    }
    out.checks.push_back(check_le("euclidean_dilation_max_residual", worst_dilation, 1e-12));
    out.checks.push_back(check_le("euclidean_surjectivity_max_residual", worst_surjective, 1e-12));
    out.checks.push_back(check_ge("curved_targets_rejected", rejections, 2.0));
    return out;
}

} // namespace

SuiteReport run_suite(std::uint64_t seed) {
    using Clock = std::chrono::steady_clock;
    const std::vector<CriterionResult (*)(std::uint64_t)> parts = {
        criterion_metric,   criterion_angle,   criterion_group,
        criterion_decompose, criterion_witnesses, criterion_affine,
        criterion_factors,  criterion_interleave, criterion_dilation};

    SuiteReport report;
    report.seed = seed;
    report.all_pass = true;
    for (auto part : parts) {
        const auto start = Clock::now();
        CriterionResult res = part(seed);
        res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        res.pass = std::all_of(res.checks.begin(), res.checks.end(),
                               [](const CheckResult& c) { return c.pass; });
        report.all_pass = report.all_pass && res.pass;
        report.criteria.push_back(std::move(res));
    }
    return report;
}

Json to_json(const SuiteReport& report) {
    Json criteria = Json::array();
    for (const auto& cr : report.criteria) {
        Json checks = Json::array();
        for (const auto& c : cr.checks)
            checks.push_back(Json{{"name", c.name},
                                  {"value", c.value},
                                  {"comparator", c.comparator},
                                  {"threshold", c.threshold},
                                  {"pass", c.pass}});
        criteria.push_back(Json{{"id", cr.id},
                                {"title", cr.title},
                                {"pass", cr.pass},
                                {"checks", std::move(checks)}});
    }
    return Json{{"schema", "l2man/1"},
                {"kind", "suite"},
                {"seed", report.seed},
                {"all_pass", report.all_pass},
                {"criteria", std::move(criteria)}};
}

} // namespace l2man
