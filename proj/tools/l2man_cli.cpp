// Batch driver: load space/manifold configs, run experiments, emit
// machine-readable reports. Exit codes: 0 all checks pass, 1 check failure,
// 2 config or usage error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "l2man/affine_maps.hpp"
#include "l2man/gallery.hpp"
#include "l2man/suite.hpp"

namespace {

using l2man::Json;

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw l2man::ConfigParse("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw l2man::ConfigParse(path + ": " + e.what());
    }
}

Json require_field(const Json& j, const std::string& field, const std::string& where) {
    if (!j.contains(field))
        throw l2man::ConfigParse(where + ": missing required field \"" + field + "\"");
    return j.at(field);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw l2man::ConfigParse("cannot write " + path);
    out << text;
}

void write_report(const std::string& path, const Json& report) {
    write_text(path, report.dump(2) + "\n");
}

l2man::Point probe_partner(const l2man::ManifoldSpec& m, const l2man::Point& p,
                           l2man::Rng& rng) {
    l2man::Point q = l2man::random_point(m, rng);
    double d = l2man::dist(m, p, q);
    while (d < 1e-3) {
        q = l2man::random_point(m, rng);
        d = l2man::dist(m, p, q);
    }
    if (d > 1.0) q = l2man::geodesic_point(m, p, q, 1.0 / d);
    return q;
}

// ---------------------------------------------------------------------------

int run_space(const std::string& config_path, const std::string& out_path) {
    const Json cfg = read_json_file(config_path);
    const l2man::ProbSpace space = l2man::prob_space_from_json(cfg);
    bool uniform = true;
    for (std::size_t i = 1; i < space.size(); ++i)
        uniform = uniform && space.weight(i) == space.weight(0);
    Json report{{"schema", "l2man/1"},
                {"kind", "space"},
                {"atoms", space.size()},
                {"uniform", uniform},
                {"weights", space.weights()}};
    write_report(out_path, report);
    return 0;
}

int run_angle(const std::string& config_path, const std::string& out_path,
              std::uint64_t seed) {
    const Json cfg = read_json_file(config_path);
    const l2man::ProbSpace space =
        l2man::prob_space_from_json(require_field(cfg, "space", config_path));
    const l2man::ManifoldSpec manifold =
        l2man::manifold_from_json(require_field(cfg, "manifold", config_path));
    if (cfg.contains("seed")) seed = cfg.at("seed").get<std::uint64_t>();

    l2man::Rng rng(seed);
    const l2man::L2Function f = l2man::random_function(space, manifold, rng);
    l2man::L2Function g1 = l2man::random_function(space, manifold, rng);
    while (l2man::d_l2(f, g1) < 1e-6) g1 = l2man::random_function(space, manifold, rng);
    l2man::L2Function g2 = l2man::random_function(space, manifold, rng);
    while (l2man::d_l2(f, g2) < 1e-6) g2 = l2man::random_function(space, manifold, rng);

    const l2man::L2Geodesic s1 = l2man::geodesic(f, g1);
    const l2man::L2Geodesic s2 = l2man::geodesic(f, g2);
    const auto scales = l2man::default_angle_scales();
    const l2man::AngleTrace trace = l2man::alexandrov_angle_numeric(s1, s2, scales);
    const double analytic = l2man::alexandrov_angle_analytic(s1, s2);

    std::ostringstream csv;
    csv << "scale,comparison_angle,analytic_angle,diff\n";
    csv.precision(17);
    for (std::size_t i = 0; i < trace.scales.size(); ++i)
        csv << trace.scales[i] << ',' << trace.angles[i] << ',' << analytic << ','
            << trace.angles[i] - analytic << '\n';
    write_text(out_path, csv.str());

    const double gap = std::abs(trace.extrapolated - analytic);
    std::fprintf(stderr, "extrapolated %.12f analytic %.12f gap %.3e\n", trace.extrapolated,
                 analytic, gap);
    return gap <= 1e-3 ? 0 : 1;
}

int run_decompose(const std::string& config_path, const std::string& out_path,
                  std::uint64_t seed, std::size_t parallel) {
    const Json cfg = read_json_file(config_path);
    if (cfg.contains("seed")) seed = cfg.at("seed").get<std::uint64_t>();

    l2man::L2Isometry gamma = [&] {
        if (cfg.contains("isometry")) return l2man::l2_isometry_from_json(cfg.at("isometry"));
        const l2man::ProbSpace space =
            l2man::prob_space_from_json(require_field(cfg, "space", config_path));
        const l2man::ManifoldSpec manifold =
            l2man::manifold_from_json(require_field(cfg, "manifold", config_path));
        l2man::Rng rng(seed);
        return l2man::random_l2_isometry(space, manifold, rng);
    }();

    l2man::Rng rng(seed + 17);
    const l2man::Point p = l2man::random_point(gamma.manifold, rng);
    const l2man::Point p_prime = probe_partner(gamma.manifold, p, rng);
    l2man::DecomposeOptions opts;
    opts.seed = seed;
    opts.parallel = parallel > 0;

    Json report{{"schema", "l2man/1"}, {"kind", "decompose"}};
    int exit_code = 0;
    try {
        const l2man::DecomposeReport rep =
            l2man::decompose(l2man::oracle_from(gamma), p, p_prime, opts);
        const bool phi_ok = rep.recovered.phi == gamma.phi;
        report["verdict"] = "RIGID";
        report["phi"] = rep.recovered.phi.perm();
        report["phi_matches_input"] = phi_ok;
        report["rho_residuals"] = rep.rho_residuals;
        report["holdout_residual"] = rep.holdout_residual;
        if (!phi_ok || rep.holdout_residual > opts.residual_tol) exit_code = 1;
    } catch (const l2man::NonRigid& e) {
        report["verdict"] = "NON_RIGID";
        report["reason"] = e.what();
        exit_code = 1;
    }
    write_report(out_path, report);
    return exit_code;
}

int run_eta_recover(const std::string& space_path, const std::string& manifold_path,
                    const std::string& oracle_name, const std::string& report_path,
                    std::uint64_t seed) {
    const l2man::ProbSpace space = l2man::prob_space_from_json(read_json_file(space_path));
    const l2man::ManifoldSpec manifold = l2man::manifold_from_json(read_json_file(manifold_path));
    l2man::Rng rng(seed);

    const std::string prefix = "builtin:";
    if (oracle_name.rfind(prefix, 0) != 0)
        throw l2man::ConfigParse("--oracle expects builtin:<name>, got " + oracle_name);
    const std::string name = oracle_name.substr(prefix.size());

    std::vector<double> planted;
    l2man::AffineOracle oracle = [&]() -> l2man::AffineOracle {
        if (name == "identity") return l2man::identity_affine_oracle(space, manifold);
        if (name == "constant") return l2man::constant_oracle(space, manifold);
        if (name == "restriction") {
            std::vector<std::size_t> first_half(space.size() / 2);
            std::iota(first_half.begin(), first_half.end(), 0);
            return l2man::restriction_oracle(space, manifold, first_half);
        }
        if (name == "deta") {
            std::uniform_real_distribution<double> d(0.0, 2.0);
            planted.resize(space.size());
            for (auto& e : planted) e = d(rng);
            return l2man::d_eta_oracle(space, manifold, l2man::DensityFn(planted));
        }
        if (name == "clipped")
            return l2man::clipped_oracle(space, manifold, l2man::random_point(manifold, rng),
                                         0.4);
        throw l2man::ConfigParse("unknown builtin oracle \"" + name + "\"");
    }();

    const l2man::Point p = l2man::random_point(manifold, rng);
    const l2man::Point p_prime = probe_partner(manifold, p, rng);
    const l2man::DensityFn eta = l2man::recover_eta(oracle, p, p_prime);

    std::vector<std::pair<l2man::Point, l2man::Point>> probe_pairs = {{p, p_prime}};
    for (int k = 0; k < 3; ++k) {
        const l2man::Point a = l2man::random_point(manifold, rng);
        probe_pairs.emplace_back(a, probe_partner(manifold, a, rng));
    }
    const double deviation = l2man::welldefinedness_check(oracle, probe_pairs);

    std::vector<std::pair<l2man::L2Function, l2man::L2Function>> samples;
    for (int k = 0; k < 50; ++k)
        samples.emplace_back(l2man::random_function(space, manifold, rng),
                             l2man::random_function(space, manifold, rng));
    const double identity_residual = l2man::verify_identity(oracle, eta, samples);
    const l2man::AdditivityReport add = l2man::additivity_and_bound(oracle, eta, rng);

    const bool affine = deviation <= l2man::kNotAffineThreshold &&
                        identity_residual <= 1e-8 && add.bound_holds;
    Json report{{"schema", "l2man/1"},
                {"kind", "eta-recover"},
                {"oracle", oracle_name},
                {"eta", eta.values()},
                {"welldefinedness_deviation", deviation},
                {"identity_residual", identity_residual},
                {"additivity_residual", add.max_additivity_residual},
                {"lipschitz_estimate", add.lipschitz_estimate},
                {"max_eta", add.max_eta},
                {"bound_holds", add.bound_holds},
                {"verdict", affine ? "AFFINE" : "NOT_AFFINE"}};
    if (!planted.empty()) report["planted_eta"] = planted;
    write_report(report_path, report);
    return affine ? 0 : 1;
}

// ---------------------------------------------------------------------------
// gallery cases; each reports its documented expected behavior as checks

bool coords_equal_exact(const l2man::Point& p, const l2man::Point& q) {
    if (p.coords.size() != q.coords.size() || p.factors.size() != q.factors.size())
        return false;
    if (p.coords.size() > 0 && !(p.coords.array() == q.coords.array()).all()) return false;
    for (std::size_t i = 0; i < p.factors.size(); ++i)
        if (!coords_equal_exact(p.factors[i], q.factors[i])) return false;
    return true;
}

bool functions_equal_exact(const l2man::L2Function& f, const l2man::L2Function& g) {
    if (f.points.size() != g.points.size()) return false;
    for (std::size_t i = 0; i < f.points.size(); ++i)
        if (!coords_equal_exact(f.points[i], g.points[i])) return false;
    return true;
}

int run_gallery(const std::string& which, std::size_t m, const std::string& report_path,
                std::uint64_t seed) {
    l2man::Rng rng(seed);
    const l2man::ManifoldSpec sphere = l2man::ManifoldSpec::sphere(2);
    Json checks = Json::array();
    auto push = [&checks](const std::string& name, double value, const std::string& cmp,
                          double threshold) {
        const bool pass = cmp == "<=" ? value <= threshold : value >= threshold;
        checks.push_back(Json{{"name", name},
                              {"value", value},
                              {"comparator", cmp},
                              {"threshold", threshold},
                              {"pass", pass}});
        return pass;
    };

    bool all = true;
    std::string verdict = "OK";

    if (which == "interleave") {
        const l2man::ProbSpace grid = l2man::uniform_interval(m);
        const l2man::ManifoldSpec target = l2man::ManifoldSpec::product({sphere, sphere});
        double worst = 0.0;
        int roundtrip_failures = 0;
        for (int k = 0; k < 25; ++k) {
            const auto f = l2man::random_function(grid, target, rng);
            const auto g = l2man::random_function(grid, target, rng);
            const auto fi = l2man::interleave(f, 2);
            const auto gi = l2man::interleave(g, 2);
            worst = std::max(worst, std::abs(l2man::d_l2(f, g) - l2man::d_l2(fi, gi)));
            if (!functions_equal_exact(l2man::deinterleave(fi, 2), f)) ++roundtrip_failures;
        }
        all &= push("distance_preservation_max_gap", worst, "<=", 1e-12);
        all &= push("roundtrip_failures", roundtrip_failures, "<=", 0.0);
    } else if (which == "hilbert") {
        l2man::HilbertWitness hw = l2man::hilbert_nonrigid(m);
        double validation = 0.0;
        try {
            l2man::validate_oracle(hw.oracle, rng, 30, 1e-10);
        } catch (const l2man::NotAnIsometry&) {
            validation = 1.0;
        }
        std::vector<std::size_t> first_half(m / 2);
        std::iota(first_half.begin(), first_half.end(), 0);
        std::vector<std::pair<l2man::L2Function, l2man::L2Function>> probes;
        probes.emplace_back(hw.e, hw.zero);
        while (probes.size() < 2 * m)
            probes.emplace_back(l2man::random_function(hw.oracle.space, hw.oracle.manifold, rng),
                                l2man::random_function(hw.oracle.space, hw.oracle.manifold, rng));
        const auto loc = l2man::localization_check(hw.oracle, first_half, probes);
        all &= push("isometry_validation", validation, "<=", 0.0);
        all &= push("localization_witness_found", loc.witness.has_value() ? 1.0 : 0.0, "<=", 0.0);
        all &= push("probe_lhs", loc.first_probe_lhs, "<=", 1.0 + 1e-12);
        all &= push("probe_lhs", loc.first_probe_lhs, ">=", 1.0 - 1e-12);
        all &= push("probe_rhs_max", loc.first_probe_rhs_max, "<=", 0.5 + 1e-12);
        verdict = "NON_RIGID";
    } else if (which == "r1") {
        const l2man::IsometryOracle r1 = l2man::r1_nonrigid(sphere, m);
        double validation = 0.0;
        try {
            l2man::validate_oracle(r1, rng, 30, 1e-10);
        } catch (const l2man::NotAnIsometry&) {
            validation = 1.0;
        }
        double rejected = 0.0;
        try {
            const auto p = l2man::random_point(r1.manifold, rng);
            l2man::decompose(r1, p, probe_partner(r1.manifold, p, rng));
        } catch (const l2man::NonRigid&) {
            rejected = 1.0;
        }
        l2man::Point xy;
        xy.factors.push_back(l2man::random_point(sphere, rng));
        xy.factors.push_back(l2man::random_point(sphere, rng));
        const auto image = r1.map(l2man::constant_function(r1.space, r1.manifold, xy));
        l2man::L2Function expected = image;
        for (std::size_t i = 0; i < m; ++i) {
            const l2man::Point& v = (i < m / 2) ? xy.factors[0] : xy.factors[1];
            expected.points[i].factors = {v, v};
        }
        all &= push("isometry_validation", validation, "<=", 0.0);
        all &= push("decompose_raises_nonrigid", rejected, ">=", 1.0);
        all &= push("constant_action_two_block_exact",
                    functions_equal_exact(image, expected) ? 0.0 : 1.0, "<=", 0.0);
        verdict = "NON_RIGID";
    } else if (which == "product") {
        const l2man::ProbSpace grid = l2man::uniform_interval(m);
        const l2man::ManifoldSpec target =
            l2man::ManifoldSpec::product({sphere, l2man::ManifoldSpec::hyperbolic(2)});
        double worst_dist = 0.0;
        int roundtrip_failures = 0;
        for (int k = 0; k < 25; ++k) {
            const auto f = l2man::random_function(grid, target, rng);
            const auto g = l2man::random_function(grid, target, rng);
            const auto [f1, f2] = l2man::product_split(f);
            const auto [g1, g2] = l2man::product_split(g);
            const double lhs = l2man::d_l2(f, g) * l2man::d_l2(f, g);
            const double rhs = l2man::d_l2(f1, g1) * l2man::d_l2(f1, g1) +
                               l2man::d_l2(f2, g2) * l2man::d_l2(f2, g2);
            worst_dist = std::max(worst_dist, std::abs(lhs - rhs));
            if (!functions_equal_exact(l2man::product_glue(f1, f2), f)) ++roundtrip_failures;
        }
        all &= push("distance_identity_max_gap", worst_dist, "<=", 1e-12);
        all &= push("roundtrip_failures", roundtrip_failures, "<=", 0.0);
    } else {
        throw l2man::ConfigParse("unknown gallery case \"" + which + "\"");
    }

    Json report{{"schema", "l2man/1"}, {"kind", "gallery"},     {"case", which},
                {"m", m},              {"verdict", verdict},    {"all_pass", all},
                {"checks", checks}};
    write_report(report_path, report);
    return all ? 0 : 1;
}

int run_suite_cmd(const std::string& out_path, std::uint64_t seed) {
    const l2man::SuiteReport report = l2man::run_suite(seed);
    for (const auto& cr : report.criteria)
        std::fprintf(stderr, "[%s] criterion %d: %s\n", cr.pass ? "PASS" : "FAIL", cr.id,
                     cr.title.c_str());
    write_report(out_path, l2man::to_json(report));
    return report.all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Metric geometry of finite L2 spaces with manifold targets"};
    app.require_subcommand(1);

    std::string config_path, out_path, space_path, manifold_path, oracle_name, gallery_case;
    std::uint64_t seed = 1;
    std::size_t parallel = 0, grid_m = 8;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* c = cmd->add_option("--config", config_path, "JSON config path");
        if (needs_config) c->required();
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--parallel", parallel, "worker count for reentrant oracles");
    };

    add_common(app.add_subcommand("space", "validate a probability space config"), true);
    add_common(app.add_subcommand("angle", "angle convergence trace (CSV)"), true);
    add_common(app.add_subcommand("decompose", "recover (phi, rho) from an isometry"), true);

    auto* eta = app.add_subcommand("eta-recover", "recover the density of an affine map");
    eta->add_option("--space", space_path, "ProbSpace JSON path")->required();
    eta->add_option("--manifold", manifold_path, "ManifoldSpec JSON path")->required();
    eta->add_option("--oracle", oracle_name, "builtin:<name>")->required();
    eta->add_option("--report", out_path, "report JSON path")->required();
    eta->add_option("--seed", seed, "RNG seed");

    auto* gallery = app.add_subcommand("gallery", "explicit isometries and counterexamples");
    auto* gallery_run = gallery->add_subcommand("run", "run one gallery case");
    gallery_run->add_option("--case", gallery_case, "interleave|hilbert|r1|product")->required();
    gallery_run->add_option("--m", grid_m, "grid size");
    gallery_run->add_option("--report", out_path, "report JSON path");
    gallery_run->add_option("--seed", seed, "RNG seed");
    gallery->require_subcommand(1);

    auto* suite = app.add_subcommand("suite", "full acceptance battery");
    suite->add_option("--out", out_path, "report JSON path");
    suite->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("space")) return run_space(config_path, out_path);
        if (app.got_subcommand("angle")) return run_angle(config_path, out_path, seed);
        if (app.got_subcommand("decompose"))
            return run_decompose(config_path, out_path, seed, parallel);
        if (app.got_subcommand("eta-recover"))
            return run_eta_recover(space_path, manifold_path, oracle_name, out_path, seed);
        if (app.got_subcommand("gallery"))
            return run_gallery(gallery_case, grid_m, out_path, seed);
        if (app.got_subcommand("suite")) return run_suite_cmd(out_path, seed);
    } catch (const l2man::ConfigParse& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const l2man::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
