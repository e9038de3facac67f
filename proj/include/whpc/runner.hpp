#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "whpc/config.hpp"
#include "whpc/diffusion.hpp"
#include "whpc/errors.hpp"
#include "whpc/expansion.hpp"
#include "whpc/field.hpp"
#include "whpc/index_set.hpp"
#include "whpc/io.hpp"
#include "whpc/parametric.hpp"
#include "whpc/poly_identity.hpp"
#include "whpc/rng.hpp"
#include "whpc/verify.hpp"
#include "whpc/weights.hpp"

namespace whpc {

inline constexpr const char* version_string = "whpc 0.1.0";

struct run_options {
    std::string config_path;
    std::string out_dir;                ///< overrides output.dir when nonempty
    std::optional<std::uint64_t> seed;  ///< overrides run.seed when set
    int jobs = 1;
};

namespace detail {

inline std::string fnv1a64_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Simple key: value report document.
class report_doc {
public:
    void add(const std::string& key, const std::string& value) { lines_.emplace_back(key, value); }
    void add(const std::string& key, double value) { add(key, format_float(value)); }
    void add(const std::string& key, std::uint64_t value) { add(key, std::to_string(value)); }
    void add(const std::string& key, int value) { add(key, std::to_string(value)); }
    void add(const std::string& key, bool value) { add(key, value ? std::string("pass") : std::string("fail")); }

    void write(const std::string& path) const {
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot open report file " + path);
        for (const auto& [k, v] : lines_) os << k << ": " << v << "\n";
    }

private:
    std::vector<std::pair<std::string, std::string>> lines_;
};

inline weight_model model_from_config(const experiment_config& cfg) {
    const std::string kind = cfg.get_string("b.kind");
    const double p = cfg.get_double("weights.p");
    const double xi = cfg.get_double("weights.xi");
    const int M = static_cast<int>(cfg.get_int("weights.M"));
    try {
        if (kind == "power")
            return weight_model(power_law_b{cfg.get_double("b.c0"), cfg.get_double("b.theta")}, p,
                                xi, M);
        if (kind == "explicit") return weight_model(cfg.get_double_list("b.values"), p, xi, M);
    } catch (const std::domain_error& e) {
        throw config_error(std::string("weight model rejected: ") + e.what());
    }
    throw config_error("b.kind must be 'power' or 'explicit'");
}

inline periodic_grid grid_from_config(const experiment_config& cfg) {
    try {
        return periodic_grid(static_cast<int>(cfg.get_int("space.dim", 1)),
                             static_cast<int>(cfg.get_int("space.n")));
    } catch (const std::domain_error& e) {
        throw config_error(std::string("grid rejected: ") + e.what());
    }
}

inline periodic_field named_field(const std::string& kind, const periodic_grid& grid) {
    if (kind.rfind("file:", 0) == 0) {
        auto f = read_binary(kind.substr(5));
        if (f.grid() != grid)
            throw config_error("field file '" + kind.substr(5) + "' does not match the grid");
        return f;
    }
    auto pick1 = [&](const std::string& name) -> std::function<double(double)> {
        if (name == "zero") return [](double) { return 0.0; };
        if (name == "sin2pix") return [](double x) { return std::sin(2.0 * M_PI * x); };
        if (name == "cos4pix") return [](double x) { return std::cos(4.0 * M_PI * x); };
        if (name == "sincos")
            return [](double x) { return std::sin(2.0 * M_PI * x) + 0.3 * std::cos(4.0 * M_PI * x); };
        throw config_error("unknown analytic field '" + name + "'");
    };
    if (grid.d == 1) return periodic_field::from_function(grid, pick1(kind));
    auto f1 = pick1(kind);
    return periodic_field::from_function(grid, [&](double x1, double) { return f1(x1); });
}

inline solver_config solver_from_config(const experiment_config& cfg) {
    solver_config sc;
    sc.rel_tol = cfg.get_double("solver.rel_tol", 1e-10);
    sc.max_iter = static_cast<int>(cfg.get_int("solver.max_iter", 10000));
    return sc;
}

inline parametric_problem problem_from_config(const experiment_config& cfg) {
    const auto grid = grid_from_config(cfg);
    if (grid.d != 1) throw config_error("expansion runs require space.dim = 1");
    auto f = named_field(cfg.get_string("rhs.kind"), grid);
    try {
        return parametric_problem(trig_basis(cfg.get_double("basis.t")), model_from_config(cfg), f,
                                  static_cast<int>(cfg.get_int("expansion.J")),
                                  cfg.get_double("expansion.s_out", 1.0), solver_from_config(cfg));
    } catch (const std::domain_error& e) {
        throw config_error(std::string("problem rejected: ") + e.what());
    }
}

inline estimator_spec estimator_from_config(const experiment_config& cfg, std::uint64_t seed) {
    estimator_spec est;
    const std::string kind = cfg.get_string("estimator.kind", "tensor");
    if (kind == "tensor") {
        est.kind = estimator_spec::kind_t::tensor;
        est.pad = static_cast<int>(cfg.get_int("estimator.pad", 2));
    } else if (kind == "mc") {
        est.kind = estimator_spec::kind_t::monte_carlo;
        est.samples = cfg.get_u64("estimator.samples", 0);
        if (est.samples == 0) throw config_error("estimator.kind = mc requires estimator.samples");
    } else {
        throw config_error("estimator.kind must be 'tensor' or 'mc'");
    }
    est.seed = seed;
    return est;
}

inline void write_manifest(const std::filesystem::path& dir, const std::string& subcommand,
                           const experiment_config& cfg, std::uint64_t seed) {
    std::ofstream os(dir / "manifest.txt");
    os << "manifest.version: 1\n";
    os << "tool: " << version_string << "\n";
    os << "subcommand: " << subcommand << "\n";
    os << "config.hash: " << fnv1a64_hex(cfg.raw_text()) << "\n";
    os << "seed: " << seed << "\n";
    os << "schema.lambda: nu,c_weight,beta_weight\n";
    os << "schema.coeffs: nu,c_weight,beta_weight,norm_X\n";
    os << "schema.errors: N,error,m_lambda,d_lambda\n";
    os << "schema.field: x[,y],re,im\n";
    os << "float.format: %.17g\n";
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    os << "timestamp: " << stamp << "\n";
}

/// Deterministic trigonometric polynomial with L∞ norm at most cap.
inline periodic_field random_trig_field(const periodic_grid& grid, const counter_rng& rng,
                                        std::uint64_t base, double cap, bool zero_mean) {
    const int max_k = 3;
    std::vector<double> cs(2 * max_k + 1, 0.0);
    double total = 0.0;
    for (std::size_t i = zero_mean ? 1 : 0; i < cs.size(); ++i) {
        cs[i] = rng.normal(base + i);
        total += std::abs(cs[i]);
    }
    const double scale = total > 0.0 ? cap / total : 0.0;
    std::vector<double> v(grid.point_count());
    for (std::size_t p = 0; p < v.size(); ++p) {
        const double x = static_cast<double>(grid.d == 1 ? p : p / grid.n) / grid.n;
        double s = cs[0];
        for (int k = 1; k <= max_k; ++k)
            s += cs[2 * k - 1] * std::sin(2.0 * M_PI * k * x) +
                 cs[2 * k] * std::cos(2.0 * M_PI * k * x);
        v[p] = scale * s;
    }
    return periodic_field::from_real_samples(grid, v);
}

inline void write_index_csv(const std::filesystem::path& path, const index_set& set,
                            const surrogate_weights& w) {
    std::ofstream os(path);
    os << "nu,c_weight,beta_weight\n";
    for (std::size_t i = 0; i < set.size(); ++i) {
        const double beta = beta_weight(set.member(i), w.M(), w.rho());
        os << set.member(i).to_string() << ',' << format_float(set.c_value(i)) << ','
           << format_float(beta) << '\n';
    }
}

struct rates_outcome {
    double slope = 0.0;
    bool stechkin_ok = false;
    bool growth_ok = true;
    bool growth_applicable = false;
    bool stabilized = false;
    summability_summary summary;
};

} // namespace detail

/// `indexset`: build Λ_N and emit the CSV plus metrics.  Returns 0 on pass,
/// 2 when a numerical property fails.
inline int run_indexset(const experiment_config& cfg, const std::filesystem::path& out,
                        std::uint64_t seed) {
    const auto N = static_cast<std::size_t>(cfg.get_int("indexset.N"));
    const auto dim_cap = static_cast<std::uint32_t>(
        cfg.get_int("indexset.dim_cap", cfg.get_int("expansion.J", 0)));
    if (dim_cap == 0) throw config_error("indexset.dim_cap (or expansion.J) is required");
    auto model = detail::model_from_config(cfg);
    surrogate_weights w(admissible_weights(model), 10 * dim_cap);
    auto set = build_index_set(N, w, dim_cap);
    detail::write_index_csv(out / "lambda.csv", set, w);

    const auto metrics = index_set_metrics(set);
    const bool closed = check_downward_closed(set);
    const double q = model.p() / (2.0 - model.p());
    const auto stechkin = stechkin_check(set.c_values(), q, N / 2);

    detail::report_doc report;
    report.add("subcommand", std::string("indexset"));
    report.add("set.size", static_cast<std::uint64_t>(set.size()));
    report.add("set.m", static_cast<std::uint64_t>(metrics.m));
    report.add("set.d", static_cast<std::uint64_t>(metrics.d));
    report.add("weights.K", w.K());
    report.add("weights.log_c_beta", w.log_c_beta());
    report.add("check.downward_closed", closed);
    report.add("stechkin.applicable", stechkin.applicable ? "yes" : "no");
    report.add("stechkin.lhs", stechkin.lhs);
    report.add("stechkin.rhs", stechkin.rhs);
    report.add("stechkin.holds", stechkin.holds);
    report.add("seed", seed);
    report.write((out / "report.txt").string());
    return (closed && (!stechkin.applicable || stechkin.holds)) ? 0 : 2;
}

/// `solve`: one PDE solve, field emitted as CSV and binary.
inline int run_solve(const experiment_config& cfg, const std::filesystem::path& out,
                     std::uint64_t seed) {
    const auto grid = detail::grid_from_config(cfg);
    auto f = detail::named_field(cfg.get_string("rhs.kind"), grid);
    auto a = detail::named_field(cfg.get_string("solve.a", "zero"), grid);
    solve_stats stats;
    int rc = 0;
    detail::report_doc report;
    report.add("subcommand", std::string("solve"));
    report.add("seed", seed);
    try {
        auto u = solve_diffusion(a, f, detail::solver_from_config(cfg), &stats);
        write_csv(u, (out / "solution.csv").string());
        write_binary(u, (out / "solution.bin").string());
        report.add("solver.iterations", stats.iterations);
        report.add("solver.residual", stats.residual);
        report.add("solution.h1_norm", hnorm(u, 1.0));
        report.add("solution.linf_norm", linf_norm(u));
        report.add("solution.real", u.is_real() ? "yes" : "no");
    } catch (const degeneracy_error& e) {
        report.add("solver.error", std::string(e.what()));
        rc = 2;
    } catch (const convergence_error& e) {
        report.add("solver.error", std::string(e.what()));
        report.add("solver.residual", e.final_residual);
        rc = 2;
    }
    report.write((out / "report.txt").string());
    return rc;
}

/// `rates`: reference expansion, error curve, fitted slope, summability report.
inline int run_rates(const experiment_config& cfg, const std::filesystem::path& out,
                     std::uint64_t seed, int jobs) {
    auto problem = detail::problem_from_config(cfg);
    const auto ref_size = static_cast<std::size_t>(cfg.get_int("expansion.ref_size"));
    const auto J = static_cast<std::uint32_t>(problem.J);
    surrogate_weights w(admissible_weights(problem.model), 10 * J);
    auto ref = build_index_set(ref_size, w, J);
    auto est = detail::estimator_from_config(cfg, seed);
    auto expansion = compute_expansion(problem, ref, est, jobs);

    {
        std::ofstream os(out / "coeffs.csv");
        os << "nu,c_weight,beta_weight,norm_X\n";
        for (std::size_t i = 0; i < ref.size(); ++i) {
            const double beta = beta_weight(ref.member(i), w.M(), w.rho());
            os << ref.member(i).to_string() << ',' << format_float(ref.c_value(i)) << ','
               << format_float(beta) << ',' << format_float(expansion.coefficient(i).norm_x)
               << '\n';
        }
    }

    std::vector<std::size_t> Ns;
    for (long long n : cfg.get_int_list("expansion.Ns")) {
        if (n < 1 || static_cast<std::size_t>(n) > ref_size)
            throw config_error("expansion.Ns entries must lie in [1, ref_size]");
        Ns.push_back(static_cast<std::size_t>(n));
    }
    auto curve = error_curve(expansion, Ns);
    {
        std::ofstream os(out / "errors.csv");
        os << "N,error,m_lambda,d_lambda\n";
        for (const auto& [N, err] : curve) {
            index_set prefix(std::vector<multi_index>(ref.members().begin(),
                                                      ref.members().begin() + N),
                             std::vector<double>(ref.c_values().begin(), ref.c_values().begin() + N));
            const auto pm = index_set_metrics(prefix);
            os << N << ',' << format_float(err) << ',' << pm.m << ',' << pm.d << '\n';
        }
    }

    detail::rates_outcome outcome;
    std::vector<std::pair<double, double>> fit_pts;
    for (const auto& [N, err] : curve)
        if (err > 0.0) fit_pts.emplace_back(static_cast<double>(N), err);
    const bool slope_available = fit_pts.size() >= 3;
    if (slope_available) outcome.slope = fit_slope(fit_pts);

    const double p = problem.model.p();
    outcome.summary = summability_report(expansion, p, problem.model.M(), w.rho());
    outcome.stabilized = outcome.summary.weighted_tail_fraction <= 0.05 &&
                         outcome.summary.lp_tail_fraction <= 0.05;
    outcome.stechkin_ok = stechkin_check(ref.c_values(), p / (2.0 - p), ref_size / 2).holds;
    if (problem.model.is_power_law()) {
        outcome.growth_applicable = true;
        const double r1 = problem.model.power_law()->theta * (2.0 - p) / 2.0;
        const double rho1 = w.rho().rho(1);
        const double C = std::max(rho1, 1.0 / rho1);
        outcome.growth_ok = growth_bound_check(ref, w.rho(), C, w.K(), r1).pass;
    }

    detail::report_doc report;
    report.add("subcommand", std::string("rates"));
    report.add("seed", seed);
    report.add("ref.size", static_cast<std::uint64_t>(ref.size()));
    const auto metrics = index_set_metrics(ref);
    report.add("ref.m", static_cast<std::uint64_t>(metrics.m));
    report.add("ref.d", static_cast<std::uint64_t>(metrics.d));
    report.add("weights.K", w.K());
    report.add("weights.log_c_beta", w.log_c_beta());
    report.add("fit.points", static_cast<std::uint64_t>(fit_pts.size()));
    if (slope_available) report.add("fit.slope", outcome.slope);
    report.add("theoretical.exponent", 1.0 / p - 0.5);
    for (const auto& row : outcome.summary.rows) {
        const std::string prefix = "summability." + std::to_string(row.prefix);
        report.add(prefix + ".weighted_sum", row.weighted_sum);
        report.add(prefix + ".lp_sum", row.lp_sum);
        report.add(prefix + ".tail_exponent", row.tail_exponent);
    }
    report.add("summability.weighted_tail_fraction", outcome.summary.weighted_tail_fraction);
    report.add("summability.lp_tail_fraction", outcome.summary.lp_tail_fraction);
    report.add("summability.stabilized", outcome.stabilized);
    report.add("check.stechkin", outcome.stechkin_ok);
    if (outcome.growth_applicable) report.add("check.growth_bound", outcome.growth_ok);
    report.write((out / "report.txt").string());

    return (outcome.stechkin_ok && outcome.growth_ok) ? 0 : 2;
}

/// `verify`: moment closed form vs monte carlo, perturbation sweep, growth
/// bound, strip probes.
inline int run_verify(const experiment_config& cfg, const std::filesystem::path& out,
                      std::uint64_t seed) {
    detail::report_doc report;
    report.add("subcommand", std::string("verify"));
    report.add("seed", seed);
    bool pass = true;

    auto model = detail::model_from_config(cfg);
    const auto J = static_cast<int>(cfg.get_int("expansion.J"));
    std::vector<double> b_list;
    for (int j = 1; j <= J; ++j) {
        const double bj = model.b(static_cast<std::uint32_t>(j));
        if (bj > 0.0) b_list.push_back(bj);
    }

    const double alpha_tilde = cfg.get_double("verify.alpha_tilde", 1.0);
    const double closed = exp_moment_closed(b_list, alpha_tilde);
    auto mc = exp_moment_mc(b_list, alpha_tilde, 2.0, cfg.get_u64("verify.mc_samples", 1000000),
                            seed);
    const bool moment_ok = std::abs(mc.estimate - closed) <= 3.0 * mc.std_error;
    pass = pass && moment_ok;
    report.add("moment.closed", closed);
    report.add("moment.mc", mc.estimate);
    report.add("moment.mc_stderr", mc.std_error);
    report.add("moment.within_3_sigma", moment_ok);

    const auto grid = detail::grid_from_config(cfg);
    const auto trials = static_cast<int>(cfg.get_int("verify.perturbation_trials", 100));
    const counter_rng rng(seed);
    int violations = 0;
    double worst_margin = 0.0;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t base = static_cast<std::uint64_t>(t) * 64;
        auto a = detail::random_trig_field(grid, rng, base, 1.0, false);
        auto a_delta = detail::random_trig_field(grid, rng, base + 16, 1.0, false);
        auto f = detail::random_trig_field(grid, rng, base + 32, 1.0, true);
        auto f_delta = detail::random_trig_field(grid, rng, base + 48, 1.0, true);
        auto rep = perturbation_check(a, a_delta, f, f_delta, detail::solver_from_config(cfg));
        if (!rep.holds) ++violations;
        if (rep.rhs > 0.0) worst_margin = std::max(worst_margin, rep.lhs / rep.rhs);
    }
    pass = pass && violations == 0;
    report.add("perturbation.trials", trials);
    report.add("perturbation.violations", violations);
    report.add("perturbation.max_lhs_over_rhs", worst_margin);

    const auto set_size =
        static_cast<std::size_t>(cfg.get_int("indexset.N", cfg.get_int("expansion.ref_size", 200)));
    surrogate_weights w(admissible_weights(model), 10 * static_cast<std::uint32_t>(J));
    auto set = build_index_set(set_size, w, static_cast<std::uint32_t>(J));
    const double p = model.p();
    auto stechkin = stechkin_check(set.c_values(), p / (2.0 - p), set_size / 2);
    pass = pass && (!stechkin.applicable || stechkin.holds);
    report.add("stechkin.holds", stechkin.holds);
    if (model.is_power_law()) {
        const double r1 = model.power_law()->theta * (2.0 - p) / 2.0;
        const double rho1 = w.rho().rho(1);
        auto growth = growth_bound_check(set, w.rho(), std::max(rho1, 1.0 / rho1), w.K(), r1);
        pass = pass && growth.pass;
        report.add("growth.pass", growth.pass);
        if (!growth.pass)
            report.add("growth.first_violation", static_cast<std::uint64_t>(growth.first_violation));
    }

    if (grid.d == 1 && cfg.has("basis.t")) {
        auto problem = detail::problem_from_config(cfg);
        holomorphy_params params;
        params.C = cfg.get_double("verify.C", 1e4);
        params.alpha = cfg.get_double("verify.alpha", 1.0);
        params.tau = cfg.get_double("verify.tau", 1.0);
        auto probe =
            strip_bound_probe(problem, params, static_cast<int>(cfg.get_int("verify.probes", 200)),
                              seed + 1);
        report.add("strip.probes", probe.probes);
        report.add("strip.violations", probe.violations);
        report.add("strip.out_of_strip", probe.out_of_strip);
        report.add("strip.solver_failures", probe.solver_failures);
        report.add("strip.max_ratio", probe.max_ratio);
    }

    report.add("verify.pass", pass);
    report.write((out / "report.txt").string());
    return pass ? 0 : 2;
}

/// `identity`: pinned weighted-identity cases plus a randomized battery.
inline int run_identity(const experiment_config& cfg, const std::filesystem::path& out,
                        std::uint64_t seed) {
    detail::report_doc report;
    report.add("subcommand", std::string("identity"));
    report.add("seed", seed);
    bool pass = true;
    double worst = 0.0;

    auto check_case = [&](const std::string& name, const poly_spec& u, int M,
                          std::span<const double> rho) {
        auto sides = weighted_identity_check(u, M, rho);
        const double scale = std::max({1.0, std::abs(sides.lhs), std::abs(sides.rhs)});
        const double rel = std::abs(sides.lhs - sides.rhs) / scale;
        worst = std::max(worst, rel);
        if (rel > 1e-10) pass = false;
        report.add("case." + name + ".lhs", sides.lhs);
        report.add("case." + name + ".rhs", sides.rhs);
        report.add("case." + name + ".rel_gap", rel);
        return sides;
    };

    {
        std::vector<std::uint32_t> e2{2};
        poly_spec u(1, {{multi_index::from_exponents(e2), 1.0}});
        const double rho[] = {1.0};
        auto sides = check_case("squared", u, 2, rho);
        if (std::abs(sides.lhs - 9.0) > 1e-12 || std::abs(sides.rhs - 9.0) > 1e-12) pass = false;
    }
    {
        poly_spec u(2, {{multi_index{}, 1.0}});
        const double rho[] = {0.5, 1.5};
        check_case("constant", u, 3, rho);
    }
    {
        std::vector<std::uint32_t> e11{1, 1};
        poly_spec u(2, {{multi_index::from_exponents(e11), 1.0}});
        const double rho[] = {1.0, 1.0};
        check_case("cross", u, 1, rho);
    }

    const auto trials = static_cast<int>(cfg.get_int("identity.trials", 50));
    const counter_rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t base = static_cast<std::uint64_t>(t) * 64;
        const int dims = 1 + static_cast<int>(rng.bits(base) % 3);
        const int nterms = 1 + static_cast<int>(rng.bits(base + 1) % 5);
        std::vector<std::pair<multi_index, double>> terms;
        for (int k = 0; k < nterms; ++k) {
            std::vector<std::uint32_t> exps(static_cast<std::size_t>(dims));
            std::uint32_t budget = 6;
            for (int j = 0; j < dims; ++j) {
                const std::uint32_t e =
                    static_cast<std::uint32_t>(rng.bits(base + 2 + 8 * k + j) % (budget + 1));
                exps[j] = e;
                budget -= e;
            }
            terms.emplace_back(multi_index::from_exponents(exps),
                               2.0 * rng.uniform(base + 2 + 8 * k + 6) - 1.0);
        }
        poly_spec u(dims, std::move(terms));
        std::vector<double> rho(static_cast<std::size_t>(dims));
        for (int j = 0; j < dims; ++j)
            rho[j] = 0.05 + 1.95 * rng.uniform(base + 50 + j);
        const int M = 1 + static_cast<int>(rng.bits(base + 60) % 4);
        auto sides = weighted_identity_check(u, M, rho);
        const double scale = std::max({1.0, std::abs(sides.lhs), std::abs(sides.rhs)});
        const double rel = std::abs(sides.lhs - sides.rhs) / scale;
        worst = std::max(worst, rel);
        if (rel > 1e-10) pass = false;
    }
    report.add("random.trials", trials);
    report.add("max_relative_gap", worst);
    report.add("identity.pass", pass);
    report.write((out / "report.txt").string());
    return pass ? 0 : 2;
}

/// Dispatch a subcommand; returns the process exit code (0 pass, 2 numerical
/// property violation, 3 config/precondition failure).
inline int run_subcommand(const std::string& subcommand, const run_options& options) {
    try {
        auto cfg = experiment_config::parse_file(options.config_path);
        const std::uint64_t seed = options.seed.value_or(cfg.get_u64("run.seed", 0));
        const std::filesystem::path out =
            options.out_dir.empty() ? std::filesystem::path(cfg.get_string("output.dir", "out"))
                                    : std::filesystem::path(options.out_dir);
        std::filesystem::create_directories(out);
        detail::write_manifest(out, subcommand, cfg, seed);
        if (subcommand == "indexset") return run_indexset(cfg, out, seed);
        if (subcommand == "solve") return run_solve(cfg, out, seed);
        if (subcommand == "rates") return run_rates(cfg, out, seed, options.jobs);
        if (subcommand == "verify") return run_verify(cfg, out, seed);
        if (subcommand == "identity") return run_identity(cfg, out, seed);
        std::cerr << "unknown subcommand '" << subcommand << "'\n";
        return 3;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const divergence_error& e) {
        std::cerr << "precondition failure: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "precondition failure: " << e.what() << "\n";
        return 3;
    } catch (const property_violation& e) {
        std::cerr << "property violation: " << e.what() << "\n";
        return 2;
    }
}

} // namespace whpc
