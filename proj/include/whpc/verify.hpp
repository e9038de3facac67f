#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "whpc/diffusion.hpp"
#include "whpc/errors.hpp"
#include "whpc/field.hpp"
#include "whpc/index_set.hpp"
#include "whpc/parametric.hpp"
#include "whpc/rng.hpp"

namespace whpc {

/// Candidate constants for the exponential growth bound of the solution map.
struct holomorphy_params {
    double C = 1.0;
    double alpha = 1.0;
    double tau = 0.0;   ///< must lie in [0, 2)
    double theta = 1.0; ///< strip width, informational
};

/// Exact Gaussian integral of exp(α̃ Σ_j b_j² y_j²): Π_j (1 − 2 α̃ b_j²)^{-1/2}.
inline double exp_moment_closed(std::span<const double> b, double alpha_tilde) {
    double prod = 1.0;
    for (std::size_t j = 0; j < b.size(); ++j) {
        const double q = 2.0 * alpha_tilde * b[j] * b[j];
        if (q >= 1.0)
            throw divergence_error("exp_moment_closed: integral diverges at j = " +
                                   std::to_string(j + 1) + " (2*alpha*b_j^2 = " +
                                   std::to_string(q) + ")");
        prod *= 1.0 / std::sqrt(1.0 - q);
    }
    return prod;
}

struct mc_estimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    bool divergence_flag = false; ///< set when std_error overtakes the estimate
};

/// Monte Carlo estimate of ∫ exp(α (Σ_j b_j² y_j²)^{τ/2}) dγ with a seeded
/// counter stream; for τ = 2 comparable to the closed form.
inline mc_estimate exp_moment_mc(std::span<const double> b, double alpha, double tau,
                                 std::uint64_t n, std::uint64_t seed) {
    if (n < 1000) throw std::domain_error("exp_moment_mc: need at least 1000 samples");
    if (!(tau > 0.0 && tau <= 2.0)) throw std::domain_error("exp_moment_mc: tau must lie in (0, 2]");
    const counter_rng rng(seed);
    const std::uint64_t dims = b.size();
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t s = 0; s < n; ++s) {
        double q = 0.0;
        for (std::uint64_t j = 0; j < dims; ++j) {
            const double y = rng.normal(s * dims + j);
            q += b[j] * b[j] * y * y;
        }
        const double v = std::exp(alpha * std::pow(q, tau / 2.0));
        sum += v;
        sum_sq += v * v;
    }
    mc_estimate out;
    out.samples = n;
    out.estimate = sum / static_cast<double>(n);
    const double variance =
        std::max(0.0, sum_sq / static_cast<double>(n) - out.estimate * out.estimate);
    out.std_error = std::sqrt(variance / static_cast<double>(n));
    out.divergence_flag = out.std_error > out.estimate;
    return out;
}

struct perturbation_report {
    double lhs = 0.0;       ///< ‖S(e^a, f) − S(e^{a_δ}, f_δ)‖_{Ḣ¹}
    double rhs = 0.0;       ///< data-perturbation bound
    double b_min = 0.0;     ///< min Re e^a on the grid
    double b_delta_min = 0.0;
    bool holds = false;
};

/// Constant-free solver perturbation inequality: the Ḣ¹ distance of two
/// solves is bounded by the weighted data distances.
inline perturbation_report perturbation_check(const periodic_field& a,
                                              const periodic_field& a_delta,
                                              const periodic_field& f,
                                              const periodic_field& f_delta,
                                              const solver_config& cfg = {}) {
    if (a.grid() != a_delta.grid() || a.grid() != f.grid() || a.grid() != f_delta.grid())
        throw std::domain_error("perturbation_check: grid mismatch");
    perturbation_report rep;
    auto exp_a = pointwise_exp(a);
    auto exp_ad = pointwise_exp(a_delta);
    rep.b_min = std::numeric_limits<double>::infinity();
    rep.b_delta_min = std::numeric_limits<double>::infinity();
    for (const auto& v : exp_a.samples()) rep.b_min = std::min(rep.b_min, v.real());
    for (const auto& v : exp_ad.samples()) rep.b_delta_min = std::min(rep.b_delta_min, v.real());
    if (!(rep.b_min > 0.0) || !(rep.b_delta_min > 0.0))
        throw degeneracy_error("perturbation_check: coefficients must have positive real part");

    auto u = solve_diffusion(a, f, cfg);
    auto u_delta = solve_diffusion(a_delta, f_delta, cfg);
    rep.lhs = hnorm(u - u_delta, 1.0);
    const double df = hnorm(subtract_mean(f - f_delta), -1.0);
    const double fnorm = hnorm(subtract_mean(f), -1.0);
    rep.rhs = (df + fnorm * linf_norm(exp_a - exp_ad) / rep.b_min) / rep.b_delta_min;
    rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-8) + 1e-14;
    return rep;
}

struct growth_report {
    bool pass = true;
    std::size_t first_violation = 0; ///< 1-based prefix length, 0 when none
    double observed = 0.0;           ///< c-value at the violation
    double bound = 0.0;              ///< bound value at the violation
};

/// Algebraic growth of the enumerated weights: c_{ν_N} <= max{1, CK}² N^{2 r1}
/// for every prefix length N, valid when ϱ_j <= C j^{r1} on the activated
/// dimensions (checked here).
inline growth_report growth_bound_check(const index_set& set, const admissible_weights& rho,
                                        double C, double K, double r1) {
    if (set.empty()) throw std::domain_error("growth_bound_check: empty set");
    std::uint32_t max_dim = 0;
    for (const auto& nu : set.members()) max_dim = std::max(max_dim, nu.max_dim());
    for (std::uint32_t j = 1; j <= max_dim; ++j) {
        const double bound = C * std::pow(static_cast<double>(j), r1);
        if (rho.rho(j) > bound * (1.0 + 1e-12))
            throw std::domain_error("growth_bound_check: rho_" + std::to_string(j) +
                                    " exceeds C j^{r1}, the premise does not hold");
    }
    growth_report rep;
    const double front = std::max(1.0, C * K) * std::max(1.0, C * K);
    for (std::size_t i = 0; i < set.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        const double bound = front * std::pow(n, 2.0 * r1);
        if (set.c_value(i) > bound * (1.0 + 1e-12)) {
            rep.pass = false;
            rep.first_violation = i + 1;
            rep.observed = set.c_value(i);
            rep.bound = bound;
            return rep;
        }
    }
    return rep;
}

struct strip_probe_report {
    int probes = 0;
    int violations = 0;      ///< ‖u‖_X exceeded C exp(α ‖a‖^τ)
    int out_of_strip = 0;    ///< Re e^a lost positivity at the shifted parameter
    int solver_failures = 0; ///< iteration did not converge
    double max_ratio = 0.0;  ///< max over probes of ‖u‖_X / bound
};

/// Sample Gaussian parameters with admissible imaginary shifts and test the
/// exponential bound ‖u‖_X <= C exp(α ‖a‖_{Ḣ^t}^τ).  Diagnostic only: a
/// violation indicts the candidate constants, not the estimate itself.
inline strip_probe_report strip_bound_probe(const parametric_problem& problem,
                                            const holomorphy_params& params, int n_probes,
                                            std::uint64_t seed) {
    if (!(params.tau >= 0.0 && params.tau < 2.0))
        throw std::domain_error("strip_bound_probe: tau must lie in [0, 2)");
    if (n_probes < 1) throw std::domain_error("strip_bound_probe: need at least one probe");
    const counter_rng rng(seed);
    const int J = problem.J;
    const std::uint64_t stride = 3 * static_cast<std::uint64_t>(J) + 1;
    const double xi = problem.model.xi();

    strip_probe_report rep;
    rep.probes = n_probes;
    std::vector<complex> z(static_cast<std::size_t>(J));
    for (int probe = 0; probe < n_probes; ++probe) {
        const std::uint64_t base = static_cast<std::uint64_t>(probe) * stride;
        // Direction for the admissible radii, then a radial fraction of ξ.
        double gb_sq = 0.0;
        std::vector<double> direction(static_cast<std::size_t>(J), 0.0);
        for (int j = 0; j < J; ++j) {
            const double bj = problem.model.b(static_cast<std::uint32_t>(j + 1));
            if (bj <= 0.0) continue;
            direction[j] = std::abs(rng.normal(base + J + j));
            gb_sq += direction[j] * direction[j] * bj * bj;
        }
        const double u = rng.uniform(base + 3 * static_cast<std::uint64_t>(J));
        const double scale = gb_sq > 0.0 ? xi * std::sqrt(u / gb_sq) : 0.0;
        for (int j = 0; j < J; ++j) {
            const double y = rng.normal(base + j);
            const double radius = scale * direction[j];
            const double shift = radius * (2.0 * rng.uniform(base + 2 * J + j) - 1.0);
            z[j] = complex(y, shift);
        }
        auto a = parameter_field(problem, z);
        const double bound =
            params.C * std::exp(params.alpha * std::pow(hnorm(a, problem.basis.t()), params.tau));
        try {
            auto sol = solve_diffusion(a, problem.f, problem.solver);
            const double norm_x = hnorm(sol, problem.s_out);
            rep.max_ratio = std::max(rep.max_ratio, norm_x / bound);
            if (norm_x > bound) ++rep.violations;
        } catch (const degeneracy_error&) {
            ++rep.out_of_strip;
        } catch (const convergence_error&) {
            ++rep.solver_failures;
        }
    }
    return rep;
}

} // namespace whpc
