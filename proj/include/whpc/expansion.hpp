#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "whpc/errors.hpp"
#include "whpc/field.hpp"
#include "whpc/hermite.hpp"
#include "whpc/index_set.hpp"
#include "whpc/parallel.hpp"
#include "whpc/parametric.hpp"
#include "whpc/rng.hpp"

namespace whpc {

struct estimator_spec {
    enum class kind_t { tensor, monte_carlo };
    kind_t kind = kind_t::tensor;
    int pad = 2;                 ///< tensor: order q_j = ν̄_j + pad on active dimensions
    std::uint64_t samples = 0;   ///< monte carlo sample count
    std::uint64_t seed = 0;      ///< monte carlo stream seed
    std::uint64_t tensor_budget = tensor_quadrature::default_budget();
};

struct pc_coefficient {
    periodic_field field;
    double norm_x = 0.0;
    double stderr_norm = 0.0; ///< per-coefficient standard error (monte carlo only)
};

namespace detail {

/// Node-major projection: evaluate the map once per node, accumulate every
/// requested coefficient from that evaluation.  Batches are solved in
/// parallel but accumulated sequentially in node order, so the result is
/// independent of the worker count.
template <class Eval>
std::vector<pc_coefficient> project_coefficients(Eval&& solve_at, const periodic_grid& grid,
                                                 int J, double s_out,
                                                 std::span<const multi_index> nus,
                                                 const estimator_spec& est, int jobs) {
    std::vector<int> degree(static_cast<std::size_t>(J), 0);
    for (const auto& nu : nus) {
        if (nu.max_dim() > static_cast<std::uint32_t>(J))
            throw std::domain_error("project_coefficients: index support exceeds J");
        for (const auto& [j, e] : nu.entries())
            degree[j - 1] = std::max(degree[j - 1], static_cast<int>(e));
    }

    const std::size_t total_modes = grid.point_count();
    std::vector<std::vector<complex>> acc(nus.size(),
                                          std::vector<complex>(total_modes, complex(0.0)));
    std::vector<double> sum_sq(nus.size(), 0.0);

    const bool mc = est.kind == estimator_spec::kind_t::monte_carlo;
    std::uint64_t node_count;
    std::optional<tensor_quadrature> tq;
    if (mc) {
        if (est.samples < 1)
            throw std::domain_error("project_coefficients: monte carlo needs samples >= 1");
        node_count = est.samples;
    } else {
        if (est.pad < 0) throw std::domain_error("project_coefficients: pad must be >= 0");
        std::vector<int> orders;
        orders.reserve(degree.size());
        // Inactive dimensions keep the one-node rule, i.e. evaluation at y_j = 0.
        for (int d : degree) orders.push_back(d == 0 ? 1 : d + est.pad);
        tq.emplace(orders, est.tensor_budget);
        node_count = tq->size();
    }
    const counter_rng rng(est.seed);

    auto node_point = [&](std::uint64_t i, std::vector<double>& y) {
        if (mc)
            for (int j = 0; j < J; ++j)
                y[j] = rng.normal(i * static_cast<std::uint64_t>(J) + j);
        else
            tq->node(i, y);
    };

    constexpr std::uint64_t batch_size = 256;
    std::vector<periodic_field> batch(std::min<std::uint64_t>(batch_size, node_count));
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(J));

    for (std::uint64_t start = 0; start < node_count; start += batch_size) {
        const std::uint64_t count = std::min<std::uint64_t>(batch_size, node_count - start);
        parallel_for(count, jobs, [&](std::uint64_t i) {
            std::vector<double> y(static_cast<std::size_t>(J));
            node_point(start + i, y);
            try {
                batch[i] = solve_at(std::span<const double>(y));
            } catch (const std::exception& e) {
                throw std::runtime_error("coefficient estimator: evaluation at node " +
                                         std::to_string(start + i) + " failed: " + e.what());
            }
        });
        std::vector<double> y(static_cast<std::size_t>(J));
        for (std::uint64_t i = 0; i < count; ++i) {
            node_point(start + i, y);
            const double w = mc ? 1.0 / static_cast<double>(node_count) : tq->weight(start + i);
            for (int j = 0; j < J; ++j) rows[j] = hermite_row(degree[j], y[j]);
            const auto& spec = batch[i].spectrum();
            const double node_norm = mc ? hnorm(batch[i], s_out) : 0.0;
            for (std::size_t t = 0; t < nus.size(); ++t) {
                double h = 1.0;
                for (const auto& [j, e] : nus[t].entries()) h *= rows[j - 1][e];
                if (h == 0.0) continue;
                const double scale = w * h;
                auto& dst = acc[t];
                for (std::size_t m = 0; m < total_modes; ++m) dst[m] += scale * spec[m];
                if (mc) sum_sq[t] += h * h * node_norm * node_norm;
            }
        }
    }

    std::vector<pc_coefficient> out;
    out.reserve(nus.size());
    for (std::size_t t = 0; t < nus.size(); ++t) {
        pc_coefficient c;
        c.field = periodic_field::from_spectrum(grid, std::move(acc[t]));
        c.norm_x = hnorm(c.field, s_out);
        if (mc && node_count > 1) {
            const double s = static_cast<double>(node_count);
            const double variance =
                std::max(0.0, (sum_sq[t] - s * c.norm_x * c.norm_x) / (s - 1.0));
            c.stderr_norm = std::sqrt(variance / s);
        }
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace detail

/// Association of a reference index set with estimated coefficients.
class pc_expansion {
public:
    pc_expansion(index_set ref, std::vector<pc_coefficient> coeffs, estimator_spec meta,
                 double s_out)
        : ref_(std::move(ref)), coeffs_(std::move(coeffs)), meta_(meta), s_out_(s_out) {
        if (ref_.size() != coeffs_.size())
            throw std::invalid_argument("pc_expansion: coefficient count mismatch");
    }

    std::size_t size() const { return ref_.size(); }
    const index_set& ref_set() const { return ref_; }
    const pc_coefficient& coefficient(std::size_t i) const { return coeffs_.at(i); }
    double s_out() const { return s_out_; }
    const estimator_spec& estimator() const { return meta_; }

private:
    index_set ref_;
    std::vector<pc_coefficient> coeffs_;
    estimator_spec meta_;
    double s_out_;
};

/// Project an arbitrary field-valued map of J Gaussian coordinates onto a
/// downward-closed reference set.
template <class Eval>
pc_expansion project_expansion(Eval&& solve_at, const periodic_grid& grid, int J, double s_out,
                               const index_set& ref, const estimator_spec& est, int jobs = 1) {
    if (ref.empty()) throw std::domain_error("project_expansion: reference set is empty");
    if (!check_downward_closed(ref))
        throw std::invalid_argument("project_expansion: reference set must be downward closed");
    auto coeffs =
        detail::project_coefficients(std::forward<Eval>(solve_at), grid, J, s_out,
                                     std::span<const multi_index>(ref.members()), est, jobs);
    return pc_expansion(ref, std::move(coeffs), est, s_out);
}

/// Single coefficient ∫ u(y) H_ν(y) γ(dy) with orders taken from ν itself.
inline pc_coefficient compute_coefficient(const parametric_problem& problem, const multi_index& nu,
                                          const estimator_spec& est, int jobs = 1) {
    auto coeffs = detail::project_coefficients(
        [&](std::span<const double> y) { return evaluate_solution(problem, y); }, problem.grid(),
        problem.J, problem.s_out, std::span<const multi_index>(&nu, 1), est, jobs);
    return std::move(coeffs.front());
}

/// All coefficients over a downward-closed reference set, sharing one PDE
/// solve per quadrature node.
inline pc_expansion compute_expansion(const parametric_problem& problem, const index_set& ref,
                                      const estimator_spec& est, int jobs = 1) {
    return project_expansion(
        [&](std::span<const double> y) { return evaluate_solution(problem, y); }, problem.grid(),
        problem.J, problem.s_out, ref, est, jobs);
}

/// Parseval tail within the reference set: E(N)² = Σ_{i >= N} ‖u_{ν_i}‖²_X.
inline std::vector<std::pair<std::size_t, double>> error_curve(const pc_expansion& exp,
                                                               std::span<const std::size_t> Ns) {
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        if (Ns[i] > exp.size())
            throw std::domain_error("error_curve: N exceeds the reference set size");
        if (i > 0 && Ns[i] <= Ns[i - 1])
            throw std::domain_error("error_curve: Ns must be strictly ascending");
    }
    std::vector<double> suffix(exp.size() + 1, 0.0);
    for (std::size_t i = exp.size(); i-- > 0;)
        suffix[i] = suffix[i + 1] + exp.coefficient(i).norm_x * exp.coefficient(i).norm_x;
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(Ns.size());
    for (std::size_t N : Ns) out.emplace_back(N, std::sqrt(suffix[N]));
    return out;
}

/// Least-squares slope of log E against log N.
inline double fit_slope(std::span<const std::pair<double, double>> points) {
    std::size_t valid = 0;
    for (const auto& [n, e] : points)
        if (e > 0.0 && n > 0.0) ++valid;
    if (valid < 3) throw std::domain_error("fit_slope: need at least 3 points with E > 0");
    double sx = 0, sy = 0;
    for (const auto& [n, e] : points) {
        if (!(e > 0.0)) continue;
        sx += std::log(n);
        sy += std::log(e);
    }
    const double mx = sx / valid, my = sy / valid;
    double sxx = 0, sxy = 0;
    for (const auto& [n, e] : points) {
        if (!(e > 0.0)) continue;
        const double dx = std::log(n) - mx;
        sxy += dx * (std::log(e) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0) throw std::domain_error("fit_slope: abscissae are all equal");
    return sxy / sxx;
}

struct summability_row {
    std::size_t prefix;
    double weighted_sum;   ///< Σ β_ν(M, ϱ) ‖u_ν‖²_X over the prefix
    double lp_sum;         ///< Σ ‖u_ν‖^p_X over the prefix
    double tail_exponent;  ///< fitted decay of the decreasing rearrangement
};

struct summability_summary {
    std::vector<summability_row> rows;
    double weighted_tail_fraction = 0.0; ///< relative increment over the last quartile
    double lp_tail_fraction = 0.0;
};

/// Weighted and ℓ^p coefficient sums over growing prefixes of the reference
/// set, plus the decay exponent of the decreasing rearrangement.
inline summability_summary summability_report(const pc_expansion& exp, double p, int M,
                                              const admissible_weights& rho) {
    if (!(p > 0.0 && p < 2.0)) throw std::domain_error("summability_report: p must lie in (0, 2)");
    const std::size_t S = exp.size();
    std::vector<std::size_t> checkpoints;
    const std::size_t step = std::max<std::size_t>(1, (S + 7) / 8);
    for (std::size_t c = step; c < S; c += step) checkpoints.push_back(c);
    checkpoints.push_back(S);

    std::vector<double> norms(S);
    std::vector<double> weighted(S), lp(S);
    double wacc = 0.0, lacc = 0.0;
    for (std::size_t i = 0; i < S; ++i) {
        norms[i] = exp.coefficient(i).norm_x;
        wacc += beta_weight(exp.ref_set().member(i), M, rho) * norms[i] * norms[i];
        lacc += std::pow(norms[i], p);
        weighted[i] = wacc;
        lp[i] = lacc;
    }

    summability_summary out;
    for (std::size_t c : checkpoints) {
        summability_row row{};
        row.prefix = c;
        row.weighted_sum = weighted[c - 1];
        row.lp_sum = lp[c - 1];
        std::vector<double> sorted(norms.begin(), norms.begin() + static_cast<std::ptrdiff_t>(c));
        std::sort(sorted.begin(), sorted.end(), std::greater<double>());
        std::vector<std::pair<double, double>> pts;
        for (std::size_t k = 0; k < sorted.size(); ++k)
            if (sorted[k] > 0.0) pts.emplace_back(static_cast<double>(k + 1), sorted[k]);
        row.tail_exponent =
            pts.size() >= 3 ? fit_slope(pts) : std::numeric_limits<double>::quiet_NaN();
        out.rows.push_back(row);
    }

    const std::size_t three_quarter = std::max<std::size_t>(1, (3 * S) / 4);
    if (weighted[S - 1] > 0.0)
        out.weighted_tail_fraction = (weighted[S - 1] - weighted[three_quarter - 1]) / weighted[S - 1];
    if (lp[S - 1] > 0.0)
        out.lp_tail_fraction = (lp[S - 1] - lp[three_quarter - 1]) / lp[S - 1];
    return out;
}

} // namespace whpc
