#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "whpc/multi_index.hpp"

namespace whpc {

/// Exact factorial for M ≤ 20 (the largest that fits a 64-bit integer).
inline double exact_factorial(int m) {
    if (m < 0 || m > 20)
        throw std::domain_error("exact_factorial: argument must be in [0, 20]");
    std::uint64_t f = 1;
    for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
    return static_cast<double>(f);
}

/// Integer power with deterministic rounding (left-to-right products).
inline double ipow(double x, std::uint32_t n) {
    double r = 1.0;
    for (std::uint32_t i = 0; i < n; ++i) r *= x;
    return r;
}

/// Σ_{j≥1} j^{−s} for s > 1 via direct summation plus an Euler–Maclaurin tail.
inline double zeta_sum(double s) {
    if (s <= 1.0) throw std::domain_error("zeta_sum: requires s > 1");
    constexpr int cutoff = 256;
    double sum = 0.0;
    for (int j = cutoff - 1; j >= 1; --j) sum += std::pow(static_cast<double>(j), -s);
    const double n = static_cast<double>(cutoff);
    const double ns = std::pow(n, -s);
    sum += ns / 2.0;
    sum += n * ns / (s - 1.0);
    sum += s * ns / (12.0 * n);
    sum -= s * (s + 1.0) * (s + 2.0) * ns / (720.0 * n * n * n);
    return sum;
}

/// b_j = c0 · j^{−theta}.
struct power_law_b {
    double c0;
    double theta;
};

/// The input data (b, p, ξ, M) of a weight model.  The sequence b is either a
/// power law or an explicit finite list (zero beyond its length); explicit
/// lists are sorted descending so the derived weights are nondecreasing.
class weight_model {
public:
    weight_model(power_law_b b, double p, double xi, int M) : spec_(b) {
        if (!(b.c0 > 0.0)) throw std::domain_error("weight_model: power law needs c0 > 0");
        if (!(b.theta > 0.5)) throw std::domain_error("weight_model: power law needs theta > 1/2");
        init_common(p, xi, M);
        if (!(p * b.theta > 1.0))
            throw std::domain_error("weight_model: power law needs p*theta > 1 so that b is p-summable");
        lp_norm_ = b.c0 * std::pow(zeta_sum(p * b.theta), 1.0 / p);
    }

    weight_model(std::vector<double> explicit_b, double p, double xi, int M)
        : spec_(std::move(explicit_b)) {
        auto& list = std::get<std::vector<double>>(spec_);
        if (list.empty()) throw std::domain_error("weight_model: explicit b list is empty");
        for (double v : list)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw std::domain_error("weight_model: explicit b entries must be finite and >= 0");
        std::sort(list.begin(), list.end(), std::greater<double>());
        if (!(list.front() > 0.0)) throw std::domain_error("weight_model: b must not vanish identically");
        init_common(p, xi, M);
        double s = 0.0;
        for (double v : list)
            if (v > 0.0) s += std::pow(v, p);
        lp_norm_ = std::pow(s, 1.0 / p);
    }

    bool is_power_law() const { return std::holds_alternative<power_law_b>(spec_); }

    /// b_j for 1-based j; zero beyond an explicit list.
    double b(std::uint32_t j) const {
        if (j == 0) throw std::domain_error("weight_model: dimensions are 1-based");
        if (is_power_law()) {
            const auto& pl = std::get<power_law_b>(spec_);
            return pl.c0 * std::pow(static_cast<double>(j), -pl.theta);
        }
        const auto& list = std::get<std::vector<double>>(spec_);
        return j <= list.size() ? list[j - 1] : 0.0;
    }

    double p() const { return p_; }
    double xi() const { return xi_; }
    int M() const { return M_; }
    double b_lp_norm() const { return lp_norm_; }

    /// Length of the explicit list, 0 for power-law models.
    std::uint32_t explicit_size() const {
        return is_power_law() ? 0u
                              : static_cast<std::uint32_t>(std::get<std::vector<double>>(spec_).size());
    }

    const power_law_b* power_law() const { return std::get_if<power_law_b>(&spec_); }

private:
    void init_common(double p, double xi, int M) {
        if (!(p > 0.0 && p < 2.0)) throw std::domain_error("weight_model: p must lie in (0, 2)");
        if (!(xi >= 0.0)) throw std::domain_error("weight_model: xi must be >= 0");
        const int m_min = static_cast<int>(std::ceil(2.0 / p - 1e-12));
        if (M < m_min)
            throw std::domain_error("weight_model: M must satisfy M >= ceil(2/p) = " + std::to_string(m_min));
        if (M > 20) throw std::domain_error("weight_model: M > 20 exceeds exact factorial range");
        p_ = p;
        xi_ = xi;
        M_ = M;
    }

    std::variant<power_law_b, std::vector<double>> spec_;
    double p_ = 0, xi_ = 0, lp_norm_ = 0;
    int M_ = 0;
};

/// The admissible weight sequence ϱ derived from a model via
/// ϱ_j² b_j² = (b_j/‖b‖_p)^p · ξ²/(8 e M!), so Σ_j ϱ_j² b_j² = ξ²/(8 e M!).
class admissible_weights {
public:
    explicit admissible_weights(weight_model model) : model_(std::move(model)) {
        budget_ = model_.xi() * model_.xi() / (8.0 * std::exp(1.0) * exact_factorial(model_.M()));
    }

    /// ϱ_j; throws for dimensions where b_j = 0.
    double rho(std::uint32_t j) const {
        const double bj = model_.b(j);
        if (!(bj > 0.0))
            throw std::domain_error("admissible_weights: b_" + std::to_string(j) +
                                    " = 0, dimension has no weight");
        const double ratio = std::pow(bj / model_.b_lp_norm(), model_.p());
        return std::sqrt(ratio * budget_) / bj;
    }

    /// Σ_j ϱ_j² b_j², which equals ξ²/(8 e M!) by construction.
    double weighted_l2_sum() const { return budget_; }

    const weight_model& model() const { return model_; }

private:
    weight_model model_;
    double budget_ = 0;
};

/// Free-function form of the weight recipe.
inline double rho_from_b(const weight_model& model, std::uint32_t j) {
    return admissible_weights(model).rho(j);
}

namespace detail {

inline double binomial(std::uint32_t n, std::uint32_t k) {
    if (k > n) return 0.0;
    if (k > n - k) k = n - k;
    double r = 1.0;
    for (std::uint32_t i = 1; i <= k; ++i)
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

inline double beta_factor(std::uint32_t nu_j, int M, double rho_j) {
    const double r2 = rho_j * rho_j;
    double sum = 0.0, pw = 1.0;
    const std::uint32_t top = std::min<std::uint32_t>(static_cast<std::uint32_t>(M), nu_j);
    for (std::uint32_t l = 0; l <= top; ++l) {
        sum += binomial(nu_j, l) * pw;
        pw *= r2;
    }
    return sum;
}

} // namespace detail

/// β_ν(M, ϱ) = Π_{j∈supp ν} Σ_{ℓ=0}^{M} C(ν_j, ℓ) ϱ_j^{2ℓ}; empty support gives 1.
inline double beta_weight(const multi_index& nu, int M, const admissible_weights& rho) {
    if (M < 1) throw std::domain_error("beta_weight: M must be >= 1");
    double prod = 1.0;
    for (const auto& [j, e] : nu.entries()) prod *= detail::beta_factor(e, M, rho.rho(j));
    return prod;
}

/// β_ν against an explicit finite weight list (rho[j-1] holds ϱ_j).
inline double beta_weight(const multi_index& nu, int M, std::span<const double> rho) {
    if (M < 1) throw std::domain_error("beta_weight: M must be >= 1");
    double prod = 1.0;
    for (const auto& [j, e] : nu.entries()) {
        if (j > rho.size())
            throw std::domain_error("beta_weight: index support exceeds weight list length");
        prod *= detail::beta_factor(e, M, rho[j - 1]);
    }
    return prod;
}

struct surrogate_constants_result {
    double K;            ///< (ϱ₀^{2M}/(M! M^{2M}))^{1/2} with ϱ₀ = min{1, min_j ϱ_j}
    double log_K;        ///< log K, exact even when K underflows
    double c_beta;       ///< Π_{Kϱ_j<1} (Kϱ_j)², may underflow to 0
    double log_c_beta;   ///< log C_β, the usable representation
    bool scan_warning;   ///< set when ϱ was seen decreasing inside the scan window
};

/// Compute the constants pairing the surrogate weight c_ν with β_ν.  The
/// minimum of ϱ and the C_β product are searched over j ≤ scan_limit; only
/// dimensions with b_j > 0 participate.
inline surrogate_constants_result surrogate_constants(int M, const admissible_weights& rho,
                                                     std::uint32_t scan_limit) {
    if (M < 1) throw std::domain_error("surrogate_constants: M must be >= 1");
    if (scan_limit == 0) throw std::domain_error("surrogate_constants: scan_limit must be >= 1");
    const std::uint32_t last_dim =
        rho.model().is_power_law() ? scan_limit
                                   : std::min<std::uint32_t>(scan_limit, rho.model().explicit_size());

    double rho0 = 1.0, prev = -std::numeric_limits<double>::infinity();
    bool warn = false;
    std::vector<double> scanned;
    scanned.reserve(last_dim);
    for (std::uint32_t j = 1; j <= last_dim; ++j) {
        if (!(rho.model().b(j) > 0.0)) continue;
        const double r = rho.rho(j);
        scanned.push_back(r);
        rho0 = std::min(rho0, r);
        if (r < prev) warn = true;
        prev = r;
    }
    if (scanned.empty()) throw std::domain_error("surrogate_constants: no active dimensions in scan window");

    surrogate_constants_result out{};
    out.scan_warning = warn;
    out.log_K = M * std::log(rho0) -
                0.5 * (std::log(exact_factorial(M)) + 2.0 * M * std::log(static_cast<double>(M)));
    out.K = std::exp(out.log_K);

    double log_cb = 0.0;
    for (double r : scanned) {
        const double log_kr = out.log_K + std::log(r);
        if (log_kr < 0.0) log_cb += 2.0 * log_kr;
    }
    out.log_c_beta = log_cb;
    out.c_beta = std::exp(log_cb);
    return out;
}

/// c_ν = Π_{j∈supp ν} max{1, Kϱ_j}² ν_j^M.
inline double c_weight(const multi_index& nu, int M, double K, const admissible_weights& rho) {
    double prod = 1.0;
    for (const auto& [j, e] : nu.entries()) {
        const double kr = std::max(1.0, K * rho.rho(j));
        prod *= kr * kr * ipow(static_cast<double>(e), static_cast<std::uint32_t>(M));
    }
    return prod;
}

/// c_ν against an explicit finite weight list (rho[j-1] holds ϱ_j).
inline double c_weight(const multi_index& nu, int M, double K, std::span<const double> rho) {
    double prod = 1.0;
    for (const auto& [j, e] : nu.entries()) {
        if (j > rho.size())
            throw std::domain_error("c_weight: index support exceeds weight list length");
        const double kr = std::max(1.0, K * rho[j - 1]);
        prod *= kr * kr * ipow(static_cast<double>(e), static_cast<std::uint32_t>(M));
    }
    return prod;
}

/// Bundles the admissible weights with the derived (K, C_β) pair.
class surrogate_weights {
public:
    surrogate_weights(admissible_weights rho, std::uint32_t scan_limit)
        : rho_(std::move(rho)), constants_(surrogate_constants(rho_.model().M(), rho_, scan_limit)) {}

    double K() const { return constants_.K; }
    double c_beta() const { return constants_.c_beta; }
    double log_c_beta() const { return constants_.log_c_beta; }
    bool scan_warning() const { return constants_.scan_warning; }
    int M() const { return rho_.model().M(); }
    const admissible_weights& rho() const { return rho_; }

    double c_weight(const multi_index& nu) const { return whpc::c_weight(nu, M(), K(), rho_); }

private:
    admissible_weights rho_;
    surrogate_constants_result constants_;
};

} // namespace whpc
