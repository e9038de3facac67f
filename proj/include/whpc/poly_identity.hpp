#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "whpc/multi_index.hpp"
#include "whpc/weights.hpp"

namespace whpc {

/// Scalar polynomial on R^N in the monomial basis, the test vehicle for the
/// exact weighted-identity check.  Capped at N <= 4 and total degree <= 10 so
/// every conversion below stays exact in double precision.
class poly_spec {
public:
    poly_spec(int dims, std::vector<std::pair<multi_index, double>> terms)
        : dims_(dims), terms_(std::move(terms)) {
        if (dims < 1 || dims > 4) throw std::domain_error("poly_spec: dimension must be in [1, 4]");
        std::unordered_map<multi_index, double, multi_index::hash> merged;
        for (const auto& [exps, coeff] : terms_) {
            if (exps.max_dim() > static_cast<std::uint32_t>(dims))
                throw std::domain_error("poly_spec: monomial uses a dimension beyond N");
            if (exps.order() > 10) throw std::domain_error("poly_spec: total degree must be <= 10");
            merged[exps] += coeff;
        }
        terms_.clear();
        for (auto& [exps, coeff] : merged)
            if (coeff != 0.0) terms_.emplace_back(exps, coeff);
    }

    int dims() const { return dims_; }
    const std::vector<std::pair<multi_index, double>>& terms() const { return terms_; }

    /// Largest exponent of dimension j across all monomials.
    std::uint32_t max_degree(std::uint32_t j) const {
        std::uint32_t d = 0;
        for (const auto& [exps, coeff] : terms_) d = std::max(d, exps[j]);
        return d;
    }

    double evaluate(std::span<const double> y) const {
        if (y.size() != static_cast<std::size_t>(dims_))
            throw std::domain_error("poly_spec: point dimension mismatch");
        double total = 0.0;
        for (const auto& [exps, coeff] : terms_) {
            double term = coeff;
            for (const auto& [j, e] : exps.entries()) term *= ipow(y[j - 1], e);
            total += term;
        }
        return total;
    }

    /// d/dy_j, exact in the monomial basis.
    poly_spec derivative(std::uint32_t j) const {
        std::vector<std::pair<multi_index, double>> out;
        for (const auto& [exps, coeff] : terms_) {
            const std::uint32_t e = exps[j];
            if (e == 0) continue;
            out.emplace_back(exps.with_decrement(j), coeff * static_cast<double>(e));
        }
        return poly_spec(dims_, std::move(out));
    }

    poly_spec derivative(const multi_index& nu) const {
        poly_spec p = *this;
        for (const auto& [j, e] : nu.entries())
            for (std::uint32_t k = 0; k < e; ++k) p = p.derivative(j);
        return p;
    }

private:
    int dims_;
    std::vector<std::pair<multi_index, double>> terms_;
};

namespace detail {

/// Odd Gaussian moments vanish; even ones are (m-1)!!.
inline double gaussian_moment(std::uint32_t m) {
    if (m % 2 == 1) return 0.0;
    double r = 1.0;
    for (std::uint32_t i = m; i > 1; i -= 2) r *= static_cast<double>(i - 1);
    return r;
}

/// Expansion of the univariate monomial y^k in orthonormal Hermite
/// polynomials, via repeated application of y·h_j = sqrt(j+1) h_{j+1} + sqrt(j) h_{j-1}.
inline std::vector<double> monomial_in_hermite(std::uint32_t k) {
    std::vector<double> c{1.0};
    for (std::uint32_t step = 0; step < k; ++step) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (c[j] == 0.0) continue;
            next[j + 1] += c[j] * std::sqrt(static_cast<double>(j + 1));
            if (j > 0) next[j - 1] += c[j] * std::sqrt(static_cast<double>(j));
        }
        c = std::move(next);
    }
    return c;
}

} // namespace detail

/// Exact Hermite coefficients of the polynomial (finitely many, by degree).
inline std::unordered_map<multi_index, double, multi_index::hash>
hermite_coefficients(const poly_spec& poly) {
    std::unordered_map<multi_index, double, multi_index::hash> out;
    const int dims = poly.dims();
    for (const auto& [exps, coeff] : poly.terms()) {
        std::vector<std::vector<double>> factors;
        factors.reserve(static_cast<std::size_t>(dims));
        for (int j = 1; j <= dims; ++j)
            factors.push_back(detail::monomial_in_hermite(exps[static_cast<std::uint32_t>(j)]));
        std::vector<std::uint32_t> degs(static_cast<std::size_t>(dims), 0);
        // Odometer over the per-dimension Hermite degrees of this monomial.
        for (;;) {
            double value = coeff;
            for (int j = 0; j < dims; ++j) value *= factors[j][degs[j]];
            if (value != 0.0) out[multi_index::from_exponents(degs)] += value;
            int axis = dims - 1;
            while (axis >= 0) {
                if (++degs[axis] < factors[axis].size()) break;
                degs[axis] = 0;
                --axis;
            }
            if (axis < 0) break;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0.0 ? out.erase(it) : std::next(it);
    return out;
}

/// Squared L²_γ norm via monomial pair moments, independent of the Hermite route.
inline double l2_gamma_sq(const poly_spec& poly) {
    double total = 0.0;
    const int dims = poly.dims();
    for (const auto& [ea, ca] : poly.terms())
        for (const auto& [eb, cb] : poly.terms()) {
            double moment = 1.0;
            for (int j = 1; j <= dims && moment != 0.0; ++j)
                moment *= detail::gaussian_moment(ea[static_cast<std::uint32_t>(j)] +
                                                  eb[static_cast<std::uint32_t>(j)]);
            total += ca * cb * moment;
        }
    return total;
}

struct identity_sides {
    double lhs; ///< Σ_ν β_ν(M, ϱ) u_ν² over the exact Hermite coefficients
    double rhs; ///< Σ_{‖ν‖_∞ <= M} (ϱ^{2ν}/ν!) ‖∂^ν u‖²_{L²_γ}
};

/// Evaluate both sides of the exact weighted identity for a polynomial:
/// the β-weighted coefficient sum equals the ϱ-weighted derivative sum.
inline identity_sides weighted_identity_check(const poly_spec& poly, int M,
                                              std::span<const double> rho) {
    if (M < 1) throw std::domain_error("weighted_identity_check: M must be >= 1");
    if (rho.size() < static_cast<std::size_t>(poly.dims()))
        throw std::domain_error("weighted_identity_check: weight list shorter than the dimension");

    identity_sides sides{0.0, 0.0};
    for (const auto& [nu, coeff] : hermite_coefficients(poly))
        sides.lhs += beta_weight(nu, M, rho) * coeff * coeff;

    const int dims = poly.dims();
    std::vector<std::uint32_t> cap(static_cast<std::size_t>(dims));
    for (int j = 0; j < dims; ++j)
        cap[j] = std::min<std::uint32_t>(static_cast<std::uint32_t>(M),
                                         poly.max_degree(static_cast<std::uint32_t>(j + 1)));
    std::vector<std::uint32_t> nu(static_cast<std::size_t>(dims), 0);
    for (;;) {
        double weight = 1.0;
        for (int j = 0; j < dims; ++j)
            weight *= ipow(rho[j] * rho[j], nu[j]) / exact_factorial(static_cast<int>(nu[j]));
        const auto idx = multi_index::from_exponents(nu);
        sides.rhs += weight * l2_gamma_sq(poly.derivative(idx));
        int axis = dims - 1;
        while (axis >= 0) {
            if (++nu[axis] <= cap[axis]) break;
            nu[axis] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
    return sides;
}

} // namespace whpc
