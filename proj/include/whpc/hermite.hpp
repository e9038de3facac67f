#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "whpc/errors.hpp"
#include "whpc/multi_index.hpp"

namespace whpc {

/// Orthonormal probabilists' Hermite value h_k(y) with respect to the
/// standard Gaussian, via the normalized three-term recurrence
/// h_{k+1} = (y h_k - sqrt(k) h_{k-1}) / sqrt(k+1).
inline double hermite_eval(int k, double y) {
    if (k < 0) throw std::domain_error("hermite_eval: degree must be >= 0");
    double hm = 0.0, h = 1.0;
    for (int i = 0; i < k; ++i) {
        const double next = (y * h - std::sqrt(static_cast<double>(i)) * hm) /
                            std::sqrt(static_cast<double>(i + 1));
        hm = h;
        h = next;
    }
    return h;
}

/// All values h_0(y) .. h_kmax(y) in one pass.
inline std::vector<double> hermite_row(int kmax, double y) {
    if (kmax < 0) throw std::domain_error("hermite_row: degree must be >= 0");
    std::vector<double> row(static_cast<std::size_t>(kmax) + 1);
    row[0] = 1.0;
    if (kmax >= 1) row[1] = y;
    for (int i = 1; i < kmax; ++i)
        row[i + 1] = (y * row[i] - std::sqrt(static_cast<double>(i)) * row[i - 1]) /
                     std::sqrt(static_cast<double>(i + 1));
    return row;
}

/// Tensorized value H_nu(y) = prod_{j in supp nu} h_{nu_j}(y_j).
inline double hermite_multi_eval(const multi_index& nu, std::span<const double> y) {
    if (nu.max_dim() > y.size())
        throw std::domain_error("hermite_multi_eval: support exceeds point dimension");
    double prod = 1.0;
    for (const auto& [j, e] : nu.entries()) prod *= hermite_eval(static_cast<int>(e), y[j - 1]);
    return prod;
}

struct gauss_hermite_rule_t {
    int n = 0;
    std::vector<double> nodes;   // ascending, symmetric about 0
    std::vector<double> weights; // positive, sum to 1
};

namespace detail {

// Implicit-shift QL for a symmetric tridiagonal matrix, rotating a single
// vector z along; on return d holds eigenvalues and z the first components
// of the orthonormal eigenvectors (when z starts as e_1).
inline void tridiag_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    e.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw std::runtime_error("tridiag_ql: eigen iteration failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    e.pop_back();
}

} // namespace detail

/// Gauss-Hermite rule for the standard Gaussian: nodes are the eigenvalues of
/// the zero-diagonal tridiagonal matrix with off-diagonal sqrt(1..n-1) and the
/// weight at node i is the squared first component of its eigenvector.
inline gauss_hermite_rule_t gauss_hermite_rule(int n) {
    if (n < 1 || n > 64) throw std::domain_error("gauss_hermite_rule: need 1 <= n <= 64");
    std::vector<double> d(n, 0.0), e(n > 1 ? n - 1 : 0), z(n, 0.0);
    for (int k = 1; k < n; ++k) e[k - 1] = std::sqrt(static_cast<double>(k));
    z[0] = 1.0;
    detail::tridiag_ql(d, e, z);

    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](int a, int b) { return d[a] < d[b]; });

    gauss_hermite_rule_t rule;
    rule.n = n;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = d[perm[i]];
        rule.weights[i] = z[perm[i]] * z[perm[i]];
    }
    // Enforce the exact symmetry of the rule and unit total mass.
    for (int i = 0, k = n - 1; i < k; ++i, --k) {
        const double x = 0.5 * (rule.nodes[k] - rule.nodes[i]);
        rule.nodes[i] = -x;
        rule.nodes[k] = x;
        const double w = 0.5 * (rule.weights[i] + rule.weights[k]);
        rule.weights[i] = rule.weights[k] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    double total = 0.0;
    for (double w : rule.weights) total += w;
    for (double& w : rule.weights) w /= total;
    return rule;
}

/// Full tensor product of per-dimension Gauss-Hermite rules with random access
/// to nodes in odometer order (last dimension fastest).
class tensor_quadrature {
public:
    tensor_quadrature(std::span<const int> orders, std::uint64_t budget = default_budget()) {
        if (orders.empty()) throw std::domain_error("tensor_quadrature: no dimensions");
        std::uint64_t total = 1;
        for (int q : orders) {
            if (q < 1) throw std::domain_error("tensor_quadrature: orders must be >= 1");
            if (total > budget / static_cast<std::uint64_t>(q))
                throw resource_error("tensor_quadrature: node budget exceeded, product is at least " +
                                     std::to_string(total) + "*" + std::to_string(q));
            total *= static_cast<std::uint64_t>(q);
        }
        if (total > budget)
            throw resource_error("tensor_quadrature: node budget exceeded, product is " +
                                 std::to_string(total));
        size_ = total;
        rules_.reserve(orders.size());
        for (int q : orders) rules_.push_back(gauss_hermite_rule(q));
    }

    static constexpr std::uint64_t default_budget() { return std::uint64_t(1) << 26; }

    std::uint64_t size() const { return size_; }
    std::size_t dims() const { return rules_.size(); }
    const gauss_hermite_rule_t& rule(std::size_t j) const { return rules_.at(j); }

    /// Per-dimension node indices for flat index i, last dimension fastest.
    void decompose(std::uint64_t i, std::span<std::size_t> out) const {
        for (std::size_t j = rules_.size(); j-- > 0;) {
            const auto q = static_cast<std::uint64_t>(rules_[j].n);
            out[j] = static_cast<std::size_t>(i % q);
            i /= q;
        }
    }

    void node(std::uint64_t i, std::span<double> y_out) const {
        for (std::size_t j = rules_.size(); j-- > 0;) {
            const auto q = static_cast<std::uint64_t>(rules_[j].n);
            y_out[j] = rules_[j].nodes[static_cast<std::size_t>(i % q)];
            i /= q;
        }
    }

    double weight(std::uint64_t i) const {
        double w = 1.0;
        for (std::size_t j = rules_.size(); j-- > 0;) {
            const auto q = static_cast<std::uint64_t>(rules_[j].n);
            w *= rules_[j].weights[static_cast<std::size_t>(i % q)];
            i /= q;
        }
        return w;
    }

private:
    std::vector<gauss_hermite_rule_t> rules_;
    std::uint64_t size_ = 0;
};

/// Convenience wrapper matching the one-shot construction of a tensor rule.
inline tensor_quadrature tensor_nodes(std::span<const int> orders,
                                      std::uint64_t budget = tensor_quadrature::default_budget()) {
    return tensor_quadrature(orders, budget);
}

} // namespace whpc
