#pragma once

#include <cmath>
#include <cstdint>
#include <queue>
#include <span>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "whpc/errors.hpp"
#include "whpc/multi_index.hpp"
#include "whpc/weights.hpp"

namespace whpc {

/// An ordered, downward-closed multi-index set with its surrogate weights.
/// Members appear in enumeration order; the parallel c-values are nondecreasing.
class index_set {
public:
    index_set() = default;
    index_set(std::vector<multi_index> members, std::vector<double> c_values)
        : members_(std::move(members)), c_values_(std::move(c_values)) {
        if (members_.size() != c_values_.size())
            throw std::invalid_argument("index_set: members and c-values disagree in length");
    }

    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const multi_index& member(std::size_t i) const { return members_.at(i); }
    double c_value(std::size_t i) const { return c_values_.at(i); }
    const std::vector<multi_index>& members() const { return members_; }
    const std::vector<double>& c_values() const { return c_values_; }

private:
    std::vector<multi_index> members_;
    std::vector<double> c_values_;
};

struct set_metrics {
    std::uint64_t m; ///< max ‖ν‖₁ over the set
    std::uint32_t d; ///< max ‖ν‖₀ over the set
};

inline set_metrics index_set_metrics(const index_set& set) {
    if (set.empty()) throw std::domain_error("index_set_metrics: empty set");
    set_metrics out{0, 0};
    for (const auto& nu : set.members()) {
        out.m = std::max(out.m, nu.order());
        out.d = std::max(out.d, nu.support_size());
    }
    return out;
}

inline bool check_downward_closed(std::span<const multi_index> members) {
    std::unordered_set<multi_index, multi_index::hash> present(members.begin(), members.end());
    for (const auto& nu : members)
        for (const auto& [j, e] : nu.entries())
            if (!present.count(nu.with_decrement(j))) return false;
    return true;
}

inline bool check_downward_closed(const index_set& set) {
    return check_downward_closed(std::span<const multi_index>(set.members()));
}

namespace detail {

struct frontier_entry {
    double c;
    multi_index nu;
};

struct frontier_order {
    // std::priority_queue pops the largest element, so "greater" means later.
    bool operator()(const frontier_entry& a, const frontier_entry& b) const {
        if (a.c != b.c) return a.c > b.c;
        return multi_index::tie_less(b.nu, a.nu);
    }
};

} // namespace detail

/// First N members of the enumeration of F that is nondecreasing in c_ν,
/// ties broken by ascending ‖ν‖₁ then the deterministic lexicographic order.
///
/// Best-first frontier expansion: pop the cheapest candidate, insert it, and
/// push every successor ν+e_j whose backward neighbors are all inserted.
/// Dimension j+1 joins the candidate pool when e_j is inserted, which is valid
/// because c_{e_j} is nondecreasing in j; this requires ϱ nondecreasing over
/// the capped dimensions and fails loudly otherwise.
inline index_set build_index_set(std::size_t N, const surrogate_weights& weights,
                                 std::uint32_t dim_cap) {
    if (N < 1) throw std::domain_error("build_index_set: N must be >= 1");
    if (dim_cap < 1) throw std::domain_error("build_index_set: dim_cap must be >= 1");

    const auto& model = weights.rho().model();
    std::uint32_t usable_dims = dim_cap;
    if (!model.is_power_law())
        usable_dims = std::min<std::uint32_t>(dim_cap, model.explicit_size());
    double prev_rho = -1.0;
    for (std::uint32_t j = 1; j <= usable_dims; ++j) {
        if (!(model.b(j) > 0.0)) {
            usable_dims = j - 1; // explicit lists are sorted, later entries are zero too
            break;
        }
        const double r = weights.rho().rho(j);
        if (r < prev_rho)
            throw std::domain_error("build_index_set: weight sequence is not nondecreasing");
        prev_rho = r;
    }
    if (usable_dims == 0) throw std::domain_error("build_index_set: no usable dimensions");

    std::vector<multi_index> members;
    std::vector<double> c_values;
    members.reserve(N);
    c_values.reserve(N);

    std::unordered_set<multi_index, multi_index::hash> inserted;
    std::priority_queue<detail::frontier_entry, std::vector<detail::frontier_entry>,
                        detail::frontier_order>
        frontier;
    frontier.push({1.0, multi_index{}});
    std::uint32_t active_dims = 1;

    auto admissible = [&](const multi_index& nu) {
        for (const auto& [j, e] : nu.entries())
            if (!inserted.count(nu.with_decrement(j))) return false;
        return true;
    };

    while (members.size() < N && !frontier.empty()) {
        auto top = frontier.top();
        frontier.pop();
        members.push_back(top.nu);
        c_values.push_back(top.c);
        inserted.insert(top.nu);

        // Unit-index insertions unlock the next dimension.
        if (top.nu.order() == 1) {
            const std::uint32_t j = top.nu.max_dim();
            if (j == active_dims && j + 1 <= usable_dims) {
                active_dims = j + 1;
                frontier.push({weights.c_weight(multi_index::unit(active_dims)),
                               multi_index::unit(active_dims)});
            }
        }
        for (std::uint32_t j = 1; j <= active_dims; ++j) {
            multi_index succ = top.nu.with_increment(j);
            if (admissible(succ)) frontier.push({weights.c_weight(succ), std::move(succ)});
        }
    }
    if (members.size() < N)
        throw resource_error("build_index_set: dim_cap of " + std::to_string(dim_cap) +
                             " cannot supply " + std::to_string(N) + " indices");
    return index_set(std::move(members), std::move(c_values));
}

struct stechkin_report {
    bool applicable = true;  ///< false for N = 0 or an empty tail
    bool summable = true;    ///< false when the list shows no decay at all
    double lhs = 0.0;        ///< max_{i>N} 1/c_i
    double rhs = 0.0;        ///< N^{-1/q} ‖(1/c_i)_i‖_{ℓq} over the supplied list
    bool holds = false;
};

/// Check the N-term tail bound on a finite universe of enumeration-ordered
/// weights: the (N+1)-th largest of (1/c_i) is at most N^{-1/q} times the
/// ℓq norm of the whole inverted list.
inline stechkin_report stechkin_check(std::span<const double> values, double q, std::size_t N) {
    if (!(q > 0.0)) throw std::domain_error("stechkin_check: q must be > 0");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0))
            throw std::invalid_argument("stechkin_check: values must be positive");
        if (i > 0 && values[i] < values[i - 1])
            throw std::invalid_argument("stechkin_check: values must be in enumeration order");
    }
    stechkin_report rep;
    if (N == 0 || N >= values.size()) {
        rep.applicable = false;
        return rep;
    }
    if (values.size() > 1 && values.front() == values.back()) rep.summable = false;

    double lhs = 0.0;
    for (std::size_t i = N; i < values.size(); ++i) lhs = std::max(lhs, 1.0 / values[i]);
    double qsum = 0.0;
    for (double v : values) qsum += std::pow(1.0 / v, q);
    rep.lhs = lhs;
    rep.rhs = std::pow(static_cast<double>(N), -1.0 / q) * std::pow(qsum, 1.0 / q);
    rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-12);
    return rep;
}

} // namespace whpc
