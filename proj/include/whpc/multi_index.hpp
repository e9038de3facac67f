#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace whpc {

/// Finitely supported sequence of nonnegative integer exponents.
///
/// Stored sparsely as (dimension, exponent) pairs sorted by dimension;
/// dimensions are 1-based and zero exponents are never stored.
class multi_index {
public:
    using entry = std::pair<std::uint32_t, std::uint32_t>; // (dim, exponent)

    multi_index() = default;

    static multi_index unit(std::uint32_t j) {
        if (j == 0) throw std::domain_error("multi_index: dimensions are 1-based");
        multi_index nu;
        nu.entries_.emplace_back(j, 1u);
        return nu;
    }

    /// Build from a dense exponent vector (index i holds the exponent of dimension i+1).
    static multi_index from_exponents(std::span<const std::uint32_t> exps) {
        multi_index nu;
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (exps[i] > 0) nu.entries_.emplace_back(static_cast<std::uint32_t>(i + 1), exps[i]);
        return nu;
    }

    std::uint32_t operator[](std::uint32_t j) const {
        for (const auto& [d, e] : entries_)
            if (d == j) return e;
        return 0;
    }

    multi_index with_increment(std::uint32_t j) const {
        multi_index out = *this;
        auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), j,
                                   [](const entry& a, std::uint32_t dim) { return a.first < dim; });
        if (it != out.entries_.end() && it->first == j)
            ++it->second;
        else
            out.entries_.insert(it, {j, 1u});
        return out;
    }

    multi_index with_decrement(std::uint32_t j) const {
        multi_index out = *this;
        auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), j,
                                   [](const entry& a, std::uint32_t dim) { return a.first < dim; });
        if (it == out.entries_.end() || it->first != j)
            throw std::domain_error("multi_index: cannot decrement a zero exponent");
        if (--it->second == 0) out.entries_.erase(it);
        return out;
    }

    /// ‖ν‖₁, the total degree.
    std::uint64_t order() const {
        std::uint64_t s = 0;
        for (const auto& [d, e] : entries_) s += e;
        return s;
    }

    /// ‖ν‖₀ = |supp ν|.
    std::uint32_t support_size() const { return static_cast<std::uint32_t>(entries_.size()); }

    /// Largest dimension in the support, 0 for the zero index.
    std::uint32_t max_dim() const { return entries_.empty() ? 0u : entries_.back().first; }

    bool empty() const { return entries_.empty(); }

    const std::vector<entry>& entries() const { return entries_; }

    friend bool operator==(const multi_index& a, const multi_index& b) {
        return a.entries_ == b.entries_;
    }
    friend bool operator!=(const multi_index& a, const multi_index& b) { return !(a == b); }

    /// Deterministic tie order used by the index-set enumeration once weights
    /// are equal: ascending ‖ν‖₁, then lexicographic on the dense exponent
    /// vector with the larger leading exponent first.  This keeps e_1 ahead of
    /// e_2 at exact weight ties, which the frontier expansion requires.
    static bool tie_less(const multi_index& a, const multi_index& b) {
        const std::uint64_t oa = a.order(), ob = b.order();
        if (oa != ob) return oa < ob;
        std::size_t i = 0, k = 0;
        while (i < a.entries_.size() && k < b.entries_.size()) {
            const auto& ea = a.entries_[i];
            const auto& eb = b.entries_[k];
            if (ea.first != eb.first) return ea.first < eb.first;
            if (ea.second != eb.second) return ea.second > eb.second;
            ++i;
            ++k;
        }
        return i < a.entries_.size();
    }

    /// Render as semicolon-joined "dim:exp" pairs; the zero index renders as "".
    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (const auto& [d, e] : entries_) {
            if (!first) os << ';';
            os << d << ':' << e;
            first = false;
        }
        return os.str();
    }

    static multi_index parse(std::string_view text) {
        multi_index nu;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t end = text.find(';', pos);
            if (end == std::string_view::npos) end = text.size();
            std::string_view item = text.substr(pos, end - pos);
            std::size_t colon = item.find(':');
            if (colon == std::string_view::npos)
                throw std::invalid_argument("multi_index: malformed entry '" + std::string(item) + "'");
            const std::uint32_t dim = static_cast<std::uint32_t>(std::stoul(std::string(item.substr(0, colon))));
            const std::uint32_t exp = static_cast<std::uint32_t>(std::stoul(std::string(item.substr(colon + 1))));
            if (dim == 0 || exp == 0)
                throw std::invalid_argument("multi_index: dimensions and exponents must be positive");
            nu.entries_.emplace_back(dim, exp);
            pos = end + 1;
        }
        std::sort(nu.entries_.begin(), nu.entries_.end());
        for (std::size_t i = 1; i < nu.entries_.size(); ++i)
            if (nu.entries_[i].first == nu.entries_[i - 1].first)
                throw std::invalid_argument("multi_index: duplicate dimension");
        return nu;
    }

    struct hash {
        std::size_t operator()(const multi_index& nu) const {
            std::size_t h = 0x9e3779b97f4a7c15ULL;
            for (const auto& [d, e] : nu.entries_) {
                h ^= (static_cast<std::size_t>(d) << 32) | e;
                h *= 0x100000001b3ULL;
            }
            return h;
        }
    };

private:
    std::vector<entry> entries_;
};

} // namespace whpc
