#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "whpc/errors.hpp"
#include "whpc/field.hpp"

namespace whpc {

/// Trigonometric basis of the unit torus, orthonormal in the homogeneous
/// Sobolev space of smoothness t: member j >= 1 carries frequency k = ceil(j/2)
/// (cosine for even j, sine for odd j) scaled by 1/(2πk)^t.  Constants are
/// excluded since their homogeneous norm vanishes.
class trig_basis {
public:
    explicit trig_basis(double t) : t_(t) {}

    double t() const { return t_; }

    int frequency(int j) const {
        require_member(j);
        return (j + 1) / 2;
    }

    bool is_cos(int j) const {
        require_member(j);
        return j % 2 == 0;
    }

    double scale(int j) const {
        return std::pow(2.0 * M_PI * static_cast<double>(frequency(j)), -t_);
    }

    double evaluate(int j, double x) const {
        const double k = frequency(j);
        const double phase = 2.0 * M_PI * k * x;
        return std::sqrt(2.0) * scale(j) * (is_cos(j) ? std::cos(phase) : std::sin(phase));
    }

private:
    static void require_member(int j) {
        if (j < 1) throw std::domain_error("trig_basis: members are indexed from 1");
    }

    double t_;
};

/// Σ_j coeffs_j ψ_j assembled directly in the spectrum; throws when a
/// frequency does not fit on the grid.
inline periodic_field synthesize(std::span<const std::pair<int, double>> coeffs,
                                 const trig_basis& basis, const periodic_grid& grid) {
    if (grid.d != 1) throw std::domain_error("synthesize: the trigonometric basis is one-dimensional");
    std::vector<complex> spectrum(grid.point_count(), complex(0.0));
    const double half = std::sqrt(2.0) / 2.0;
    for (const auto& [j, value] : coeffs) {
        const int k = basis.frequency(j);
        if (k >= grid.n / 2)
            throw resolution_error("synthesize: frequency " + std::to_string(k) +
                                   " needs n >= " + std::to_string(2 * k + 2) + ", grid has n = " +
                                   std::to_string(grid.n));
        const double amp = value * basis.scale(j) * half;
        const std::size_t pos = static_cast<std::size_t>(k);
        const std::size_t neg = static_cast<std::size_t>(grid.n - k);
        if (basis.is_cos(j)) {
            spectrum[pos] += amp;
            spectrum[neg] += amp;
        } else {
            spectrum[pos] += complex(0.0, -amp);
            spectrum[neg] += complex(0.0, amp);
        }
    }
    return periodic_field::from_spectrum(grid, std::move(spectrum));
}

/// Complex-coefficient variant used for probing imaginary parameter shifts.
inline periodic_field synthesize_complex(std::span<const std::pair<int, complex>> coeffs,
                                         const trig_basis& basis, const periodic_grid& grid) {
    if (grid.d != 1) throw std::domain_error("synthesize: the trigonometric basis is one-dimensional");
    std::vector<complex> spectrum(grid.point_count(), complex(0.0));
    const double half = std::sqrt(2.0) / 2.0;
    for (const auto& [j, value] : coeffs) {
        const int k = basis.frequency(j);
        if (k >= grid.n / 2)
            throw resolution_error("synthesize: frequency " + std::to_string(k) +
                                   " needs n >= " + std::to_string(2 * k + 2) + ", grid has n = " +
                                   std::to_string(grid.n));
        const complex amp = value * basis.scale(j) * half;
        const std::size_t pos = static_cast<std::size_t>(k);
        const std::size_t neg = static_cast<std::size_t>(grid.n - k);
        if (basis.is_cos(j)) {
            spectrum[pos] += amp;
            spectrum[neg] += amp;
        } else {
            spectrum[pos] += amp * complex(0.0, -1.0);
            spectrum[neg] += amp * complex(0.0, 1.0);
        }
    }
    return periodic_field::from_spectrum(grid, std::move(spectrum));
}

} // namespace whpc
