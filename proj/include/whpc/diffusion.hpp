#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "whpc/errors.hpp"
#include "whpc/field.hpp"

namespace whpc {

struct solver_config {
    double rel_tol = 1e-10;
    int max_iter = 10000;
    std::optional<double> relaxation; ///< override for the automatic damping factor
};

struct solve_stats {
    int iterations = 0;
    double residual = 0.0;
};

namespace detail {

/// Spectral derivative multipliers 2πik per axis; the Nyquist mode of an odd
/// derivative has no consistent sign and is represented as zero.
inline std::vector<complex> derivative_multipliers(int n) {
    std::vector<complex> dk(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        const int k = wavenumber(static_cast<std::size_t>(m), n);
        dk[m] = (m == n / 2) ? complex(0.0) : complex(0.0, 2.0 * M_PI * k);
    }
    return dk;
}

/// Workspace evaluating û ↦ spectrum of −∇·(e^a ∇u) with preallocated buffers.
class diffusion_apply {
public:
    diffusion_apply(const periodic_grid& grid, std::vector<complex> exp_a_samples)
        : grid_(grid), ea_(std::move(exp_a_samples)), dk_(derivative_multipliers(grid.n)) {
        const std::size_t m = grid_.point_count();
        grad_hat_.resize(m);
        grad_.resize(m);
        flux_hat_.resize(m);
    }

    const std::vector<complex>& exp_a() const { return ea_; }

    void operator()(const std::vector<complex>& u_hat, std::vector<complex>& out_hat) {
        const std::size_t total = grid_.point_count();
        out_hat.assign(total, complex(0.0));
        const auto nsz = static_cast<std::size_t>(grid_.n);
        for (int axis = 0; axis < grid_.d; ++axis) {
            for (std::size_t m = 0; m < total; ++m) {
                const std::size_t idx = grid_.d == 1 ? m : (axis == 0 ? m / nsz : m % nsz);
                grad_hat_[m] = dk_[idx] * u_hat[m];
            }
            dft_backward(grid_.d, grid_.n, grad_hat_.data(), grad_.data());
            for (std::size_t m = 0; m < total; ++m) grad_[m] *= ea_[m];
            dft_forward(grid_.d, grid_.n, grad_.data(), flux_hat_.data());
            for (std::size_t m = 0; m < total; ++m) {
                const std::size_t idx = grid_.d == 1 ? m : (axis == 0 ? m / nsz : m % nsz);
                out_hat[m] -= dk_[idx] * flux_hat_[m];
            }
        }
    }

private:
    periodic_grid grid_;
    std::vector<complex> ea_;
    std::vector<complex> dk_;
    std::vector<complex> grad_hat_, grad_, flux_hat_;
};

inline double hminus1_norm(const periodic_grid& grid, const std::vector<complex>& spec) {
    double sum = 0.0;
    for (std::size_t m = 1; m < spec.size(); ++m) {
        const double k2 = wavenumber_sq(grid, m);
        if (k2 == 0.0) continue;
        sum += std::norm(spec[m]) / (4.0 * M_PI * M_PI * k2);
    }
    return std::sqrt(sum);
}

/// True when no axis of mode m sits at the (sign-ambiguous) Nyquist frequency.
inline bool balanced_mode(const periodic_grid& grid, std::size_t m) {
    const auto nyq = static_cast<std::size_t>(grid.n / 2);
    if (grid.d == 1) return m != nyq;
    const auto nsz = static_cast<std::size_t>(grid.n);
    return m / nsz != nyq && m % nsz != nyq;
}

} // namespace detail

/// −∇·(e^a ∇u): differentiate u spectrally, scale by e^a pointwise, take the
/// spectral divergence.  Also used to manufacture right-hand sides.
inline periodic_field apply_operator(const periodic_field& a, const periodic_field& u) {
    if (a.grid() != u.grid()) throw std::domain_error("apply_operator: grid mismatch");
    std::vector<complex> ea(a.samples());
    for (auto& c : ea) c = std::exp(c);
    detail::diffusion_apply apply(a.grid(), std::move(ea));
    std::vector<complex> out;
    apply(u.spectrum(), out);
    return periodic_field::from_spectrum(a.grid(), std::move(out));
}

/// Solve −∇·(e^a ∇u) = f over zero-mean fields by damped Richardson iteration
/// preconditioned with the inverse Laplacian:
///   u ← u + ω (−Δ)^{-1} (f + ∇·(e^a ∇u)),   ω = 2/(m_min + m_max)
/// with m_min = min Re e^a and m_max = max |e^a| over grid points.  Requires
/// Re e^a > 0 everywhere; stops when the Ḣ^{-1} residual falls below
/// rel_tol·‖f‖_{Ḣ^{-1}}.
///
/// The solve runs on the balanced band: modes with any axis at the Nyquist
/// frequency have no sign-consistent derivative and are excluded from the
/// solution, the data, and the residual.
inline periodic_field solve_diffusion(const periodic_field& a, const periodic_field& f,
                                      const solver_config& cfg = {}, solve_stats* stats = nullptr) {
    if (a.grid() != f.grid()) throw std::domain_error("solve_diffusion: grid mismatch");
    if (!(cfg.rel_tol > 0.0)) throw std::domain_error("solve_diffusion: rel_tol must be > 0");
    if (cfg.max_iter < 1) throw std::domain_error("solve_diffusion: max_iter must be >= 1");
    const periodic_grid grid = a.grid();
    const std::size_t total = grid.point_count();

    if (std::abs(f.mean()) > 1e-12 * std::max(l2_norm(f), 1e-300))
        throw std::domain_error("solve_diffusion: right-hand side must have zero mean");

    std::vector<complex> ea(a.samples());
    double m_min = std::numeric_limits<double>::infinity(), m_max = 0.0;
    for (auto& c : ea) {
        c = std::exp(c);
        m_min = std::min(m_min, c.real());
        m_max = std::max(m_max, std::abs(c));
    }
    if (!(m_min > 0.0))
        throw degeneracy_error("solve_diffusion: Re(e^a) is not positive on the grid, min = " +
                               std::to_string(m_min));
    const double omega = cfg.relaxation.value_or(2.0 / (m_min + m_max));

    std::vector<std::size_t> active;
    active.reserve(total);
    double f_norm_sq = 0.0;
    for (std::size_t m = 1; m < total; ++m) {
        const double k2 = detail::wavenumber_sq(grid, m);
        if (k2 == 0.0 || !detail::balanced_mode(grid, m)) continue;
        active.push_back(m);
        f_norm_sq += std::norm(f.spectrum()[m]) / (4.0 * M_PI * M_PI * k2);
    }
    const double f_norm = std::sqrt(f_norm_sq);
    if (f_norm == 0.0) {
        if (stats) *stats = {0, 0.0};
        return periodic_field::zero(grid);
    }

    detail::diffusion_apply apply(grid, std::move(ea));
    std::vector<complex> u_hat(total, complex(0.0));
    std::vector<complex> au_hat(total, complex(0.0));

    double residual = f_norm;
    for (int iter = 0; iter <= cfg.max_iter; ++iter) {
        apply(u_hat, au_hat);
        double res_sq = 0.0;
        for (std::size_t m : active) {
            const double k2 = detail::wavenumber_sq(grid, m);
            res_sq += std::norm(f.spectrum()[m] - au_hat[m]) / (4.0 * M_PI * M_PI * k2);
        }
        residual = std::sqrt(res_sq);
        if (residual <= cfg.rel_tol * f_norm) {
            if (stats) *stats = {iter, residual};
            return periodic_field::from_spectrum(grid, std::move(u_hat));
        }
        if (iter == cfg.max_iter) break;
        for (std::size_t m : active) {
            const double k2 = detail::wavenumber_sq(grid, m);
            u_hat[m] += omega * (f.spectrum()[m] - au_hat[m]) / (4.0 * M_PI * M_PI * k2);
        }
    }
    throw convergence_error("solve_diffusion: no convergence within " +
                                std::to_string(cfg.max_iter) + " iterations, relative residual " +
                                std::to_string(residual / f_norm),
                            residual);
}

} // namespace whpc
