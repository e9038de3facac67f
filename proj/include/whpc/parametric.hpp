#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "whpc/diffusion.hpp"
#include "whpc/field.hpp"
#include "whpc/trig_basis.hpp"
#include "whpc/weights.hpp"

namespace whpc {

/// The truncated parametric diffusion problem: for y in R^J the coefficient
/// exponent is a(·, y) = Σ_{j<=J} y_j b_j ψ_j and the solution map sends y to
/// the zero-mean solution of −∇·(e^a ∇u) = f.
struct parametric_problem {
    trig_basis basis;
    weight_model model;
    periodic_field f;
    int J = 1;
    double s_out = 1.0;
    solver_config solver{};

    parametric_problem(trig_basis basis_, weight_model model_, periodic_field f_, int J_,
                       double s_out_ = 1.0, solver_config solver_ = {})
        : basis(std::move(basis_)), model(std::move(model_)), f(std::move(f_)), J(J_),
          s_out(s_out_), solver(solver_) {
        if (J < 1) throw std::domain_error("parametric_problem: J must be >= 1");
        if (f.grid().d != 1)
            throw std::domain_error("parametric_problem: the trigonometric basis is one-dimensional");
        if (!(basis.t() > f.grid().d / 2.0))
            throw std::domain_error("parametric_problem: basis smoothness must exceed d/2");
        if (std::abs(f.mean()) > 1e-12 * std::max(l2_norm(f), 1e-300))
            throw std::domain_error("parametric_problem: right-hand side must have zero mean");
    }

    const periodic_grid& grid() const { return f.grid(); }
};

/// a(·, y) = Σ_{j<=J} y_j b_j ψ_j; dimensions with b_j = 0 contribute nothing.
inline periodic_field parameter_field(const parametric_problem& problem,
                                      std::span<const double> y) {
    if (y.size() != static_cast<std::size_t>(problem.J))
        throw std::domain_error("parameter_field: point dimension must equal J");
    std::vector<std::pair<int, double>> coeffs;
    coeffs.reserve(y.size());
    for (int j = 1; j <= problem.J; ++j) {
        const double bj = problem.model.b(static_cast<std::uint32_t>(j));
        if (bj > 0.0 && y[j - 1] != 0.0) coeffs.emplace_back(j, y[j - 1] * bj);
    }
    return synthesize(coeffs, problem.basis, problem.grid());
}

/// Complex parameter variant for probing imaginary shifts y + iz.
inline periodic_field parameter_field(const parametric_problem& problem,
                                      std::span<const complex> z) {
    if (z.size() != static_cast<std::size_t>(problem.J))
        throw std::domain_error("parameter_field: point dimension must equal J");
    std::vector<std::pair<int, complex>> coeffs;
    coeffs.reserve(z.size());
    for (int j = 1; j <= problem.J; ++j) {
        const double bj = problem.model.b(static_cast<std::uint32_t>(j));
        if (bj > 0.0 && z[j - 1] != complex(0.0)) coeffs.emplace_back(j, z[j - 1] * bj);
    }
    return synthesize_complex(coeffs, problem.basis, problem.grid());
}

inline periodic_field evaluate_solution(const parametric_problem& problem,
                                        std::span<const double> y, solve_stats* stats = nullptr) {
    return solve_diffusion(parameter_field(problem, y), problem.f, problem.solver, stats);
}

inline periodic_field evaluate_solution(const parametric_problem& problem,
                                        std::span<const complex> z, solve_stats* stats = nullptr) {
    return solve_diffusion(parameter_field(problem, z), problem.f, problem.solver, stats);
}

} // namespace whpc
