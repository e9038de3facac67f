#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "whpc/hermite.hpp"
#include "whpc/verify.hpp"

using namespace whpc;

namespace {

// Random real trigonometric polynomial with L∞ norm at most `cap`.
periodic_field random_smooth_field(const periodic_grid& grid, std::mt19937_64& gen, double cap,
                                   bool zero_mean) {
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::vector<double> v(grid.point_count());
    double c0 = zero_mean ? 0.0 : 0.3 * amp(gen);
    double a1 = amp(gen), b1 = amp(gen), a2 = amp(gen), b2 = amp(gen);
    const double total = std::abs(c0) + std::abs(a1) + std::abs(b1) + std::abs(a2) + std::abs(b2);
    const double s = total > 0 ? cap / total : 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double x = static_cast<double>(i) / grid.n;
        v[i] = s * (c0 + a1 * std::sin(2 * M_PI * x) + b1 * std::cos(2 * M_PI * x) +
                    a2 * std::sin(4 * M_PI * x) + b2 * std::cos(4 * M_PI * x));
    }
    return periodic_field::from_real_samples(grid, v);
}

} // namespace

TEST_CASE("closed-form gaussian exponential moment") {
    const double b[] = {0.5, 0.25};
    CHECK(exp_moment_closed(b, 1.0) == Catch::Approx(std::sqrt(16.0 / 7.0)).epsilon(1e-14));
    CHECK(exp_moment_closed(b, 1.0) == Catch::Approx(1.51186).margin(1e-5));
    CHECK(exp_moment_closed(b, 0.0) == 1.0);

    const double unit[] = {1.0};
    CHECK_THROWS_AS(exp_moment_closed(unit, 0.5), divergence_error);
    try {
        exp_moment_closed(unit, 0.5);
    } catch (const divergence_error& e) {
        CHECK(std::string(e.what()).find("j = 1") != std::string::npos);
    }

    // Monotone in alpha and in each entry of b.
    CHECK(exp_moment_closed(b, 1.2) > exp_moment_closed(b, 1.0));
    const double bigger[] = {0.55, 0.25};
    CHECK(exp_moment_closed(bigger, 1.0) > exp_moment_closed(b, 1.0));
}

TEST_CASE("monte carlo moment matches the closed form at tau = 2") {
    const double b[] = {0.5, 0.25};
    auto mc = exp_moment_mc(b, 1.0, 2.0, 200000, 42);
    const double exact = std::sqrt(16.0 / 7.0);
    CHECK(std::abs(mc.estimate - exact) <= 3.0 * mc.std_error);
    CHECK_FALSE(mc.divergence_flag);

    auto mc2 = exp_moment_mc(b, 1.0, 2.0, 200000, 42);
    CHECK(mc.estimate == mc2.estimate); // deterministic stream

    auto zero = exp_moment_mc(b, 0.0, 2.0, 2000, 7);
    CHECK(zero.estimate == 1.0);
    CHECK(zero.std_error == 0.0);

    CHECK_THROWS_AS(exp_moment_mc(b, 1.0, 2.0, 10, 0), std::domain_error);
    CHECK_THROWS_AS(exp_moment_mc(b, 1.0, 2.5, 2000, 0), std::domain_error);
}

TEST_CASE("monte carlo moment at tau = 1 against the half-normal closed form") {
    // One dimension: ∫ exp(c |y|) dγ = 2 e^{c²/2} Φ(c) with c = α b.
    const double b[] = {0.5};
    const double c = 1.0 * 0.5;
    const double exact = 2.0 * std::exp(c * c / 2.0) * 0.5 * std::erfc(-c / std::sqrt(2.0));
    auto mc = exp_moment_mc(b, 1.0, 1.0, 400000, 99);
    CHECK(std::abs(mc.estimate - exact) <= 3.0 * mc.std_error);

    // A dense Gauss-Hermite rule gets close despite the kink at the origin.
    auto rule = gauss_hermite_rule(64);
    double quad = 0.0;
    for (int i = 0; i < rule.n; ++i)
        quad += rule.weights[i] * std::exp(0.5 * std::abs(rule.nodes[i]));
    CHECK(std::abs(mc.estimate - quad) <= 3.0 * mc.std_error + std::abs(quad - exact));
    CHECK(std::abs(quad - exact) < 5e-3);
}

TEST_CASE("tau = 2 closed form against monte carlo on random lists") {
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> bdist(0.05, 0.45);
    std::uniform_int_distribution<int> len(1, 5);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> b(static_cast<std::size_t>(len(gen)));
        for (auto& v : b) v = bdist(gen);
        const double exact = exp_moment_closed(b, 1.0);
        auto mc = exp_moment_mc(b, 1.0, 2.0, 60000, 1000 + trial);
        CHECK(std::abs(mc.estimate - exact) <= 3.0 * mc.std_error);
    }
}

TEST_CASE("perturbation inequality: trivial and sharp cases") {
    periodic_grid grid(1, 64);
    auto f = periodic_field::from_function(grid, [](double x) { return std::sin(2.0 * M_PI * x); });
    auto a = periodic_field::from_function(grid, [](double x) { return 0.4 * std::cos(2.0 * M_PI * x); });

    auto same = perturbation_check(a, a, f, f);
    CHECK(same.lhs <= 1e-10);
    CHECK(same.holds);

    // a = a_δ = 0 and f_δ = 2f: both sides equal ‖f‖_{Ḣ⁻¹}.
    auto zero = periodic_field::zero(grid);
    auto doubled = perturbation_check(zero, zero, f, 2.0 * f);
    const double fnorm = hnorm(f, -1.0);
    CHECK(doubled.lhs == Catch::Approx(fnorm).epsilon(1e-9));
    CHECK(doubled.rhs == Catch::Approx(fnorm).epsilon(1e-9));
    CHECK(doubled.holds);
    CHECK(doubled.b_min == Catch::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("perturbation inequality on random smooth instances") {
    periodic_grid grid(1, 64);
    std::mt19937_64 gen(2718);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_smooth_field(grid, gen, 1.0, false);
        auto a_delta = random_smooth_field(grid, gen, 1.0, false);
        auto f = random_smooth_field(grid, gen, 1.0, true);
        auto f_delta = random_smooth_field(grid, gen, 1.0, true);
        auto rep = perturbation_check(a, a_delta, f, f_delta);
        CHECK(rep.holds);
    }
}

TEST_CASE("growth bound over the enumeration") {
    weight_model model(power_law_b{0.5, 2.0}, 0.6, 1.0, 4);
    admissible_weights rho(model);
    surrogate_weights w(rho, 60);
    auto set = build_index_set(200, w, 6);

    // Exact power law: rho_j = rho_1 j^{r1} with r1 = theta (2 - p) / 2.
    const double r1 = 2.0 * (2.0 - 0.6) / 2.0;
    const double C = std::max(rho.rho(1), 1.0 / rho.rho(1));
    auto rep = growth_bound_check(set, rho, C, w.K(), r1);
    CHECK(rep.pass);
    CHECK(rep.first_violation == 0);

    // Single member: c = 1 <= max{1, CK}².
    auto first = index_set({multi_index{}}, {1.0});
    CHECK(growth_bound_check(first, rho, C, w.K(), r1).pass);

    // Falsification: a hand-built set with inflated weights must be caught.
    std::vector<std::uint32_t> e1{1};
    index_set fake({multi_index{}, multi_index::from_exponents(e1)}, {1.0, 1e9});
    auto bad = growth_bound_check(fake, rho, C, w.K(), r1);
    CHECK_FALSE(bad.pass);
    CHECK(bad.first_violation == 2);
    CHECK(bad.observed == 1e9);

    // Premise violation: rho exceeds C j^{r1} when C is undersized.
    CHECK_THROWS_AS(growth_bound_check(set, rho, rho.rho(1) / 2.0, w.K(), r1), std::domain_error);
}

TEST_CASE("strip probes with generous constants report no violations") {
    periodic_grid grid(1, 32);
    auto f = periodic_field::from_function(grid, [](double x) { return std::sin(2.0 * M_PI * x); });
    weight_model model(std::vector<double>{0.3, 0.15}, 1.0, 0.5, 2);
    parametric_problem problem(trig_basis(1.5), model, f, 2, 1.0);

    holomorphy_params generous{1e4, 1.0, 1.0, 1.0};
    auto rep = strip_bound_probe(problem, generous, 50, 12345);
    CHECK(rep.probes == 50);
    CHECK(rep.violations == 0);
    CHECK(rep.out_of_strip == 0);
    CHECK(rep.max_ratio < 1.0);

    // Absurdly small C forces violations: the diagnostic indicts the constants.
    holomorphy_params stingy{1e-9, 0.0, 0.0, 1.0};
    auto viol = strip_bound_probe(problem, stingy, 20, 12345);
    CHECK(viol.violations == 20);

    CHECK_THROWS_AS(strip_bound_probe(problem, holomorphy_params{1, 1, 2.5, 1}, 5, 0),
                    std::domain_error);
}

TEST_CASE("oversized strips drive the coefficient out of positivity") {
    periodic_grid grid(1, 32);
    auto f = periodic_field::from_function(grid, [](double x) { return std::sin(2.0 * M_PI * x); });
    // Large xi lets imaginary shifts rotate e^a out of the right half plane.
    weight_model model(std::vector<double>{1.0}, 1.0, 60.0, 2);
    parametric_problem problem(trig_basis(1.5), model, f, 1, 1.0);
    holomorphy_params generous{1e6, 1.0, 1.0, 1.0};
    auto rep = strip_bound_probe(problem, generous, 40, 7);
    CHECK(rep.out_of_strip + rep.solver_failures > 0);
    CHECK(rep.probes == 40);
}
