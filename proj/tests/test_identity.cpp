#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "whpc/poly_identity.hpp"

using namespace whpc;

namespace {
multi_index mi(std::initializer_list<std::uint32_t> exps) {
    std::vector<std::uint32_t> v(exps);
    return multi_index::from_exponents(v);
}
} // namespace

TEST_CASE("poly_spec basics") {
    // u(y) = 2 y1^2 y2 - y2 + 1
    poly_spec u(2, {{mi({2, 1}), 2.0}, {mi({0, 1}), -1.0}, {multi_index{}, 1.0}});
    const double y[] = {0.5, -2.0};
    CHECK(u.evaluate(y) == Catch::Approx(2.0 * 0.25 * -2.0 + 2.0 + 1.0).epsilon(1e-15));
    CHECK(u.max_degree(1) == 2);
    CHECK(u.max_degree(2) == 1);

    auto du1 = u.derivative(1); // 4 y1 y2
    CHECK(du1.evaluate(y) == Catch::Approx(4.0 * 0.5 * -2.0).epsilon(1e-15));
    auto du12 = u.derivative(mi({1, 1})); // 4 y1
    CHECK(du12.evaluate(y) == Catch::Approx(2.0).epsilon(1e-15));

    CHECK_THROWS_AS(poly_spec(5, {}), std::domain_error);
    CHECK_THROWS_AS(poly_spec(1, {{mi({11}), 1.0}}), std::domain_error);
    CHECK_THROWS_AS(poly_spec(1, {{mi({0, 1}), 1.0}}), std::domain_error);
}

TEST_CASE("monomials expand into hermite polynomials exactly") {
    // y^2 = h0 + sqrt(2) h2
    poly_spec sq(1, {{mi({2}), 1.0}});
    auto coeffs = hermite_coefficients(sq);
    REQUIRE(coeffs.size() == 2);
    CHECK(coeffs.at(multi_index{}) == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(coeffs.at(mi({2})) == Catch::Approx(std::sqrt(2.0)).epsilon(1e-15));

    // y^3 = 3 h1 + sqrt(6) h3
    poly_spec cube(1, {{mi({3}), 1.0}});
    auto c3 = hermite_coefficients(cube);
    REQUIRE(c3.size() == 2);
    CHECK(c3.at(mi({1})) == Catch::Approx(3.0).epsilon(1e-15));
    CHECK(c3.at(mi({3})) == Catch::Approx(std::sqrt(6.0)).epsilon(1e-15));

    // y1 y2 = h1 ⊗ h1
    poly_spec cross(2, {{mi({1, 1}), 1.0}});
    auto cc = hermite_coefficients(cross);
    REQUIRE(cc.size() == 1);
    CHECK(cc.at(mi({1, 1})) == Catch::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gaussian squared norms via moments") {
    CHECK(l2_gamma_sq(poly_spec(1, {{mi({2}), 1.0}})) == Catch::Approx(3.0).epsilon(1e-15));
    CHECK(l2_gamma_sq(poly_spec(2, {{mi({1, 1}), 1.0}})) == Catch::Approx(1.0).epsilon(1e-15));
    // E[(1+y)^2] = 2
    CHECK(l2_gamma_sq(poly_spec(1, {{multi_index{}, 1.0}, {mi({1}), 1.0}})) ==
          Catch::Approx(2.0).epsilon(1e-15));
    // Parseval cross-check against the hermite route.
    poly_spec u(2, {{mi({2, 1}), 0.5}, {mi({1}), -1.25}, {multi_index{}, 0.75}});
    double parseval = 0.0;
    for (const auto& [nu, c] : hermite_coefficients(u)) parseval += c * c;
    CHECK(l2_gamma_sq(u) == Catch::Approx(parseval).epsilon(1e-13));
}

TEST_CASE("weighted identity on pinned cases") {
    // u(y) = y1^2 with M = 2, rho = (1): both sides equal 9.
    {
        poly_spec u(1, {{mi({2}), 1.0}});
        const double rho[] = {1.0};
        auto sides = weighted_identity_check(u, 2, rho);
        CHECK(sides.lhs == Catch::Approx(9.0).margin(1e-12));
        CHECK(sides.rhs == Catch::Approx(9.0).margin(1e-12));
        CHECK(sides.lhs == Catch::Approx(sides.rhs).epsilon(1e-13));
    }
    // Constant polynomial: both sides are 1 for any weights.
    {
        poly_spec one(2, {{multi_index{}, 1.0}});
        const double rho[] = {0.3, 1.7};
        for (int M : {1, 2, 5}) {
            auto sides = weighted_identity_check(one, M, rho);
            CHECK(sides.lhs == 1.0);
            CHECK(sides.rhs == 1.0);
        }
    }
    // u(y) = y1 y2 with M = 1, rho = (1,1): both sides equal 4.
    {
        poly_spec u(2, {{mi({1, 1}), 1.0}});
        const double rho[] = {1.0, 1.0};
        auto sides = weighted_identity_check(u, 1, rho);
        CHECK(sides.lhs == Catch::Approx(4.0).margin(1e-13));
        CHECK(sides.rhs == Catch::Approx(4.0).margin(1e-13));
    }
}

TEST_CASE("weighted identity on randomized polynomials") {
    std::mt19937_64 gen(777);
    std::uniform_int_distribution<int> dim_d(1, 3), deg_d(0, 6), nterms_d(1, 6), m_d(1, 4);
    std::uniform_real_distribution<double> coeff_d(-2.0, 2.0), rho_d(0.05, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int dims = dim_d(gen);
        std::vector<std::pair<multi_index, double>> terms;
        const int nterms = nterms_d(gen);
        for (int t = 0; t < nterms; ++t) {
            std::vector<std::uint32_t> exps(static_cast<std::size_t>(dims));
            int budget = deg_d(gen);
            for (int j = 0; j < dims; ++j) {
                std::uniform_int_distribution<int> pick(0, budget);
                const int e = pick(gen);
                exps[j] = static_cast<std::uint32_t>(e);
                budget -= e;
            }
            terms.emplace_back(multi_index::from_exponents(exps), coeff_d(gen));
        }
        poly_spec u(dims, std::move(terms));
        std::vector<double> rho(static_cast<std::size_t>(dims));
        for (auto& r : rho) r = rho_d(gen);
        const int M = m_d(gen);
        auto sides = weighted_identity_check(u, M, rho);
        const double scale = std::max({1.0, std::abs(sides.lhs), std::abs(sides.rhs)});
        CHECK(std::abs(sides.lhs - sides.rhs) <= 1e-10 * scale);
    }
}
