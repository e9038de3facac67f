#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "whpc/hermite.hpp"

using namespace whpc;

namespace {
multi_index mi(std::initializer_list<std::uint32_t> exps) {
    std::vector<std::uint32_t> v(exps);
    return multi_index::from_exponents(v);
}

double double_factorial(int k) { // (k-1)!! for even k
    double r = 1.0;
    for (int i = k - 1; i > 1; i -= 2) r *= i;
    return r;
}
} // namespace

TEST_CASE("univariate hermite values") {
    for (double y : {-3.0, 0.0, 0.7, 2.5}) CHECK(hermite_eval(0, y) == 1.0);
    CHECK(hermite_eval(1, 1.75) == 1.75);
    CHECK(hermite_eval(2, 0.0) == Catch::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(hermite_eval(3, 1.0) == Catch::Approx(-2.0 / std::sqrt(6.0)).epsilon(1e-15));
    CHECK(hermite_eval(3, 1.0) == Catch::Approx(-0.81650).margin(1e-5));

    auto row = hermite_row(6, 0.37);
    for (int k = 0; k <= 6; ++k) CHECK(row[k] == Catch::Approx(hermite_eval(k, 0.37)).epsilon(1e-14));
    CHECK_THROWS_AS(hermite_eval(-1, 0.0), std::domain_error);
}

TEST_CASE("normalized recurrence stays bounded") {
    for (double y = -10.0; y <= 10.0; y += 0.5) {
        double damped_max = 0.0;
        for (int k = 0; k <= 200; ++k) {
            const double v = hermite_eval(k, y) * std::exp(-y * y / 4.0);
            REQUIRE(std::isfinite(v));
            damped_max = std::max(damped_max, std::abs(v));
        }
        CHECK(damped_max <= 100.0);
    }
}

TEST_CASE("tensorized hermite values") {
    const double y2[] = {0.0, 3.0};
    CHECK(hermite_multi_eval(multi_index{}, y2) == 1.0);
    CHECK(hermite_multi_eval(mi({2, 1}), y2) == Catch::Approx(-3.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(hermite_multi_eval(mi({2, 1}), y2) == Catch::Approx(-2.12132).margin(1e-5));
    const double y1[] = {0.42};
    CHECK(hermite_multi_eval(mi({1}), y1) == 0.42);
    CHECK_THROWS_AS(hermite_multi_eval(mi({0, 0, 1}), y2), std::domain_error);
}

TEST_CASE("small gauss-hermite rules match closed forms") {
    auto r1 = gauss_hermite_rule(1);
    REQUIRE(r1.nodes.size() == 1);
    CHECK(r1.nodes[0] == 0.0);
    CHECK(r1.weights[0] == Catch::Approx(1.0).epsilon(1e-15));

    auto r2 = gauss_hermite_rule(2);
    CHECK(r2.nodes[0] == Catch::Approx(-1.0).epsilon(1e-14));
    CHECK(r2.nodes[1] == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(r2.weights[0] == Catch::Approx(0.5).epsilon(1e-14));
    CHECK(r2.weights[1] == Catch::Approx(0.5).epsilon(1e-14));

    auto r3 = gauss_hermite_rule(3);
    CHECK(r3.nodes[0] == Catch::Approx(-std::sqrt(3.0)).margin(1e-12));
    CHECK(r3.nodes[1] == 0.0);
    CHECK(r3.nodes[2] == Catch::Approx(std::sqrt(3.0)).margin(1e-12));
    CHECK(r3.weights[0] == Catch::Approx(1.0 / 6.0).margin(1e-12));
    CHECK(r3.weights[1] == Catch::Approx(2.0 / 3.0).margin(1e-12));
    CHECK(r3.weights[2] == Catch::Approx(1.0 / 6.0).margin(1e-12));

    CHECK_THROWS_AS(gauss_hermite_rule(0), std::domain_error);
    CHECK_THROWS_AS(gauss_hermite_rule(65), std::domain_error);
}

TEST_CASE("rules integrate gaussian moments exactly") {
    for (int n : {2, 3, 5, 8, 16, 33, 64}) {
        auto rule = gauss_hermite_rule(n);
        double mass = 0.0;
        for (double w : rule.weights) mass += w;
        CHECK(mass == Catch::Approx(1.0).epsilon(1e-14));
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double moment = 0.0;
            for (int i = 0; i < n; ++i)
                moment += rule.weights[i] * std::pow(rule.nodes[i], k);
            if (k % 2 == 1)
                CHECK(std::abs(moment) < 1e-12 * double_factorial(k + 1));
            else
                CHECK(moment == Catch::Approx(double_factorial(k)).epsilon(1e-12));
        }
        for (int i = 0, j = n - 1; i < j; ++i, --j) {
            CHECK(rule.nodes[i] == -rule.nodes[j]);
            CHECK(rule.weights[i] == rule.weights[j]);
        }
    }
}

TEST_CASE("gram matrix of a 16-node rule is the identity up to degree 10") {
    auto rule = gauss_hermite_rule(16);
    for (int a = 0; a <= 10; ++a) {
        for (int b = 0; b <= 10; ++b) {
            double g = 0.0;
            for (int i = 0; i < rule.n; ++i)
                g += rule.weights[i] * hermite_eval(a, rule.nodes[i]) *
                     hermite_eval(b, rule.nodes[i]);
            CHECK(std::abs(g - (a == b ? 1.0 : 0.0)) < 1e-10);
        }
    }
}

TEST_CASE("tensor quadrature enumerates the product rule") {
    {
        const int orders[] = {1, 1, 1};
        tensor_quadrature tq(orders);
        REQUIRE(tq.size() == 1);
        double y[3];
        tq.node(0, y);
        CHECK(y[0] == 0.0);
        CHECK(y[1] == 0.0);
        CHECK(y[2] == 0.0);
        CHECK(tq.weight(0) == Catch::Approx(1.0).epsilon(1e-15));
    }
    {
        const int orders[] = {2, 2};
        tensor_quadrature tq(orders);
        REQUIRE(tq.size() == 4);
        double wsum = 0.0;
        for (std::uint64_t i = 0; i < 4; ++i) {
            double y[2];
            tq.node(i, y);
            CHECK(std::abs(y[0]) == Catch::Approx(1.0).epsilon(1e-14));
            CHECK(std::abs(y[1]) == Catch::Approx(1.0).epsilon(1e-14));
            CHECK(tq.weight(i) == Catch::Approx(0.25).epsilon(1e-13));
            wsum += tq.weight(i);
        }
        CHECK(wsum == Catch::Approx(1.0).epsilon(1e-14));
        // Odometer order: the last dimension flips fastest.
        double y0[2], y1[2];
        tq.node(0, y0);
        tq.node(1, y1);
        CHECK(y0[0] == y1[0]);
        CHECK(y0[1] == -y1[1]);
    }
    {
        const int orders[] = {3, 1};
        tensor_quadrature tq(orders);
        REQUIRE(tq.size() == 3);
        const double expect_nodes[] = {-std::sqrt(3.0), 0.0, std::sqrt(3.0)};
        const double expect_weights[] = {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0};
        for (std::uint64_t i = 0; i < 3; ++i) {
            double y[2];
            tq.node(i, y);
            CHECK(y[0] == Catch::Approx(expect_nodes[i]).margin(1e-12));
            CHECK(y[1] == 0.0);
            CHECK(tq.weight(i) == Catch::Approx(expect_weights[i]).margin(1e-12));
        }
    }
    {
        const int orders[] = {64, 64, 64, 64, 64};
        CHECK_THROWS_AS(tensor_quadrature(orders, 1 << 20), resource_error);
    }
}
