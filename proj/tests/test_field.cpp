#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "whpc/field.hpp"
#include "whpc/io.hpp"
#include "whpc/trig_basis.hpp"

using namespace whpc;

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(periodic_grid(3, 16), std::domain_error);
    CHECK_THROWS_AS(periodic_grid(1, 6), std::domain_error);
    CHECK_THROWS_AS(periodic_grid(1, 9), std::domain_error);
    CHECK(periodic_grid(2, 16).point_count() == 256);
}

TEST_CASE("sample/spectrum round trip is tight") {
    periodic_grid grid(1, 64);
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<complex> values(grid.point_count());
    for (auto& v : values) v = complex(dist(gen), dist(gen));
    auto f = periodic_field::from_samples(grid, values);
    auto g = periodic_field::from_spectrum(grid, f.spectrum());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        num += std::norm(f.samples()[i] - g.samples()[i]);
        den += std::norm(f.samples()[i]);
    }
    CHECK(std::sqrt(num / den) < 1e-13);
    CHECK_FALSE(f.is_real());
}

TEST_CASE("sine field spectrum and homogeneous norms") {
    periodic_grid grid(1, 32);
    auto v = periodic_field::from_function(grid, [](double x) { return std::sin(2.0 * M_PI * x); });
    CHECK(v.is_real());
    CHECK(std::abs(v.spectrum()[1] - complex(0.0, -0.5)) < 1e-14);
    CHECK(std::abs(v.spectrum()[31] - complex(0.0, 0.5)) < 1e-14);
    CHECK(std::abs(v.mean()) < 1e-15);

    CHECK(hnorm(v, 0.0) == Catch::Approx(std::sqrt(0.5)).epsilon(1e-13));
    CHECK(hnorm(v, 0.0) == Catch::Approx(0.70711).margin(1e-5));
    CHECK(hnorm(v, 1.0) == Catch::Approx(2.0 * M_PI * std::sqrt(0.5)).epsilon(1e-13));
    CHECK(hnorm(v, 1.0) == Catch::Approx(4.44288).margin(1e-5));
    CHECK(hnorm(v, -1.0) == Catch::Approx(std::sqrt(0.5) / (2.0 * M_PI)).epsilon(1e-13));

    auto c = periodic_field::from_function(grid, [](double) { return 3.25; });
    CHECK(hnorm(c, 0.0) == 0.0);
    CHECK(hnorm(c, 2.0) == 0.0);
    CHECK_THROWS_AS(hnorm(c, -1.0), std::domain_error);
}

TEST_CASE("two-dimensional norms") {
    periodic_grid grid(2, 16);
    auto v = periodic_field::from_function(grid, [](double x1, double x2) {
        return std::sin(2.0 * M_PI * x1) * std::cos(4.0 * M_PI * x2);
    });
    CHECK(v.is_real());
    CHECK(hnorm(v, 0.0) == Catch::Approx(0.5).epsilon(1e-13));
    // Each of the four active modes sits on the shell |k|² = 1 + 4.
    CHECK(hnorm(v, 1.0) == Catch::Approx(M_PI * std::sqrt(5.0)).epsilon(1e-13));
}

TEST_CASE("field arithmetic") {
    periodic_grid grid(1, 16);
    auto a = periodic_field::from_function(grid, [](double x) { return std::sin(2.0 * M_PI * x); });
    auto b = periodic_field::from_function(grid, [](double x) { return std::cos(2.0 * M_PI * x); });
    auto sum = a + b;
    auto diff = sum - b;
    for (std::size_t i = 0; i < a.samples().size(); ++i)
        CHECK(std::abs(diff.samples()[i] - a.samples()[i]) < 1e-14);
    auto scaled = 2.5 * a;
    CHECK(hnorm(scaled, 0.0) == Catch::Approx(2.5 * hnorm(a, 0.0)).epsilon(1e-13));
    auto prod = pointwise_multiply(a, a);
    for (std::size_t i = 0; i < a.samples().size(); ++i)
        CHECK(std::abs(prod.samples()[i] - a.samples()[i] * a.samples()[i]) < 1e-14);
    auto ea = pointwise_exp(a);
    CHECK(std::abs(ea.samples()[0] - std::exp(a.samples()[0])) < 1e-14);
    CHECK_THROWS_AS(a + periodic_field::zero(periodic_grid(1, 32)), std::domain_error);
}

TEST_CASE("binary serialization round trip") {
    periodic_grid grid(1, 16);
    auto v = periodic_field::from_function(grid, [](double x) {
        return std::sin(2.0 * M_PI * x) + 0.25 * std::cos(4.0 * M_PI * x);
    });
    std::stringstream buf;
    write_binary(v, buf);
    auto w = read_binary(buf);
    CHECK(w.grid() == v.grid());
    CHECK(w.is_real() == v.is_real());
    for (std::size_t i = 0; i < v.samples().size(); ++i)
        CHECK(v.samples()[i] == w.samples()[i]); // bit-exact payload

    periodic_grid grid2(2, 8);
    std::vector<complex> vals(grid2.point_count());
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& c : vals) c = complex(dist(gen), dist(gen));
    auto z = periodic_field::from_samples(grid2, vals);
    std::stringstream buf2;
    write_binary(z, buf2);
    auto z2 = read_binary(buf2);
    CHECK_FALSE(z2.is_real());
    for (std::size_t i = 0; i < vals.size(); ++i) CHECK(z.samples()[i] == z2.samples()[i]);
}

TEST_CASE("csv export shape") {
    periodic_grid grid(1, 8);
    auto v = periodic_field::from_function(grid, [](double x) { return x < 0.5 ? 1.0 : -1.0; });
    std::stringstream os;
    write_csv(v, os);
    std::string line;
    std::getline(os, line);
    CHECK(line == "x,re,im");
    std::getline(os, line);
    CHECK(line.substr(0, 2) == "0,");
    int rows = 2;
    while (std::getline(os, line)) ++rows;
    CHECK(rows == 9); // header + 8 points
}

TEST_CASE("trig basis members and synthesis") {
    trig_basis l2(0.0);
    CHECK(l2.frequency(1) == 1);
    CHECK_FALSE(l2.is_cos(1));
    CHECK(l2.frequency(2) == 1);
    CHECK(l2.is_cos(2));
    CHECK(l2.frequency(3) == 2);
    CHECK(l2.frequency(4) == 2);
    CHECK_THROWS_AS(l2.frequency(0), std::domain_error);

    periodic_grid grid(1, 32);
    {
        const std::pair<int, double> coeffs[] = {{2, 1.0}};
        auto f = synthesize(coeffs, l2, grid);
        CHECK(f.is_real());
        for (int i = 0; i < grid.n; ++i) {
            const double x = static_cast<double>(i) / grid.n;
            CHECK(f.samples()[i].real() ==
                  Catch::Approx(std::sqrt(2.0) * std::cos(2.0 * M_PI * x)).margin(1e-13));
        }
        CHECK(hnorm(f, 0.0) == Catch::Approx(1.0).epsilon(1e-13));
    }
    {
        trig_basis h1(1.0);
        const std::pair<int, double> coeffs[] = {{2, 1.0}};
        auto f = synthesize(coeffs, h1, grid);
        for (int i = 0; i < grid.n; ++i) {
            const double x = static_cast<double>(i) / grid.n;
            CHECK(f.samples()[i].real() ==
                  Catch::Approx(std::sqrt(2.0) * std::cos(2.0 * M_PI * x) / (2.0 * M_PI))
                      .margin(1e-13));
        }
        CHECK(hnorm(f, 1.0) == Catch::Approx(1.0).epsilon(1e-13));
    }
    {
        auto f = synthesize({}, l2, grid);
        CHECK(linf_norm(f) == 0.0);
    }
}

TEST_CASE("basis members are normalized and orthogonal") {
    periodic_grid grid(1, 64);
    for (double t : {0.0, 1.0, 1.5}) {
        trig_basis basis(t);
        for (int j = 1; j <= 6; ++j) {
            const std::pair<int, double> coeffs[] = {{j, 1.0}};
            auto f = synthesize(coeffs, basis, grid);
            CHECK(hnorm(f, t) == Catch::Approx(1.0).epsilon(1e-12));
        }
        for (int j = 1; j <= 5; ++j) {
            const std::pair<int, double> cj[] = {{j, 1.0}};
            const std::pair<int, double> ck[] = {{j + 1, 1.0}};
            auto fj = synthesize(cj, basis, grid);
            auto fk = synthesize(ck, basis, grid);
            complex inner = 0.0;
            for (std::size_t m = 0; m < fj.spectrum().size(); ++m)
                inner += fj.spectrum()[m] * std::conj(fk.spectrum()[m]);
            CHECK(std::abs(inner) < 1e-14);
        }
    }
}

TEST_CASE("synthesis rejects unresolvable frequencies") {
    periodic_grid grid(1, 8);
    trig_basis basis(0.0);
    const std::pair<int, double> ok[] = {{6, 1.0}};  // k = 3 < 4
    CHECK_NOTHROW(synthesize(ok, basis, grid));
    const std::pair<int, double> bad[] = {{8, 1.0}}; // k = 4 = n/2
    CHECK_THROWS_AS(synthesize(bad, basis, grid), resolution_error);
    try {
        synthesize(bad, basis, grid);
    } catch (const resolution_error& e) {
        CHECK(std::string(e.what()).find("n >= 10") != std::string::npos);
    }
}
