#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "whpc/errors.hpp"
#include "whpc/fft.hpp"

namespace whpc {

using complex = std::complex<double>;

/// Uniform grid on the unit torus T^d, d in {1, 2}, with an even number of
/// modes per dimension.  Sample i of a 1-d grid sits at x = i/n; 2-d grids are
/// row-major with x = (i1/n, i2/n).
struct periodic_grid {
    int d = 1;
    int n = 8;

    periodic_grid() = default;
    periodic_grid(int d_, int n_) : d(d_), n(n_) {
        if (d != 1 && d != 2) throw std::domain_error("periodic_grid: spatial dimension must be 1 or 2");
        if (n < 8 || n % 2 != 0) throw std::domain_error("periodic_grid: n must be even and >= 8");
    }

    std::size_t point_count() const {
        return d == 1 ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n) * n;
    }

    friend bool operator==(const periodic_grid& a, const periodic_grid& b) {
        return a.d == b.d && a.n == b.n;
    }
    friend bool operator!=(const periodic_grid& a, const periodic_grid& b) { return !(a == b); }
};

/// A function on the torus held as both uniform samples and Fourier
/// coefficients v̂_k w.r.t. e^{2πik·x}; the two representations are kept
/// consistent by construction.  Fields are immutable values.
class periodic_field {
public:
    periodic_field() = default;

    static periodic_field from_samples(const periodic_grid& grid, std::vector<complex> samples) {
        check_size(grid, samples.size());
        periodic_field f;
        f.grid_ = grid;
        f.samples_ = std::move(samples);
        f.spectrum_.resize(f.samples_.size());
        detail::dft_forward(grid.d, grid.n, f.samples_.data(), f.spectrum_.data());
        f.real_ = f.measure_real();
        return f;
    }

    static periodic_field from_real_samples(const periodic_grid& grid, std::span<const double> samples) {
        check_size(grid, samples.size());
        std::vector<complex> values(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) values[i] = samples[i];
        auto f = from_samples(grid, std::move(values));
        f.real_ = true;
        return f;
    }

    static periodic_field from_spectrum(const periodic_grid& grid, std::vector<complex> spectrum) {
        check_size(grid, spectrum.size());
        periodic_field f;
        f.grid_ = grid;
        f.spectrum_ = std::move(spectrum);
        f.samples_.resize(f.spectrum_.size());
        detail::dft_backward(grid.d, grid.n, f.spectrum_.data(), f.samples_.data());
        f.real_ = f.measure_real();
        return f;
    }

    static periodic_field zero(const periodic_grid& grid) {
        periodic_field f;
        f.grid_ = grid;
        f.samples_.assign(grid.point_count(), complex(0.0));
        f.spectrum_.assign(grid.point_count(), complex(0.0));
        f.real_ = true;
        return f;
    }

    /// Sample a scalar function of the coordinates; 1-d overload.
    static periodic_field from_function(const periodic_grid& grid,
                                        const std::function<double(double)>& fn) {
        if (grid.d != 1) throw std::domain_error("from_function: 1-d callback on a 2-d grid");
        std::vector<double> v(grid.point_count());
        for (int i = 0; i < grid.n; ++i) v[i] = fn(static_cast<double>(i) / grid.n);
        return from_real_samples(grid, v);
    }

    static periodic_field from_function(const periodic_grid& grid,
                                        const std::function<double(double, double)>& fn) {
        if (grid.d != 2) throw std::domain_error("from_function: 2-d callback on a 1-d grid");
        std::vector<double> v(grid.point_count());
        for (int i1 = 0; i1 < grid.n; ++i1)
            for (int i2 = 0; i2 < grid.n; ++i2)
                v[static_cast<std::size_t>(i1) * grid.n + i2] =
                    fn(static_cast<double>(i1) / grid.n, static_cast<double>(i2) / grid.n);
        return from_real_samples(grid, v);
    }

    const periodic_grid& grid() const { return grid_; }
    const std::vector<complex>& samples() const { return samples_; }
    const std::vector<complex>& spectrum() const { return spectrum_; }
    bool is_real() const { return real_; }
    complex mean() const { return spectrum_.empty() ? complex(0.0) : spectrum_[0]; }

private:
    static void check_size(const periodic_grid& grid, std::size_t size) {
        if (size != grid.point_count())
            throw std::invalid_argument("periodic_field: value count does not match the grid");
    }

    bool measure_real() const {
        double vmax = 0.0, imax = 0.0;
        for (const auto& v : samples_) {
            vmax = std::max(vmax, std::abs(v));
            imax = std::max(imax, std::abs(v.imag()));
        }
        return imax <= 1e-11 * std::max(vmax, 1e-300);
    }

    periodic_grid grid_{};
    std::vector<complex> samples_;
    std::vector<complex> spectrum_;
    bool real_ = true;
};

namespace detail {

/// |k|² for the storage index m of a d-dimensional spectrum.
inline double wavenumber_sq(const periodic_grid& grid, std::size_t m) {
    if (grid.d == 1) {
        const double k = wavenumber(m, grid.n);
        return k * k;
    }
    const double k1 = wavenumber(m / static_cast<std::size_t>(grid.n), grid.n);
    const double k2 = wavenumber(m % static_cast<std::size_t>(grid.n), grid.n);
    return k1 * k1 + k2 * k2;
}

} // namespace detail

/// L² norm over the unit cell, sqrt(Σ_k |v̂_k|²).
inline double l2_norm(const periodic_field& v) {
    double s = 0.0;
    for (const auto& c : v.spectrum()) s += std::norm(c);
    return std::sqrt(s);
}

/// Homogeneous Sobolev norm (Σ_{k≠0} (2π|k|)^{2s} |v̂_k|²)^{1/2}; the zero
/// mode is always excluded, and for s < 0 it must vanish.
inline double hnorm(const periodic_field& v, double s) {
    if (s < 0.0 && std::abs(v.mean()) > 1e-12 * std::max(l2_norm(v), 1e-300))
        throw std::domain_error("hnorm: negative smoothness requires a zero-mean field");
    const auto& spec = v.spectrum();
    double sum = 0.0;
    for (std::size_t m = 1; m < spec.size(); ++m) {
        const double k2 = detail::wavenumber_sq(v.grid(), m);
        if (k2 == 0.0) continue; // the (0,0) mode only, m = 0 in 1-d
        sum += std::pow(4.0 * M_PI * M_PI * k2, s) * std::norm(spec[m]);
    }
    return std::sqrt(sum);
}

inline double linf_norm(const periodic_field& v) {
    double m = 0.0;
    for (const auto& c : v.samples()) m = std::max(m, std::abs(c));
    return m;
}

inline periodic_field operator+(const periodic_field& a, const periodic_field& b) {
    if (a.grid() != b.grid()) throw std::domain_error("field addition: grid mismatch");
    std::vector<complex> s(a.samples());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += b.samples()[i];
    return periodic_field::from_samples(a.grid(), std::move(s));
}

inline periodic_field operator-(const periodic_field& a, const periodic_field& b) {
    if (a.grid() != b.grid()) throw std::domain_error("field subtraction: grid mismatch");
    std::vector<complex> s(a.samples());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] -= b.samples()[i];
    return periodic_field::from_samples(a.grid(), std::move(s));
}

inline periodic_field operator*(double alpha, const periodic_field& v) {
    std::vector<complex> s(v.samples());
    for (auto& c : s) c *= alpha;
    return periodic_field::from_samples(v.grid(), std::move(s));
}

/// Project away the zero mode.
inline periodic_field subtract_mean(const periodic_field& v) {
    std::vector<complex> spec(v.spectrum());
    spec[0] = 0.0;
    return periodic_field::from_spectrum(v.grid(), std::move(spec));
}

inline periodic_field pointwise_exp(const periodic_field& a) {
    std::vector<complex> s(a.samples());
    for (auto& c : s) c = std::exp(c);
    return periodic_field::from_samples(a.grid(), std::move(s));
}

inline periodic_field pointwise_multiply(const periodic_field& a, const periodic_field& b) {
    if (a.grid() != b.grid()) throw std::domain_error("pointwise_multiply: grid mismatch");
    std::vector<complex> s(a.samples());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] *= b.samples()[i];
    return periodic_field::from_samples(a.grid(), std::move(s));
}

namespace io {

inline void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xffu);
    os.write(reinterpret_cast<const char*>(b), 4);
}

inline std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

inline void put_f64(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xffu);
    os.write(reinterpret_cast<const char*>(b), 8);
}

inline double get_f64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

} // namespace io

/// Flat binary layout: header (d, n, real-flag as little-endian u32), then
/// row-major complex samples as little-endian doubles (re, im per point).
inline void write_binary(const periodic_field& v, std::ostream& os) {
    io::put_u32(os, static_cast<std::uint32_t>(v.grid().d));
    io::put_u32(os, static_cast<std::uint32_t>(v.grid().n));
    io::put_u32(os, v.is_real() ? 1u : 0u);
    for (const auto& c : v.samples()) {
        io::put_f64(os, c.real());
        io::put_f64(os, c.imag());
    }
}

inline void write_binary(const periodic_field& v, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_binary: cannot open " + path);
    write_binary(v, os);
}

inline periodic_field read_binary(std::istream& is) {
    const auto d = static_cast<int>(io::get_u32(is));
    const auto n = static_cast<int>(io::get_u32(is));
    const std::uint32_t real_flag = io::get_u32(is);
    periodic_grid grid(d, n);
    std::vector<complex> samples(grid.point_count());
    for (auto& c : samples) {
        const double re = io::get_f64(is);
        const double im = io::get_f64(is);
        c = complex(re, im);
    }
    if (!is) throw std::runtime_error("read_binary: truncated field payload");
    auto f = periodic_field::from_samples(grid, std::move(samples));
    if (real_flag && !f.is_real())
        throw std::runtime_error("read_binary: field flagged real has a complex payload");
    return f;
}

inline periodic_field read_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_binary: cannot open " + path);
    return read_binary(is);
}

} // namespace whpc
