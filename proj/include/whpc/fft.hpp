#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include <fftw3.h>

namespace whpc::detail {

/// Thread-safe plan cache for small complex DFTs.  Plans are created with
/// FFTW_UNALIGNED | FFTW_ESTIMATE so they can execute on any caller buffer;
/// plan creation is serialized (FFTW requires it), execution is not.
class fft_plans {
public:
    static fft_plans& instance() {
        static fft_plans plans;
        return plans;
    }

    void execute(int d, int n, int sign, const std::complex<double>* in, std::complex<double>* out) {
        fftw_plan plan = get(d, n, sign);
        // new-array execute; fftw_complex and std::complex<double> share layout
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                         reinterpret_cast<fftw_complex*>(out));
    }

    ~fft_plans() {
        for (auto& [key, plan] : cache_) fftw_destroy_plan(plan);
    }

private:
    fftw_plan get(int d, int n, int sign) {
        const std::tuple<int, int, int> key{d, n, sign};
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        std::vector<std::complex<double>> a(static_cast<std::size_t>(d == 1 ? n : n * n));
        std::vector<std::complex<double>> b(a.size());
        auto* pa = reinterpret_cast<fftw_complex*>(a.data());
        auto* pb = reinterpret_cast<fftw_complex*>(b.data());
        fftw_plan plan = d == 1 ? fftw_plan_dft_1d(n, pa, pb, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
                                : fftw_plan_dft_2d(n, n, pa, pb, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        cache_.emplace(key, plan);
        return plan;
    }

    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> cache_;
};

/// Samples -> Fourier coefficients w.r.t. e^{2πik·x} (includes the 1/n^d scale).
inline void dft_forward(int d, int n, const std::complex<double>* samples,
                        std::complex<double>* spectrum) {
    fft_plans::instance().execute(d, n, FFTW_FORWARD, samples, spectrum);
    const std::size_t total = static_cast<std::size_t>(d == 1 ? n : n * n);
    const double scale = 1.0 / static_cast<double>(total);
    for (std::size_t i = 0; i < total; ++i) spectrum[i] *= scale;
}

/// Fourier coefficients -> samples (plain exponential sum, no scale).
inline void dft_backward(int d, int n, const std::complex<double>* spectrum,
                         std::complex<double>* samples) {
    fft_plans::instance().execute(d, n, FFTW_BACKWARD, spectrum, samples);
}

/// Signed wavenumber of storage index m on an n-point grid: 0,1,…,n/2-1,-n/2,…,-1.
inline int wavenumber(std::size_t m, int n) {
    return static_cast<int>(m) < n / 2 ? static_cast<int>(m) : static_cast<int>(m) - n;
}

} // namespace whpc::detail
