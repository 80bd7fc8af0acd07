#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <memory>
#include <mutex>

namespace biraman::detail {

namespace {

// The FFTW planner is not re-entrant; execution on distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};
template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
    return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * n)));
}

}  // namespace

std::size_t next_pow2(std::size_t n) noexcept {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

std::vector<std::complex<double>> rfft(std::span<const double> input) {
    const std::size_t n = input.size();
    const std::size_t bins = n / 2 + 1;
    auto in = fftw_buffer<double>(n);
    auto out = fftw_buffer<fftw_complex>(bins);
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
    }
    std::memcpy(in.get(), input.data(), sizeof(double) * n);
    fftw_execute(plan.get());

    std::vector<std::complex<double>> result(bins);
    for (std::size_t k = 0; k < bins; ++k) result[k] = {out[k][0], out[k][1]};
    return result;
}

std::vector<double> irfft(std::span<const std::complex<double>> spectrum, std::size_t n) {
    const std::size_t bins = n / 2 + 1;
    auto in = fftw_buffer<fftw_complex>(bins);
    auto out = fftw_buffer<double>(n);
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_c2r_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
    }
    for (std::size_t k = 0; k < bins; ++k) {
        const auto v = k < spectrum.size() ? spectrum[k] : std::complex<double>{};
        in[k][0] = v.real();
        in[k][1] = v.imag();
    }
    fftw_execute(plan.get());

    std::vector<double> result(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) result[i] = out[i] * scale;
    return result;
}

std::vector<double> hilbert(std::span<const double> input) {
    const std::size_t n = input.size();
    auto spec = rfft(input);
    const std::complex<double> minus_i{0.0, -1.0};
    spec[0] = 0.0;
    for (std::size_t k = 1; k < spec.size(); ++k) spec[k] *= minus_i;
    if (n % 2 == 0) spec.back() = 0.0;  // Nyquist bin has no defined sign
    return irfft(spec, n);
}

}  // namespace biraman::detail
