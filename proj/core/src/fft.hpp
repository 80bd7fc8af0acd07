#pragma once

// Thin RAII layer over FFTW. Internal to biraman_core.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace biraman::detail {

// Unnormalized forward transform of a real sequence; returns n/2 + 1 bins.
std::vector<std::complex<double>> rfft(std::span<const double> input);

// Inverse of rfft for a length-n real sequence, normalized by 1/n.
std::vector<double> irfft(std::span<const std::complex<double>> spectrum, std::size_t n);

// Discrete-time Hilbert transform of a (periodic) real record via the
// analytic signal: multiply positive bins by -i and negative bins by +i.
std::vector<double> hilbert(std::span<const double> input);

std::size_t next_pow2(std::size_t n) noexcept;

}  // namespace biraman::detail
