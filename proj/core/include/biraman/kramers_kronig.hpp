#pragma once

#include "biraman/spectral.hpp"

namespace biraman::medium {

// Minimum ratio of grid span to estimated spectral support accepted by
// kramers_kronig(). Below it the truncated tails dominate the result.
inline constexpr double kk_min_span_ratio = 20.0;

// Half-extent (Hz, from the midpoint of the outermost half-maximum crossings)
// that holds the bulk of |Im chi|: distance to the outer half-maximum plus
// four outer-shoulder widths. Zero for an identically zero profile.
double estimate_support(const SpectralProfile& susceptibility_profile);

// Recovers the index deviation Re chi / 2 from the gain part Im chi of a
// sampled susceptibility via the Kramers-Kronig (Hilbert) relation
//
//   Re chi(x) = (1/pi) P.V. integral Im chi(x') / (x' - x) dx'.
//
// The principal value is taken with the odd-offset rule
//   Re chi_i = (2/pi) * sum_{j - i odd} Im chi_j / (j - i),
// which is exact for band-limited integrands and needs no special handling of
// the singular point. The sum is a linear (non-circular) convolution and is
// evaluated with a zero-padded FFT. Only the grid content enters: the gain is
// treated as zero outside the sampled window.
//
// Throws WrongProfileKind, NonUniformGrid, or GridTooNarrow when the full
// grid span is below kk_min_span_ratio times estimate_support().
SpectralProfile kramers_kronig(const SpectralProfile& susceptibility_profile);

}  // namespace biraman::medium
