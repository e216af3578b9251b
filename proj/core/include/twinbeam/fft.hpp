#pragma once

#include <complex>
#include <vector>

// Thin wrapper over FFTW. Plan creation is serialized internally, so these
// are safe to call from multiple worker threads.

namespace tbl::fft {

// Forward DFT of a real sequence; returns n/2+1 non-redundant bins,
// unnormalized (sum convention).
std::vector<std::complex<double>> real_forward(const std::vector<double>& in);

// Inverse of real_forward; `n` is the real output length. Divides by n so
// real_inverse(real_forward(x), n) == x.
std::vector<double> real_inverse(const std::vector<std::complex<double>>& in,
                                 std::size_t n);

// Complex DFT, unnormalized. sign = -1 forward, +1 backward.
std::vector<std::complex<double>> complex_dft(
    const std::vector<std::complex<double>>& in, int sign);

}  // namespace tbl::fft
