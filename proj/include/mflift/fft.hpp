#ifndef MFLIFT_FFT_HPP
#define MFLIFT_FFT_HPP

#include <complex>
#include <vector>

namespace mflift {

/// In-place iterative radix-2 FFT; size must be a power of two. The inverse
/// applies the 1/n factor.
void fft(std::vector<std::complex<double>>& a, bool inverse);

/// Row-major 2D FFT over rows x cols (both powers of two).
void fft2(std::vector<std::complex<double>>& a, int rows, int cols,
          bool inverse);

bool is_pow2(std::size_t n);

} // namespace mflift

#endif
