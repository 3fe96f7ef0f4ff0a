#ifndef MFLIFT_TRANSFORM_HPP
#define MFLIFT_TRANSFORM_HPP

#include <span>
#include <vector>

#include "mflift/pyramid.hpp"
#include "mflift/wavelet.hpp"

namespace mflift {

/// Orthonormal DWT of a 1D signal over `levels` dyadic scales with periodic
/// boundary. Requires n >= 2^levels * filter length and n divisible by
/// 2^levels. Coefficients are stored L2-normalized; scale labels are
/// ceil(log2 n) - octave.
CoefficientPyramid dwt1d(std::span<const double> signal,
                         const WaveletFilter& filter, int levels);

/// Separable orthonormal 2D DWT (3 detail bands per scale), periodic
/// boundary; `image` is rows*cols row-major.
CoefficientPyramid dwt2d(std::span<const double> image, int rows, int cols,
                         const WaveletFilter& filter, int levels);

/// Inverse of dwt1d (exact reconstruction up to roundoff).
std::vector<double> idwt1d(const CoefficientPyramid& pyramid,
                           const WaveletFilter& filter);

/// Largest decomposition depth whose coarsest level is still wider than the
/// filter: floor(log2 n) - ceil(log2 taps).
int default_levels(int n, const WaveletFilter& filter);
int default_levels(int rows, int cols, const WaveletFilter& filter);

} // namespace mflift

#endif
