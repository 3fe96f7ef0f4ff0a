#ifndef MFLIFT_WAVELET_HPP
#define MFLIFT_WAVELET_HPP

#include <vector>

namespace mflift {

/// Orthonormal conjugate-quadrature filter pair. `lowpass` sums to sqrt(2);
/// the highpass is derived by the QMF rule g[k] = (-1)^k h[M-1-k].
struct WaveletFilter {
    std::vector<double> lowpass;
    int vanishing_moments = 0;

    std::vector<double> highpass() const;
    int length() const { return static_cast<int>(lowpass.size()); }
};

/// Minimum-phase Daubechies filter with `n_vanishing_moments` in 1..10
/// (2*N taps). Throws UnsupportedFilterError outside that range.
WaveletFilter daubechies_filter(int n_vanishing_moments);

} // namespace mflift

#endif
