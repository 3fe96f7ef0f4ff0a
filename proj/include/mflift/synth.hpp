#ifndef MFLIFT_SYNTH_HPP
#define MFLIFT_SYNTH_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mflift/pyramid.hpp"

namespace mflift {

struct Image {
    int rows = 0;
    int cols = 0;
    std::vector<double> pix;  // row-major

    double& at(int r, int c) { return pix[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const {
        return pix[static_cast<std::size_t>(r) * cols + c];
    }
};

/// Closed-form reference spectrum: eval(h) returns D(h) (or -infinity outside
/// support); [h_min, h_max] hints at the plottable support.
struct TheorySpectrum {
    int dim = 1;
    double h_min = 0.0;
    double h_max = 0.0;
    bool degenerate = false;  // single-point spectrum (flagged, still usable)
    std::function<double(double)> eval;
};

// ---- alpha-stable Levy motion plus Brownian component ----

/// Cumulative sum of i.i.d. symmetric alpha-stable increments (unit scale,
/// Chambers-Mallows-Stuck) plus an independent unit-variance Brownian path.
std::vector<double> gen_levy_brownian(std::size_t n, double alpha,
                                      std::uint64_t seed);
/// Test hook with separate component amplitudes (same draws as above).
std::vector<double> gen_levy_brownian_mixed(std::size_t n, double alpha,
                                            std::uint64_t seed,
                                            double stable_amp,
                                            double brownian_amp);
/// D(h) = alpha*h on [0, 1/2), 1 at h = 1/2, -infinity elsewhere.
TheorySpectrum theory_levy(double alpha);

// ---- binomial deterministic wavelet cascade ----

/// Prescribed-coefficient cascade: root value 1, children w*c and (1-w)*c;
/// level t in 1..depth has 2^t values, stored as an L1-prescribed pyramid.
CoefficientPyramid gen_dwc(int depth, double w);
/// Hard threshold: zero coefficients with |c| < 2^(-theta * scale).
CoefficientPyramid threshold_dwc(const CoefficientPyramid& pyramid,
                                 double theta);
TheorySpectrum theory_dwc(double w);
TheorySpectrum theory_dwc_thresholded(double w, double theta);

// ---- multifractal random walk ----

/// 1D MRW path: fractionally integrated Gaussian noise (spectral order
/// H - 1/2) modulated by exp(omega), omega a stationary Gaussian with
/// covariance lambda2 * ln+(L/(|lag|+1)) (integral scale L = n/8 by default)
/// and mean -lambda2 * ln(L), synthesized by circulant embedding; the
/// modulated increments are then cumulatively summed. n must be a power of
/// two.
std::vector<double> gen_mrw1d(std::size_t n, double H, double lambda2,
                              std::uint64_t seed, double integral_scale = 0.0);
/// 2D counterpart: order-H correlated texture, modulation, then one more
/// spectral integration order (no cumulative sum).
Image gen_mrw2d(int rows, int cols, double H, double lambda2,
                std::uint64_t seed, double integral_scale = 0.0);
/// D(h) = d - (h - (H + lambda2/2))^2 / (2 lambda2), returned on all reals.
TheorySpectrum theory_mrw(double H, double lambda2, int dim);

/// Pointwise supremum of two reference spectra.
TheorySpectrum theory_sup(const TheorySpectrum& a, const TheorySpectrum& b);

// ---- process specifications (config-level description) ----

struct ProcessSpec {
    enum class Kind {
        LevyBrownian,
        Dwc,
        DwcThresholded,
        Mrw1d,
        Mrw2d,
        Concat1d,
        Concat2d,
    };
    Kind kind = Kind::Mrw1d;
    double alpha = 1.25;          // levy
    double w = 0.45;              // dwc
    double theta = 1.0;           // dwc threshold
    double H = 0.72;              // mrw
    double lambda2 = 0.08;        // mrw
    std::size_t n = 1 << 16;      // 1d length
    int rows = 512, cols = 512;   // 2d shape
    int depth = 14;               // dwc levels
    std::vector<ProcessSpec> pieces;  // concat members
};

/// What a generator hands to the analysis pipeline: either raw data or a
/// prescribed coefficient pyramid (deterministic cascades).
struct Realization {
    int dim = 1;
    bool is_pyramid = false;
    std::vector<double> signal;
    Image image;
    CoefficientPyramid pyramid;
};

ProcessSpec::Kind process_kind_from_string(const std::string& name);
std::string to_string(ProcessSpec::Kind kind);

/// Validates the spec and generates one realization; concatenation pieces
/// use subseed(seed, piece_index).
Realization generate(const ProcessSpec& spec, std::uint64_t seed);
TheorySpectrum theory(const ProcessSpec& spec);

} // namespace mflift

#endif
