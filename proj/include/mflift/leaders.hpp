#ifndef MFLIFT_LEADERS_HPP
#define MFLIFT_LEADERS_HPP

#include <vector>

#include "mflift/pyramid.hpp"

namespace mflift {

struct LeaderOptions {
    // Mask positions whose 3-neighborhood window wraps around the periodic
    // boundary (first/last position per axis). Default keeps them.
    bool mask_wrapped = false;
};

/// Wavelet leaders of a 1D coefficient pyramid: L_{j,k} is the supremum of
/// the L1-normalized coefficient magnitudes over the window {k-1,k,k+1} at
/// scale j and all finer scales contained in it. Computed bottom-up in
/// O(total coefficients). Zero leaders are masked invalid.
LeaderPyramid leaders1d(const CoefficientPyramid& pyramid,
                        const LeaderOptions& opts = {});

/// 2D counterpart: supremum over the 3x3 neighborhood, all 3 subbands and
/// all finer scales.
LeaderPyramid leaders2d(const CoefficientPyramid& pyramid,
                        const LeaderOptions& opts = {});

/// Dispatch on pyramid.dim.
LeaderPyramid compute_leaders(const CoefficientPyramid& pyramid,
                              const LeaderOptions& opts = {});

/// Pointwise log-slopes h(y, 2^-j) = log2(L_{j,k}) / (-j); shares the leader
/// layout, with the valid mask carried over (invalid entries are NaN).
struct SlopeLevel {
    int scale = 0;
    int rows = 1;
    int cols = 0;
    std::vector<double> value;
    std::vector<std::uint8_t> valid;
};
std::vector<SlopeLevel> log_slopes(const LeaderPyramid& leaders);

/// Coarse-grained large-deviation histogram at a single scale (Eq.-level
/// diagnostic, not an estimator): for each grid point h, counts valid
/// positions with |h(y,2^-j) - h| <= epsilon and returns log2(count)/(-j);
/// empty bins yield -infinity.
std::vector<double> ld_histogram(const LeaderPyramid& leaders, int scale,
                                 double epsilon,
                                 const std::vector<double>& h_grid);

} // namespace mflift

#endif
