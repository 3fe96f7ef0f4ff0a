#ifndef MFLIFT_TEST_HELPERS_HPP
#define MFLIFT_TEST_HELPERS_HPP

#include <cmath>
#include <vector>

#include "mflift/leaders.hpp"
#include "mflift/pyramid.hpp"
#include "mflift/rng.hpp"

namespace mflift::test {

// Builds a 1D coefficient pyramid from per-level values given coarse->fine
// (level i has scale label coarsest_scale + i and must double in size).
inline CoefficientPyramid make_pyramid_1d(
    std::vector<std::vector<double>> levels_coarse_to_fine, int coarsest_scale,
    CoeffNormalization norm = CoeffNormalization::L2Filterbank) {
    CoefficientPyramid pyr;
    pyr.dim = 1;
    pyr.norm = norm;
    const int n = static_cast<int>(levels_coarse_to_fine.size());
    for (int i = n - 1; i >= 0; --i) {
        CoefficientLevel lv;
        lv.scale = coarsest_scale + i;
        lv.rows = 1;
        lv.cols = static_cast<int>(levels_coarse_to_fine[i].size());
        lv.bands.push_back(std::move(levels_coarse_to_fine[i]));
        pyr.levels.push_back(std::move(lv));
    }
    return pyr;
}

// Leader pyramid with prescribed values (validity derived from positivity).
inline LeaderPyramid make_leaders_1d(
    std::vector<std::vector<double>> levels_coarse_to_fine, int coarsest_scale) {
    LeaderPyramid lp;
    lp.dim = 1;
    const int n = static_cast<int>(levels_coarse_to_fine.size());
    for (int i = n - 1; i >= 0; --i) {
        LeaderLevel lv;
        lv.scale = coarsest_scale + i;
        lv.rows = 1;
        lv.cols = static_cast<int>(levels_coarse_to_fine[i].size());
        lv.value = std::move(levels_coarse_to_fine[i]);
        lv.valid.assign(lv.value.size(), 1);
        for (std::size_t k = 0; k < lv.value.size(); ++k)
            if (!(lv.value[k] > 0.0)) lv.valid[k] = 0;
        lv.n_valid = 0;
        for (auto v : lv.valid) lv.n_valid += v;
        lp.levels.push_back(std::move(lv));
    }
    return lp;
}

// Reference leader computation by direct enumeration of the sup-set of the
// defining equation (all finer-or-equal scales whose cube sits inside the
// 3-window), independent of the fast bottom-up recursion.
inline double brute_leader_1d(const CoefficientPyramid& pyr, int scale,
                              int pos) {
    double best = 0.0;
    for (const auto& lv : pyr.levels) {
        if (lv.scale < scale) continue;  // only finer or equal scales
        const long f = 1L << (lv.scale - scale);
        const long n = lv.cols;
        const double factor = pyr.norm == CoeffNormalization::L1Prescribed
                                  ? 1.0
                                  : std::exp2(0.5 * lv.scale);
        const long lo = (static_cast<long>(pos) - 1) * f;
        const long hi = (static_cast<long>(pos) + 2) * f;  // exclusive
        if (hi - lo >= n) {
            for (long k = 0; k < n; ++k)
                best = std::max(best,
                                factor * std::abs(lv.bands[0][static_cast<std::size_t>(k)]));
        } else {
            for (long k = lo; k < hi; ++k) {
                const long kk = ((k % n) + n) % n;
                best = std::max(best,
                                factor * std::abs(lv.bands[0][static_cast<std::size_t>(kk)]));
            }
        }
    }
    return best;
}

inline double brute_leader_2d(const CoefficientPyramid& pyr, int scale, int r,
                              int c) {
    double best = 0.0;
    for (const auto& lv : pyr.levels) {
        if (lv.scale < scale) continue;
        const long f = 1L << (lv.scale - scale);
        const long nr = lv.rows, nc = lv.cols;
        const double factor = pyr.norm == CoeffNormalization::L1Prescribed
                                  ? 1.0
                                  : std::exp2(lv.scale);  // 2^{d j / 2}, d = 2
        const long rlo = (static_cast<long>(r) - 1) * f;
        const long rhi = (static_cast<long>(r) + 2) * f;
        const long clo = (static_cast<long>(c) - 1) * f;
        const long chi = (static_cast<long>(c) + 2) * f;
        for (long rr = rlo; rr < rhi; ++rr) {
            const long ri = ((rr % nr) + nr) % nr;
            for (long cc = clo; cc < chi; ++cc) {
                const long ci = ((cc % nc) + nc) % nc;
                for (const auto& band : lv.bands)
                    best = std::max(
                        best, factor * std::abs(band[static_cast<std::size_t>(
                                  ri * nc + ci)]));
            }
        }
    }
    return best;
}

// Random coefficient pyramid for property tests.
inline CoefficientPyramid random_pyramid_1d(int finest_n, int levels,
                                            std::uint64_t seed,
                                            bool with_zeros = false) {
    Rng rng(seed);
    std::vector<std::vector<double>> lv;
    int n = finest_n >> (levels - 1);
    for (int i = 0; i < levels; ++i) {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (auto& x : v) {
            x = rng.normal();
            if (with_zeros && rng.uniform() < 0.1) x = 0.0;
        }
        lv.push_back(std::move(v));
        n *= 2;
    }
    int coarsest = 1;
    return make_pyramid_1d(std::move(lv), coarsest);
}

inline CoefficientPyramid random_pyramid_2d(int finest_n, int levels,
                                            std::uint64_t seed) {
    Rng rng(seed);
    CoefficientPyramid pyr;
    pyr.dim = 2;
    pyr.norm = CoeffNormalization::L2Filterbank;
    int n = finest_n;
    int scale = levels;  // finest label = levels, coarsest = 1
    for (int i = 0; i < levels; ++i) {
        CoefficientLevel lv;
        lv.scale = scale--;
        lv.rows = n;
        lv.cols = n;
        lv.bands.assign(3, std::vector<double>(static_cast<std::size_t>(n) * n));
        for (auto& band : lv.bands)
            for (auto& x : band) x = rng.normal();
        pyr.levels.push_back(std::move(lv));
        n /= 2;
    }
    return pyr;
}

} // namespace mflift::test

#endif
