#ifndef MFLIFT_PYRAMID_HPP
#define MFLIFT_PYRAMID_HPP

#include <cstdint>
#include <vector>

namespace mflift {

// Scale labeling convention used throughout: a level's `scale` is the fine
// index j, i.e. the level holding ~2^(d*j) coefficients of an input whose
// shortest axis is ~2^J samples carries label j (analysis scale a = 2^-j of
// the domain). Finer levels have larger labels; decay exponents are read off
// regressions against -j.

enum class CoeffNormalization : std::uint8_t {
    L2Filterbank,  // raw orthonormal filterbank output; leaders apply 2^(d j/2)
    L1Prescribed,  // values are already on the leader (L1) scale; used as-is
};

/// One level of a coefficient pyramid. For dim=1 there is a single band and
/// rows==1; for dim=2 the three bands are x-detail (HL), y-detail (LH) and
/// diagonal (HH), each rows*cols row-major. `tainted` (when nonempty) flags
/// coefficients whose periodic filter support wrapped around the boundary at
/// any stage of the cascade.
struct CoefficientLevel {
    int scale = 0;
    int rows = 1;
    int cols = 0;
    std::vector<std::vector<double>> bands;
    std::vector<std::uint8_t> tainted;
};

struct CoefficientPyramid {
    int dim = 1;
    CoeffNormalization norm = CoeffNormalization::L2Filterbank;
    std::vector<CoefficientLevel> levels;  // ordered fine -> coarse
    // Final lowpass residual of the transform (empty for prescribed pyramids).
    std::vector<double> approx;
    int approx_rows = 0;
    int approx_cols = 0;

    bool empty() const { return levels.empty(); }
    const CoefficientLevel* find(int scale) const {
        for (const auto& lv : levels)
            if (lv.scale == scale) return &lv;
        return nullptr;
    }
};

/// One level of a leader pyramid; `value` holds L_{j,k} >= 0 and `valid`
/// flags the positions that enter statistics (zero leaders and, optionally,
/// wrap-contaminated borders are masked out).
struct LeaderLevel {
    int scale = 0;
    int rows = 1;
    int cols = 0;
    std::vector<double> value;
    std::vector<std::uint8_t> valid;
    std::size_t n_valid = 0;
};

struct LeaderPyramid {
    int dim = 1;
    std::vector<LeaderLevel> levels;  // ordered fine -> coarse

    bool empty() const { return levels.empty(); }
    const LeaderLevel* find(int scale) const {
        for (const auto& lv : levels)
            if (lv.scale == scale) return &lv;
        return nullptr;
    }
    int finest_scale() const;
    int coarsest_scale() const;
};

} // namespace mflift

#endif
