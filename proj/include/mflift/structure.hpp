#ifndef MFLIFT_STRUCTURE_HPP
#define MFLIFT_STRUCTURE_HPP

#include <span>
#include <string>
#include <vector>

#include "mflift/gridfun.hpp"
#include "mflift/pyramid.hpp"

namespace mflift {

/// Weighted least-squares line fit. Weights must be >= 0, not all zero.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    double r2 = 1.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 std::span<const double> w);

/// log2 of the sample q-th moments of leaders per scale, computed in the log
/// domain with a per-scale max shift (no overflow for large |q|).
struct StructureFunctionTable {
    std::vector<double> q_grid;
    std::vector<int> scales;              // ascending labels
    std::vector<std::size_t> n_valid;     // per scale
    std::vector<double> mean_log2;        // mean of log2 L per scale
    std::vector<double> var_log2;         // population variance of log2 L
    std::vector<double> log2_s;           // [qi * scales.size() + si]
    std::vector<int> dropped_scales;      // scales with no valid leader

    double at(std::size_t qi, std::size_t si) const {
        return log2_s[qi * scales.size() + si];
    }
};

StructureFunctionTable structure_functions(const LeaderPyramid& leaders,
                                           const std::vector<double>& q_grid);

/// Scaling exponents from per-scale log2 S by linear regression over scales
/// j1..j2 (at least 3 present). Unweighted regresses against -j directly;
/// weighted uses inverse-variance weights n_j / var(log2 L_j).
struct ScalingFunction {
    std::vector<double> q_grid;
    std::vector<double> zeta;
    std::vector<double> intercept;   // fitted log2 S at j = 0
    std::vector<double> slope_se;
    std::vector<double> r2;
    int j1 = 0;
    int j2 = 0;
    bool weighted = false;
};

ScalingFunction scaling_exponents(const StructureFunctionTable& table, int j1,
                                  int j2, bool weighted);

/// Sampled spectrum estimate with provenance.
struct SpectrumCurve {
    std::string estimator;  // "legendre" | "generalized" | "envelope" | "theory"
    int dim = 1;
    double gamma = 0.0;
    double delta = 0.0;
    double q_min = 0.0;
    double q_max = 0.0;
    int j1 = 0;
    int j2 = 0;
    int nvm = 0;
    GridFunction curve;

    double max_finite() const;
};

/// Classical Legendre spectrum L(h) = min_q { d + q h - zeta(q) } sampled on
/// h_grid's grid (its values are ignored).
SpectrumCurve legendre_spectrum(const ScalingFunction& zeta,
                                const GridFunction& h_grid, int d);

/// Parametric form (h(q), L(h(q))) from centered finite differences of zeta.
std::vector<std::pair<double, double>> parametric_spectrum(
    const ScalingFunction& zeta, int d);

} // namespace mflift

#endif
