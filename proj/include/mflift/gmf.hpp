#ifndef MFLIFT_GMF_HPP
#define MFLIFT_GMF_HPP

#include <utility>
#include <vector>

#include "mflift/gridfun.hpp"
#include "mflift/pyramid.hpp"
#include "mflift/structure.hpp"

namespace mflift {

/// Intercept/slope of the mean-log-leader regression: mean_k log2 L_{j,k}
/// fitted against j over [j1, j2]. c10 is the intercept at j = 0; h_mode is
/// minus the slope (positive for leaders decaying toward finer scales) and
/// estimates the location of the spectrum mode.
struct CenteringEstimate {
    double c10 = 0.0;
    double h_mode = 0.0;
    int j1 = 0;
    int j2 = 0;
};

CenteringEstimate estimate_centering(const LeaderPyramid& leaders, int j1,
                                     int j2);

/// Per-scale log2 S_g(q, j) of the generalized structure function built from
/// phi_{j,k} = (log2 L_{j,k} - c10)/(-j) and the log-scale terms
/// e_{j,k} = -j (q phi - g(phi)); accumulated with a max shift so the
/// generalized leaders are never materialized at linear scale. Returns
/// (scale, log2 S_g) for every scale with valid leaders, ascending.
std::vector<std::pair<int, double>> generalized_log_structure(
    const LeaderPyramid& leaders, const CenteringEstimate& centering, double q,
    const GFunction& g);

/// Full table over a q grid, restricted to scales in [jmin, jmax] (pass the
/// pyramid's extremes to keep everything). Reuses StructureFunctionTable so
/// the same regression applies.
StructureFunctionTable generalized_structure_functions(
    const LeaderPyramid& leaders, const CenteringEstimate& centering,
    const std::vector<double>& q_grid, const GFunction& g, int jmin, int jmax);

/// Same regression contract as scaling_exponents, applied to log2 S_g.
ScalingFunction generalized_scaling_exponents(
    const StructureFunctionTable& table, int j1, int j2, bool weighted);

/// Generalized Legendre spectrum L_g(h) = min_q { d + q h - zeta_g(q) } - g(h).
SpectrumCurve generalized_spectrum(const ScalingFunction& zeta_g,
                                   const GFunction& g,
                                   const GridFunction& h_grid, int d);

struct GmfParameterGrid {
    std::vector<double> gammas;         // 0 is always included
    std::vector<double> deltas;
    std::vector<double> q_grid;
    GFunction::Shape shape = GFunction::Shape::Parabola;
};

/// Paper-style defaults: gamma in {0,5,10,100,200,500}, delta sweeping
/// h_mode +- 0.3 in 21 steps, q in [-4,4] step 0.25, parabolic g.
GmfParameterGrid default_parameter_grid(const CenteringEstimate& centering);

struct EnvelopeResult {
    CenteringEstimate centering;
    ScalingFunction zeta;        // classical scaling exponents
    SpectrumCurve legendre;      // classical Legendre spectrum (gamma = 0)
    std::vector<SpectrumCurve> members;  // per (gamma>0, delta)
    std::vector<double> member_min_r2;   // min over q of the fit R^2
    SpectrumCurve envelope;              // pointwise min over all of the above
};

/// Full generalized-formalism estimate: centering once, classical spectrum as
/// the gamma=0 member, one generalized spectrum per (gamma>0, delta), and
/// their pointwise envelope. The member loop runs in parallel; results do not
/// depend on scheduling. Pass `centering` to reuse an estimate fitted on a
/// different scale range (default recomputes it on [j1, j2]).
EnvelopeResult envelope_estimate(const LeaderPyramid& leaders,
                                 const GmfParameterGrid& grid, int j1, int j2,
                                 bool weighted, const GridFunction& h_grid,
                                 int d, int threads = 0,
                                 const CenteringEstimate* centering = nullptr);

} // namespace mflift

#endif
