#ifndef MFLIFT_ANALYSIS_HPP
#define MFLIFT_ANALYSIS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mflift/gmf.hpp"
#include "mflift/leaders.hpp"
#include "mflift/structure.hpp"
#include "mflift/synth.hpp"
#include "mflift/transform.hpp"

namespace mflift {

/// Everything the estimation pipeline needs to run on one dataset. Zeros and
/// NaNs mean "derive a default from the data" where noted.
struct AnalysisConfig {
    int nvm = 3;             // Daubechies vanishing moments
    int levels = 0;          // decomposition depth; 0 -> default_levels
    int j1 = 0;              // fit range (scale labels); 0 -> default
    int j2 = 0;
    int centering_j1 = 0;    // 0 -> same as j1/j2
    int centering_j2 = 0;
    bool weighted = false;
    bool mask_wrapped = false;
    std::vector<double> q_grid;   // empty -> -4:0.25:4
    std::vector<double> gammas;   // empty -> {0,5,10,100,200,500}
    std::vector<double> deltas;   // empty -> h_mode +- 0.3 in 21 steps
    GFunction::Shape g_shape = GFunction::Shape::Parabola;
    double h_lo = 0.0, h_hi = 0.0;  // equal -> h_mode +- 0.6
    double h_step = 5e-3;
    int threads = 0;
    // Tuples for logscale tables: all q if logscale_all_q, else {-2,-1,0,1,2}
    // intersected with the q grid; gamma in {0, max gamma}; delta nearest to
    // h_mode. Full tables for every (gamma, delta) are opt-in.
    bool logscale_all_tuples = false;
};

struct LogscaleEntry {
    double q = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    std::vector<int> scales;
    std::vector<double> log2_sg;
    double slope = 0.0;      // fitted over [j1, j2]
    double intercept = 0.0;
    double r2 = 1.0;
};

struct AnalysisResult {
    int dim = 1;
    int nvm = 0;
    int levels = 0;
    int j1 = 0, j2 = 0;
    CenteringEstimate centering;
    ScalingFunction zeta;                // classical
    SpectrumCurve legendre;
    std::vector<SpectrumCurve> members;  // per (gamma>0, delta)
    std::vector<double> member_min_r2;
    SpectrumCurve envelope;
    std::vector<LogscaleEntry> logscale;
};

/// Fit-range defaults for a pyramid built with `filter_length` taps (pass 0
/// for prescribed pyramids): in scale labels, [2 ceil(log2 taps) + 1,
/// finest - 2], clamped to the available scales; prescribed pyramids use
/// [coarsest + 2, finest].
std::pair<int, int> default_fit_range(const LeaderPyramid& leaders,
                                      int filter_length);

/// Run the full pipeline on an existing leader pyramid.
AnalysisResult analyze_leaders(const LeaderPyramid& leaders, int dim,
                               const AnalysisConfig& cfg,
                               int filter_length = 0);

/// Transform + leaders + pipeline for raw data.
AnalysisResult analyze_signal(std::span<const double> signal,
                              const AnalysisConfig& cfg);
AnalysisResult analyze_image(std::span<const double> image, int rows, int cols,
                             const AnalysisConfig& cfg);

/// Pipeline for a prescribed coefficient pyramid (deterministic cascades are
/// injected directly; the leader supremum over finer scales still applies).
AnalysisResult analyze_pyramid(const CoefficientPyramid& pyramid,
                               const AnalysisConfig& cfg);

/// Dispatch on a synthesized realization.
AnalysisResult analyze_realization(const Realization& real,
                                   const AnalysisConfig& cfg);

/// Scale-by-scale generalized structure functions with the fitted line, for
/// the requested tuples, over every available scale.
std::vector<LogscaleEntry> logscale_table(
    const LeaderPyramid& leaders, const CenteringEstimate& centering,
    const std::vector<double>& qs, const std::vector<double>& gammas,
    const std::vector<double>& deltas, GFunction::Shape shape, int j1, int j2);

} // namespace mflift

#endif
