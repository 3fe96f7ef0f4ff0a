#ifndef MFLIFT_HARNESS_HPP
#define MFLIFT_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mflift/analysis.hpp"
#include "mflift/synth.hpp"

namespace mflift {

struct ExperimentConfig {
    ProcessSpec process;
    int n_mc = 10;
    std::uint64_t seed = 42;
    AnalysisConfig analysis;
    int threads = 0;            // workers across realizations; 0 -> auto
    bool keep_all_logscale = false;  // keep tables for every realization
};

struct EstimatorAggregate {
    std::string estimator;
    std::vector<double> mean;
    std::vector<double> band_lo;  // pointwise 2.5% quantile
    std::vector<double> band_hi;  // pointwise 97.5% quantile
    std::vector<double> rmse;     // vs theory where theory >= 0, else NaN
};

struct AggregateResult {
    std::vector<double> h_grid;
    std::vector<double> theory;  // sampled reference spectrum
    EstimatorAggregate legendre;
    EstimatorAggregate envelope;
    int n_ok = 0;
    int n_failed = 0;
    std::vector<std::string> failures;
    // Logscale tables: one vector per kept realization (first only unless
    // keep_all_logscale).
    std::vector<std::vector<LogscaleEntry>> logscale;
    CenteringEstimate first_centering;
};

/// Runs n_mc realizations with sub-seeds subseed(seed, i), analyzes each with
/// both formalisms, and aggregates pointwise means, empirical 95% bands and
/// RMSE against the process theory. Bit-identical output for a given master
/// seed regardless of the worker count.
AggregateResult run_experiment(const ExperimentConfig& config);

/// Parses a key = value experiment config file (supports the keys written by
/// the CLI docs; '#' starts a comment). Throws IoError with the offending
/// line on parse failure.
ExperimentConfig parse_experiment_config(const std::string& path);

} // namespace mflift

#endif
