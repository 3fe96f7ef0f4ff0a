#include "mflift/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "mflift/errors.hpp"
#include "mflift/io.hpp"
#include "mflift/parallel.hpp"
#include "mflift/rng.hpp"

namespace mflift {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double quantile_sorted(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double r = p * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(std::floor(r));
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double frac = r - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

EstimatorAggregate aggregate_curves(
    const std::string& name, const std::vector<std::vector<double>>& curves,
    const std::vector<double>& theory_vals) {
    EstimatorAggregate agg;
    agg.estimator = name;
    const std::size_t nh = curves.front().size();
    const std::size_t nr = curves.size();
    agg.mean.assign(nh, 0.0);
    agg.band_lo.assign(nh, 0.0);
    agg.band_hi.assign(nh, 0.0);
    agg.rmse.assign(nh, kNaN);
    std::vector<double> col(nr);
    for (std::size_t i = 0; i < nh; ++i) {
        for (std::size_t r = 0; r < nr; ++r) col[r] = curves[r][i];
        double mean = 0.0;
        for (double v : col) mean += v;
        mean /= static_cast<double>(nr);
        agg.mean[i] = mean;
        std::sort(col.begin(), col.end());
        agg.band_lo[i] = quantile_sorted(col, 0.025);
        agg.band_hi[i] = quantile_sorted(col, 0.975);
        const double th = theory_vals[i];
        if (std::isfinite(th) && th >= 0.0) {
            double se = 0.0;
            for (std::size_t r = 0; r < nr; ++r) {
                const double e = curves[r][i] - th;
                se += e * e;
            }
            agg.rmse[i] = std::sqrt(se / static_cast<double>(nr));
        }
    }
    return agg;
}

} // namespace

AggregateResult run_experiment(const ExperimentConfig& config) {
    if (config.n_mc < 1)
        throw InvalidParameterError("run_experiment: n_mc must be >= 1");

    const TheorySpectrum th = theory(config.process);

    AnalysisConfig acfg = config.analysis;
    if (!(acfg.h_hi > acfg.h_lo)) {
        // Fixed grid across realizations, derived from the reference support.
        acfg.h_lo = th.h_min - 0.3;
        acfg.h_hi = th.h_max + 0.3;
    }
    GridFunction hg = GridFunction::on_range(acfg.h_lo, acfg.h_hi, acfg.h_step);

    struct Slot {
        bool ok = false;
        std::string error;
        std::vector<double> legendre, envelope;
        std::vector<LogscaleEntry> logscale;
        CenteringEstimate centering;
    };
    std::vector<Slot> slots(static_cast<std::size_t>(config.n_mc));

    parallel_for(slots.size(), config.threads, [&](std::size_t i) {
        Slot& slot = slots[i];
        try {
            const Realization real =
                generate(config.process, subseed(config.seed, i));
            const AnalysisResult res = analyze_realization(real, acfg);
            slot.legendre = res.legendre.curve.values;
            slot.envelope = res.envelope.curve.values;
            slot.centering = res.centering;
            if (config.keep_all_logscale || i == 0) slot.logscale = res.logscale;
            slot.ok = true;
        } catch (const std::exception& e) {
            slot.error = e.what();
        }
    });

    AggregateResult out;
    out.h_grid = hg.grid();
    out.theory.resize(out.h_grid.size());
    for (std::size_t i = 0; i < out.h_grid.size(); ++i)
        out.theory[i] = th.eval(out.h_grid[i]);

    std::vector<std::vector<double>> lcurves, ecurves;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!slots[i].ok) {
            ++out.n_failed;
            out.failures.push_back("realization " + std::to_string(i) + ": " +
                                   slots[i].error);
            continue;
        }
        ++out.n_ok;
        lcurves.push_back(std::move(slots[i].legendre));
        ecurves.push_back(std::move(slots[i].envelope));
        if (!slots[i].logscale.empty())
            out.logscale.push_back(std::move(slots[i].logscale));
        if (out.n_ok == 1) out.first_centering = slots[i].centering;
    }
    if (out.n_ok == 0)
        throw InvalidInputError("run_experiment: all realizations failed: " +
                                (out.failures.empty() ? std::string("?")
                                                      : out.failures.front()));

    out.legendre = aggregate_curves("legendre", lcurves, out.theory);
    out.envelope = aggregate_curves("envelope", ecurves, out.theory);
    return out;
}

namespace {

ProcessSpec spec_from_kv(const std::map<std::string, std::string>& kv,
                         const std::string& prefix);

// Returns false when the key is not a process key (top level mixes process
// and analysis keys; inside piece.N. prefixes unknown keys are an error).
bool apply_process_key(ProcessSpec& spec, const std::string& key,
                       const std::string& value, bool strict) {
    if (key == "process") spec.kind = process_kind_from_string(value);
    else if (key == "alpha") spec.alpha = std::stod(value);
    else if (key == "w") spec.w = std::stod(value);
    else if (key == "theta") spec.theta = std::stod(value);
    else if (key == "H") spec.H = std::stod(value);
    else if (key == "lambda2") spec.lambda2 = std::stod(value);
    else if (key == "n") spec.n = static_cast<std::size_t>(std::stoull(value));
    else if (key == "rows") spec.rows = std::stoi(value);
    else if (key == "cols") spec.cols = std::stoi(value);
    else if (key == "depth") spec.depth = std::stoi(value);
    else if (strict)
        throw InvalidParameterError("unknown process key: " + key);
    else
        return false;
    return true;
}

ProcessSpec spec_from_kv(const std::map<std::string, std::string>& kv,
                         const std::string& prefix) {
    ProcessSpec spec;
    // collect piece indices
    std::vector<int> piece_ids;
    for (const auto& [k, v] : kv) {
        if (k.rfind(prefix, 0) != 0) continue;
        const std::string rest = k.substr(prefix.size());
        if (rest.rfind("piece.", 0) == 0) {
            const auto dot = rest.find('.', 6);
            if (dot == std::string::npos)
                throw InvalidParameterError("bad piece key: " + k);
            const int id = std::stoi(rest.substr(6, dot - 6));
            if (std::find(piece_ids.begin(), piece_ids.end(), id) ==
                piece_ids.end())
                piece_ids.push_back(id);
        } else if (rest.find('.') != std::string::npos) {
            throw InvalidParameterError("bad nested key: " + k);
        } else {
            // top level is non-strict: analysis keys share the namespace
            apply_process_key(spec, rest, v, !prefix.empty());
        }
    }
    std::sort(piece_ids.begin(), piece_ids.end());
    for (int id : piece_ids)
        spec.pieces.push_back(
            spec_from_kv(kv, prefix + "piece." + std::to_string(id) + "."));
    return spec;
}

} // namespace

ExperimentConfig parse_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        // trim
        auto ltrim = line.find_first_not_of(" \t\r");
        if (ltrim == std::string::npos) continue;
        auto rtrim = line.find_last_not_of(" \t\r");
        line = line.substr(ltrim, rtrim - ltrim + 1);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw IoError(path + ":" + std::to_string(lineno) +
                          ": expected key = value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        const auto ke = key.find_last_not_of(" \t");
        key = key.substr(0, ke + 1);
        const auto vs = value.find_first_not_of(" \t");
        value = vs == std::string::npos ? "" : value.substr(vs);
        if (value.empty())
            throw IoError(path + ":" + std::to_string(lineno) +
                          ": empty value for " + key);
        kv[key] = value;
    }

    ExperimentConfig cfg;
    try {
        cfg.process = spec_from_kv(kv, "");
    } catch (const InvalidParameterError&) {
        throw;
    }
    // experiment-level + analysis keys (ignore process ones already consumed)
    for (const auto& [k, v] : kv) {
        if (k == "process" || k == "alpha" || k == "w" || k == "theta" ||
            k == "H" || k == "lambda2" || k == "n" || k == "rows" ||
            k == "cols" || k == "depth" || k.rfind("piece.", 0) == 0)
            continue;
        if (k == "n_mc") cfg.n_mc = std::stoi(v);
        else if (k == "seed") cfg.seed = std::stoull(v);
        else if (k == "threads") cfg.threads = std::stoi(v);
        else if (k == "keep_all_logscale") cfg.keep_all_logscale = v != "0";
        else if (k == "nvm") cfg.analysis.nvm = std::stoi(v);
        else if (k == "levels") cfg.analysis.levels = std::stoi(v);
        else if (k == "j1") cfg.analysis.j1 = std::stoi(v);
        else if (k == "j2") cfg.analysis.j2 = std::stoi(v);
        else if (k == "centering_j1") cfg.analysis.centering_j1 = std::stoi(v);
        else if (k == "centering_j2") cfg.analysis.centering_j2 = std::stoi(v);
        else if (k == "weighted") cfg.analysis.weighted = v != "0";
        else if (k == "mask_wrapped") cfg.analysis.mask_wrapped = v != "0";
        else if (k == "q") cfg.analysis.q_grid = parse_range(v);
        else if (k == "gammas") cfg.analysis.gammas = parse_list(v);
        else if (k == "deltas") {
            if (v != "auto") cfg.analysis.deltas = parse_list(v);
        } else if (k == "g_shape") {
            if (v == "parabola")
                cfg.analysis.g_shape = GFunction::Shape::Parabola;
            else if (v == "abs")
                cfg.analysis.g_shape = GFunction::Shape::AbsoluteValue;
            else
                throw IoError(path + ": g_shape must be parabola or abs");
        } else if (k == "h") {
            const auto grid = parse_range(v);
            cfg.analysis.h_lo = grid.front();
            cfg.analysis.h_hi = grid.back();
            if (grid.size() > 1) cfg.analysis.h_step = grid[1] - grid[0];
        } else if (k == "logscale_all") {
            cfg.analysis.logscale_all_tuples = v != "0";
        } else {
            throw IoError(path + ": unknown key " + k);
        }
    }
    return cfg;
}

} // namespace mflift
