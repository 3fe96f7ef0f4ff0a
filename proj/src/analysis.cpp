#include "mflift/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "mflift/errors.hpp"

namespace mflift {

namespace {

int ceil_log2_int(int n) {
    int p = 0;
    while ((1 << p) < n) ++p;
    return p;
}

std::vector<double> default_q_grid() {
    std::vector<double> q(33);
    for (int i = 0; i < 33; ++i) q[static_cast<std::size_t>(i)] = -4.0 + 0.25 * i;
    return q;
}

} // namespace

std::pair<int, int> default_fit_range(const LeaderPyramid& leaders,
                                      int filter_length) {
    if (leaders.empty())
        throw InvalidInputError("default_fit_range: empty pyramid");
    const int finest = leaders.finest_scale();
    const int coarsest = leaders.coarsest_scale();
    int j1, j2;
    if (filter_length > 0) {
        j1 = 2 * ceil_log2_int(filter_length) + 1;
        j2 = finest - 2;
    } else {
        j1 = coarsest + 2;
        j2 = finest;
    }
    j1 = std::max(j1, coarsest);
    j2 = std::min(j2, finest);
    if (j2 - j1 < 2) {  // fall back to everything usable
        j1 = coarsest;
        j2 = finest;
    }
    return {j1, j2};
}

AnalysisResult analyze_leaders(const LeaderPyramid& leaders, int dim,
                               const AnalysisConfig& cfg, int filter_length) {
    AnalysisResult res;
    res.dim = dim;
    res.nvm = cfg.nvm;

    auto [dj1, dj2] = default_fit_range(leaders, filter_length);
    res.j1 = cfg.j1 > 0 ? cfg.j1 : dj1;
    res.j2 = cfg.j2 > 0 ? cfg.j2 : dj2;
    const int cj1 = cfg.centering_j1 > 0 ? cfg.centering_j1 : res.j1;
    const int cj2 = cfg.centering_j2 > 0 ? cfg.centering_j2 : res.j2;

    res.centering = estimate_centering(leaders, cj1, cj2);

    GmfParameterGrid grid;
    grid.q_grid = cfg.q_grid.empty() ? default_q_grid() : cfg.q_grid;
    grid.shape = cfg.g_shape;
    if (cfg.gammas.empty() && cfg.deltas.empty()) {
        GmfParameterGrid def = default_parameter_grid(res.centering);
        grid.gammas = def.gammas;
        grid.deltas = def.deltas;
    } else {
        grid.gammas = cfg.gammas.empty()
                          ? std::vector<double>{0.0, 5.0, 10.0, 100.0, 200.0, 500.0}
                          : cfg.gammas;
        grid.deltas = cfg.deltas;
        if (grid.deltas.empty())
            grid.deltas = default_parameter_grid(res.centering).deltas;
    }

    GridFunction h_grid;
    if (cfg.h_hi > cfg.h_lo) {
        h_grid = GridFunction::on_range(cfg.h_lo, cfg.h_hi, cfg.h_step);
    } else {
        const double c = res.centering.h_mode;
        h_grid = GridFunction::on_range(c - 0.6, c + 0.6, cfg.h_step);
    }

    EnvelopeResult env =
        envelope_estimate(leaders, grid, res.j1, res.j2, cfg.weighted, h_grid,
                          dim, cfg.threads, &res.centering);
    res.zeta = std::move(env.zeta);
    res.legendre = std::move(env.legendre);
    res.legendre.nvm = cfg.nvm;
    res.members = std::move(env.members);
    res.member_min_r2 = std::move(env.member_min_r2);
    res.envelope = std::move(env.envelope);
    res.envelope.nvm = cfg.nvm;

    // logscale diagnostics
    std::vector<double> qs;
    if (cfg.logscale_all_tuples) {
        qs = grid.q_grid;
    } else {
        for (double q : {-2.0, -1.0, 0.0, 1.0, 2.0})
            for (double qq : grid.q_grid)
                if (std::abs(qq - q) < 1e-12) {
                    qs.push_back(qq);
                    break;
                }
        if (qs.empty()) qs = grid.q_grid;
    }
    std::vector<double> gs;
    std::vector<double> ds;
    if (cfg.logscale_all_tuples) {
        gs = grid.gammas;
        ds = grid.deltas;
    } else {
        gs.push_back(0.0);
        const double gmax =
            *std::max_element(grid.gammas.begin(), grid.gammas.end());
        if (gmax > 0.0) gs.push_back(gmax);
        double best = grid.deltas.empty() ? res.centering.h_mode
                                          : grid.deltas.front();
        for (double dv : grid.deltas)
            if (std::abs(dv - res.centering.h_mode) <
                std::abs(best - res.centering.h_mode))
                best = dv;
        ds.push_back(best);
    }
    res.logscale = logscale_table(leaders, res.centering, qs, gs, ds,
                                  grid.shape, res.j1, res.j2);
    return res;
}

AnalysisResult analyze_signal(std::span<const double> signal,
                              const AnalysisConfig& cfg) {
    const WaveletFilter filter = daubechies_filter(cfg.nvm);
    const int levels =
        cfg.levels > 0 ? cfg.levels
                       : default_levels(static_cast<int>(signal.size()), filter);
    if (levels < 1)
        throw InsufficientLengthError("analyze_signal: signal too short");
    const CoefficientPyramid pyr = dwt1d(signal, filter, levels);
    LeaderOptions lopts;
    lopts.mask_wrapped = cfg.mask_wrapped;
    const LeaderPyramid leaders = leaders1d(pyr, lopts);
    AnalysisResult res = analyze_leaders(leaders, 1, cfg, filter.length());
    res.levels = levels;
    return res;
}

AnalysisResult analyze_image(std::span<const double> image, int rows, int cols,
                             const AnalysisConfig& cfg) {
    const WaveletFilter filter = daubechies_filter(cfg.nvm);
    const int levels =
        cfg.levels > 0 ? cfg.levels : default_levels(rows, cols, filter);
    if (levels < 1)
        throw InsufficientLengthError("analyze_image: image too small");
    const CoefficientPyramid pyr = dwt2d(image, rows, cols, filter, levels);
    LeaderOptions lopts;
    lopts.mask_wrapped = cfg.mask_wrapped;
    const LeaderPyramid leaders = leaders2d(pyr, lopts);
    AnalysisResult res = analyze_leaders(leaders, 2, cfg, filter.length());
    res.levels = levels;
    return res;
}

AnalysisResult analyze_pyramid(const CoefficientPyramid& pyramid,
                               const AnalysisConfig& cfg) {
    LeaderOptions lopts;
    lopts.mask_wrapped = cfg.mask_wrapped;
    const LeaderPyramid leaders = compute_leaders(pyramid, lopts);
    AnalysisResult res = analyze_leaders(leaders, pyramid.dim, cfg, 0);
    res.levels = static_cast<int>(pyramid.levels.size());
    res.nvm = 0;
    return res;
}

AnalysisResult analyze_realization(const Realization& real,
                                   const AnalysisConfig& cfg) {
    if (real.is_pyramid) return analyze_pyramid(real.pyramid, cfg);
    if (real.dim == 1) return analyze_signal(real.signal, cfg);
    return analyze_image(real.image.pix, real.image.rows, real.image.cols, cfg);
}

std::vector<LogscaleEntry> logscale_table(
    const LeaderPyramid& leaders, const CenteringEstimate& centering,
    const std::vector<double>& qs, const std::vector<double>& gammas,
    const std::vector<double>& deltas, GFunction::Shape shape, int j1,
    int j2) {
    std::vector<LogscaleEntry> out;
    for (double gv : gammas) {
        // gamma = 0 ignores delta; emit a single tuple per q
        std::vector<double> dl = gv == 0.0 ? std::vector<double>{0.0} : deltas;
        for (double dv : dl) {
            const GFunction g = make_gfunction(shape, gv, dv);
            for (double q : qs) {
                LogscaleEntry e;
                e.q = q;
                e.gamma = gv;
                e.delta = gv == 0.0 ? 0.0 : dv;
                for (const auto& [scale, v] :
                     generalized_log_structure(leaders, centering, q, g)) {
                    e.scales.push_back(scale);
                    e.log2_sg.push_back(v);
                }
                std::vector<double> x, y, w;
                for (std::size_t i = 0; i < e.scales.size(); ++i) {
                    if (e.scales[i] < j1 || e.scales[i] > j2) continue;
                    x.push_back(-static_cast<double>(e.scales[i]));
                    y.push_back(e.log2_sg[i]);
                    w.push_back(1.0);
                }
                if (x.size() >= 2) {
                    const LineFit fit = fit_line(x, y, w);
                    e.slope = fit.slope;
                    e.intercept = fit.intercept;
                    e.r2 = fit.r2;
                }
                out.push_back(std::move(e));
            }
        }
    }
    return out;
}

} // namespace mflift
