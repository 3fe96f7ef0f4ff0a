#include "mflift/structure.hpp"

#include <algorithm>
#include <cmath>

#include "mflift/errors.hpp"

namespace mflift {

LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 std::span<const double> w) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n || w.size() != n)
        throw InvalidInputError("fit_line: need >= 2 points, equal lengths");
    double sw = 0, sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sw += w[i];
        sx += w[i] * x[i];
        sy += w[i] * y[i];
    }
    if (!(sw > 0)) throw InvalidInputError("fit_line: weights sum to zero");
    const double xbar = sx / sw, ybar = sy / sw;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - xbar;
        sxx += w[i] * dx * dx;
        sxy += w[i] * dx * (y[i] - ybar);
    }
    if (!(sxx > 0)) throw InvalidInputError("fit_line: degenerate abscissa");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (fit.intercept + fit.slope * x[i]);
        const double t = y[i] - ybar;
        ss_res += w[i] * e * e;
        ss_tot += w[i] * t * t;
    }
    fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.slope_se =
        n > 2 ? std::sqrt(std::max(0.0, ss_res / (static_cast<double>(n) - 2)) /
                          sxx)
              : 0.0;
    return fit;
}

namespace {

// log2( (1/n) sum_k 2^{e_k} ) with max shift; e must be nonempty.
double log2_mean_exp2(const std::vector<double>& e) {
    double m = e[0];
    for (double v : e) m = std::max(m, v);
    double s = 0.0;
    for (double v : e) s += std::exp2(v - m);
    return m + std::log2(s) - std::log2(static_cast<double>(e.size()));
}

} // namespace

StructureFunctionTable structure_functions(const LeaderPyramid& leaders,
                                           const std::vector<double>& q_grid) {
    if (leaders.empty())
        throw InvalidInputError("structure_functions: empty pyramid");
    if (q_grid.empty())
        throw InvalidInputError("structure_functions: empty q grid");

    StructureFunctionTable t;
    t.q_grid = q_grid;
    // Collect per-scale log2 leaders, ascending scale label.
    std::vector<std::pair<int, std::vector<double>>> logs;
    for (auto it = leaders.levels.rbegin(); it != leaders.levels.rend(); ++it) {
        const auto& lv = *it;
        if (lv.n_valid == 0) {
            t.dropped_scales.push_back(lv.scale);
            continue;
        }
        std::vector<double> lg;
        lg.reserve(lv.n_valid);
        for (std::size_t k = 0; k < lv.value.size(); ++k)
            if (lv.valid[k]) lg.push_back(std::log2(lv.value[k]));
        t.scales.push_back(lv.scale);
        t.n_valid.push_back(lg.size());
        double mean = 0;
        for (double v : lg) mean += v;
        mean /= static_cast<double>(lg.size());
        double var = 0;
        for (double v : lg) var += (v - mean) * (v - mean);
        var /= static_cast<double>(lg.size());
        t.mean_log2.push_back(mean);
        t.var_log2.push_back(var);
        logs.emplace_back(lv.scale, std::move(lg));
    }
    // Levels were iterated coarse->fine already (reverse of storage order);
    // ensure ascending anyway.
    if (!std::is_sorted(t.scales.begin(), t.scales.end()))
        throw InvalidInputError("structure_functions: unsorted scales");

    const std::size_t ns = t.scales.size();
    t.log2_s.assign(q_grid.size() * ns, 0.0);
    std::vector<double> e;
    for (std::size_t qi = 0; qi < q_grid.size(); ++qi) {
        const double q = q_grid[qi];
        for (std::size_t si = 0; si < ns; ++si) {
            if (q == 0.0) {
                t.log2_s[qi * ns + si] = 0.0;  // S(0,j) = 1 exactly
                continue;
            }
            const auto& lg = logs[si].second;
            e.resize(lg.size());
            for (std::size_t k = 0; k < lg.size(); ++k) e[k] = q * lg[k];
            t.log2_s[qi * ns + si] = log2_mean_exp2(e);
        }
    }
    return t;
}

ScalingFunction scaling_exponents(const StructureFunctionTable& table, int j1,
                                  int j2, bool weighted) {
    if (j1 >= j2)
        throw InvalidRangeError("scaling_exponents: need j1 < j2");
    std::vector<std::size_t> sel;
    for (std::size_t si = 0; si < table.scales.size(); ++si)
        if (table.scales[si] >= j1 && table.scales[si] <= j2) sel.push_back(si);
    if (sel.size() < 3)
        throw InvalidRangeError(
            "scaling_exponents: fewer than 3 scales in [j1, j2]");

    std::vector<double> x(sel.size()), w(sel.size());
    for (std::size_t i = 0; i < sel.size(); ++i) {
        x[i] = -static_cast<double>(table.scales[sel[i]]);
        if (weighted) {
            const double var = std::max(table.var_log2[sel[i]], 1e-12);
            w[i] = static_cast<double>(table.n_valid[sel[i]]) / var;
        } else {
            w[i] = 1.0;
        }
    }

    ScalingFunction zf;
    zf.q_grid = table.q_grid;
    zf.j1 = j1;
    zf.j2 = j2;
    zf.weighted = weighted;
    const std::size_t ns = table.scales.size();
    std::vector<double> y(sel.size());
    for (std::size_t qi = 0; qi < table.q_grid.size(); ++qi) {
        for (std::size_t i = 0; i < sel.size(); ++i)
            y[i] = table.log2_s[qi * ns + sel[i]];
        const LineFit fit = fit_line(x, y, w);
        zf.zeta.push_back(fit.slope);
        zf.intercept.push_back(fit.intercept);
        zf.slope_se.push_back(fit.slope_se);
        zf.r2.push_back(fit.r2);
    }
    return zf;
}

double SpectrumCurve::max_finite() const {
    double m = kNegInfinity;
    for (double v : curve.values)
        if (std::isfinite(v) && v > m) m = v;
    return m;
}

SpectrumCurve legendre_spectrum(const ScalingFunction& zeta,
                                const GridFunction& h_grid, int d) {
    for (double z : zeta.zeta)
        if (!std::isfinite(z))
            throw InvalidInputError("legendre_spectrum: zeta not finite");
    SpectrumCurve s;
    s.estimator = "legendre";
    s.dim = d;
    s.j1 = zeta.j1;
    s.j2 = zeta.j2;
    if (!zeta.q_grid.empty()) {
        s.q_min = zeta.q_grid.front();
        s.q_max = zeta.q_grid.back();
    }
    s.curve.h0 = h_grid.h0;
    s.curve.step = h_grid.step;
    s.curve.values.resize(h_grid.size());
    const double dd = static_cast<double>(d);
    for (std::size_t i = 0; i < h_grid.size(); ++i) {
        const double hh = h_grid.h(i);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t qi = 0; qi < zeta.q_grid.size(); ++qi) {
            const double cand = dd + zeta.q_grid[qi] * hh - zeta.zeta[qi];
            if (cand < best) best = cand;
        }
        s.curve.values[i] = best;
    }
    return s;
}

std::vector<std::pair<double, double>> parametric_spectrum(
    const ScalingFunction& zeta, int d) {
    const std::size_t n = zeta.q_grid.size();
    std::vector<std::pair<double, double>> out;
    if (n < 2) return out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 == n ? i : i + 1;
        const double hq = (zeta.zeta[hi] - zeta.zeta[lo]) /
                          (zeta.q_grid[hi] - zeta.q_grid[lo]);
        const double L = d + zeta.q_grid[i] * hq - zeta.zeta[i];
        out.emplace_back(hq, L);
    }
    return out;
}

} // namespace mflift
