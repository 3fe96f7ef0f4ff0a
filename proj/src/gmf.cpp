#include "mflift/gmf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mflift/errors.hpp"
#include "mflift/legendre.hpp"
#include "mflift/parallel.hpp"

namespace mflift {

namespace {

// Truncation threshold (bits below the max term) for windowed sums; the
// dropped mass is < n * 2^-64 of the total.
constexpr double kWindowBits = 64.0;

struct ScalePhi {
    int scale = 0;
    std::size_t n_valid = 0;
    double mean_log2 = 0.0;
    double var_log2 = 0.0;
    std::vector<double> phi_sorted;
};

struct PhiCache {
    double c10 = 0.0;
    std::vector<ScalePhi> scales;  // ascending scale label
};

PhiCache build_phi_cache(const LeaderPyramid& leaders,
                         const CenteringEstimate& centering, int jmin,
                         int jmax) {
    PhiCache cache;
    cache.c10 = centering.c10;
    for (auto it = leaders.levels.rbegin(); it != leaders.levels.rend(); ++it) {
        const auto& lv = *it;
        if (lv.scale < jmin || lv.scale > jmax || lv.scale == 0) continue;
        if (lv.n_valid == 0) continue;
        ScalePhi sp;
        sp.scale = lv.scale;
        sp.phi_sorted.reserve(lv.n_valid);
        double mean = 0.0;
        for (std::size_t k = 0; k < lv.value.size(); ++k) {
            if (!lv.valid[k]) continue;
            const double lg = std::log2(lv.value[k]);
            mean += lg;
            sp.phi_sorted.push_back((lg - centering.c10) / -lv.scale);
        }
        sp.n_valid = sp.phi_sorted.size();
        mean /= static_cast<double>(sp.n_valid);
        double var = 0.0;
        for (double phi : sp.phi_sorted) {
            const double lg = centering.c10 - phi * lv.scale;
            var += (lg - mean) * (lg - mean);
        }
        var /= static_cast<double>(sp.n_valid);
        sp.mean_log2 = mean;
        sp.var_log2 = var;
        std::sort(sp.phi_sorted.begin(), sp.phi_sorted.end());
        cache.scales.push_back(std::move(sp));
    }
    std::sort(cache.scales.begin(), cache.scales.end(),
              [](const ScalePhi& a, const ScalePhi& b) {
                  return a.scale < b.scale;
              });
    return cache;
}

// log2 S_g(q, j) from sorted phi values. For the parabolic g the log-scale
// term is concave in phi, so the scan is restricted to the window where
// terms stay within kWindowBits of the maximum; other shapes do a full scan.
double log2_sg_scale(const ScalePhi& sp, double q, const GFunction& g) {
    const double j = static_cast<double>(sp.scale);
    const auto& phi = sp.phi_sorted;
    const std::size_t n = phi.size();
    auto term = [&](double p) { return -j * (q * p - g(p)); };

    std::size_t left = 0, right = n;  // [left, right)
    double tbest;
    if (g.shape == GFunction::Shape::Parabola && g.gamma > 0.0) {
        const double pstar = g.delta - q / (2.0 * g.gamma);
        const auto it = std::lower_bound(phi.begin(), phi.end(), pstar);
        std::size_t i0 = static_cast<std::size_t>(it - phi.begin());
        if (i0 == n) i0 = n - 1;
        tbest = term(phi[i0]);
        if (i0 > 0) tbest = std::max(tbest, term(phi[i0 - 1]));
        const double cutoff = tbest - kWindowBits;
        left = i0;
        while (left > 0 && term(phi[left - 1]) >= cutoff) --left;
        right = i0;
        while (right < n && term(phi[right]) >= cutoff) ++right;
    } else {
        tbest = term(phi[0]);
        for (std::size_t k = 1; k < n; ++k) tbest = std::max(tbest, term(phi[k]));
    }

    double s = 0.0;
    for (std::size_t k = left; k < right; ++k)
        s += std::exp2(term(phi[k]) - tbest);
    // Guard against an empty window (cannot happen: the best point is inside).
    if (!(s > 0.0)) s = 1.0;
    return tbest + std::log2(s) - std::log2(static_cast<double>(n));
}

StructureFunctionTable table_from_cache(const PhiCache& cache,
                                        const std::vector<double>& q_grid,
                                        const GFunction& g) {
    StructureFunctionTable t;
    t.q_grid = q_grid;
    for (const auto& sp : cache.scales) {
        t.scales.push_back(sp.scale);
        t.n_valid.push_back(sp.n_valid);
        t.mean_log2.push_back(sp.mean_log2);
        t.var_log2.push_back(sp.var_log2);
    }
    const std::size_t ns = t.scales.size();
    t.log2_s.assign(q_grid.size() * ns, 0.0);
    for (std::size_t qi = 0; qi < q_grid.size(); ++qi)
        for (std::size_t si = 0; si < ns; ++si)
            t.log2_s[qi * ns + si] =
                log2_sg_scale(cache.scales[si], q_grid[qi], g);
    return t;
}

} // namespace

CenteringEstimate estimate_centering(const LeaderPyramid& leaders, int j1,
                                     int j2) {
    if (leaders.empty())
        throw InvalidInputError("estimate_centering: empty pyramid");
    if (j1 >= j2)
        throw InvalidRangeError("estimate_centering: need j1 < j2");
    std::vector<double> xs, ys;
    for (const auto& lv : leaders.levels) {
        if (lv.scale < j1 || lv.scale > j2 || lv.n_valid == 0) continue;
        double mean = 0.0;
        for (std::size_t k = 0; k < lv.value.size(); ++k)
            if (lv.valid[k]) mean += std::log2(lv.value[k]);
        mean /= static_cast<double>(lv.n_valid);
        xs.push_back(static_cast<double>(lv.scale));
        ys.push_back(mean);
    }
    if (xs.size() < 3)
        throw InvalidRangeError(
            "estimate_centering: fewer than 3 scales in [j1, j2]");
    std::vector<double> w(xs.size(), 1.0);
    const LineFit fit = fit_line(xs, ys, w);
    CenteringEstimate c;
    c.c10 = fit.intercept;
    c.h_mode = -fit.slope;
    c.j1 = j1;
    c.j2 = j2;
    return c;
}

std::vector<std::pair<int, double>> generalized_log_structure(
    const LeaderPyramid& leaders, const CenteringEstimate& centering, double q,
    const GFunction& g) {
    if (leaders.empty())
        throw InvalidInputError("generalized_log_structure: empty pyramid");
    std::vector<std::pair<int, double>> out;
    for (auto it = leaders.levels.rbegin(); it != leaders.levels.rend(); ++it) {
        const auto& lv = *it;
        if (lv.n_valid == 0 || lv.scale == 0) continue;
        const double j = static_cast<double>(lv.scale);
        double m = kNegInfinity;
        std::vector<double> e;
        e.reserve(lv.n_valid);
        for (std::size_t k = 0; k < lv.value.size(); ++k) {
            if (!lv.valid[k]) continue;
            const double phi = (std::log2(lv.value[k]) - centering.c10) / -j;
            const double ek = -j * (q * phi - g(phi));
            e.push_back(ek);
            if (ek > m) m = ek;
        }
        double s = 0.0;
        for (double ek : e) s += std::exp2(ek - m);
        out.emplace_back(lv.scale,
                         m + std::log2(s) -
                             std::log2(static_cast<double>(e.size())));
    }
    return out;
}

StructureFunctionTable generalized_structure_functions(
    const LeaderPyramid& leaders, const CenteringEstimate& centering,
    const std::vector<double>& q_grid, const GFunction& g, int jmin, int jmax) {
    if (q_grid.empty())
        throw InvalidInputError("generalized_structure_functions: empty q grid");
    const PhiCache cache = build_phi_cache(leaders, centering, jmin, jmax);
    if (cache.scales.empty())
        throw InvalidRangeError(
            "generalized_structure_functions: no usable scales in range");
    return table_from_cache(cache, q_grid, g);
}

ScalingFunction generalized_scaling_exponents(
    const StructureFunctionTable& table, int j1, int j2, bool weighted) {
    return scaling_exponents(table, j1, j2, weighted);
}

SpectrumCurve generalized_spectrum(const ScalingFunction& zeta_g,
                                   const GFunction& g,
                                   const GridFunction& h_grid, int d) {
    SpectrumCurve s = legendre_spectrum(zeta_g, h_grid, d);
    s.estimator = "generalized";
    s.gamma = g.gamma;
    s.delta = g.delta;
    for (std::size_t i = 0; i < s.curve.size(); ++i)
        s.curve.values[i] -= g(s.curve.h(i));
    return s;
}

GmfParameterGrid default_parameter_grid(const CenteringEstimate& centering) {
    GmfParameterGrid grid;
    grid.gammas = {0.0, 5.0, 10.0, 100.0, 200.0, 500.0};
    grid.deltas.resize(21);
    for (int i = 0; i < 21; ++i)
        grid.deltas[static_cast<std::size_t>(i)] =
            centering.h_mode - 0.3 + 0.03 * i;
    grid.q_grid.resize(33);
    for (int i = 0; i < 33; ++i)
        grid.q_grid[static_cast<std::size_t>(i)] = -4.0 + 0.25 * i;
    grid.shape = GFunction::Shape::Parabola;
    return grid;
}

EnvelopeResult envelope_estimate(const LeaderPyramid& leaders,
                                 const GmfParameterGrid& grid, int j1, int j2,
                                 bool weighted, const GridFunction& h_grid,
                                 int d, int threads,
                                 const CenteringEstimate* centering) {
    if (grid.q_grid.empty())
        throw InvalidInputError("envelope_estimate: empty q grid");
    std::vector<double> gammas = grid.gammas;
    if (std::find(gammas.begin(), gammas.end(), 0.0) == gammas.end())
        gammas.insert(gammas.begin(), 0.0);
    for (double gv : gammas)
        if (!(gv >= 0.0))
            throw InvalidParameterError("envelope_estimate: gamma < 0");

    EnvelopeResult res;
    res.centering =
        centering != nullptr ? *centering : estimate_centering(leaders, j1, j2);

    const StructureFunctionTable classical =
        structure_functions(leaders, grid.q_grid);
    res.zeta = scaling_exponents(classical, j1, j2, weighted);
    res.legendre = legendre_spectrum(res.zeta, h_grid, d);

    std::vector<std::pair<double, double>> members;  // (gamma, delta)
    bool have_positive_gamma = false;
    for (double gv : gammas) {
        if (gv == 0.0) continue;  // classical curve covers gamma = 0
        have_positive_gamma = true;
        for (double dv : grid.deltas) members.emplace_back(gv, dv);
    }
    if (have_positive_gamma && grid.deltas.empty())
        throw InvalidInputError(
            "envelope_estimate: deltas required when gamma > 0 present");

    const PhiCache cache = build_phi_cache(leaders, res.centering, j1, j2);
    if (cache.scales.size() < 3)
        throw InvalidRangeError(
            "envelope_estimate: fewer than 3 usable scales in [j1, j2]");

    res.members.resize(members.size());
    res.member_min_r2.assign(members.size(), 1.0);
    parallel_for(members.size(), threads, [&](std::size_t mi) {
        const auto [gv, dv] = members[mi];
        const GFunction g = make_gfunction(grid.shape, gv, dv);
        const StructureFunctionTable t = table_from_cache(cache, grid.q_grid, g);
        const ScalingFunction zg = scaling_exponents(t, j1, j2, weighted);
        res.members[mi] = generalized_spectrum(zg, g, h_grid, d);
        double r2min = 1.0;
        for (double r : zg.r2) r2min = std::min(r2min, r);
        res.member_min_r2[mi] = r2min;
    });

    std::vector<GridFunction> curves;
    curves.reserve(res.members.size() + 1);
    curves.push_back(res.legendre.curve);
    for (const auto& m : res.members) curves.push_back(m.curve);
    res.envelope.estimator = "envelope";
    res.envelope.dim = d;
    res.envelope.j1 = j1;
    res.envelope.j2 = j2;
    res.envelope.q_min = grid.q_grid.front();
    res.envelope.q_max = grid.q_grid.back();
    res.envelope.curve = pointwise_envelope(curves);
    return res;
}

} // namespace mflift
