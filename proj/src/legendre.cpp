#include "mflift/legendre.hpp"

#include <cmath>

#include "mflift/errors.hpp"

namespace mflift {

std::vector<double> legendre_transform(const GridFunction& f,
                                       const std::vector<double>& q_grid,
                                       int d) {
    const std::size_t n = f.size();
    bool any_finite = false;
    for (double v : f.values)
        if (std::isfinite(v)) {
            any_finite = true;
            break;
        }
    if (!any_finite || n == 0)
        throw InvalidInputError(
            "legendre_transform: input has no finite value");

    std::vector<double> out(q_grid.size());
    const double dd = static_cast<double>(d);
    for (std::size_t qi = 0; qi < q_grid.size(); ++qi) {
        const double q = q_grid[qi];
        double best = std::numeric_limits<double>::infinity();
        double hh = f.h0;
        for (std::size_t i = 0; i < n; ++i, hh += f.step) {
            const double v = f.values[i];
            if (v == kNegInfinity) continue;
            const double cand = dd + q * hh - v;
            if (cand < best) best = cand;
        }
        out[qi] = best;
    }
    return out;
}

GridFunction double_legendre(const GridFunction& f,
                             const std::vector<double>& q_grid, int d) {
    const std::vector<double> fstar = legendre_transform(f, q_grid, d);
    GridFunction out;
    out.h0 = f.h0;
    out.step = f.step;
    out.values.resize(f.size());
    const double dd = static_cast<double>(d);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double hh = f.h(i);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t qi = 0; qi < q_grid.size(); ++qi) {
            const double cand = dd + q_grid[qi] * hh - fstar[qi];
            if (cand < best) best = cand;
        }
        out.values[i] = best;
    }
    return out;
}

GridFunction lifted_double_legendre(const GridFunction& f, const GFunction& g,
                                    const std::vector<double>& q_grid, int d) {
    GridFunction lifted = f;
    for (std::size_t i = 0; i < lifted.size(); ++i) {
        if (lifted.values[i] == kNegInfinity) continue;
        lifted.values[i] += g(lifted.h(i));
    }
    GridFunction hull = double_legendre(lifted, q_grid, d);
    for (std::size_t i = 0; i < hull.size(); ++i)
        hull.values[i] -= g(hull.h(i));
    return hull;
}

GridFunction pointwise_envelope(std::span<const GridFunction> curves) {
    if (curves.empty())
        throw InvalidInputError("pointwise_envelope: no curves");
    GridFunction out = curves.front();
    for (std::size_t c = 1; c < curves.size(); ++c) {
        const GridFunction& cur = curves[c];
        if (!cur.same_grid(out))
            throw InvalidInputError("pointwise_envelope: mismatched grids");
        for (std::size_t i = 0; i < out.values.size(); ++i)
            if (cur.values[i] < out.values[i]) out.values[i] = cur.values[i];
    }
    return out;
}

double double_parabola(double h) {
    if (h <= -2.0 || h > 2.0) return kNegInfinity;
    if (h < 0.0) return 1.0 - (h + 1.0) * (h + 1.0);
    return 1.0 - (h - 1.0) * (h - 1.0);
}

double analytic_double_parabola(double gamma, double h) {
    if (!(gamma >= 0.0))
        throw InvalidParameterError(
            "analytic_double_parabola: gamma must be >= 0");
    if (h <= -2.0 || h > 2.0) return kNegInfinity;
    const double b = 1.0 / (1.0 + gamma);
    if (h < -b) return 1.0 - (h + 1.0) * (h + 1.0);
    if (h > b) return 1.0 - (h - 1.0) * (h - 1.0);
    return b + gamma * h * h;
}

} // namespace mflift
