#include "mflift/gridfun.hpp"

#include <cmath>
#include <string>

#include "mflift/errors.hpp"

namespace mflift {

std::vector<double> GridFunction::grid() const {
    std::vector<double> g(values.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = h(i);
    return g;
}

bool GridFunction::same_grid(const GridFunction& other, double tol) const {
    return values.size() == other.values.size() &&
           std::abs(h0 - other.h0) <= tol && std::abs(step - other.step) <= tol;
}

std::size_t GridFunction::index_of(double hq) const {
    if (values.empty()) return 0;
    double r = (hq - h0) / step;
    if (r < 0) r = 0;
    const double top = static_cast<double>(values.size() - 1);
    if (r > top) r = top;
    return static_cast<std::size_t>(std::llround(r));
}

GridFunction GridFunction::from_samples(const std::vector<double>& h,
                                        const std::vector<double>& v) {
    if (h.size() != v.size())
        throw InvalidInputError("GridFunction: grid/value length mismatch");
    if (h.size() < 2)
        throw InvalidInputError("GridFunction: need at least two grid points");
    const double step = h[1] - h[0];
    if (!(step > 0))
        throw InvalidInputError("GridFunction: grid must be increasing");
    for (std::size_t i = 1; i < h.size(); ++i) {
        const double got = h[i] - h[i - 1];
        if (std::abs(got - step) > 1e-12 * std::max(1.0, std::abs(step)))
            throw InvalidInputError("GridFunction: grid not uniform");
    }
    GridFunction f;
    f.h0 = h[0];
    f.step = step;
    f.values = v;
    return f;
}

GridFunction GridFunction::on_range(double lo, double hi, double step) {
    if (!(step > 0) || !(hi >= lo))
        throw InvalidParameterError("GridFunction::on_range: bad range");
    GridFunction f;
    f.h0 = lo;
    f.step = step;
    const auto n =
        static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
    f.values.assign(n, 0.0);
    return f;
}

GFunction make_gfunction(GFunction::Shape shape, double gamma, double delta) {
    if (!(gamma >= 0.0))
        throw InvalidParameterError("GFunction: curvature gamma must be >= 0");
    GFunction g;
    g.shape = shape;
    g.gamma = gamma;
    g.delta = delta;
    return g;
}

} // namespace mflift
