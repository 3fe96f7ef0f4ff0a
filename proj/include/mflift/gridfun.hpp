#ifndef MFLIFT_GRIDFUN_HPP
#define MFLIFT_GRIDFUN_HPP

#include <cstddef>
#include <limits>
#include <vector>

namespace mflift {

inline constexpr double kNegInfinity =
    -std::numeric_limits<double>::infinity();

/// Function sampled on a uniform grid h0 + i*step. Values may be -infinity
/// (excluded-point sentinel); no other non-finite values are meaningful.
struct GridFunction {
    double h0 = 0.0;
    double step = 1.0;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double h(std::size_t i) const { return h0 + step * static_cast<double>(i); }
    std::vector<double> grid() const;
    bool same_grid(const GridFunction& other, double tol = 1e-12) const;

    /// Index of the grid point closest to h (clamped).
    std::size_t index_of(double h) const;

    /// Builds from explicit samples; the grid must be uniform within 1e-12
    /// and strictly increasing.
    static GridFunction from_samples(const std::vector<double>& h,
                                     const std::vector<double>& v);
    /// Uniform grid lo..hi (inclusive within half a step) with given step.
    static GridFunction on_range(double lo, double hi, double step);
};

/// Admissible lifting function g: parabola g(h) = -gamma (h-delta)^2 or
/// absolute value g(h) = -gamma |h-delta|. gamma >= 0.
struct GFunction {
    enum class Shape { Parabola, AbsoluteValue };
    Shape shape = Shape::Parabola;
    double gamma = 0.0;
    double delta = 0.0;

    double operator()(double h) const {
        const double u = h - delta;
        return shape == Shape::Parabola ? -gamma * u * u
                                        : -gamma * (u < 0 ? -u : u);
    }
};

GFunction make_gfunction(GFunction::Shape shape, double gamma, double delta);

} // namespace mflift

#endif
