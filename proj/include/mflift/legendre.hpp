#ifndef MFLIFT_LEGENDRE_HPP
#define MFLIFT_LEGENDRE_HPP

#include <span>
#include <vector>

#include "mflift/gridfun.hpp"

namespace mflift {

/// Discrete Legendre-Fenchel transform f*(q) = min_h { d + q h - f(h) } over
/// the finite grid values of f. Throws InvalidInputError when f has no finite
/// value.
std::vector<double> legendre_transform(const GridFunction& f,
                                       const std::vector<double>& q_grid,
                                       int d);

/// Double transform f**(h) = min_q { d + q h - f*(q) }, evaluated back on
/// f's grid. Concave on the grid and >= f up to grid resolution.
GridFunction double_legendre(const GridFunction& f,
                             const std::vector<double>& q_grid, int d);

/// Lifted double transform (f+g)**(h) - g(h) on f's grid.
GridFunction lifted_double_legendre(const GridFunction& f, const GFunction& g,
                                    const std::vector<double>& q_grid, int d);

/// Pointwise minimum of curves sharing one grid.
GridFunction pointwise_envelope(std::span<const GridFunction> curves);

/// Closed form of the lifted double transform of the two-parabola test
/// spectrum (unit height, vertices at -1 and 1, support (-2,2)) under
/// g(h) = -gamma h^2: branch boundaries at +-1/(1+gamma).
double analytic_double_parabola(double gamma, double h);

/// The two-parabola test spectrum itself (gamma = 0 inner branch replaced by
/// the original nonconcave dip).
double double_parabola(double h);

} // namespace mflift

#endif
