#pragma once

#include <functional>

namespace rotwave {

/// Composite Gauss-Legendre quadrature over [a,b]. The panel count is doubled
/// until two successive results agree to rel_tol. Intended for smooth
/// integrands; throws NumericError on non-finite values.
double integrate_smooth(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-12, int max_doublings = 14);

/// Recursive bisection quadrature for integrands with mild kinks
/// (|.|- or sqrt-type points). Local 15-point Gauss estimates, refined where
/// whole-vs-halves disagree. Throws NumericError on non-finite values.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-10, int max_depth = 48);

} // namespace rotwave
