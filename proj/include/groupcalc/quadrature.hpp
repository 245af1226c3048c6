#pragma once

#include <functional>

#include "groupcalc/tolerances.hpp"

namespace groupcalc {

using RealFn = std::function<double(double)>;

/// Adaptive Simpson with interval-relative tolerance (each panel gets abs_tol * width / (b - a)).
/// Throws ToleranceNotMet when a panel needs more than `max_depth` bisections.
double adaptive_simpson(const RealFn& f, double a, double b, double abs_tol, int max_depth);

/// Adaptive 16-point Gauss-Legendre, panel vs. two halves.
double adaptive_gauss_legendre(const RealFn& f, double a, double b, double abs_tol, int max_depth);

/// Dispatches on tol.quadrature.
double integrate(const RealFn& f, double a, double b, const Tolerances& tol = default_tolerances());

}  // namespace groupcalc
