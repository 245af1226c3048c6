#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "groupcalc/group_class.hpp"
#include "groupcalc/quadrature.hpp"

namespace groupcalc {

/// A real function given as an evaluation rule on an open domain.
struct Func1D {
  RealFn rule;
  Interval domain{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};

  double operator()(double x) const { return rule(x); }
};

/// Natural cubic spline through (xs, ys); xs strictly increasing, at least 2 points.
/// The resulting rule is defined on the closed hull of xs (the domain is padded by
/// one ulp-scale margin so endpoints count as interior).
Func1D cubic_interpolant(std::vector<double> xs, std::vector<double> ys);

/// Centered finite-difference derivative; step tol.diff_step * (1 + |x|),
/// shrunk when the stencil would leave f.domain.
double derivative(const Func1D& f, double x, const Tolerances& tol = default_tolerances());

/// D_G f(x) = G'(G^{-1}(x)) f'(x)
double g_derivative(const GroupClass& cls, const Func1D& f, double x,
                    const Tolerances& tol = default_tolerances());

/// D~_G f(x) = f'(x) / G'(x)
double dual_g_derivative(const GroupClass& cls, const Func1D& f, double x,
                         const Tolerances& tol = default_tolerances());

enum class IntegralPath {
  DirectWeight,  // integral of f(x) / G'(G^{-1}(x)) dx
  Substitution,  // integral of f(G(u)) du over [G^{-1}(a), G^{-1}(b)]
};

/// I_G f over [a, b].
double g_integral(const GroupClass& cls, const Func1D& f, double a, double b,
                  IntegralPath path = IntegralPath::DirectWeight,
                  const Tolerances& tol = default_tolerances());

/// Integral of f(x) G'(x) dx over [a, b].
double dual_g_integral(const GroupClass& cls, const Func1D& f, double a, double b,
                       const Tolerances& tol = default_tolerances());

struct FundamentalTheoremResidual {
  double deformed;  // |I_G(D_G f) - (f(b) - f(a))|
  double dual;      // |I~_G(D~_G f) - (f(b) - f(a))|
};

/// Derivatives use the five-point stencil whatever tol.stencil says.
FundamentalTheoremResidual fundamental_theorem_residual(const GroupClass& cls, const Func1D& f,
                                                        double a, double b,
                                                        const Tolerances& tol = default_tolerances());

}  // namespace groupcalc
