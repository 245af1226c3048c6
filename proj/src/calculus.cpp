#include "groupcalc/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "groupcalc/errors.hpp"
#include "groupcalc/format.hpp"

namespace groupcalc {

namespace {

void require_interior(const Interval& dom, double x, const char* what) {
  if (!dom.contains(x)) {
    throw DomainError(std::string(what) + ": point " + shortest_repr(x) + " is not interior to the domain");
  }
}

}  // namespace

Func1D cubic_interpolant(std::vector<double> xs, std::vector<double> ys) {
  const std::size_t n = xs.size();
  if (n < 2 || ys.size() != n) throw std::invalid_argument("cubic_interpolant: need >= 2 matching samples");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(xs[i] > xs[i - 1])) throw std::invalid_argument("cubic_interpolant: abscissae must increase");
  }
  // Second derivatives of the natural spline (tridiagonal solve).
  std::vector<double> m(n, 0.0);
  if (n > 2) {
    std::vector<double> c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = xs[i] - xs[i - 1];
      const double h1 = xs[i + 1] - xs[i];
      const double rhs = 6.0 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
      const double diag = 2.0 * (h0 + h1) - h0 * c[i - 1];
      c[i] = h1 / diag;
      d[i] = (rhs - h0 * d[i - 1]) / diag;
    }
    for (std::size_t i = n - 2; i >= 1; --i) m[i] = d[i] - c[i] * m[i + 1];
  }
  const double lo = xs.front(), hi = xs.back();
  const double pad = 1e-12 * (hi - lo);
  auto rule = [xs = std::move(xs), ys = std::move(ys), m = std::move(m)](double x) {
    const std::size_t n = xs.size();
    std::size_t j = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
    j = std::clamp<std::size_t>(j, 1, n - 1);
    const double h = xs[j] - xs[j - 1];
    const double a = (xs[j] - x) / h;
    const double b = (x - xs[j - 1]) / h;
    return a * ys[j - 1] + b * ys[j] + ((a * a * a - a) * m[j - 1] + (b * b * b - b) * m[j]) * h * h / 6.0;
  };
  return {std::move(rule), {lo - pad, hi + pad}};
}

double derivative(const Func1D& f, double x, const Tolerances& tol) {
  require_interior(f.domain, x, "derivative");
  const int reach = tol.stencil == DiffStencil::FivePoint ? 2 : 1;
  double h = tol.diff_step * (1.0 + std::abs(x));
  const double room = std::min(x - f.domain.lo, f.domain.hi - x);
  if (reach * h >= room) h = 0.5 * room / reach;
  if (tol.stencil == DiffStencil::FivePoint) {
    return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
  }
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double g_derivative(const GroupClass& cls, const Func1D& f, double x, const Tolerances& tol) {
  require_interior(cls.domain(), x, "G-derivative");
  return g_prime(cls, g_inv(cls, x, tol)) * derivative(f, x, tol);
}

double dual_g_derivative(const GroupClass& cls, const Func1D& f, double x, const Tolerances& tol) {
  const double slope = g_prime(cls, x);
  if (!(slope > 0.0)) {
    throw DomainError("dual G-derivative: G'(" + shortest_repr(x) + ") is not positive");
  }
  return derivative(f, x, tol) / slope;
}

double g_integral(const GroupClass& cls, const Func1D& f, double a, double b, IntegralPath path,
                  const Tolerances& tol) {
  if (path == IntegralPath::Substitution) {
    const double ua = g_inv(cls, a, tol);
    const double ub = g_inv(cls, b, tol);
    return integrate([&](double u) { return f(g_of(cls, u)); }, ua, ub, tol);
  }
  // endpoints must be valid for G^{-1}; checked eagerly for a clear message
  g_inv(cls, a, tol);
  g_inv(cls, b, tol);
  return integrate([&](double x) { return f(x) / g_prime(cls, g_inv(cls, x, tol)); }, a, b, tol);
}

double dual_g_integral(const GroupClass& cls, const Func1D& f, double a, double b, const Tolerances& tol) {
  return integrate([&](double x) { return f(x) * g_prime(cls, x); }, a, b, tol);
}

FundamentalTheoremResidual fundamental_theorem_residual(const GroupClass& cls, const Func1D& f,
                                                        double a, double b, const Tolerances& tol_in) {
  Tolerances tol = tol_in;
  tol.stencil = DiffStencil::FivePoint;
  const double target = f(b) - f(a);
  const Func1D dg{[&](double x) { return g_derivative(cls, f, x, tol); }, f.domain};
  const Func1D ddual{[&](double x) { return dual_g_derivative(cls, f, x, tol); }, f.domain};
  return {std::abs(g_integral(cls, dg, a, b, IntegralPath::DirectWeight, tol) - target),
          std::abs(dual_g_integral(cls, ddual, a, b, tol) - target)};
}

}  // namespace groupcalc
