#include "groupcalc/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "groupcalc/errors.hpp"

namespace groupcalc {

namespace {

constexpr int kMinDepth = 4;
constexpr long kMaxEvaluations = 50'000'000;

struct SimpsonState {
  const RealFn& f;
  double scale;  // abs_tol / (b - a)
  int max_depth;
  long evaluations = 0;

  double eval(double x) {
    if (++evaluations > kMaxEvaluations) throw ToleranceNotMet("adaptive Simpson: evaluation budget exhausted");
    return f(x);
  }

  double recurse(double a, double fa, double m, double fm, double b, double fb, double whole, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= kMinDepth && std::abs(delta) <= 15.0 * scale * (b - a)) {
      return left + right + delta / 15.0;
    }
    if (depth >= max_depth) {
      throw ToleranceNotMet("adaptive Simpson: depth limit reached near x = " + std::to_string(m));
    }
    return recurse(a, fa, lm, flm, m, fm, left, depth + 1) + recurse(m, fm, rm, frm, b, fb, right, depth + 1);
  }
};

struct GaussRule {
  std::array<double, 16> nodes{};
  std::array<double, 16> weights{};
};

// Roots of P_16 by Newton iteration from the Chebyshev guesses.
const GaussRule& gauss16() {
  static const GaussRule rule = [] {
    GaussRule r;
    constexpr int n = 16;
    for (int i = 0; i < n / 2; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      r.nodes[i] = -x;
      r.nodes[n - 1 - i] = x;
      r.weights[i] = w;
      r.weights[n - 1 - i] = w;
    }
    return r;
  }();
  return rule;
}

double gauss_panel(const RealFn& f, double a, double b) {
  const auto& rule = gauss16();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 16; ++i) sum += rule.weights[i] * f(c + h * rule.nodes[i]);
  return h * sum;
}

double gauss_recurse(const RealFn& f, double a, double b, double whole, double scale, int depth, int max_depth) {
  const double m = 0.5 * (a + b);
  const double left = gauss_panel(f, a, m);
  const double right = gauss_panel(f, m, b);
  if (std::abs(left + right - whole) <= scale * (b - a)) return left + right;
  if (depth >= max_depth) throw ToleranceNotMet("adaptive Gauss-Legendre: depth limit reached");
  return gauss_recurse(f, a, m, left, scale, depth + 1, max_depth) +
         gauss_recurse(f, m, b, right, scale, depth + 1, max_depth);
}

}  // namespace

double adaptive_simpson(const RealFn& f, double a, double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  if (b < a) return -adaptive_simpson(f, b, a, abs_tol, max_depth);
  SimpsonState state{f, abs_tol / (b - a), max_depth};
  const double m = 0.5 * (a + b);
  const double fa = state.eval(a), fm = state.eval(m), fb = state.eval(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return state.recurse(a, fa, m, fm, b, fb, whole, 0);
}

double adaptive_gauss_legendre(const RealFn& f, double a, double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  if (b < a) return -adaptive_gauss_legendre(f, b, a, abs_tol, max_depth);
  return gauss_recurse(f, a, b, gauss_panel(f, a, b), abs_tol / (b - a), 0, max_depth);
}

double integrate(const RealFn& f, double a, double b, const Tolerances& tol) {
  switch (tol.quadrature) {
    case QuadratureBackend::GaussLegendre16:
      return adaptive_gauss_legendre(f, a, b, tol.quad_abs, tol.quad_max_depth);
    case QuadratureBackend::AdaptiveSimpson:
      break;
  }
  return adaptive_simpson(f, a, b, tol.quad_abs, tol.quad_max_depth);
}

}  // namespace groupcalc
