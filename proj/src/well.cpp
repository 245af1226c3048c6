#include "groupcalc/well.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "groupcalc/algebra.hpp"
#include "groupcalc/errors.hpp"
#include "groupcalc/format.hpp"

namespace groupcalc {

WellSolution WellSolution::make(const GroupClass& cls, double L, int n, Units units) {
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("well width L must be positive");
  if (n < 1) throw std::invalid_argument("quantum number n must be >= 1");
  const Interval& dom = cls.domain();
  if (!dom.contains(0.0) || !dom.contains(L)) {
    throw DomainError("well [0, " + shortest_repr(L) + "] leaves the domain (" + shortest_repr(dom.lo) + ", " +
                      shortest_repr(dom.hi) + ") of class " + cls.spec());
  }
  const double lg = g_inv(cls, L);
  return {cls, L, lg, n, std::sqrt(2.0 / lg), units};
}

double eigenfunction_g(const WellSolution& sol, double x_g) {
  if (x_g < 0.0 || x_g > sol.L_G) return 0.0;
  return sol.amplitude * std::sin(sol.n * std::numbers::pi * x_g / sol.L_G);
}

double eigenfunction_x(const WellSolution& sol, double x) {
  if (!sol.cls.domain().contains(x)) {
    throw DomainError("x = " + shortest_repr(x) + " is outside the domain of class " + sol.cls.spec());
  }
  if (x < 0.0 || x > sol.L) return 0.0;
  const double xg = g_inv(sol.cls, x);
  const double a = g_prime(sol.cls, xg);
  return std::sqrt(2.0 / (sol.L_G * a)) * std::sin(sol.n * std::numbers::pi * xg / sol.L_G);
}

double energy(const WellSolution& sol) {
  const double k = sol.n * std::numbers::pi / sol.L_G;
  return sol.units.hbar * sol.units.hbar * k * k / (2.0 * sol.units.m0);
}

std::vector<double> zeros(const WellSolution& sol) {
  std::vector<double> z(static_cast<std::size_t>(sol.n) + 1);
  z[0] = 0.0;
  for (int m = 1; m < sol.n; ++m) z[m] = g_of(sol.cls, m * sol.L_G / sol.n);
  z[sol.n] = sol.L;
  return z;
}

double zeros_group_law_residual(const WellSolution& sol) {
  const auto z = zeros(sol);
  const double step = g_of(sol.cls, sol.L_G / sol.n);
  double worst = 0.0;
  for (int m = 1; m <= sol.n; ++m) {
    worst = std::max(worst, std::abs(z[m] - g_sum(sol.cls, z[m - 1], step)));
  }
  return worst;
}

double spacing(const WellSolution& sol, int m) {
  if (m < 1 || m > sol.n) {
    throw IndexError("spacing index " + std::to_string(m) + " outside 1.." + std::to_string(sol.n));
  }
  const auto z = zeros(sol);
  return z[m] - z[m - 1];
}

double spacing_closed_form(const WellSolution& sol, int m) {
  if (m < 1 || m > sol.n) {
    throw IndexError("spacing index " + std::to_string(m) + " outside 1.." + std::to_string(sol.n));
  }
  const double hi = static_cast<double>(m) / sol.n;
  const double lo = static_cast<double>(m - 1) / sol.n;
  const double L = sol.L;
  if (sol.cls.is_bg()) return L / sol.n;
  if (const auto* t = std::get_if<classes::Tsallis>(&sol.cls.kind())) {
    const double g = t->gamma();
    const double base = 1.0 + g * L;
    return (std::pow(base, hi) - std::pow(base, lo)) / g;
  }
  if (const auto* k = std::get_if<classes::Kaniadakis>(&sol.cls.kind())) {
    const double kap = k->kappa;
    const double b = kap * L + std::sqrt(kap * kap * L * L + 1.0);
    return (std::pow(b, hi) - std::pow(b, lo) - std::pow(b, -hi) + std::pow(b, -lo)) / (2.0 * kap);
  }
  throw DomainError("no closed-form spacing for class " + sol.cls.spec());
}

std::vector<ProbabilityRow> probability_table(const WellSolution& sol, int n_samples, SampleMode mode) {
  if (n_samples < 2) throw std::invalid_argument("probability_table needs at least 2 samples");
  const double norm = sol.amplitude * sol.amplitude;
  std::vector<ProbabilityRow> rows;
  rows.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double s = i + 1 == n_samples ? 1.0 : static_cast<double>(i) / (n_samples - 1);
    double psi;
    if (mode == SampleMode::UniformX) {
      psi = eigenfunction_x(sol, s * sol.L);
    } else {
      psi = eigenfunction_g(sol, s * sol.L_G);
    }
    rows.push_back({s, psi * psi / norm});
  }
  return rows;
}

}  // namespace groupcalc
