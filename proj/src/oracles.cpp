#include "groupcalc/oracles.hpp"

#include <cmath>

#include "groupcalc/errors.hpp"
#include "groupcalc/format.hpp"

namespace groupcalc {

namespace {

void require_positive(double x) {
  if (!(x > 0.0)) throw DomainError("operand must be positive, got " + shortest_repr(x));
}

// x^g - 1 without cancellation near x = 1.
double pow_m1(double x, double g) { return std::expm1(g * std::log(x)); }

// s + sqrt(s^2 + 1), rationalized for s < 0.
double kappa_base(double s) {
  const double r = std::sqrt(s * s + 1.0);
  return s >= 0.0 ? s + r : 1.0 / (r - s);
}

}  // namespace

CutoffValue cutoff_pow(double base, double exponent) {
  if (base < 0.0) return {0.0, true};
  if (base == 0.0 && exponent < 0.0) throw DomainError("cutoff bracket: pole at zero base");
  return {std::pow(base, exponent), false};
}

namespace q_oracle {

double q_log(double q, double x) {
  require_positive(x);
  return pow_m1(x, 1.0 - q) / (1.0 - q);
}

CutoffValue q_exp(double q, double x) { return cutoff_pow(1.0 + (1.0 - q) * x, 1.0 / (1.0 - q)); }

double q_sum(double q, double x, double y) { return x + y + (1.0 - q) * x * y; }

double q_sub(double q, double x, double y) {
  const double den = 1.0 + (1.0 - q) * y;
  if (den == 0.0) throw DomainError("q-subtraction: pole at y = -1/(1-q)");
  return (x - y) / den;
}

double q_neg(double q, double x) {
  const double den = 1.0 + (1.0 - q) * x;
  if (den == 0.0) throw DomainError("q-negation: pole at x = -1/(1-q)");
  return -x / den;
}

CutoffValue q_prod(double q, double x, double y) {
  require_positive(x);
  require_positive(y);
  const double g = 1.0 - q;
  return cutoff_pow(1.0 + pow_m1(x, g) + pow_m1(y, g), 1.0 / g);
}

CutoffValue q_div(double q, double x, double y) {
  require_positive(x);
  require_positive(y);
  const double g = 1.0 - q;
  return cutoff_pow(1.0 + pow_m1(x, g) - pow_m1(y, g), 1.0 / g);
}

CutoffValue q_recip(double q, double x) {
  require_positive(x);
  const double g = 1.0 - q;
  return cutoff_pow(1.0 - pow_m1(x, g), 1.0 / g);
}

double q_integer(double q, long n) {
  if (!(2.0 - q > 0.0)) throw DomainError("q-integers require q < 2");
  return std::expm1(static_cast<double>(n) * std::log1p(1.0 - q)) / (1.0 - q);
}

CutoffValue q_pow(double q, double x, long n) {
  require_positive(x);
  const double g = 1.0 - q;
  const double nn = static_cast<double>(n);
  return cutoff_pow(1.0 + nn * pow_m1(x, g), 1.0 / g);
}

}  // namespace q_oracle

namespace kappa_oracle {

double kappa_log(double kappa, double x) {
  require_positive(x);
  return (pow_m1(x, kappa) - pow_m1(x, -kappa)) / (2.0 * kappa);
}

CutoffValue kappa_exp(double kappa, double x) {
  return cutoff_pow(kappa_base(kappa * x), 1.0 / kappa);
}

double kappa_sum(double kappa, double x, double y) {
  const double k2 = kappa * kappa;
  return x * std::sqrt(1.0 + k2 * y * y) + y * std::sqrt(1.0 + k2 * x * x);
}

double kappa_sub(double kappa, double x, double y) {
  const double k2 = kappa * kappa;
  return x * std::sqrt(1.0 + k2 * y * y) - y * std::sqrt(1.0 + k2 * x * x);
}

double kappa_neg(double, double x) { return -x; }

double kappa_prod(double kappa, double x, double y) {
  require_positive(x);
  require_positive(y);
  const double arg =
      (pow_m1(x, kappa) - pow_m1(x, -kappa) + pow_m1(y, kappa) - pow_m1(y, -kappa)) / 2.0;
  return std::exp(std::asinh(arg) / kappa);
}

double kappa_div(double kappa, double x, double y) {
  require_positive(x);
  require_positive(y);
  const double arg =
      (pow_m1(x, kappa) - pow_m1(x, -kappa) - pow_m1(y, kappa) + pow_m1(y, -kappa)) / 2.0;
  return std::exp(std::asinh(arg) / kappa);
}

double kappa_recip(double, double x) {
  require_positive(x);
  return 1.0 / x;
}

double kappa_integer(double kappa, long n) {
  return std::sinh(static_cast<double>(n) * std::asinh(kappa)) / kappa;
}

CutoffValue kappa_pow(double kappa, double x, long n) {
  require_positive(x);
  const double s = static_cast<double>(n) * std::sinh(kappa * std::log(x));
  return cutoff_pow(kappa_base(s), 1.0 / kappa);
}

}  // namespace kappa_oracle

}  // namespace groupcalc
