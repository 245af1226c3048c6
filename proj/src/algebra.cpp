#include "groupcalc/algebra.hpp"

#include "groupcalc/errors.hpp"
#include "groupcalc/format.hpp"

namespace groupcalc {

namespace {

void require_positive(double x, const char* op) {
  if (!(x > 0.0)) {
    throw DomainError(std::string(op) + " requires positive operands, got " + shortest_repr(x));
  }
}

}  // namespace

double g_sum(const GroupClass& cls, double x, double y) {
  return g_of(cls, g_inv(cls, x) + g_inv(cls, y));
}

double g_sub(const GroupClass& cls, double x, double y) {
  return g_of(cls, g_inv(cls, x) - g_inv(cls, y));
}

double g_neg(const GroupClass& cls, double x) { return g_of(cls, -g_inv(cls, x)); }

double g_prod(const GroupClass& cls, double x, double y) {
  require_positive(x, "G-product");
  require_positive(y, "G-product");
  return exp_g(cls, log_g(cls, x) + log_g(cls, y));
}

double g_div(const GroupClass& cls, double x, double y) {
  require_positive(x, "G-division");
  require_positive(y, "G-division");
  return exp_g(cls, log_g(cls, x) - log_g(cls, y));
}

double g_recip(const GroupClass& cls, double x) {
  require_positive(x, "G-reciprocal");
  return exp_g(cls, -log_g(cls, x));
}

GInteger g_integer(const GroupClass& cls, long n) {
  const double one = g_inv(cls, 1.0);
  return {n, g_of(cls, static_cast<double>(n) * one), cls};
}

double g_pow(const GroupClass& cls, double x, long n) {
  require_positive(x, "G-power");
  return exp_g(cls, static_cast<double>(n) * log_g(cls, x));
}

DeformedValue deform(const GroupClass& cls, double x) { return {g_inv(cls, x), Space::G, cls}; }

DeformedValue dual_deform(const GroupClass& cls, double x) {
  return {g_of(cls, x), Space::DualG, cls};
}

double undeform(const DeformedValue& v) {
  switch (v.space) {
    case Space::G:
      return g_of(v.cls, v.value);
    case Space::DualG:
      return g_inv(v.cls, v.value);
    case Space::X:
      break;
  }
  return v.value;
}

double dual_g_sum(const GroupClass& cls, double x, double y) {
  return g_inv(cls, g_of(cls, x) + g_of(cls, y));
}

}  // namespace groupcalc
