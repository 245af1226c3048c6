#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "groupcalc/tolerances.hpp"

namespace groupcalc {

/// Open interval (lo, hi); infinite bounds are allowed.
struct Interval {
  double lo;
  double hi;

  bool contains(double x) const noexcept { return x > lo && x < hi; }
};

namespace classes {

/// G(t) = t
struct Bg {};

/// G(t) = (exp((1-q) t) - 1) / (1-q), q != 1
struct Tsallis {
  double q;
  double gamma() const noexcept { return 1.0 - q; }
};

/// G(t) = sinh(kappa t) / kappa, kappa > 0 after normalization
struct Kaniadakis {
  double kappa;
};

/// G(t) = (exp(a t) - exp(b t)) / (a - b), normalized so that a > b, a >= 0 >= b
struct Abe {
  double a;
  double b;
};

/// Truncated formal group exponential G(t) = t + sum_{k=1}^{order} a_k t^{k+1} / (k+1)
struct Series {
  std::vector<double> coeffs;  // a_1, a_2, ...
  int order;
};

}  // namespace classes

/// A group-entropy class: the function G with its inverse and derivatives.
///
/// Immutable after construction. Degenerate parameterizations (q = 1, kappa = 0)
/// normalize to the BG class so downstream formulas never see a 0/0 limit.
class GroupClass {
 public:
  using Kind = std::variant<classes::Bg, classes::Tsallis, classes::Kaniadakis,
                            classes::Abe, classes::Series>;

  GroupClass() : GroupClass(classes::Bg{}) {}

  static GroupClass bg();
  static GroupClass tsallis(double q);
  static GroupClass kaniadakis(double kappa);
  /// Throws std::invalid_argument for a == b or when G is not monotone (a, b same sign).
  static GroupClass abe(double a, double b);
  /// `order` < 0 means "use every supplied coefficient". Throws std::invalid_argument
  /// when order exceeds the coefficient list or is < 1.
  static GroupClass series(std::vector<double> coeffs, int order = -1);

  /// Parses "bg", "tsallis:q=<f>", "kaniadakis:k=<f>", "abe:a=<f>,b=<f>",
  /// "series:a1=<f>,a2=<f>,...[,order=<n>]".
  static GroupClass parse(std::string_view spec);

  /// Canonical specification string; parse(spec()) reproduces the class.
  std::string spec() const;

  const Kind& kind() const noexcept { return kind_; }
  bool is_bg() const noexcept { return std::holds_alternative<classes::Bg>(kind_); }

  /// Interval of x on which G^{-1}(x) is defined.
  const Interval& domain() const noexcept { return domain_; }
  /// Interval of t on which the class is a valid (locally invertible) group law.
  const Interval& t_domain() const noexcept { return t_domain_; }
  /// True when the domain is a truncation artefact (series classes).
  bool restricted() const noexcept { return restricted_; }

 private:
  explicit GroupClass(Kind kind);

  Kind kind_;
  Interval domain_;
  Interval t_domain_;
  bool restricted_ = false;
};

// G and its derivatives, evaluated at t.
double g_of(const GroupClass& cls, double t);
double g_prime(const GroupClass& cls, double t);
double g_second(const GroupClass& cls, double t);
double g_third(const GroupClass& cls, double t);

/// G^{-1}(s). Throws DomainError outside cls.domain(), ConvergenceError when the
/// numeric inversion (Abe, Series) cannot bracket or converge.
double g_inv(const GroupClass& cls, double s, const Tolerances& tol = default_tolerances());

/// log_G(x) = G(ln x), x > 0.
double log_g(const GroupClass& cls, double x);
/// exp_G(x) = exp(G^{-1}(x)).
double exp_g(const GroupClass& cls, double x, const Tolerances& tol = default_tolerances());
double cos_g(const GroupClass& cls, double x, const Tolerances& tol = default_tolerances());
double sin_g(const GroupClass& cls, double x, const Tolerances& tol = default_tolerances());

/// A(x) = G'(G^{-1}(x)) together with dA/dx and d2A/dx2.
struct DeformationFactor {
  double a;
  double da;
  double d2a;
};

DeformationFactor deformation_factor(const GroupClass& cls, double x,
                                     const Tolerances& tol = default_tolerances());

enum class Space { X, G, DualG };

/// A real number tagged with the space it lives in.
struct DeformedValue {
  double value;
  Space space;
  GroupClass cls;
};

}  // namespace groupcalc
