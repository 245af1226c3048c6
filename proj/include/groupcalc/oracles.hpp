#pragma once

namespace groupcalc {

/// Result of a cutoff bracket [base]_+^{p}: `clamped` distinguishes a genuine
/// zero from a negative base that was cut off.
struct CutoffValue {
  double value;
  bool clamped;
};

/// [base]_+^{exponent}. Negative base is clamped to 0; a zero base with a negative
/// exponent is a pole and raises DomainError.
CutoffValue cutoff_pow(double base, double exponent);

/// Closed-form q-algebra of the Tsallis class, written directly in terms of q.
/// Used to cross-validate the generic operations.
namespace q_oracle {

double q_log(double q, double x);
CutoffValue q_exp(double q, double x);
double q_sum(double q, double x, double y);
double q_sub(double q, double x, double y);
double q_neg(double q, double x);
CutoffValue q_prod(double q, double x, double y);
CutoffValue q_div(double q, double x, double y);
CutoffValue q_recip(double q, double x);
double q_integer(double q, long n);
CutoffValue q_pow(double q, double x, long n);

}  // namespace q_oracle

/// Closed-form kappa-algebra of the Kaniadakis class.
namespace kappa_oracle {

double kappa_log(double kappa, double x);
CutoffValue kappa_exp(double kappa, double x);
double kappa_sum(double kappa, double x, double y);
double kappa_sub(double kappa, double x, double y);
double kappa_neg(double kappa, double x);
double kappa_prod(double kappa, double x, double y);
double kappa_div(double kappa, double x, double y);
double kappa_recip(double kappa, double x);
double kappa_integer(double kappa, long n);
CutoffValue kappa_pow(double kappa, double x, long n);

}  // namespace kappa_oracle

}  // namespace groupcalc
