#pragma once

#include "groupcalc/group_class.hpp"

namespace groupcalc {

// Generalized arithmetic induced by a group class. Every operation is a
// composition of G, G^{-1}, log_G and exp_G; no class-specific shortcuts.

double g_sum(const GroupClass& cls, double x, double y);
double g_sub(const GroupClass& cls, double x, double y);
double g_neg(const GroupClass& cls, double x);

/// exp_G(log_G x + log_G y); requires x, y > 0.
double g_prod(const GroupClass& cls, double x, double y);
double g_div(const GroupClass& cls, double x, double y);
double g_recip(const GroupClass& cls, double x);

/// n_G = G(n G^{-1}(1)).
struct GInteger {
  long n;
  double value;
  GroupClass cls;
};

GInteger g_integer(const GroupClass& cls, long n);

/// exp_G(n log_G x).
double g_pow(const GroupClass& cls, double x, long n);

/// x_G = G^{-1}(x)
DeformedValue deform(const GroupClass& cls, double x);
/// x~_G = G(x)
DeformedValue dual_deform(const GroupClass& cls, double x);
/// Maps a deformed or dual value back to x-space.
double undeform(const DeformedValue& v);

/// G^{-1}(G(x) + G(y)): the sum that is additive under dual deformation.
double dual_g_sum(const GroupClass& cls, double x, double y);

}  // namespace groupcalc
