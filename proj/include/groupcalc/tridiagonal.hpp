#pragma once

#include <span>
#include <vector>

#include "groupcalc/tolerances.hpp"

namespace groupcalc {

/// Symmetric tridiagonal matrix: diag has n entries, off has n-1.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const noexcept { return diag.size(); }
  std::vector<double> apply(std::span<const double> v) const;
  double norm_inf() const;
};

/// General real tridiagonal matrix. sub[i] = T(i+1, i), super[i] = T(i, i+1).
struct Tridiagonal {
  std::vector<double> sub;
  std::vector<double> diag;
  std::vector<double> super;

  std::size_t size() const noexcept { return diag.size(); }
  std::vector<double> apply(std::span<const double> v) const;
  double norm_inf() const;
};

/// Number of eigenvalues strictly below x (Sturm sequence of the LDL^T pivots).
std::size_t sturm_count(const SymTridiagonal& t, double x);

/// Gershgorin enclosure [lo, hi] of the spectrum.
std::pair<double, double> gershgorin_bounds(const SymTridiagonal& t);

/// Eigenvalue number `index` (0-based, ascending) by bisection on Sturm counts.
double bisect_eigenvalue(const SymTridiagonal& t, std::size_t index);

/// Every eigenvalue by implicit QL with Wilkinson shifts, ascending.
std::vector<double> ql_eigenvalues(const SymTridiagonal& t);

struct EigenPairs {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // unit 2-norm
  std::vector<double> residuals;             // ||T v - lambda v||
};

/// The k lowest eigenpairs. Eigenvalues come from tol.eigen (bisection by default,
/// computed concurrently per index) and vectors from inverse iteration.
/// Throws std::invalid_argument unless 1 <= k <= n, ConvergenceError when a pair
/// misses max(tol.eigen_residual, 64 eps ||T||).
EigenPairs lowest_eigenpairs(const SymTridiagonal& t, std::size_t k,
                             const Tolerances& tol = default_tolerances());

/// Diagonal similarity S = D T D^{-1} that makes T symmetric. Requires
/// sub[i] * super[i] > 0. An eigenvector y of S maps to v_i = y_i / scale_i of T.
struct Symmetrized {
  SymTridiagonal matrix;
  std::vector<double> scale;
};

Symmetrized symmetrize(const Tridiagonal& t);

}  // namespace groupcalc
