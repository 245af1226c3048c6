#pragma once

#include <vector>

#include "groupcalc/group_class.hpp"
#include "groupcalc/spectral.hpp"

namespace groupcalc {

/// State n of the deformed infinite well on [0, L].
struct WellSolution {
  GroupClass cls;
  double L;
  double L_G;        // G^{-1}(L)
  int n;
  double amplitude;  // sqrt(2 / L_G)
  Units units;

  /// Throws std::invalid_argument for L <= 0 or n < 1, DomainError when [0, L]
  /// leaves the class domain.
  static WellSolution make(const GroupClass& cls, double L, int n, Units units = {});
};

/// A_G sin(n pi x_G / L_G) for 0 <= x_G <= L_G, zero elsewhere.
double eigenfunction_g(const WellSolution& sol, double x_g);

/// Psi_n(x) = sqrt(2 / (L_G A(x))) sin(n pi G^{-1}(x) / L_G) on [0, L], zero outside.
/// Throws DomainError when x is outside the class domain.
double eigenfunction_x(const WellSolution& sol, double x);

/// hbar^2 (n pi / L_G)^2 / (2 m0)
double energy(const WellSolution& sol);

/// [0, G(L_G/n), ..., G((n-1) L_G/n), L]
std::vector<double> zeros(const WellSolution& sol);

/// max_m |zeros[m] - g_sum(zeros[m-1], zeros[1])|
double zeros_group_law_residual(const WellSolution& sol);

/// G(m L_G / n) - G((m-1) L_G / n). Throws IndexError unless 1 <= m <= n.
double spacing(const WellSolution& sol, int m);

/// Explicit spacing formula for BG, Tsallis and Kaniadakis; DomainError for other classes.
double spacing_closed_form(const WellSolution& sol, int m);

enum class SampleMode {
  UniformX,  // uniform in x / L
  UniformG,  // uniform in x_G / L_G
};

struct ProbabilityRow {
  double coordinate;  // x / L or x_G / L_G
  double density;     // |Psi_n|^2 / A_G^2
};

/// n_samples rows spanning [0, 1] inclusive. Throws std::invalid_argument for n_samples < 2.
std::vector<ProbabilityRow> probability_table(const WellSolution& sol, int n_samples,
                                              SampleMode mode = SampleMode::UniformX);

}  // namespace groupcalc
