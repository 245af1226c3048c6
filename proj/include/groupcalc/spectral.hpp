#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "groupcalc/calculus.hpp"
#include "groupcalc/group_class.hpp"
#include "groupcalc/tridiagonal.hpp"

namespace groupcalc {

using cplx = std::complex<double>;

/// Uniform mesh. `coordinate_space` is Space::X (physical x) or Space::G (x_G).
struct Grid {
  double start;
  double end;
  int n_points;
  Space coordinate_space = Space::X;

  /// Throws std::invalid_argument unless n_points >= 3 and end > start.
  static Grid make(double start, double end, int n_points, Space space = Space::X);

  double spacing() const noexcept { return (end - start) / (n_points - 1); }
  double node(int i) const noexcept { return i + 1 == n_points ? end : start + i * spacing(); }
  std::vector<double> nodes() const;
};

/// Uniform grid in x_G covering the image of [x_start, x_end] under G^{-1}.
Grid deformed_grid(const GroupClass& cls, double x_start, double x_end, int n_points);

struct WaveFunction {
  Grid grid;
  std::vector<cplx> values;
  std::vector<double> weights;  // trapezoid weights in the grid's own coordinate

  WaveFunction(Grid g, std::vector<cplx> v);

  /// sum_i w_i |psi_i|^2
  double norm_squared() const;
  void normalize();
  /// Real parts, for states that are real up to a global phase.
  std::vector<double> real_values() const;
};

struct Units {
  double hbar = 1.0;
  double m0 = 1.0;
};

namespace potentials {

/// Zero inside [0, L]; the solver imposes Dirichlet walls at the grid ends.
struct InfiniteWell {
  double width;
};

/// Samples (x_i, V_i) interpolated by a natural cubic spline.
struct Tabulated {
  std::vector<double> x;
  std::vector<double> v;
  Func1D spline;
};

struct Callable {
  RealFn rule;
};

}  // namespace potentials

struct Potential {
  std::variant<potentials::InfiniteWell, potentials::Tabulated, potentials::Callable> kind;

  static Potential infinite_well(double width);
  static Potential tabulated(std::vector<double> x, std::vector<double> v);
  static Potential callable(RealFn rule);

  double operator()(double x) const;
  /// [0, L] for wells, the table range for tabulated potentials; callables have none.
  std::optional<std::pair<double, double>> natural_extent() const;
};

/// Tridiagonal with complex entries, used for the deformed momentum operator.
struct ComplexTridiagonal {
  std::vector<cplx> sub;
  std::vector<cplx> diag;
  std::vector<cplx> super;

  std::size_t size() const noexcept { return diag.size(); }
  std::vector<cplx> apply(std::span<const cplx> v) const;
};

enum class MomentumRoute {
  SymmetrizedProduct,  // (A p + p A) / 2
  FieldCorrected,      // A p - (i hbar / 2) A'
};

/// p_G on an x-space grid, centered differences inside, one-sided on the two
/// boundary rows (which are excluded from every Hermiticity statement).
ComplexTridiagonal momentum_matrix(const GroupClass& cls, const Grid& grid, Units units = {},
                                   MomentumRoute route = MomentumRoute::SymmetrizedProduct);

/// Max over interior nodes of |([x_G, p_G] - i hbar) psi| for every test function.
double commutator_check(const GroupClass& cls, const Grid& grid, std::span<const Func1D> tests,
                        Units units = {});

/// -(hbar^2 / 8 m0) (A'^2 + 2 A A'')
double field_term(const GroupClass& cls, double x, Units units = {});

/// m0 / A(x)^2
double mass_profile(const GroupClass& cls, double x, double m0);

/// Position-dependent-mass Hamiltonian on the interior nodes of an x-grid
/// (Dirichlet walls at both ends). Not symmetric as assembled.
struct XSpaceHamiltonian {
  Grid grid;
  Tridiagonal interior;
  GroupClass cls;
  Units units;
};

XSpaceHamiltonian hamiltonian_xspace(const GroupClass& cls, const Grid& grid, const Potential& potential,
                                     Units units = {});

/// Constant-mass Hamiltonian -(hbar^2/2m0) d^2/dx_G^2 + V(G(x_G)) on the interior
/// nodes of a deformed grid.
struct GSpaceHamiltonian {
  Grid grid;
  SymTridiagonal interior;
  GroupClass cls;
  Units units;
};

GSpaceHamiltonian hamiltonian_gspace(const GroupClass& cls, const Grid& grid, const Potential& potential,
                                     Units units = {});

struct SolverMeta {
  int grid_points = 0;
  Space space = Space::G;
  std::string backend;
  std::vector<double> residuals;
  Units units;
};

struct Spectrum {
  std::vector<double> energies;  // ascending
  std::vector<WaveFunction> states;
  GroupClass cls;
  SolverMeta meta;
};

/// k lowest eigenpairs; states normalized under dx_G. Requires 1 <= k <= N - 2.
Spectrum solve_eigen(const GSpaceHamiltonian& h, int k, const Tolerances& tol = default_tolerances());

/// k lowest eigenpairs of the x-space operator via a diagonal similarity to a
/// symmetric tridiagonal; states normalized under dx.
Spectrum solve_eigen(const XSpaceHamiltonian& h, int k, const Tolerances& tol = default_tolerances());

/// Psi(x) = Phi_G(G^{-1}(x)) / sqrt(A(x)) on a uniform x-grid spanning G(grid).
/// `n_points` <= 0 keeps the input resolution.
WaveFunction transform_state(const GroupClass& cls, const WaveFunction& phi, int n_points = 0);

/// Phi_G(x) = Psi(x) sqrt(A(x)) as an evaluation rule.
Func1D deformed_wavefunction(const GroupClass& cls, Func1D psi);

}  // namespace groupcalc
