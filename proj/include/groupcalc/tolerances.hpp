#pragma once

namespace groupcalc {

enum class DiffStencil { ThreePoint, FivePoint };
enum class QuadratureBackend { AdaptiveSimpson, GaussLegendre16 };
enum class EigenBackend { SturmBisection, ImplicitQL };

/// Numerical tolerances shared by every module. Defaults match the documented contracts.
struct Tolerances {
  // group inversion
  double inverse_rel = 1e-14;
  int inverse_max_iter = 200;
  double series_min_slope = 0.5;  // G' must stay above this inside a series class domain

  // differentiation: h = diff_step * (1 + |x|)
  double diff_step = 1e-5;
  DiffStencil stencil = DiffStencil::ThreePoint;

  // quadrature
  double quad_abs = 1e-10;
  int quad_max_depth = 40;
  QuadratureBackend quadrature = QuadratureBackend::AdaptiveSimpson;

  // eigensolver
  EigenBackend eigen = EigenBackend::SturmBisection;
  double eigen_residual = 1e-8;
  int inverse_iteration_max = 8;
};

/// Library-wide defaults; pass an explicit Tolerances to override per call.
inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace groupcalc
