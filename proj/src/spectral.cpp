#include "groupcalc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "groupcalc/errors.hpp"
#include "groupcalc/format.hpp"

namespace groupcalc {

namespace {

constexpr cplx kI{0.0, 1.0};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<double> trapezoid_weights(const Grid& g) {
  std::vector<double> w(static_cast<std::size_t>(g.n_points), g.spacing());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

void require_inside(const GroupClass& cls, const Grid& grid) {
  if (!cls.domain().contains(grid.start) || !cls.domain().contains(grid.end)) {
    throw DomainError("grid [" + shortest_repr(grid.start) + ", " + shortest_repr(grid.end) +
                      "] leaves the domain of class " + cls.spec());
  }
}

double interior_potential(const Potential& v, double x) {
  const double value = v(x);
  if (!std::isfinite(value)) {
    throw DomainError("potential is not finite at interior node x = " + shortest_repr(x));
  }
  return value;
}

// Fixes the global sign so the first non-negligible component is positive.
void fix_sign(std::vector<double>& v) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  for (double x : v) {
    if (std::abs(x) > 1e-8 * peak) {
      if (x < 0.0) {
        for (auto& y : v) y = -y;
      }
      return;
    }
  }
}

WaveFunction embed_interior(const Grid& grid, const std::vector<double>& interior) {
  std::vector<cplx> values(static_cast<std::size_t>(grid.n_points), 0.0);
  for (std::size_t i = 0; i < interior.size(); ++i) values[i + 1] = interior[i];
  WaveFunction wf(grid, std::move(values));
  wf.normalize();
  return wf;
}

std::string backend_name(const Tolerances& tol) {
  return tol.eigen == EigenBackend::ImplicitQL ? "ql+inverse-iteration" : "sturm-bisection+inverse-iteration";
}

void check_k(int k, const Grid& grid) {
  if (k < 1 || k > grid.n_points - 2) {
    throw std::invalid_argument("solve_eigen: k must lie in [1, N-2], got " + std::to_string(k));
  }
}

}  // namespace

Grid Grid::make(double start, double end, int n_points, Space space) {
  if (n_points < 3) throw std::invalid_argument("grid needs at least 3 points");
  if (!(end > start)) throw std::invalid_argument("grid end must exceed start");
  return {start, end, n_points, space};
}

std::vector<double> Grid::nodes() const {
  std::vector<double> out(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) out[i] = node(i);
  return out;
}

Grid deformed_grid(const GroupClass& cls, double x_start, double x_end, int n_points) {
  return Grid::make(g_inv(cls, x_start), g_inv(cls, x_end), n_points, Space::G);
}

WaveFunction::WaveFunction(Grid g, std::vector<cplx> v)
    : grid(g), values(std::move(v)), weights(trapezoid_weights(g)) {
  if (values.size() != static_cast<std::size_t>(grid.n_points)) {
    throw std::invalid_argument("wavefunction size does not match its grid");
  }
}

double WaveFunction::norm_squared() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += weights[i] * std::norm(values[i]);
  return s;
}

void WaveFunction::normalize() {
  const double n = std::sqrt(norm_squared());
  if (!(n > 0.0)) throw DomainError("cannot normalize a zero wavefunction");
  for (auto& v : values) v /= n;
}

std::vector<double> WaveFunction::real_values() const {
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), [](cplx c) { return c.real(); });
  return out;
}

Potential Potential::infinite_well(double width) {
  if (!(width > 0.0)) throw std::invalid_argument("infinite well width must be positive");
  return {potentials::InfiniteWell{width}};
}

Potential Potential::tabulated(std::vector<double> x, std::vector<double> v) {
  Func1D spline = cubic_interpolant(x, v);
  return {potentials::Tabulated{std::move(x), std::move(v), std::move(spline)}};
}

Potential Potential::callable(RealFn rule) { return {potentials::Callable{std::move(rule)}}; }

double Potential::operator()(double x) const {
  return std::visit(
      Overloaded{
          [x](const potentials::InfiniteWell& w) {
            return (x >= 0.0 && x <= w.width) ? 0.0 : std::numeric_limits<double>::infinity();
          },
          [x](const potentials::Tabulated& t) {
            return t.spline.domain.contains(x) ? t.spline(x) : std::numeric_limits<double>::infinity();
          },
          [x](const potentials::Callable& c) { return c.rule(x); },
      },
      kind);
}

std::optional<std::pair<double, double>> Potential::natural_extent() const {
  return std::visit(
      Overloaded{
          [](const potentials::InfiniteWell& w) -> std::optional<std::pair<double, double>> {
            return std::pair{0.0, w.width};
          },
          [](const potentials::Tabulated& t) -> std::optional<std::pair<double, double>> {
            return std::pair{t.x.front(), t.x.back()};
          },
          [](const potentials::Callable&) -> std::optional<std::pair<double, double>> { return std::nullopt; },
      },
      kind);
}

std::vector<cplx> ComplexTridiagonal::apply(std::span<const cplx> v) const {
  const std::size_t n = size();
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = diag[i] * v[i];
    if (i > 0) s += sub[i - 1] * v[i - 1];
    if (i + 1 < n) s += super[i] * v[i + 1];
    out[i] = s;
  }
  return out;
}

ComplexTridiagonal momentum_matrix(const GroupClass& cls, const Grid& grid, Units units, MomentumRoute route) {
  require_inside(cls, grid);
  const std::size_t n = static_cast<std::size_t>(grid.n_points);
  const double h = grid.spacing();
  std::vector<double> a(n), da(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto f = deformation_factor(cls, grid.node(static_cast<int>(i)));
    a[i] = f.a;
    da[i] = f.da;
  }

  // Real operator M with p_G = -i hbar M.
  std::vector<double> sub(n - 1), diag(n, 0.0), sup(n - 1);
  if (route == MomentumRoute::SymmetrizedProduct) {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      sub[i - 1] = -(a[i] + a[i - 1]) / (4.0 * h);
      sup[i] = (a[i] + a[i + 1]) / (4.0 * h);
    }
    diag[0] = -a[0] / h;
    sup[0] = (a[0] + a[1]) / (2.0 * h);
    diag[n - 1] = a[n - 1] / h;
    sub[n - 2] = -(a[n - 1] + a[n - 2]) / (2.0 * h);
  } else {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      sub[i - 1] = -a[i] / (2.0 * h);
      sup[i] = a[i] / (2.0 * h);
      diag[i] = 0.5 * da[i];
    }
    diag[0] = -a[0] / h + 0.5 * da[0];
    sup[0] = a[0] / h;
    diag[n - 1] = a[n - 1] / h + 0.5 * da[n - 1];
    sub[n - 2] = -a[n - 1] / h;
  }

  const cplx scale = -kI * units.hbar;
  ComplexTridiagonal p;
  p.sub.resize(n - 1);
  p.super.resize(n - 1);
  p.diag.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.diag[i] = scale * diag[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    p.sub[i] = scale * sub[i];
    p.super[i] = scale * sup[i];
  }
  return p;
}

double commutator_check(const GroupClass& cls, const Grid& grid, std::span<const Func1D> tests, Units units) {
  const auto p = momentum_matrix(cls, grid, units);
  const std::size_t n = p.size();
  std::vector<double> xg(n);
  for (std::size_t i = 0; i < n; ++i) xg[i] = g_inv(cls, grid.node(static_cast<int>(i)));

  double worst = 0.0;
  for (const auto& f : tests) {
    std::vector<cplx> psi(n);
    for (std::size_t i = 0; i < n; ++i) psi[i] = f(grid.node(static_cast<int>(i)));
    for (std::size_t i = 1; i + 1 < n; ++i) {
      // ([X, P] psi)_i = sum_j (X_i - X_j) P_ij psi_j, only j = i +- 1 contribute
      const cplx c = (xg[i] - xg[i - 1]) * p.sub[i - 1] * psi[i - 1] +
                     (xg[i] - xg[i + 1]) * p.super[i] * psi[i + 1];
      worst = std::max(worst, std::abs(c - kI * units.hbar * psi[i]));
    }
  }
  return worst;
}

double field_term(const GroupClass& cls, double x, Units units) {
  const auto f = deformation_factor(cls, x);
  return -(units.hbar * units.hbar / (8.0 * units.m0)) * (f.da * f.da + 2.0 * f.a * f.d2a);
}

double mass_profile(const GroupClass& cls, double x, double m0) {
  const double a = deformation_factor(cls, x).a;
  return m0 / (a * a);
}

XSpaceHamiltonian hamiltonian_xspace(const GroupClass& cls, const Grid& grid, const Potential& potential,
                                     Units units) {
  require_inside(cls, grid);
  const double h = grid.spacing();
  const double alpha = units.hbar * units.hbar / (2.0 * units.m0);
  const std::size_t m = static_cast<std::size_t>(grid.n_points) - 2;

  Tridiagonal t;
  t.diag.resize(m);
  t.sub.resize(m - 1);
  t.super.resize(m - 1);
  for (std::size_t j = 0; j < m; ++j) {
    const double x = grid.node(static_cast<int>(j + 1));
    const auto f = deformation_factor(cls, x);
    const double second = f.a * f.a / (h * h);
    const double first = f.a * f.da / h;
    t.diag[j] = 2.0 * alpha * second - 0.25 * alpha * (f.da * f.da + 2.0 * f.a * f.d2a) +
                interior_potential(potential, x);
    if (j > 0) t.sub[j - 1] = -alpha * (second - first);
    if (j + 1 < m) t.super[j] = -alpha * (second + first);
  }
  return {grid, std::move(t), cls, units};
}

GSpaceHamiltonian hamiltonian_gspace(const GroupClass& cls, const Grid& grid, const Potential& potential,
                                     Units units) {
  if (grid.coordinate_space != Space::G) {
    throw std::invalid_argument("hamiltonian_gspace expects a grid in the deformed coordinate");
  }
  const double h = grid.spacing();
  const double alpha = units.hbar * units.hbar / (2.0 * units.m0);
  const std::size_t m = static_cast<std::size_t>(grid.n_points) - 2;

  SymTridiagonal t;
  t.diag.resize(m);
  t.off.assign(m - 1, -alpha / (h * h));
  for (std::size_t j = 0; j < m; ++j) {
    const double x = g_of(cls, grid.node(static_cast<int>(j + 1)));
    if (!cls.domain().contains(x)) {
      throw DomainError("deformed grid node maps outside the class domain");
    }
    t.diag[j] = 2.0 * alpha / (h * h) + interior_potential(potential, x);
  }
  return {grid, std::move(t), cls, units};
}

Spectrum solve_eigen(const GSpaceHamiltonian& h, int k, const Tolerances& tol) {
  check_k(k, h.grid);
  auto pairs = lowest_eigenpairs(h.interior, static_cast<std::size_t>(k), tol);
  Spectrum s{pairs.values, {}, h.cls, {h.grid.n_points, Space::G, backend_name(tol), pairs.residuals, h.units}};
  for (auto& v : pairs.vectors) {
    fix_sign(v);
    s.states.push_back(embed_interior(h.grid, v));
  }
  return s;
}

Spectrum solve_eigen(const XSpaceHamiltonian& h, int k, const Tolerances& tol) {
  check_k(k, h.grid);
  const auto sym = symmetrize(h.interior);
  auto pairs = lowest_eigenpairs(sym.matrix, static_cast<std::size_t>(k), tol);
  Spectrum s{pairs.values, {}, h.cls, {h.grid.n_points, Space::X, backend_name(tol), {}, h.units}};
  for (std::size_t idx = 0; idx < pairs.vectors.size(); ++idx) {
    auto v = pairs.vectors[idx];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] /= sym.scale[i];
    double nv = 0.0;
    for (double x : v) nv += x * x;
    nv = std::sqrt(nv);
    for (auto& x : v) x /= nv;
    // residual against the operator as assembled
    const auto hv = h.interior.apply(v);
    double r2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) r2 += std::pow(hv[i] - pairs.values[idx] * v[i], 2);
    s.meta.residuals.push_back(std::sqrt(r2));
    fix_sign(v);
    s.states.push_back(embed_interior(h.grid, v));
  }
  return s;
}

WaveFunction transform_state(const GroupClass& cls, const WaveFunction& phi, int n_points) {
  if (phi.grid.coordinate_space != Space::G) {
    throw std::invalid_argument("transform_state expects a state on a deformed grid");
  }
  if (n_points <= 0) n_points = phi.grid.n_points;
  const auto u = phi.grid.nodes();
  std::vector<double> re(u.size()), im(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    re[i] = phi.values[i].real();
    im[i] = phi.values[i].imag();
  }
  const auto re_fn = cubic_interpolant(u, re);
  const auto im_fn = cubic_interpolant(u, std::move(im));

  const Grid xgrid = Grid::make(g_of(cls, phi.grid.start), g_of(cls, phi.grid.end), n_points, Space::X);
  std::vector<cplx> values(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    const double x = xgrid.node(i);
    const double ug = std::clamp(g_inv(cls, x), phi.grid.start, phi.grid.end);
    const double a = g_prime(cls, ug);
    values[i] = cplx(re_fn(ug), im_fn(ug)) / std::sqrt(a);
  }
  return WaveFunction(xgrid, std::move(values));
}

Func1D deformed_wavefunction(const GroupClass& cls, Func1D psi) {
  const Interval dom = psi.domain;
  return {[cls, psi = std::move(psi)](double x) { return psi(x) * std::sqrt(g_prime(cls, g_inv(cls, x))); },
          dom};
}

}  // namespace groupcalc
