// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "groupcalc/algebra.hpp"
#include "groupcalc/calculus.hpp"
#include "groupcalc/diagnostics.hpp"
#include "groupcalc/format.hpp"
#include "groupcalc/spectral.hpp"
#include "groupcalc/well.hpp"

using namespace groupcalc;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 2.220446049250313e-16;

struct Outcome {
  bool passed;
  std::string detail;
};

// Accumulates the worst residual of a family of checks against one tolerance.
struct Worst {
  double value = 0.0;
  std::string where;
  void update(double r, const std::string& at) {
    if (!(r <= value)) {
      value = r;
      where = at;
    }
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::vector<GroupClass> law_classes() {
  return {GroupClass::bg(),          GroupClass::tsallis(0.5),       GroupClass::tsallis(-0.5),
          GroupClass::tsallis(1.5),  GroupClass::kaniadakis(0.5),    GroupClass::kaniadakis(2.0),
          GroupClass::abe(1.0, -0.5), GroupClass::series({0.5, 0.1})};
}

Outcome oracle_equivalence() {
  std::vector<GroupClass> classes;
  for (double q : {-0.5, 0.0, 0.5, 0.9}) classes.push_back(GroupClass::tsallis(q));
  for (double k : {0.25, 0.5, 1.0, 2.0}) classes.push_back(GroupClass::kaniadakis(k));
  Worst w;
  std::size_t fewest = SIZE_MAX;
  for (const auto& cls : classes) {
    for (const auto& r : oracle_residuals(cls, 10000, 2024)) {
      w.update(r.max_relative_error, cls.spec() + " " + r.operation);
      fewest = std::min(fewest, r.samples);
    }
  }
  return {w.value <= 1e-11 && fewest > 0,
          "max rel err " + sci(w.value) + " (" + w.where + ") tol 1e-11, min valid samples " + std::to_string(fewest)};
}

Outcome group_law() {
  std::mt19937_64 rng(99);
  Worst w;
  for (const auto& cls : law_classes()) {
    const auto range = sample_range(cls);
    std::uniform_real_distribution<double> t(range.lo / 3.0, range.hi / 3.0);
    for (int i = 0; i < 2000; ++i) {
      const double x = g_of(cls, t(rng)), y = g_of(cls, t(rng)), z = g_of(cls, t(rng));
      const double scale = std::abs(x) + std::abs(y) + std::abs(z);
      w.update(relative_error(g_sum(cls, x, y), g_sum(cls, y, x), scale), cls.spec() + " symmetry");
      w.update(relative_error(g_sum(cls, g_sum(cls, x, y), z), g_sum(cls, x, g_sum(cls, y, z)), scale),
               cls.spec() + " associativity");
      w.update(relative_error(g_sum(cls, x, 0.0), x, scale), cls.spec() + " null composability");
    }
  }
  const auto q = GroupClass::tsallis(0.5);
  const double gap = std::abs(2.0 * g_sum(q, 1.0, 2.0) - g_sum(q, 2.0, 4.0));
  return {w.value <= 1e-11 && gap > 1e-6, "max residual " + sci(w.value) + " (" + w.where +
                                              ") tol 1e-11; non-distributivity gap " + sci(gap) + " for q=0.5"};
}

Outcome calculus_identities() {
  Worst chain, ft, paths, dual;
  std::mt19937_64 rng(5);
  const std::vector<GroupClass> classes = {GroupClass::bg(), GroupClass::tsallis(0.5), GroupClass::tsallis(-0.5),
                                           GroupClass::kaniadakis(0.5), GroupClass::kaniadakis(2.0),
                                           GroupClass::abe(1.0, -0.5)};
  const std::vector<Func1D> polys = {Func1D{[](double x) { return x * x * x; }},
                                     Func1D{[](double x) { return 1.0 - 2.0 * x + x * x * x * x; }},
                                     Func1D{[](double x) { return x; }}};
  for (const auto& cls : classes) {
    std::uniform_real_distribution<double> t(-1.5, 1.5);
    const Func1D e{[cls](double x) { return exp_g(cls, x); }};
    for (int i = 0; i < 100; ++i) {
      const double x = g_of(cls, t(rng));
      chain.update(relative_error(g_derivative(cls, e, x), exp_g(cls, x)), cls.spec());
    }
    for (const auto& p : polys) {
      const auto r = fundamental_theorem_residual(cls, p, 0.0, 1.0);
      ft.update(std::max(r.deformed, r.dual), cls.spec());
      paths.update(std::abs(g_integral(cls, p, 0.0, 1.0, IntegralPath::DirectWeight) -
                            g_integral(cls, p, 0.0, 1.0, IntegralPath::Substitution)),
                   cls.spec());
    }
  }
  const Func1D f{[](double x) { return std::sin(x) + x * x; }};
  const auto fp = [](double x) { return std::cos(x) + 2.0 * x; };
  for (double q : {-0.5, 0.0, 0.5}) {
    for (double x : {-1.0, 0.0, 0.7, 2.0}) {
      dual.update(std::abs(dual_g_derivative(GroupClass::tsallis(q), f, x) - std::exp(-(1.0 - q) * x) * fp(x)),
                  "q=" + shortest_repr(q));
    }
  }
  for (double k : {0.5, 1.0, 2.0}) {
    for (double x : {-1.0, 0.0, 0.7, 2.0}) {
      dual.update(std::abs(dual_g_derivative(GroupClass::kaniadakis(k), f, x) - fp(x) / std::cosh(k * x)),
                  "k=" + shortest_repr(k));
    }
  }
  const bool ok = chain.value <= 1e-8 && ft.value <= 1e-8 && paths.value <= 1e-9 && dual.value <= 1e-9;
  return {ok, "D_G exp_G " + sci(chain.value) + "/1e-8, fundamental theorem " + sci(ft.value) +
                  "/1e-8, quadrature paths " + sci(paths.value) + "/1e-9, dual closed forms " + sci(dual.value) +
                  "/1e-9"};
}

Outcome canonical_pair() {
  const std::vector<Func1D> bumps = {Func1D{[](double x) { return x * (1.0 - x); }},
                                     Func1D{[](double x) { return x * x * (1.0 - x) * (1.0 - x); }},
                                     Func1D{[](double x) { return std::exp(-2.0 * (x - 0.5) * (x - 0.5)); }}};
  bool ok = true;
  std::string detail;
  for (const auto& cls : {GroupClass::bg(), GroupClass::tsallis(0.5), GroupClass::kaniadakis(2.0)}) {
    const double coarse = commutator_check(cls, Grid::make(0.0, 1.0, 1001), bumps);
    const double fine = commutator_check(cls, Grid::make(0.0, 1.0, 2001), bumps);
    const double order = std::log2(coarse / fine);
    ok = ok && fine <= 1e-6 && order >= 1.8 && order <= 2.2;
    detail += cls.spec() + " " + sci(fine) + " (order " + sci(order) + ") ";
  }
  return {ok, detail + "tol 1e-6, order 2"};
}

Spectrum gspace_well(const GroupClass& cls, int n_points, int k) {
  return solve_eigen(hamiltonian_gspace(cls, deformed_grid(cls, 0.0, 1.0, n_points), Potential::infinite_well(1.0)),
                     k);
}

Spectrum xspace_well(const GroupClass& cls, int n_points, int k) {
  return solve_eigen(hamiltonian_xspace(cls, Grid::make(0.0, 1.0, n_points), Potential::infinite_well(1.0)), k);
}

std::vector<GroupClass> well_classes() {
  return {GroupClass::bg(), GroupClass::tsallis(0.0), GroupClass::kaniadakis(1.0)};
}

Outcome spectrum_reproduction() {
  Worst w;
  const double e1[] = {4.9348022005446793, 10.27114422761191, 6.3525733281214118};
  double e1_err = 0.0;
  int c = 0;
  for (const auto& cls : well_classes()) {
    const auto s = gspace_well(cls, 2001, 10);
    const double lg = g_inv(cls, 1.0);
    for (int n = 1; n <= 10; ++n) {
      const double exact = 0.5 * std::pow(n * kPi / lg, 2);
      w.update(std::abs(s.energies[n - 1] - exact) / exact, cls.spec() + " n=" + std::to_string(n));
    }
    e1_err = std::max(e1_err, std::abs(s.energies[0] - e1[c]) / e1[c]);
    ++c;
  }
  return {w.value <= 1e-3 && e1_err <= 1e-3,
          "max rel err " + sci(w.value) + " (" + w.where + ") tol 1e-3; E1 vs frozen values " + sci(e1_err)};
}

Outcome cross_solver() {
  bool ok = true;
  std::string detail;
  for (const auto& cls : well_classes()) {
    const auto g = gspace_well(cls, 2001, 5), x = xspace_well(cls, 2001, 5);
    const auto gc = gspace_well(cls, 1001, 5), xc = xspace_well(cls, 1001, 5);
    double fine = 0.0, coarse = 0.0;
    for (int n = 0; n < 5; ++n) {
      fine = std::max(fine, std::abs(g.energies[n] - x.energies[n]) / g.energies[n]);
      coarse = std::max(coarse, std::abs(gc.energies[n] - xc.energies[n]) / gc.energies[n]);
    }
    // identical operators (BG) agree to round-off at every resolution
    const bool converging = fine <= 1e-9 || coarse / fine >= 3.0;
    ok = ok && fine <= 5e-3 && converging;
    detail += cls.spec() + " " + sci(fine) + " (coarse " + sci(coarse) + ") ";
  }
  return {ok, detail + "tol 5e-3, shrinking under refinement"};
}

double bisect_zero(const WellSolution& sol, double lo, double hi) {
  double flo = eigenfunction_x(sol, lo);
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = eigenfunction_x(sol, mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Outcome zeros_and_spacings() {
  Worst located, solver, closed, total, law;
  double grid_tol = 0.0;
  for (const auto& cls : {GroupClass::tsallis(0.5), GroupClass::tsallis(0.0), GroupClass::kaniadakis(1.0),
                          GroupClass::kaniadakis(0.5)}) {
    const auto spectrum = gspace_well(cls, 2001, 6);
    for (int n = 1; n <= 6; ++n) {
      const auto sol = WellSolution::make(cls, 1.0, n);
      const auto z = zeros(sol);
      const std::string at = cls.spec() + " n=" + std::to_string(n);
      for (int m = 1; m < n; ++m) {
        located.update(std::abs(bisect_zero(sol, 0.5 * (z[m - 1] + z[m]), 0.5 * (z[m] + z[m + 1])) - z[m]), at);
      }
      const auto psi = transform_state(cls, spectrum.states[n - 1]);
      const double h = psi.grid.spacing();
      grid_tol = std::max(grid_tol, h);
      std::vector<double> found;
      for (int i = 1; i + 2 < psi.grid.n_points; ++i) {
        const double a = psi.values[i].real(), b = psi.values[i + 1].real();
        if ((a < 0.0) != (b < 0.0)) found.push_back(psi.grid.node(i) + h * a / (a - b));
      }
      if (found.size() != static_cast<std::size_t>(n - 1)) {
        solver.update(INFINITY, at + " sign changes " + std::to_string(found.size()));
      } else {
        for (int m = 1; m < n; ++m) solver.update(std::abs(found[m - 1] - z[m]) / h, at);
      }
      double sum = 0.0;
      for (int m = 1; m <= n; ++m) {
        closed.update(std::abs(spacing_closed_form(sol, m) - spacing(sol, m)), at);
        sum += spacing(sol, m);
      }
      total.update(std::abs(sum - 1.0) / (n * kEps), at);
      law.update(zeros_group_law_residual(sol), at);
    }
  }
  const bool ok = located.value <= 1e-10 && solver.value <= 1.0 && closed.value <= 1e-12 && total.value <= 2.0 &&
                  law.value <= 1e-11;
  return {ok, "closed-form zeros " + sci(located.value) + "/1e-10, solver zeros " + sci(solver.value) +
                  " grid spacings/1 (h=" + sci(grid_tol) + "), spacing forms " + sci(closed.value) +
                  "/1e-12, sum-to-L " + sci(total.value) + " n*eps (tol 2), group law " + sci(law.value) + "/1e-11"};
}

double probability_mass(const WellSolution& sol, double a, double b) {
  return integrate([&](double x) { return std::pow(eigenfunction_x(sol, x), 2); }, a, b);
}

Outcome figure_reproduction() {
  const double threshold = 0.5;
  const double q = probability_mass(WellSolution::make(GroupClass::tsallis(-99.0), 1.0, 1), 0.0, 0.2);
  const double k = probability_mass(WellSolution::make(GroupClass::kaniadakis(100.0), 1.0, 1), 0.0, 0.2);
  const double oracle_gap = std::max(std::abs(q - 0.793893801563), std::abs(k - 0.846548523267));
  double mirror = 0.0;
  const auto rows = probability_table(WellSolution::make(GroupClass::bg(), 1.0, 1), 1001);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    mirror = std::max(mirror, std::abs(rows[i].density - rows[rows.size() - 1 - i].density));
  }
  double uniform = 0.0;
  const auto high = WellSolution::make(GroupClass::bg(), 1.0, 50);
  for (int b = 0; b < 10; ++b) uniform = std::max(uniform, std::abs(probability_mass(high, 0.1 * b, 0.1 * b + 0.1) / 0.1 - 1.0));
  const bool ok = q > threshold && k > threshold && oracle_gap <= 1e-8 && mirror <= 1e-10 && uniform <= 0.05;
  return {ok, "P[0,0.2] q=-99 " + format12(q) + ", k=100 " + format12(k) + " (threshold 0.5, oracle gap " +
                  sci(oracle_gap) + "); BG mirror " + sci(mirror) + "/1e-10; n=50 bins " + sci(uniform) + "/0.05"};
}

Outcome bg_degeneracy() {
  const auto bg = GroupClass::bg();
  Worst w;
  const std::vector<double> xs = {0.25, 0.5, 1.0, 1.75, 3.0};
  for (double x : xs) {
    for (double y : xs) {
      w.update(relative_error(g_sum(bg, x, y), x + y), "sum");
      w.update(relative_error(g_sub(bg, x, y), x - y, x + y), "sub");
      w.update(relative_error(g_prod(bg, x, y), x * y), "prod");
      w.update(relative_error(g_div(bg, x, y), x / y), "div");
      w.update(relative_error(dual_g_sum(bg, x, y), x + y), "dual sum");
    }
    w.update(relative_error(g_neg(bg, x), -x), "neg");
    w.update(relative_error(g_recip(bg, x), 1.0 / x), "recip");
    w.update(relative_error(g_pow(bg, x, 3), x * x * x), "pow");
    w.update(relative_error(exp_g(bg, x), std::exp(x)), "exp");
    w.update(relative_error(log_g(bg, x), std::log(x)), "log");
    w.update(relative_error(cos_g(bg, x), std::cos(x)), "cos");
    w.update(relative_error(sin_g(bg, x), std::sin(x)), "sin");
    w.update(relative_error(deform(bg, x).value, x), "deform");
    const Func1D f{[](double t) { return std::sin(t) * t; }};
    w.update(relative_error(g_derivative(bg, f, x), derivative(f, x)), "derivative");
    w.update(relative_error(dual_g_derivative(bg, f, x), derivative(f, x)), "dual derivative");
    w.update(relative_error(g_integral(bg, f, 0.0, x), integrate(f.rule, 0.0, x)), "integral");
    w.update(relative_error(dual_g_integral(bg, f, 0.0, x), integrate(f.rule, 0.0, x)), "dual integral");
  }
  for (long n = -4; n <= 4; ++n) w.update(relative_error(g_integer(bg, n).value, static_cast<double>(n)), "integer");
  for (int n = 1; n <= 6; ++n) {
    const auto sol = WellSolution::make(bg, 1.0, n);
    w.update(relative_error(energy(sol), 0.5 * std::pow(n * kPi, 2)), "energy");
    for (double x : {0.1, 0.37, 0.5, 0.93}) {
      w.update(std::abs(eigenfunction_x(sol, x) - std::sqrt(2.0) * std::sin(n * kPi * x)), "eigenfunction");
    }
    const auto z = zeros(sol);
    for (int m = 0; m <= n; ++m) w.update(std::abs(z[m] - static_cast<double>(m) / n), "zeros");
    for (int m = 1; m <= n; ++m) w.update(relative_error(spacing(sol, m), 1.0 / n), "spacing");
  }
  const auto ham = hamiltonian_gspace(bg, deformed_grid(bg, 0.0, 1.0, 101), Potential::infinite_well(1.0));
  for (double d : ham.interior.diag) w.update(relative_error(d, 1e4), "hamiltonian");
  for (double o : ham.interior.off) w.update(relative_error(o, -0.5e4), "hamiltonian");
  const auto x = hamiltonian_xspace(bg, Grid::make(0.0, 1.0, 101), Potential::infinite_well(1.0));
  for (std::size_t i = 0; i < x.interior.size(); ++i) w.update(relative_error(x.interior.diag[i], 1e4), "x hamiltonian");
  for (double o : x.interior.super) w.update(relative_error(o, -0.5e4), "x hamiltonian");
  return {w.value <= 1e-12, "max deviation " + sci(w.value) + " (" + w.where + ") tol 1e-12"};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence", 60.0, oracle_equivalence},
      {2, "group-law axioms", 10.0, group_law},
      {3, "calculus identities", 30.0, calculus_identities},
      {4, "canonical pair", 60.0, canonical_pair},
      {5, "spectrum reproduction", 120.0, spectrum_reproduction},
      {6, "cross-solver agreement", 180.0, cross_solver},
      {7, "zeros and spacings", 10.0, zeros_and_spacings},
      {8, "large-deformation densities", 60.0, figure_reproduction},
      {9, "BG degeneracy", 5.0, bg_degeneracy},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_s;
    const bool pass = o.passed && in_time;
    failures += !pass;
    std::printf("%s %d %s: %s [%.2fs / %.0fs%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.limit_s, in_time ? "" : " exceeded");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
