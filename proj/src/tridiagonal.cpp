#include "groupcalc/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "groupcalc/errors.hpp"

namespace groupcalc {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Solves (T - shift I) x = b in place by Gaussian elimination with partial
// pivoting; tiny pivots are replaced by `floor`.
void shifted_solve(const SymTridiagonal& t, double shift, double floor, std::vector<double>& b) {
  const std::size_t n = t.size();
  // Row i of the factor: u0 (diag), u1, u2 (two super-diagonals after pivoting).
  std::vector<double> u0(n), u1(n, 0.0), u2(n, 0.0), mult(n, 0.0);
  std::vector<char> swapped(n, 0);

  double d = t.diag[0] - shift;
  double e = n > 1 ? t.off[0] : 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double below = t.off[i];
    const double next_diag = t.diag[i + 1] - shift;
    const double next_off = i + 2 < n ? t.off[i + 1] : 0.0;
    if (std::abs(d) >= std::abs(below)) {
      if (d == 0.0) d = floor;
      const double m = below / d;
      u0[i] = d;
      u1[i] = e;
      u2[i] = 0.0;
      mult[i] = m;
      d = next_diag - m * e;
      e = next_off;
    } else {
      const double m = d / below;
      u0[i] = below;
      u1[i] = next_diag;
      u2[i] = next_off;
      mult[i] = m;
      swapped[i] = 1;
      d = e - m * next_diag;
      e = -m * next_off;
    }
  }
  u0[n - 1] = d == 0.0 ? floor : d;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (swapped[i]) std::swap(b[i], b[i + 1]);
    b[i + 1] -= mult[i] * b[i];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    if (ii + 1 < n) s -= u1[ii] * b[ii + 1];
    if (ii + 2 < n) s -= u2[ii] * b[ii + 2];
    double piv = u0[ii];
    if (std::abs(piv) < floor) piv = std::copysign(floor, piv == 0.0 ? 1.0 : piv);
    b[ii] = s / piv;
  }
}

double pythag(double a, double b) { return std::hypot(a, b); }

}  // namespace

std::vector<double> SymTridiagonal::apply(std::span<const double> v) const {
  const std::size_t n = size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * v[i];
    if (i > 0) s += off[i - 1] * v[i - 1];
    if (i + 1 < n) s += off[i] * v[i + 1];
    out[i] = s;
  }
  return out;
}

double SymTridiagonal::norm_inf() const {
  double m = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    double r = std::abs(diag[i]);
    if (i > 0) r += std::abs(off[i - 1]);
    if (i + 1 < size()) r += std::abs(off[i]);
    m = std::max(m, r);
  }
  return m;
}

std::vector<double> Tridiagonal::apply(std::span<const double> v) const {
  const std::size_t n = size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * v[i];
    if (i > 0) s += sub[i - 1] * v[i - 1];
    if (i + 1 < n) s += super[i] * v[i + 1];
    out[i] = s;
  }
  return out;
}

double Tridiagonal::norm_inf() const {
  double m = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    double r = std::abs(diag[i]);
    if (i > 0) r += std::abs(sub[i - 1]);
    if (i + 1 < size()) r += std::abs(super[i]);
    m = std::max(m, r);
  }
  return m;
}

std::size_t sturm_count(const SymTridiagonal& t, double x) {
  const std::size_t n = t.size();
  const double tiny = std::numeric_limits<double>::min();
  std::size_t count = 0;
  double q = t.diag[0] - x;
  if (q == 0.0) q = -tiny;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    q = (t.diag[i] - x) - t.off[i - 1] * t.off[i - 1] / q;
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin_bounds(const SymTridiagonal& t) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < t.size()) r += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  return {lo, hi};
}

double bisect_eigenvalue(const SymTridiagonal& t, std::size_t index) {
  if (index >= t.size()) throw std::invalid_argument("bisect_eigenvalue: index out of range");
  auto [lo, hi] = gershgorin_bounds(t);
  const double scale = std::max(std::abs(lo), std::abs(hi));
  lo -= 2.0 * kEps * scale + std::numeric_limits<double>::min();
  hi += 2.0 * kEps * scale + std::numeric_limits<double>::min();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi))) break;
    if (sturm_count(t, mid) > index) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> ql_eigenvalues(const SymTridiagonal& t) {
  const std::size_t n = t.size();
  std::vector<double> d = t.diag;
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = t.off[i];

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) break;
      }
      if (m != l) {
        if (++iter > 60) throw ConvergenceError("implicit QL: no convergence", static_cast<long>(l));
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = pythag(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        std::size_t i = m;
        bool underflow = false;
        while (i-- > l) {
          double f = s * e[i];
          const double b = c * e[i];
          r = pythag(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

EigenPairs lowest_eigenpairs(const SymTridiagonal& t, std::size_t k, const Tolerances& tol) {
  const std::size_t n = t.size();
  if (k < 1 || k > n) {
    throw std::invalid_argument("lowest_eigenpairs: requested " + std::to_string(k) +
                                " eigenpairs from a matrix of size " + std::to_string(n));
  }

  std::vector<double> values(k);
  if (tol.eigen == EigenBackend::ImplicitQL) {
    const auto all = ql_eigenvalues(t);
    std::copy_n(all.begin(), k, values.begin());
  } else {
    // Each index is an independent bisection; stripe the indices over workers.
    const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, k);
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
      jobs.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred, [&, w] {
        for (std::size_t i = w; i < k; i += workers) values[i] = bisect_eigenvalue(t, i);
      }));
    }
    for (auto& j : jobs) j.get();
  }

  const double tnorm = t.norm_inf();
  const double floor = kEps * std::max(tnorm, 1.0);
  const double accept = std::max(tol.eigen_residual, 64.0 * kEps * tnorm);

  EigenPairs out;
  out.values = values;
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  for (std::size_t idx = 0; idx < k; ++idx) {
    const double lambda = values[idx];
    std::vector<double> v(n);
    for (auto& x : v) x = uni(rng);
    double residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it < tol.inverse_iteration_max; ++it) {
      shifted_solve(t, lambda, floor, v);
      // keep clustered or nearly equal pairs orthogonal
      for (std::size_t j = 0; j < idx; ++j) {
        if (std::abs(values[j] - lambda) < 1e-3 * tnorm) {
          const double c = dot(out.vectors[j], v);
          for (std::size_t i = 0; i < n; ++i) v[i] -= c * out.vectors[j][i];
        }
      }
      const double nv = norm2(v);
      if (!(nv > 0.0) || !std::isfinite(nv)) break;
      for (auto& x : v) x /= nv;
      const auto tv = t.apply(v);
      double r2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) r2 += (tv[i] - lambda * v[i]) * (tv[i] - lambda * v[i]);
      residual = std::sqrt(r2);
      if (it >= 1 && residual <= accept) break;
    }
    if (!(residual <= accept)) {
      throw ConvergenceError("inverse iteration failed for eigenpair " + std::to_string(idx) +
                                 " (residual " + std::to_string(residual) + ")",
                             static_cast<long>(idx));
    }
    out.vectors.push_back(std::move(v));
    out.residuals.push_back(residual);
  }
  return out;
}

Symmetrized symmetrize(const Tridiagonal& t) {
  const std::size_t n = t.size();
  Symmetrized s;
  s.matrix.diag = t.diag;
  s.matrix.off.resize(n > 0 ? n - 1 : 0);
  s.scale.assign(n, 1.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double prod = t.sub[i] * t.super[i];
    if (!(prod > 0.0)) {
      throw DomainError("symmetrize: off-diagonal pair " + std::to_string(i) +
                        " has non-positive product; the grid is too coarse for this class");
    }
    s.matrix.off[i] = std::copysign(std::sqrt(prod), t.super[i]);
    s.scale[i + 1] = s.scale[i] * std::sqrt(t.super[i] / t.sub[i]);
  }
  return s;
}

}  // namespace groupcalc
