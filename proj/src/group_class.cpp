#include "groupcalc/group_class.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include "groupcalc/errors.hpp"
#include "groupcalc/format.hpp"

namespace groupcalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Horner evaluation of sum_k c_k t^k for k = 0..n-1.
double horner(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

// Polynomial coefficient tables for a series class, lowest power first.
std::vector<double> series_poly(const classes::Series& s, int derivative) {
  // G(t) = t + sum a_k t^{k+1}/(k+1): coefficient of t^p
  std::vector<double> g(static_cast<std::size_t>(s.order) + 2, 0.0);
  g[1] = 1.0;
  for (int k = 1; k <= s.order; ++k) g[k + 1] = s.coeffs[k - 1] / (k + 1);
  for (int d = 0; d < derivative; ++d) {
    if (g.size() <= 1) return {0.0};
    std::vector<double> dg(g.size() - 1);
    for (std::size_t p = 1; p < g.size(); ++p) dg[p - 1] = g[p] * static_cast<double>(p);
    g = std::move(dg);
  }
  return g;
}

double series_eval(const classes::Series& s, double t, int derivative) {
  return horner(series_poly(s, derivative), t);
}

// Safeguarded Newton on a monotone increasing f with f(lo) <= target <= f(hi).
double monotone_solve(auto&& f, auto&& fprime, double target, double lo, double hi,
                      double seed, const Tolerances& tol) {
  double t = (seed > lo && seed < hi) ? seed : 0.5 * (lo + hi);
  for (int it = 0; it < tol.inverse_max_iter; ++it) {
    const double r = f(t) - target;
    if (r == 0.0) return t;
    if (r < 0.0) lo = t; else hi = t;
    const double d = fprime(t);
    double next = t - r / d;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - t);
    t = next;
    if (step <= tol.inverse_rel * (1.0 + std::abs(t)) || hi - lo <= tol.inverse_rel * (1.0 + std::abs(t))) {
      return t;
    }
  }
  throw ConvergenceError("group inverse did not converge for target " + shortest_repr(target));
}

Interval series_t_domain(const classes::Series& s, double min_slope) {
  constexpr double kStep = 1e-3;
  constexpr double kCap = 50.0;
  auto slope = [&](double t) { return series_eval(s, t, 1); };
  auto edge = [&](double dir) {
    double t = 0.0;
    while (std::abs(t) < kCap) {
      const double next = t + dir * kStep;
      if (slope(next) <= min_slope) {
        double a = t, b = next;
        for (int i = 0; i < 80; ++i) {
          const double m = 0.5 * (a + b);
          (slope(m) > min_slope ? a : b) = m;
        }
        return a;
      }
      t = next;
    }
    return t;
  };
  return {edge(-1.0), edge(1.0)};
}

void check_domain(const GroupClass& cls, double s) {
  if (!cls.domain().contains(s)) {
    throw DomainError("value " + shortest_repr(s) + " lies outside the domain (" +
                      shortest_repr(cls.domain().lo) + ", " + shortest_repr(cls.domain().hi) +
                      ") of class " + cls.spec());
  }
}

}  // namespace

GroupClass::GroupClass(Kind kind) : kind_(std::move(kind)) {
  t_domain_ = {-kInf, kInf};
  domain_ = std::visit(
      Overloaded{
          [](const classes::Bg&) { return Interval{-kInf, kInf}; },
          [](const classes::Tsallis& c) {
            const double bound = -1.0 / c.gamma();
            return c.gamma() > 0 ? Interval{bound, kInf} : Interval{-kInf, bound};
          },
          [](const classes::Kaniadakis&) { return Interval{-kInf, kInf}; },
          [](const classes::Abe& c) {
            const double lo = c.b < 0 ? -kInf : -1.0 / c.a;
            const double hi = c.a > 0 ? kInf : -1.0 / c.b;
            return Interval{lo, hi};
          },
          [this](const classes::Series& c) {
            t_domain_ = series_t_domain(c, default_tolerances().series_min_slope);
            restricted_ = true;
            return Interval{series_eval(c, t_domain_.lo, 0), series_eval(c, t_domain_.hi, 0)};
          },
      },
      kind_);
}

GroupClass GroupClass::bg() { return GroupClass(classes::Bg{}); }

GroupClass GroupClass::tsallis(double q) {
  if (!std::isfinite(q)) throw std::invalid_argument("tsallis: q must be finite");
  if (q == 1.0) return bg();
  return GroupClass(classes::Tsallis{q});
}

GroupClass GroupClass::kaniadakis(double kappa) {
  if (!std::isfinite(kappa)) throw std::invalid_argument("kaniadakis: kappa must be finite");
  if (kappa == 0.0) return bg();
  return GroupClass(classes::Kaniadakis{std::abs(kappa)});
}

GroupClass GroupClass::abe(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("abe: parameters must be finite");
  if (a == b) throw std::invalid_argument("abe: requires a != b");
  if (a < b) std::swap(a, b);  // G_{a,b} = G_{b,a}
  if (a < 0.0 || b > 0.0) {
    throw std::invalid_argument("abe: G is monotone only when a >= 0 >= b");
  }
  return GroupClass(classes::Abe{a, b});
}

GroupClass GroupClass::series(std::vector<double> coeffs, int order) {
  if (order < 0) order = static_cast<int>(coeffs.size());
  if (order < 1) throw std::invalid_argument("series: truncation order must be >= 1");
  if (static_cast<std::size_t>(order) > coeffs.size()) {
    throw std::invalid_argument("series: truncation order " + std::to_string(order) +
                                " exceeds the " + std::to_string(coeffs.size()) +
                                " supplied coefficients");
  }
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw std::invalid_argument("series: coefficients must be finite");
  }
  return GroupClass(classes::Series{std::move(coeffs), order});
}

std::string GroupClass::spec() const {
  return std::visit(
      Overloaded{
          [](const classes::Bg&) { return std::string("bg"); },
          [](const classes::Tsallis& c) { return "tsallis:q=" + shortest_repr(c.q); },
          [](const classes::Kaniadakis& c) { return "kaniadakis:k=" + shortest_repr(c.kappa); },
          [](const classes::Abe& c) {
            return "abe:a=" + shortest_repr(c.a) + ",b=" + shortest_repr(c.b);
          },
          [](const classes::Series& c) {
            std::string out = "series:";
            for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
              if (i) out += ',';
              out += 'a' + std::to_string(i + 1) + '=' + shortest_repr(c.coeffs[i]);
            }
            if (static_cast<std::size_t>(c.order) != c.coeffs.size()) {
              out += ",order=" + std::to_string(c.order);
            }
            return out;
          },
      },
      kind_);
}

GroupClass GroupClass::parse(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);

  struct Param {
    double value;
    std::size_t offset;
  };
  std::map<std::string, Param, std::less<>> params;
  if (colon != std::string_view::npos) {
    std::size_t pos = colon + 1;
    while (pos <= spec.size()) {
      std::size_t comma = spec.find(',', pos);
      if (comma == std::string_view::npos) comma = spec.size();
      const std::string_view item = spec.substr(pos, comma - pos);
      const std::size_t eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw ParseError("expected key=value in class spec", pos, {"key=value"});
      }
      const std::string_view key = item.substr(0, eq);
      const std::string_view val = item.substr(eq + 1);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
      if (ec != std::errc() || ptr != val.data() + val.size() || val.empty()) {
        throw ParseError("invalid number '" + std::string(val) + "' in class spec", pos + eq + 1,
                         {"number"});
      }
      if (!params.emplace(std::string(key), Param{v, pos}).second) {
        throw ParseError("duplicate key '" + std::string(key) + "' in class spec", pos);
      }
      pos = comma + 1;
    }
  }

  auto take = [&](std::initializer_list<std::string_view> keys) -> double {
    for (auto k : keys) {
      auto it = params.find(k);
      if (it != params.end()) {
        const double v = it->second.value;
        params.erase(it);
        return v;
      }
    }
    throw ParseError("class '" + std::string(name) + "' requires parameter '" +
                         std::string(*keys.begin()) + "'",
                     spec.size(), {std::string(*keys.begin()) + "=<number>"});
  };
  auto reject_leftovers = [&] {
    if (!params.empty()) {
      const auto& [key, p] = *params.begin();
      throw ParseError("unknown parameter '" + key + "' for class '" + std::string(name) + "'",
                       p.offset);
    }
  };

  if (name == "bg") {
    reject_leftovers();
    return bg();
  }
  if (name == "tsallis") {
    const double q = take({"q"});
    reject_leftovers();
    return tsallis(q);
  }
  if (name == "kaniadakis") {
    const double k = take({"k", "kappa"});
    reject_leftovers();
    return kaniadakis(k);
  }
  if (name == "abe") {
    const double a = take({"a"});
    const double b = take({"b"});
    reject_leftovers();
    return abe(a, b);
  }
  if (name == "series") {
    int order = -1;
    if (auto it = params.find("order"); it != params.end()) {
      order = static_cast<int>(it->second.value);
      if (order != it->second.value) throw ParseError("series order must be an integer", it->second.offset);
      params.erase(it);
    }
    std::vector<double> coeffs;
    for (int k = 1;; ++k) {
      auto it = params.find("a" + std::to_string(k));
      if (it == params.end()) break;
      coeffs.push_back(it->second.value);
      params.erase(it);
    }
    if (coeffs.empty()) throw ParseError("series class requires a1=<number>", spec.size(), {"a1=<number>"});
    reject_leftovers();
    return series(std::move(coeffs), order);
  }
  throw ParseError("unknown group class '" + std::string(name) + "'", 0,
                   {"bg", "tsallis", "kaniadakis", "abe", "series"});
}

double g_of(const GroupClass& cls, double t) {
  return std::visit(
      Overloaded{
          [t](const classes::Bg&) { return t; },
          [t](const classes::Tsallis& c) { return std::expm1(c.gamma() * t) / c.gamma(); },
          [t](const classes::Kaniadakis& c) { return std::sinh(c.kappa * t) / c.kappa; },
          [t](const classes::Abe& c) { return (std::expm1(c.a * t) - std::expm1(c.b * t)) / (c.a - c.b); },
          [t](const classes::Series& c) { return series_eval(c, t, 0); },
      },
      cls.kind());
}

double g_prime(const GroupClass& cls, double t) {
  return std::visit(
      Overloaded{
          [](const classes::Bg&) { return 1.0; },
          [t](const classes::Tsallis& c) { return std::exp(c.gamma() * t); },
          [t](const classes::Kaniadakis& c) { return std::cosh(c.kappa * t); },
          [t](const classes::Abe& c) {
            return (c.a * std::exp(c.a * t) - c.b * std::exp(c.b * t)) / (c.a - c.b);
          },
          [t](const classes::Series& c) { return series_eval(c, t, 1); },
      },
      cls.kind());
}

double g_second(const GroupClass& cls, double t) {
  return std::visit(
      Overloaded{
          [](const classes::Bg&) { return 0.0; },
          [t](const classes::Tsallis& c) { return c.gamma() * std::exp(c.gamma() * t); },
          [t](const classes::Kaniadakis& c) { return c.kappa * std::sinh(c.kappa * t); },
          [t](const classes::Abe& c) {
            return (c.a * c.a * std::exp(c.a * t) - c.b * c.b * std::exp(c.b * t)) / (c.a - c.b);
          },
          [t](const classes::Series& c) { return series_eval(c, t, 2); },
      },
      cls.kind());
}

double g_third(const GroupClass& cls, double t) {
  return std::visit(
      Overloaded{
          [](const classes::Bg&) { return 0.0; },
          [t](const classes::Tsallis& c) {
            return c.gamma() * c.gamma() * std::exp(c.gamma() * t);
          },
          [t](const classes::Kaniadakis& c) { return c.kappa * c.kappa * std::cosh(c.kappa * t); },
          [t](const classes::Abe& c) {
            return (c.a * c.a * c.a * std::exp(c.a * t) - c.b * c.b * c.b * std::exp(c.b * t)) /
                   (c.a - c.b);
          },
          [t](const classes::Series& c) { return series_eval(c, t, 3); },
      },
      cls.kind());
}

double g_inv(const GroupClass& cls, double s, const Tolerances& tol) {
  return std::visit(
      Overloaded{
          [s](const classes::Bg&) { return s; },
          [&](const classes::Tsallis& c) {
            check_domain(cls, s);
            return std::log1p(c.gamma() * s) / c.gamma();
          },
          [s](const classes::Kaniadakis& c) { return std::asinh(c.kappa * s) / c.kappa; },
          [&](const classes::Abe&) {
            check_domain(cls, s);
            auto f = [&](double t) { return g_of(cls, t); };
            auto fp = [&](double t) { return g_prime(cls, t); };
            double lo = -1.0, hi = 1.0;
            for (int i = 0; f(lo) > s; ++i) {
              if (i > 1100 || !std::isfinite(lo)) throw ConvergenceError("abe inverse: cannot bracket " + shortest_repr(s));
              hi = lo;
              lo *= 2.0;
            }
            for (int i = 0; f(hi) < s; ++i) {
              if (i > 1100 || !std::isfinite(hi)) throw ConvergenceError("abe inverse: cannot bracket " + shortest_repr(s));
              lo = hi;
              hi *= 2.0;
            }
            return monotone_solve(f, fp, s, lo, hi, 0.5 * (lo + hi), tol);
          },
          [&](const classes::Series&) {
            if (!cls.domain().contains(s)) {
              throw ConvergenceError("series inverse: " + shortest_repr(s) +
                                     " is outside the local validity range of the truncated series");
            }
            auto f = [&](double t) { return g_of(cls, t); };
            auto fp = [&](double t) { return g_prime(cls, t); };
            return monotone_solve(f, fp, s, cls.t_domain().lo, cls.t_domain().hi, s, tol);
          },
      },
      cls.kind());
}

double log_g(const GroupClass& cls, double x) {
  if (!(x > 0.0)) throw DomainError("log_G requires x > 0, got " + shortest_repr(x));
  return g_of(cls, std::log(x));
}

double exp_g(const GroupClass& cls, double x, const Tolerances& tol) {
  return std::exp(g_inv(cls, x, tol));
}

double cos_g(const GroupClass& cls, double x, const Tolerances& tol) {
  return std::cos(g_inv(cls, x, tol));
}

double sin_g(const GroupClass& cls, double x, const Tolerances& tol) {
  return std::sin(g_inv(cls, x, tol));
}

DeformationFactor deformation_factor(const GroupClass& cls, double x, const Tolerances& tol) {
  const double t = g_inv(cls, x, tol);
  const double g1 = g_prime(cls, t);
  const double g2 = g_second(cls, t);
  const double g3 = g_third(cls, t);
  // d/dx = (1/G') d/dt
  return {g1, g2 / g1, (g3 * g1 - g2 * g2) / (g1 * g1 * g1)};
}

}  // namespace groupcalc
