#include "groupcalc/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

#include "groupcalc/algebra.hpp"
#include "groupcalc/calculus.hpp"
#include "groupcalc/errors.hpp"
#include "groupcalc/oracles.hpp"
#include "groupcalc/quadrature.hpp"
#include "groupcalc/well.hpp"

namespace groupcalc {

namespace {

constexpr double kTiny = std::numeric_limits<double>::min();

double parameter_scale(const GroupClass& cls) {
  return std::visit(
      [](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, classes::Tsallis>) return std::abs(k.gamma());
        else if constexpr (std::is_same_v<K, classes::Kaniadakis>) return k.kappa;
        else if constexpr (std::is_same_v<K, classes::Abe>) return std::max(std::abs(k.a), std::abs(k.b));
        else return 1.0;
      },
      cls.kind());
}

// A generic-vs-oracle comparison; nullopt means the sample is outside the valid set.
using Probe = std::function<std::optional<std::pair<double, double>>(std::mt19937_64&)>;

struct Sampler {
  Interval t;
  std::uniform_real_distribution<double> unit{0.0, 1.0};
  double operator()(std::mt19937_64& rng) { return t.lo + (t.hi - t.lo) * unit(rng); }
};

std::optional<double> valid(const CutoffValue& c) {
  if (c.clamped) return std::nullopt;
  return c.value;
}

// Runs `probe` until `samples` valid comparisons are collected (or the attempt
// budget runs out) and reports the worst relative error.
OracleResidual collect(const std::string& name, std::size_t samples, std::mt19937_64& rng,
                       const std::function<std::optional<std::array<double, 3>>(std::mt19937_64&)>& probe) {
  OracleResidual r{name, 0.0, 0};
  const std::size_t budget = samples * 20;
  for (std::size_t attempt = 0; attempt < budget && r.samples < samples; ++attempt) {
    const auto v = probe(rng);
    if (!v) continue;
    const auto [generic, oracle, scale] = *v;
    r.max_relative_error = std::max(r.max_relative_error, relative_error(generic, oracle, scale));
    ++r.samples;
  }
  return r;
}

template <class Generic, class Oracle>
std::optional<std::array<double, 3>> compare(Generic generic, Oracle oracle, double scale) {
  std::optional<double> g, o;
  try {
    g = generic();
  } catch (const DomainError&) {
  }
  try {
    o = oracle();
  } catch (const DomainError&) {
  }
  if (!g && !o) return std::nullopt;
  if (!g || !o) return std::array<double, 3>{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  return std::array<double, 3>{*g, *o, scale};
}

struct ClosedForm {
  std::function<double(double)> log;
  std::function<std::optional<double>(double)> exp;
  std::function<double(double, double)> sum;
  std::function<double(double, double)> sub;
  std::function<double(double)> neg;
  std::function<std::optional<double>(double, double)> prod;
  std::function<std::optional<double>(double, double)> div;
  std::function<std::optional<double>(double)> recip;
  std::function<double(long)> integer;
  std::function<std::optional<double>(double, long)> pow;
};

std::optional<ClosedForm> closed_form(const GroupClass& cls) {
  using namespace q_oracle;
  using namespace kappa_oracle;
  if (const auto* t = std::get_if<classes::Tsallis>(&cls.kind())) {
    const double q = t->q;
    return ClosedForm{
        [q](double x) { return q_log(q, x); },
        [q](double x) { return valid(q_exp(q, x)); },
        [q](double x, double y) { return q_sum(q, x, y); },
        [q](double x, double y) { return q_sub(q, x, y); },
        [q](double x) { return q_neg(q, x); },
        [q](double x, double y) { return valid(q_prod(q, x, y)); },
        [q](double x, double y) { return valid(q_div(q, x, y)); },
        [q](double x) { return valid(q_recip(q, x)); },
        [q](long n) { return q_integer(q, n); },
        [q](double x, long n) { return valid(q_pow(q, x, n)); },
    };
  }
  if (const auto* k = std::get_if<classes::Kaniadakis>(&cls.kind())) {
    const double kap = k->kappa;
    return ClosedForm{
        [kap](double x) { return kappa_log(kap, x); },
        [kap](double x) { return valid(kappa_exp(kap, x)); },
        [kap](double x, double y) { return kappa_sum(kap, x, y); },
        [kap](double x, double y) { return kappa_sub(kap, x, y); },
        [kap](double x) { return kappa_neg(kap, x); },
        [kap](double x, double y) -> std::optional<double> { return kappa_prod(kap, x, y); },
        [kap](double x, double y) -> std::optional<double> { return kappa_div(kap, x, y); },
        [kap](double x) -> std::optional<double> { return kappa_recip(kap, x); },
        [kap](long n) { return kappa_integer(kap, n); },
        [kap](double x, long n) { return valid(kappa_pow(kap, x, n)); },
    };
  }
  return std::nullopt;
}

class Suite {
 public:
  Suite(CheckReport& report, std::string name) : report_(report), name_(std::move(name)) {}

  void add(const std::string& check, double residual, double tolerance) {
    report_.results.push_back({name_, check, residual, tolerance, residual <= tolerance});
  }

  // Records a check whose body may throw; a throw is a failure with infinite residual.
  void run(const std::string& check, double tolerance, const std::function<double()>& body) {
    double r;
    try {
      r = body();
    } catch (const std::exception&) {
      r = std::numeric_limits<double>::infinity();
    }
    add(check, r, tolerance);
  }

 private:
  CheckReport& report_;
  std::string name_;
};

std::vector<double> sample_t(const GroupClass& cls, std::size_t n, std::mt19937_64& rng) {
  Sampler s{sample_range(cls)};
  std::vector<double> out(n);
  for (auto& t : out) t = s(rng);
  return out;
}

}  // namespace

bool CheckReport::ok() const { return first_failure() == nullptr; }

const CheckResult* CheckReport::first_failure() const {
  for (const auto& r : results) {
    if (!r.passed) return &r;
  }
  return nullptr;
}

double relative_error(double a, double b, double scale) {
  if (a == b) return 0.0;
  if (!std::isfinite(a) || !std::isfinite(b)) return std::numeric_limits<double>::infinity();
  return std::abs(a - b) / std::max({std::abs(b), std::abs(scale), kTiny});
}

Interval sample_range(const GroupClass& cls) {
  const double r = 5.0 / std::max(1.0, parameter_scale(cls));
  Interval t{-r, r};
  if (cls.restricted()) {
    // symmetric, so that G-negation stays inside the local domain
    const double local = 0.9 * std::min(-cls.t_domain().lo, cls.t_domain().hi);
    t = {-std::min(r, local), std::min(r, local)};
  }
  return t;
}

std::vector<OracleResidual> oracle_residuals(const GroupClass& cls, std::size_t samples, std::uint64_t seed) {
  const auto cf = closed_form(cls);
  if (!cf) return {};
  std::mt19937_64 rng(seed);
  Sampler t{sample_range(cls)};
  std::uniform_int_distribution<long> small_n(-6, 6);
  auto x_of = [&](std::mt19937_64& g) { return g_of(cls, t(g)); };
  auto pos = [&](std::mt19937_64& g) { return std::exp(t(g)); };

  std::vector<OracleResidual> out;
  out.push_back(collect("log", samples, rng, [&](auto& g) {
    const double x = pos(g);
    return compare([&] { return log_g(cls, x); }, [&] { return cf->log(x); }, 0.0);
  }));
  out.push_back(collect("exp", samples, rng, [&](auto& g) {
    const double x = x_of(g);
    return compare([&] { return exp_g(cls, x); }, [&]() -> double {
      const auto v = cf->exp(x);
      if (!v) throw DomainError("cutoff");
      return *v;
    }, 0.0);
  }));
  out.push_back(collect("sum", samples, rng, [&](auto& g) {
    const double x = x_of(g), y = x_of(g);
    return compare([&] { return g_sum(cls, x, y); }, [&] { return cf->sum(x, y); }, std::abs(x) + std::abs(y));
  }));
  out.push_back(collect("sub", samples, rng, [&](auto& g) {
    const double x = x_of(g), y = x_of(g);
    return compare([&] { return g_sub(cls, x, y); }, [&] { return cf->sub(x, y); }, std::abs(x) + std::abs(y));
  }));
  out.push_back(collect("neg", samples, rng, [&](auto& g) {
    const double x = x_of(g);
    return compare([&] { return g_neg(cls, x); }, [&] { return cf->neg(x); }, 0.0);
  }));
  auto cut = [](const std::optional<double>& v) {
    if (!v) throw DomainError("cutoff");
    return *v;
  };
  out.push_back(collect("prod", samples, rng, [&](auto& g) {
    const double x = pos(g), y = pos(g);
    return compare([&] { return g_prod(cls, x, y); }, [&] { return cut(cf->prod(x, y)); }, 0.0);
  }));
  out.push_back(collect("div", samples, rng, [&](auto& g) {
    const double x = pos(g), y = pos(g);
    return compare([&] { return g_div(cls, x, y); }, [&] { return cut(cf->div(x, y)); }, 0.0);
  }));
  out.push_back(collect("recip", samples, rng, [&](auto& g) {
    const double x = pos(g);
    return compare([&] { return g_recip(cls, x); }, [&] { return cut(cf->recip(x)); }, 0.0);
  }));
  out.push_back(collect("integer", samples, rng, [&](auto& g) {
    const long n = small_n(g);
    return compare([&] { return g_integer(cls, n).value; }, [&] { return cf->integer(n); }, 0.0);
  }));
  out.push_back(collect("pow", samples, rng, [&](auto& g) {
    const double x = pos(g);
    const long n = small_n(g);
    return compare([&] { return g_pow(cls, x, n); }, [&] { return cut(cf->pow(x, n)); }, 0.0);
  }));
  return out;
}

CheckReport run_checks(const GroupClass& cls, std::size_t samples, std::uint64_t seed) {
  CheckReport report{cls.spec(), cls.restricted(), {}};
  std::mt19937_64 rng(seed);
  const auto ts = sample_t(cls, samples, rng);
  const auto ts2 = sample_t(cls, samples, rng);
  const auto ts3 = sample_t(cls, samples, rng);

  {
    Suite s(report, "group_core");
    s.run("G(0) = 0, G'(0) = 1", 0.0, [&] { return std::abs(g_of(cls, 0.0)) + std::abs(g_prime(cls, 0.0) - 1.0); });
    s.run("round trip G^-1(G(t)) = t", 1e-12, [&] {
      double worst = 0.0;
      for (double t : ts) worst = std::max(worst, std::abs(g_inv(cls, g_of(cls, t)) - t) / (1.0 + std::abs(t)));
      return worst;
    });
    s.run("G' vs finite differences of G", 1e-8, [&] {
      double worst = 0.0;
      const double h = 1e-5 / std::max(1.0, parameter_scale(cls));
      for (double t : ts) {
        const double fd = (g_of(cls, t + h) - g_of(cls, t - h)) / (2 * h);
        worst = std::max(worst, relative_error(fd, g_prime(cls, t), 1.0));
      }
      return worst;
    });
    s.run("G'' vs finite differences of G'", 1e-8, [&] {
      double worst = 0.0;
      const double h = 1e-5 / std::max(1.0, parameter_scale(cls));
      for (double t : ts) {
        const double fd = (g_prime(cls, t + h) - g_prime(cls, t - h)) / (2 * h);
        worst = std::max(worst, relative_error(fd, g_second(cls, t), 1.0));
      }
      return worst;
    });
    s.run("cos_G^2 + sin_G^2 = 1", 1e-12, [&] {
      double worst = 0.0;
      for (double t : ts) {
        const double x = g_of(cls, t);
        worst = std::max(worst, std::abs(std::pow(cos_g(cls, x), 2) + std::pow(sin_g(cls, x), 2) - 1.0));
      }
      return worst;
    });
    s.run("exp_G(log_G x) = x", 1e-12, [&] {
      double worst = 0.0;
      for (double t : ts) {
        const double x = std::exp(t);
        worst = std::max(worst, relative_error(exp_g(cls, log_g(cls, x)), x));
      }
      return worst;
    });
  }

  {
    Suite s(report, "group_law");
    auto scale3 = [](double x, double y, double z) { return std::abs(x) + std::abs(y) + std::abs(z); };
    s.run("symmetry x (+) y = y (+) x", 1e-11, [&] {
      double worst = 0.0;
      for (std::size_t i = 0; i < samples; ++i) {
        const double x = g_of(cls, ts[i]), y = g_of(cls, ts2[i]);
        worst = std::max(worst, relative_error(g_sum(cls, x, y), g_sum(cls, y, x), scale3(x, y, 0)));
      }
      return worst;
    });
    s.run("associativity", 1e-11, [&] {
      double worst = 0.0;
      for (std::size_t i = 0; i < samples; ++i) {
        const double x = g_of(cls, ts[i] / 3), y = g_of(cls, ts2[i] / 3), z = g_of(cls, ts3[i] / 3);
        worst = std::max(worst, relative_error(g_sum(cls, g_sum(cls, x, y), z), g_sum(cls, x, g_sum(cls, y, z)),
                                               scale3(x, y, z)));
      }
      return worst;
    });
    s.run("null composability x (+) 0 = x", 1e-11, [&] {
      double worst = 0.0;
      for (double t : ts) {
        const double x = g_of(cls, t);
        worst = std::max(worst, relative_error(g_sum(cls, x, 0.0), x));
      }
      return worst;
    });
    s.run("inverse x (+) (-)x = 0", 1e-11, [&] {
      double worst = 0.0;
      for (double t : ts) {
        const double x = g_of(cls, t);
        worst = std::max(worst, relative_error(g_sum(cls, x, g_neg(cls, x)), 0.0, std::abs(x)));
      }
      return worst;
    });
    s.run("x (-) y undoes (+) y", 1e-11, [&] {
      double worst = 0.0;
      for (std::size_t i = 0; i < samples; ++i) {
        const double x = g_of(cls, ts[i] / 2), y = g_of(cls, ts2[i] / 2);
        worst = std::max(worst, relative_error(g_sub(cls, g_sum(cls, x, y), y), x, std::abs(y)));
      }
      return worst;
    });
  }

  if (const auto residuals = oracle_residuals(cls, samples, seed); !residuals.empty()) {
    Suite s(report, "oracle");
    for (const auto& r : residuals) {
      s.add(r.operation + " vs closed form (" + std::to_string(r.samples) + " samples)",
            r.samples == 0 ? std::numeric_limits<double>::infinity() : r.max_relative_error, 1e-11);
    }
  }

  if (cls.is_bg()) {
    Suite s(report, "bg_reduction");
    s.run("deformed operations equal ordinary arithmetic", 1e-12, [&] {
      double worst = 0.0;
      for (std::size_t i = 0; i < samples; ++i) {
        const double x = std::exp(ts[i] / 2), y = std::exp(ts2[i] / 2);
        worst = std::max({worst, relative_error(g_sum(cls, x, y), x + y), relative_error(g_sub(cls, x, y), x - y, x + y),
                          relative_error(g_prod(cls, x, y), x * y), relative_error(g_div(cls, x, y), x / y),
                          relative_error(g_pow(cls, x, 3), x * x * x)});
      }
      return worst;
    });
  }

  {
    Suite s(report, "calculus");
    const Interval range = sample_range(cls);
    const Func1D expg{[&cls](double x) { return exp_g(cls, x); }, cls.domain()};
    Tolerances fine = default_tolerances();
    fine.diff_step /= std::max(1.0, parameter_scale(cls));
    s.run("D_G exp_G = exp_G", 1e-8, [&] {
      double worst = 0.0;
      for (std::size_t i = 0; i < std::min<std::size_t>(samples, 100); ++i) {
        const double x = g_of(cls, 0.5 * ts[i]);
        worst = std::max(worst, relative_error(g_derivative(cls, expg, x, fine), exp_g(cls, x)));
      }
      return worst;
    });
    const double a = g_of(cls, std::max(-1.0, 0.5 * range.lo));
    const double b = g_of(cls, std::min(1.0, 0.5 * range.hi));
    const Func1D poly{[](double x) { return x * x * x - 2.0 * x + 1.0; }};
    s.run("fundamental theorem, deformed", 1e-8, [&] { return fundamental_theorem_residual(cls, poly, a, b).deformed; });
    s.run("fundamental theorem, dual", 1e-8, [&] { return fundamental_theorem_residual(cls, poly, a, b).dual; });
    s.run("integral paths agree", 1e-9, [&] {
      return std::abs(g_integral(cls, poly, a, b, IntegralPath::DirectWeight) -
                      g_integral(cls, poly, a, b, IntegralPath::Substitution));
    });
  }

  if (!cls.restricted()) {
    const Interval& dom = cls.domain();
    const double L = dom.hi > 2.0 ? 1.0 : 0.5 * dom.hi;
    Suite s(report, "well");
    s.run("normalization n=1..3", 1e-8, [&] {
      double worst = 0.0;
      for (int n = 1; n <= 3; ++n) {
        const auto sol = WellSolution::make(cls, L, n);
        const double norm = integrate([&](double x) { return std::pow(eigenfunction_x(sol, x), 2); }, 0.0, L);
        worst = std::max(worst, std::abs(norm - 1.0));
      }
      return worst;
    });
    s.run("zeros obey the group law", 1e-11, [&] {
      double worst = 0.0;
      for (int n = 1; n <= 6; ++n) worst = std::max(worst, zeros_group_law_residual(WellSolution::make(cls, L, n)));
      return worst;
    });
    s.run("spacings sum to L", 1e-12, [&] {
      double worst = 0.0;
      for (int n = 1; n <= 6; ++n) {
        const auto sol = WellSolution::make(cls, L, n);
        double sum = 0.0;
        for (int m = 1; m <= n; ++m) sum += spacing(sol, m);
        worst = std::max(worst, std::abs(sum - L) / L);
      }
      return worst;
    });
  }
  return report;
}

}  // namespace groupcalc
