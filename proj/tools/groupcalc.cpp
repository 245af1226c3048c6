#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "groupcalc/diagnostics.hpp"
#include "groupcalc/errors.hpp"
#include "groupcalc/exprlang.hpp"
#include "groupcalc/format.hpp"
#include "groupcalc/io.hpp"
#include "groupcalc/spectral.hpp"
#include "groupcalc/well.hpp"

namespace gc = groupcalc;
namespace fs = std::filesystem;

namespace {

enum Exit : int {
  kOk = 0,
  kCheckFailed = 1,
  kParse = 2,
  kDomain = 3,
  kConvergence = 4,
  kIo = 5,
  kUsage = 64,
};

struct RunConfig {
  std::string class_spec = "bg";
  double hbar = 1.0;
  double m0 = 1.0;
  std::string out = "out";
  std::string format = "csv";
  std::vector<std::string> tol;
};

using ConfigFile = std::map<std::string, std::string>;

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

ConfigFile read_config_file() {
  ConfigFile cfg;
  const char* path = std::getenv("GROUPCALC_CONFIG");
  if (path == nullptr || *path == '\0') return cfg;
  std::ifstream f(path);
  if (!f) throw gc::IoError(std::string(path) + ": cannot open config file");
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw gc::ParseError(std::string(path) + ":" + std::to_string(lineno) + ": expected key=value", 0, {"="});
    }
    cfg[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return cfg;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw std::invalid_argument(key + ": not a number: '" + v + "'");
  return d;
}

double positive(const std::string& key, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(key + " must be positive");
  return v;
}

void apply_tolerance(gc::Tolerances& t, const std::string& item) {
  const auto eq = item.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("--tol expects key=value, got '" + item + "'");
  const std::string key = trim(item.substr(0, eq));
  const std::string val = trim(item.substr(eq + 1));
  if (key == "stencil") {
    if (val == "3") t.stencil = gc::DiffStencil::ThreePoint;
    else if (val == "5") t.stencil = gc::DiffStencil::FivePoint;
    else throw std::invalid_argument("stencil must be 3 or 5");
  } else if (key == "quadrature") {
    if (val == "simpson") t.quadrature = gc::QuadratureBackend::AdaptiveSimpson;
    else if (val == "gauss") t.quadrature = gc::QuadratureBackend::GaussLegendre16;
    else throw std::invalid_argument("quadrature must be simpson or gauss");
  } else if (key == "eigen") {
    if (val == "sturm") t.eigen = gc::EigenBackend::SturmBisection;
    else if (val == "ql") t.eigen = gc::EigenBackend::ImplicitQL;
    else throw std::invalid_argument("eigen must be sturm or ql");
  } else if (key == "inverse_rel") {
    t.inverse_rel = positive(key, to_double(key, val));
  } else if (key == "diff_step") {
    t.diff_step = positive(key, to_double(key, val));
  } else if (key == "quad_abs") {
    t.quad_abs = positive(key, to_double(key, val));
  } else if (key == "eigen_residual") {
    t.eigen_residual = positive(key, to_double(key, val));
  } else if (key == "quad_max_depth") {
    t.quad_max_depth = static_cast<int>(positive(key, to_double(key, val)));
  } else if (key == "inverse_iteration_max") {
    t.inverse_iteration_max = static_cast<int>(positive(key, to_double(key, val)));
  } else if (key == "inverse_max_iter") {
    t.inverse_max_iter = static_cast<int>(positive(key, to_double(key, val)));
  } else {
    throw std::invalid_argument("unknown tolerance key '" + key + "'");
  }
}

// Parses "1..3", "1,2,5" or a mix such as "1..3,7".
std::vector<int> parse_n_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string part;
  auto to_int = [&](const std::string& t) {
    const double d = to_double("--n", trim(t));
    if (d != std::floor(d) || d < 1 || d > 1e6) throw std::invalid_argument("--n entries must be integers >= 1");
    return static_cast<int>(d);
  };
  while (std::getline(ss, part, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(part));
    } else {
      const int lo = to_int(part.substr(0, dots));
      const int hi = to_int(part.substr(dots + 2));
      if (hi < lo) throw std::invalid_argument("--n range is empty: " + part);
      for (int n = lo; n <= hi; ++n) out.push_back(n);
    }
  }
  if (out.empty()) throw std::invalid_argument("--n is empty");
  return out;
}

struct Context {
  gc::GroupClass cls;
  gc::Units units;
  gc::Tolerances tol;
  fs::path out;
  gc::io::TableFormat format;
};

Context make_context(const RunConfig& rc) {
  Context c{gc::GroupClass::parse(rc.class_spec), {positive("--hbar", rc.hbar), positive("--m0", rc.m0)},
            gc::default_tolerances(), rc.out, gc::io::parse_format(rc.format)};
  for (const auto& t : rc.tol) apply_tolerance(c.tol, t);
  return c;
}

int cmd_eval(const Context& c, const std::string& source) {
  try {
    std::cout << gc::format12(gc::expr::eval(gc::expr::parse(source), c.cls)) << '\n';
  } catch (const gc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n  " << source << "\n  " << std::string(e.offset(), ' ') << "^\n";
    if (!e.expected().empty()) {
      std::cerr << "  expected one of:";
      for (const auto& x : e.expected()) std::cerr << ' ' << x;
      std::cerr << '\n';
    }
    return kParse;
  }
  return kOk;
}

struct WellOptions {
  double L = 1.0;
  std::string n = "1";
  int samples = 201;
  std::string sample_space = "x";
};

int cmd_well(const Context& c, const WellOptions& o) {
  const auto ns = parse_n_list(o.n);
  if (o.samples < 2) throw std::invalid_argument("--samples must be >= 2");
  const auto mode = o.sample_space == "g" ? gc::SampleMode::UniformG : gc::SampleMode::UniformX;
  if (o.sample_space != "x" && o.sample_space != "g") throw std::invalid_argument("--sample-space must be x or g");

  gc::io::Table energies{{"n", "energy"}, {}, {"class=" + c.cls.spec() + " L=" + gc::format12(o.L)}};
  gc::io::Table zeros{{"n", "m", "zero", "spacing"}, {}, {"class=" + c.cls.spec() + " L=" + gc::format12(o.L)}};
  for (int n : ns) {
    const auto sol = gc::WellSolution::make(c.cls, o.L, n, c.units);
    const double e = gc::energy(sol);
    energies.rows.push_back({static_cast<double>(n), e});
    const auto z = gc::zeros(sol);
    std::cout << "n=" << n << " energy=" << gc::format12(e) << " zeros=";
    for (std::size_t m = 0; m < z.size(); ++m) {
      std::cout << (m ? "," : "") << gc::format12(z[m]);
      zeros.rows.push_back({static_cast<double>(n), static_cast<double>(m), z[m],
                            m == 0 ? 0.0 : gc::spacing(sol, static_cast<int>(m))});
    }
    std::cout << '\n';
    gc::io::write_table(c.out, "prob_n" + std::to_string(n), gc::io::probability_csv(sol, o.samples, mode), c.format);
  }
  gc::io::write_table(c.out, "energies", energies, c.format);
  gc::io::write_table(c.out, "zeros", zeros, c.format);
  return kOk;
}

struct SolveOptions {
  std::string potential = "well:L=1";
  int N = 2001;
  int k = 5;
  bool cross_check = false;
  std::string backend = "sturm";
  std::string space = "g";
  double xmin = -5.0;
  double xmax = 5.0;
};

struct Problem {
  gc::Potential potential;
  double lo;
  double hi;
};

double spec_value(const std::string& spec, const std::string& prefix) {
  if (!spec.starts_with(prefix)) throw gc::ParseError("malformed potential '" + spec + "'", 0, {prefix});
  return to_double(prefix, spec.substr(prefix.size()));
}

Problem make_problem(const std::string& spec, const SolveOptions& o, const gc::Units& units) {
  if (spec.starts_with("well:")) {
    const double L = positive("well L", spec_value(spec, "well:L="));
    return {gc::Potential::infinite_well(L), 0.0, L};
  }
  if (spec.starts_with("file:")) {
    auto [x, v] = gc::io::read_potential_csv(spec.substr(5));
    const double lo = x.front(), hi = x.back();
    return {gc::Potential::tabulated(std::move(x), std::move(v)), lo, hi};
  }
  if (spec.starts_with("harmonic:")) {
    const double w = positive("omega", spec_value(spec, "harmonic:omega="));
    if (!(o.xmax > o.xmin)) throw std::invalid_argument("--xmax must exceed --xmin");
    const double m0 = units.m0;
    return {gc::Potential::callable([w, m0](double x) { return 0.5 * m0 * w * w * x * x; }), o.xmin, o.xmax};
  }
  throw gc::ParseError("unknown potential '" + spec + "'", 0, {"well:L=", "file:", "harmonic:omega="});
}

gc::Spectrum solve_in(const Context& c, const Problem& p, const std::string& space, int N, int k,
                      const gc::Tolerances& tol) {
  if (space == "g") {
    const auto grid = gc::deformed_grid(c.cls, p.lo, p.hi, N);
    return gc::solve_eigen(gc::hamiltonian_gspace(c.cls, grid, p.potential, c.units), k, tol);
  }
  const auto grid = gc::Grid::make(p.lo, p.hi, N, gc::Space::X);
  return gc::solve_eigen(gc::hamiltonian_xspace(c.cls, grid, p.potential, c.units), k, tol);
}

int cmd_solve(const Context& c, const SolveOptions& o) {
  if (o.N < 3) throw std::invalid_argument("--N must be >= 3");
  if (o.space != "g" && o.space != "x") throw std::invalid_argument("--space must be g or x");
  gc::Tolerances tol = c.tol;
  if (o.backend == "ql") tol.eigen = gc::EigenBackend::ImplicitQL;
  else if (o.backend != "sturm") throw std::invalid_argument("--backend must be sturm or ql");

  const Problem p = make_problem(o.potential, o, c.units);
  const auto spectrum = solve_in(c, p, o.space, o.N, o.k, tol);
  std::cout << "n,energy,residual\n";
  for (std::size_t i = 0; i < spectrum.energies.size(); ++i) {
    std::cout << i + 1 << ',' << gc::format12(spectrum.energies[i]) << ','
              << gc::format12(spectrum.meta.residuals[i]) << '\n';
  }
  gc::io::write_spectrum(c.out, spectrum, c.format);

  if (o.cross_check) {
    const auto other = solve_in(c, p, o.space == "g" ? "x" : "g", o.N, o.k, tol);
    double worst = 0.0;
    for (std::size_t i = 0; i < spectrum.energies.size(); ++i) {
      worst = std::max(worst, std::abs(spectrum.energies[i] - other.energies[i]) / std::abs(spectrum.energies[i]));
    }
    const bool ok = worst <= 5e-3;
    std::cout << "cross-check max relative discrepancy " << gc::format12(worst) << (ok ? " PASS" : " FAIL")
              << " (limit 0.005)\n";
    if (!ok) return kCheckFailed;
  }
  return kOk;
}

int cmd_check(const Context& c) {
  const auto report = gc::run_checks(c.cls);
  std::cout << "class " << report.class_spec << (report.restricted ? " (restricted: local-domain suites only)" : "")
            << '\n';
  for (const auto& r : report.results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.suite << ": " << r.name << "  residual=" << gc::format12(r.residual)
              << " tol=" << gc::format12(r.tolerance) << '\n';
  }
  if (const auto* f = report.first_failure()) {
    std::cerr << "first failure: " << f->suite << ": " << f->name << " residual " << gc::format12(f->residual)
              << " exceeds " << gc::format12(f->tolerance) << '\n';
    return kCheckFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"groupcalc: group-entropy deformed algebra, calculus and spectra"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig rc;
  auto* opt_class = app.add_option("--class", rc.class_spec, "group class, e.g. tsallis:q=0.5");
  auto* opt_hbar = app.add_option("--hbar", rc.hbar, "reduced Planck constant");
  auto* opt_m0 = app.add_option("--m0", rc.m0, "reference mass");
  auto* opt_out = app.add_option("--out", rc.out, "output directory");
  auto* opt_format = app.add_option("--format", rc.format, "csv or text");
  auto* opt_tol = app.add_option("--tol", rc.tol, "tolerance override key=value (repeatable)");

  std::string expression;
  auto* eval = app.add_subcommand("eval", "evaluate a deformed-arithmetic expression");
  eval->add_option("expression", expression)->required();

  WellOptions wo;
  auto* well = app.add_subcommand("well", "closed-form infinite-well tables");
  auto* opt_L = well->add_option("--L", wo.L, "well width");
  well->add_option("--n", wo.n, "quantum numbers: 1..3 or 1,2,5");
  auto* opt_samples = well->add_option("--samples", wo.samples, "probability table rows");
  well->add_option("--sample-space", wo.sample_space, "x (uniform in x/L) or g (uniform in x_G/L_G)");

  SolveOptions so;
  auto* solve = app.add_subcommand("solve", "numerical spectrum of the deformed Schroedinger equation");
  solve->add_option("--potential", so.potential, "well:L=<f> | file:<path> | harmonic:omega=<f>");
  auto* opt_N = solve->add_option("--N", so.N, "grid points");
  solve->add_option("--k", so.k, "number of eigenpairs");
  solve->add_flag("--cross-check", so.cross_check, "also solve in the other space and compare");
  solve->add_option("--backend", so.backend, "sturm or ql");
  solve->add_option("--space", so.space, "g (deformed coordinate) or x (position-dependent mass)");
  solve->add_option("--xmin", so.xmin, "left edge for harmonic potentials");
  solve->add_option("--xmax", so.xmax, "right edge for harmonic potentials");

  auto* check = app.add_subcommand("check", "run the invariant suites for a class");
  auto* repl = app.add_subcommand("repl", "read-eval-print loop on standard input");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const ConfigFile cfg = read_config_file();
    auto from_cfg = [&](CLI::Option* opt, const char* key, auto& target) {
      const auto it = cfg.find(key);
      if (opt->count() > 0 || it == cfg.end()) return;
      using T = std::decay_t<decltype(target)>;
      if constexpr (std::is_same_v<T, std::string>) target = it->second;
      else if constexpr (std::is_same_v<T, int>) target = static_cast<int>(to_double(key, it->second));
      else if constexpr (std::is_same_v<T, double>) target = to_double(key, it->second);
      else target.push_back(it->second);
    };
    from_cfg(opt_class, "class", rc.class_spec);
    from_cfg(opt_hbar, "hbar", rc.hbar);
    from_cfg(opt_m0, "m0", rc.m0);
    from_cfg(opt_out, "out", rc.out);
    from_cfg(opt_format, "format", rc.format);
    from_cfg(opt_N, "N", so.N);
    from_cfg(opt_L, "L", wo.L);
    from_cfg(opt_samples, "samples", wo.samples);
    if (opt_tol->count() == 0) {
      for (const auto& [k, v] : cfg) {
        if (k.starts_with("tol.")) rc.tol.push_back(k.substr(4) + "=" + v);
      }
    }

    const Context ctx = make_context(rc);
    if (*eval) return cmd_eval(ctx, expression);
    if (*well) return cmd_well(ctx, wo);
    if (*solve) return cmd_solve(ctx, so);
    if (*check) return cmd_check(ctx);
    if (*repl) {
      gc::expr::repl(std::cin, std::cout, std::cerr, ctx.cls);
      return kOk;
    }
  } catch (const gc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const gc::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const gc::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << '\n';
    return kConvergence;
  } catch (const gc::ToleranceNotMet& e) {
    std::cerr << "convergence error: " << e.what() << '\n';
    return kConvergence;
  } catch (const gc::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIo;
  } catch (const gc::IndexError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kParse;
  }
  return kUsage;
}
