#include "groupcalc/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "groupcalc/errors.hpp"
#include "groupcalc/format.hpp"

namespace groupcalc::io {

namespace fs = std::filesystem;

namespace {

std::string extension(TableFormat fmt) { return fmt == TableFormat::Csv ? ".csv" : ".txt"; }

std::string space_name(Space s) {
  switch (s) {
    case Space::X: return "x";
    case Space::G: return "g";
    case Space::DualG: return "dual";
  }
  return "";
}

bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size() && !s.empty();
}

}  // namespace

TableFormat parse_format(const std::string& s) {
  if (s == "csv") return TableFormat::Csv;
  if (s == "text") return TableFormat::Text;
  throw std::invalid_argument("unknown output format '" + s + "' (expected csv or text)");
}

std::string render(const Table& t, TableFormat fmt) {
  std::ostringstream os;
  for (const auto& c : t.comments) os << "# " << c << '\n';
  if (fmt == TableFormat::Csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format12(row[i]);
      os << '\n';
    }
    return os.str();
  }
  std::vector<std::vector<std::string>> cells;
  cells.push_back(t.columns);
  for (const auto& row : t.rows) {
    std::vector<std::string> r;
    for (double v : row) r.push_back(format12(v));
    cells.push_back(std::move(r));
  }
  std::vector<std::size_t> width(t.columns.size(), 0);
  for (const auto& r : cells) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  for (const auto& r : cells) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << "  ";
      os << std::string(width[i] - r[i].size(), ' ') << r[i];
    }
    os << '\n';
  }
  return os.str();
}

static void write_file(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError(path.parent_path().string() + ": " + ec.message());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError(path.string() + ": cannot open for writing");
  f << content;
  if (!f) throw IoError(path.string() + ": write failed");
}

fs::path write_table(const fs::path& dir, const std::string& stem, const Table& t, TableFormat fmt) {
  const fs::path p = dir / (stem + extension(fmt));
  write_file(p, render(t, fmt));
  return p;
}

fs::path write_metadata(const fs::path& dir, const std::string& name,
                        const std::vector<std::pair<std::string, std::string>>& entries) {
  std::ostringstream os;
  for (const auto& [k, v] : entries) os << k << '=' << v << '\n';
  const fs::path p = dir / name;
  write_file(p, os.str());
  return p;
}

Table spectrum_table(const Spectrum& s) {
  Table t{{"n", "energy", "residual"}, {}, {}};
  for (std::size_t i = 0; i < s.energies.size(); ++i) {
    t.rows.push_back({static_cast<double>(i + 1), s.energies[i], s.meta.residuals.at(i)});
  }
  return t;
}

Table state_table(const Spectrum& s, std::size_t index) {
  const WaveFunction& st = s.states.at(index);
  const WaveFunction psi = st.grid.coordinate_space == Space::G ? transform_state(s.cls, st) : st;
  Table t{{"x", "re_psi", "im_psi", "prob_density"}, {}, {}};
  for (int i = 0; i < psi.grid.n_points; ++i) {
    const cplx v = psi.values[i];
    t.rows.push_back({psi.grid.node(i), v.real(), v.imag(), std::norm(v)});
  }
  return t;
}

std::vector<fs::path> write_spectrum(const fs::path& dir, const Spectrum& s, TableFormat fmt) {
  std::vector<fs::path> out;
  out.push_back(write_table(dir, "spectrum", spectrum_table(s), fmt));
  for (std::size_t i = 0; i < s.states.size(); ++i) {
    out.push_back(write_table(dir, "state_" + std::to_string(i + 1), state_table(s, i), fmt));
  }
  const Grid& g = s.states.empty() ? Grid{0, 0, 0} : s.states.front().grid;
  out.push_back(write_metadata(dir, "spectrum.meta",
                               {{"class", s.cls.spec()},
                                {"space", space_name(s.meta.space)},
                                {"grid_points", std::to_string(s.meta.grid_points)},
                                {"grid_start", format12(g.start)},
                                {"grid_end", format12(g.end)},
                                {"hbar", format12(s.meta.units.hbar)},
                                {"m0", format12(s.meta.units.m0)},
                                {"backend", s.meta.backend},
                                {"states", std::to_string(s.energies.size())}}));
  return out;
}

Table probability_csv(const WellSolution& sol, int n_samples, SampleMode mode) {
  Table t;
  t.columns = {mode == SampleMode::UniformX ? "x_over_L" : "xg_over_LG", "prob_density_normalized"};
  t.comments.push_back("class=" + sol.cls.spec() + " n=" + std::to_string(sol.n) + " L=" + format12(sol.L) +
                       " L_G=" + format12(sol.L_G));
  for (const auto& r : probability_table(sol, n_samples, mode)) t.rows.push_back({r.coordinate, r.density});
  return t;
}

std::pair<std::vector<double>, std::vector<double>> read_potential_csv(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError(path.string() + ": cannot open potential file");
  std::vector<double> xs, vs;
  std::string line;
  int lineno = 0;
  bool first_data = true;
  while (std::getline(f, line)) {
    ++lineno;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    const auto comma = line.find(',');
    double x = 0.0, v = 0.0;
    const bool ok = comma != std::string::npos && parse_double(std::string_view(line).substr(0, comma), x) &&
                    parse_double(std::string_view(line).substr(comma + 1), v);
    if (!ok) {
      if (first_data) {
        first_data = false;
        continue;
      }
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected 'x,V'");
    }
    first_data = false;
    if (!xs.empty() && !(x > xs.back())) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": x values must increase");
    }
    xs.push_back(x);
    vs.push_back(v);
  }
  if (xs.size() < 2) throw IoError(path.string() + ": need at least two samples");
  return {std::move(xs), std::move(vs)};
}

}  // namespace groupcalc::io
