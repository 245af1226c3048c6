#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "groupcalc/spectral.hpp"
#include "groupcalc/well.hpp"

namespace groupcalc::io {

enum class TableFormat {
  Csv,   // comma separated, ".csv"
  Text,  // whitespace aligned, ".txt"
};

/// Parses "csv" or "text"; throws std::invalid_argument otherwise.
TableFormat parse_format(const std::string& s);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> comments;  // emitted as "# ..." lines before the header
};

/// Renders every value with 12 significant digits.
std::string render(const Table& t, TableFormat fmt = TableFormat::Csv);

/// Writes `stem` + extension inside `dir` (created when missing) and returns the path.
/// Throws IoError with the path on failure.
std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem, const Table& t,
                                  TableFormat fmt = TableFormat::Csv);

/// Writes key=value lines.
std::filesystem::path write_metadata(const std::filesystem::path& dir, const std::string& name,
                                     const std::vector<std::pair<std::string, std::string>>& entries);

/// "n,energy,residual"
Table spectrum_table(const Spectrum& s);

/// "x,re_psi,im_psi,prob_density" in physical x; deformed-space states are transformed first.
Table state_table(const Spectrum& s, std::size_t index);

/// Writes spectrum, one table per state, and the spectrum.meta sidecar.
std::vector<std::filesystem::path> write_spectrum(const std::filesystem::path& dir, const Spectrum& s,
                                                  TableFormat fmt = TableFormat::Csv);

/// "x_over_L,prob_density_normalized" (or x_G over L_G) with a class/n/L comment line.
Table probability_csv(const WellSolution& sol, int n_samples, SampleMode mode = SampleMode::UniformX);

/// Reads a two-column "x,V" file; a non-numeric first row is taken as a header and
/// "#" lines are skipped. Throws IoError with path and line context.
std::pair<std::vector<double>, std::vector<double>> read_potential_csv(const std::filesystem::path& path);

}  // namespace groupcalc::io
