#pragma once

#include "cvarough/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace cvarough {

struct GridRow {
  double T = 0.0;
  double rho = 0.0;
  double gamma = 0.0;
  CvaBreakdown approx;
  bool has_mc = false;
  McResult mc;
  double abs_error = 0.0;  ///< |approx.total - mc.estimate| when has_mc
  std::string error;       ///< non-empty when the row failed
};

struct HurstRow {
  double H = 0.0;
  GridRow row;
};

/// Approximation (and Monte Carlo unless mc.n_paths == 0) for every maturity
/// and admissible (rho, gamma) of the config, in maturity, rho, gamma order.
/// Inadmissible points are skipped and reported on `log`.
std::vector<GridRow> run_grid(const RunConfig& cfg, std::ostream* log = nullptr);

/// run_grid repeated with the rough Bergomi Hurst exponent set to each h.
std::vector<HurstRow> hurst_sweep(const RunConfig& cfg, const std::vector<double>& h_grid, std::ostream* log = nullptr);

/// Numeric table; NaN cells are written empty.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

CsvTable grid_table(const std::vector<GridRow>& rows);
CsvTable hurst_table(const std::vector<HurstRow>& rows);

/// Shortest round-trip decimal form, so read_csv gives back the same doubles.
void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

/// "grid_T0.25.csv"
std::string grid_file_name(double T);

struct RunMeta {
  std::string command;
  std::string config_path;
  RunConfig config;
  double wall_time = 0.0;
  std::size_t rows = 0;
  std::size_t failed_rows = 0;
  std::vector<std::string> outputs;
};

void write_run_meta(const std::string& path, const RunMeta& meta);

}  // namespace cvarough
