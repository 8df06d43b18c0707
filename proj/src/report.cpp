#include "cvarough/report.hpp"

#include <boost/version.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cvarough {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

PathSimulation simulate(const RunConfig& cfg, const CorrelationStructure& corr, const ContractState& k) {
  if (const auto* r = std::get_if<RBergomiParams>(&cfg.model)) {
    return simulate_rbergomi_cva(cfg.mc, *r, cfg.intensity, corr, k);
  }
  return simulate_diffusion_cva(cfg.mc, cfg.model, cfg.intensity, corr, k);
}

}  // namespace

std::vector<GridRow> run_grid(const RunConfig& cfg, std::ostream* log) {
  if (cfg.rho_grid.empty() || cfg.gamma_grid.empty()) throw ConfigError("run_grid: empty grid");
  if (cfg.maturities.empty()) throw ConfigError("run_grid: empty grid of maturities");
  if (log) {
    for (double r : cfg.rho_grid)
      for (double g : cfg.gamma_grid)
        if (!CorrelationStructure{cfg.eta, r, g}.admissible())
          *log << "skipping inadmissible (eta, rho, gamma) = (" << cfg.eta << ", " << r << ", " << g << ")\n";
  }
  const auto triples = cfg.admissible_grid();
  std::vector<GridRow> rows;
  for (double T : cfg.maturities) {
    const ContractState k = ContractState::from_prices(cfg.spot, cfg.strike, 0.0, T, cfg.recovery);
    CvaSensitivities sens;
    std::string sens_error;
    try {
      sens = cva_sensitivities(cfg.model, cfg.intensity, cfg.eta, k);
    } catch (const std::exception& e) {
      sens_error = e.what();
    }
    for (const auto& corr : triples) {
      GridRow row;
      row.T = T;
      row.rho = corr.rho;
      row.gamma = corr.gamma;
      row.error = sens_error;
      if (row.error.empty()) {
        row.approx = sens.at(corr.rho, corr.gamma);
        if (cfg.mc.n_paths > 0) {
          try {
            row.mc = simulate(cfg, corr, k).cva;
            row.has_mc = true;
            row.abs_error = std::abs(row.approx.total - row.mc.estimate);
          } catch (const std::exception& e) {
            row.error = e.what();
          }
        }
      }
      if (log) {
        *log << "T=" << T << " rho=" << corr.rho << " gamma=" << corr.gamma;
        if (!row.error.empty()) {
          *log << " FAILED: " << row.error << "\n";
        } else {
          *log << " approx=" << format_double(row.approx.total);
          if (row.has_mc) *log << " mc=" << format_double(row.mc.estimate) << " abs_error=" << row.abs_error;
          *log << "\n";
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<HurstRow> hurst_sweep(const RunConfig& cfg, const std::vector<double>& h_grid, std::ostream* log) {
  const auto* base = std::get_if<RBergomiParams>(&cfg.model);
  if (!base) throw ConfigError("hurst_sweep: model.type must be rbergomi");
  if (h_grid.empty()) throw ConfigError("hurst_sweep: empty grid of Hurst exponents");
  std::vector<HurstRow> out;
  for (double H : h_grid) {
    RunConfig c = cfg;
    RBergomiParams p = *base;
    p.H = H;
    c.model = p;
    if (log) *log << "H=" << H << "\n";
    for (auto& row : run_grid(c, log)) out.push_back({H, std::move(row)});
  }
  return out;
}

CsvTable grid_table(const std::vector<GridRow>& rows) {
  CsvTable t;
  t.header = {"T",       "rho",       "gamma",  "cva_approx", "base",      "qvar_mm",
              "skew_mx", "volint_nm", "wwr_nx", "cva_mc",     "mc_stderr", "abs_error"};
  for (const auto& r : rows) {
    const bool ok = r.error.empty();
    const bool mc = ok && r.has_mc;
    t.rows.push_back({r.T, r.rho, r.gamma, ok ? r.approx.total : kNaN, ok ? r.approx.base : kNaN,
                      ok ? r.approx.qvar_mm : kNaN, ok ? r.approx.skew_mx : kNaN, ok ? r.approx.volint_nm : kNaN,
                      ok ? r.approx.wwr_nx : kNaN, mc ? r.mc.estimate : kNaN, mc ? r.mc.std_error : kNaN,
                      mc ? r.abs_error : kNaN});
  }
  return t;
}

CsvTable hurst_table(const std::vector<HurstRow>& rows) {
  CsvTable t;
  t.header = {"H", "T", "rho", "gamma", "cva_approx", "cva_mc", "mc_stderr", "abs_error"};
  for (const auto& h : rows) {
    const GridRow& r = h.row;
    const bool ok = r.error.empty();
    const bool mc = ok && r.has_mc;
    t.rows.push_back({h.H, r.T, r.rho, r.gamma, ok ? r.approx.total : kNaN, mc ? r.mc.estimate : kNaN,
                      mc ? r.mc.std_error : kNaN, mc ? r.abs_error : kNaN});
  }
  return t;
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << "\n";
  }
  if (!out) throw std::runtime_error("error while writing '" + path + "'");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  CsvTable t;
  std::string line;
  if (std::getline(in, line)) {
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) t.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t end = line.find(',', start);
      const std::string cell = line.substr(start, end == std::string::npos ? std::string::npos : end - start);
      double v = kNaN;
      if (!cell.empty()) {
        const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
          throw std::runtime_error("'" + path + "': bad number '" + cell + "'");
      }
      row.push_back(v);
      if (end == std::string::npos) break;
      start = end + 1;
    }
    if (row.size() != t.header.size()) throw std::runtime_error("'" + path + "': row width does not match header");
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string grid_file_name(double T) { return "grid_T" + format_short(T) + ".csv"; }

void write_run_meta(const std::string& path, const RunMeta& meta) {
  nlohmann::json j;
  j["command"] = meta.command;
  j["config"] = meta.config_path;
  j["model"] = meta.config.model_name();
  j["seed"] = meta.config.mc.seed;
  j["n_paths"] = meta.config.mc.n_paths;
  j["n_steps"] = meta.config.mc.n_steps;
  j["chunk_size"] = meta.config.mc.chunk_size;
  j["ci_level"] = meta.config.mc.ci_level;
  j["threads"] = meta.config.mc.threads;
  j["wall_time_seconds"] = meta.wall_time;
  j["rows"] = meta.rows;
  j["failed_rows"] = meta.failed_rows;
  j["outputs"] = meta.outputs;
  j["versions"] = {{"cva-rough", "1.0.0"},
                   {"compiler", __VERSION__},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)},
                   {"boost", BOOST_LIB_VERSION}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace cvarough
