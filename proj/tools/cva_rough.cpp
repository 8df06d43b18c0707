// cva-rough: CVA approximation grids, Monte Carlo benchmarks and Hurst sweeps.

#include "cvarough/config.hpp"
#include "cvarough/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace cvarough;

namespace {

struct Common {
  std::string config;
  std::string out;
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Common& c, bool outputs) {
  cmd->add_option("--config", c.config, "YAML run configuration")->required();
  if (outputs) cmd->add_option("--out", c.out, "output directory (default: output.dir of the config)");
  cmd->add_option("--threads", c.threads, "worker threads, 0 = all cores (results do not depend on it)");
  cmd->add_option("--seed", c.seed, "override mc.seed");
}

RunConfig prepare(const Common& c) {
  RunConfig cfg = load_config(c.config);
  cfg.mc.threads = c.threads;
  if (c.seed) cfg.mc.seed = *c.seed;
  return cfg;
}

std::string out_dir(const Common& c, const RunConfig& cfg) {
  const std::string dir = c.out.empty() ? cfg.out_dir : c.out;
  fs::create_directories(dir);
  return dir;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_run(const Common& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const RunConfig cfg = prepare(c);
  const std::string dir = out_dir(c, cfg);
  const auto rows = run_grid(cfg, &std::cerr);

  RunMeta meta;
  meta.command = "run";
  meta.config_path = c.config;
  meta.config = cfg;
  for (double T : cfg.maturities) {
    std::vector<GridRow> part;
    for (const auto& r : rows)
      if (r.T == T) part.push_back(r);
    const std::string path = (fs::path(dir) / grid_file_name(T)).string();
    write_csv(path, grid_table(part));
    meta.outputs.push_back(path);
  }
  meta.rows = rows.size();
  for (const auto& r : rows) meta.failed_rows += !r.error.empty();
  meta.wall_time = elapsed(t0);
  write_run_meta((fs::path(dir) / "run_meta.json").string(), meta);
  std::cerr << rows.size() - meta.failed_rows << "/" << rows.size() << " rows written to " << dir << "\n";
  return meta.failed_rows == 0 ? 0 : 1;
}

int cmd_hurst(const Common& c, const std::string& h_spec) {
  const auto t0 = std::chrono::steady_clock::now();
  const RunConfig cfg = prepare(c);
  const auto h_grid = parse_range(h_spec);
  const std::string dir = out_dir(c, cfg);
  const auto rows = hurst_sweep(cfg, h_grid, &std::cerr);

  RunMeta meta;
  meta.command = "hurst";
  meta.config_path = c.config;
  meta.config = cfg;
  const std::string path = (fs::path(dir) / "hurst_sweep.csv").string();
  write_csv(path, hurst_table(rows));
  meta.outputs.push_back(path);
  meta.rows = rows.size();
  for (const auto& r : rows) meta.failed_rows += !r.row.error.empty();
  meta.wall_time = elapsed(t0);
  write_run_meta((fs::path(dir) / "run_meta.json").string(), meta);
  return meta.failed_rows == 0 ? 0 : 1;
}

int cmd_price(const Common& c) {
  const RunConfig cfg = prepare(c);
  if (cfg.mc.n_paths == 0) throw ConfigError("config: price needs mc.n_paths > 0");
  const CorrelationStructure corr{cfg.eta, 0.0, 0.0};
  std::printf("T,price,std_error,ci_low,ci_high,forward\n");
  for (double T : cfg.maturities) {
    const ContractState k = ContractState::from_prices(cfg.spot, cfg.strike, 0.0, T, cfg.recovery);
    const PathSimulation sim = std::holds_alternative<RBergomiParams>(cfg.model)
                                   ? simulate_rbergomi_cva(cfg.mc, std::get<RBergomiParams>(cfg.model),
                                                           cfg.intensity, corr, k)
                                   : simulate_diffusion_cva(cfg.mc, cfg.model, cfg.intensity, corr, k);
    const McResult& p = sim.risk_free;
    std::printf("%g,%.10g,%.6g,%.10g,%.10g,%.10g\n", T, p.estimate, p.std_error, p.estimate - p.ci_half_width,
                p.estimate + p.ci_half_width, sim.forward.estimate);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CVA of vulnerable European calls under rough and classical stochastic volatility"};
  app.require_subcommand(1);

  Common run_opts, hurst_opts, price_opts;
  std::string h_spec;
  auto* run = app.add_subcommand("run", "approximation and Monte Carlo over the configured grid");
  add_common(run, run_opts, true);
  auto* hurst = app.add_subcommand("hurst", "rough Bergomi Hurst-exponent sweep");
  add_common(hurst, hurst_opts, true);
  hurst->add_option("--h-grid", h_spec, "Hurst exponents as a:b:step")->required();
  auto* price = app.add_subcommand("price", "risk-free Monte Carlo call price");
  add_common(price, price_opts, false);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(run_opts);
    if (*hurst) return cmd_hurst(hurst_opts, h_spec);
    return cmd_price(price_opts);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
