#pragma once

#include "cvarough/cva_engine.hpp"
#include "cvarough/mc_bench.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace cvarough {

/// Raised for every schema or validation problem; what() names the field and,
/// when known, the line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  VolModelParams model;
  CirParams intensity;
  bool enforce_feller = true;
  double eta = 0.0;
  std::vector<double> rho_grid;
  std::vector<double> gamma_grid;
  std::vector<double> maturities;
  double spot = 0.0;
  double strike = 0.0;
  double recovery = 0.0;
  McConfig mc;  ///< mc.n_paths == 0 disables the Monte Carlo columns
  std::string out_dir = "results";

  std::string model_name() const;
  /// The (eta, rho, gamma) triples of the grid that are admissible.
  std::vector<CorrelationStructure> admissible_grid() const;
};

/// Parses YAML text. See README for the schema.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// "a:b:step" inclusive of b up to rounding.
std::vector<double> parse_range(const std::string& spec);

}  // namespace cvarough
