#include "cvarough/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <sstream>

namespace cvarough {

namespace {

std::string where(const YAML::Node& node) {
  const auto mark = node.Mark();
  if (mark.line < 0) return "";
  return " (line " + std::to_string(mark.line + 1) + ")";
}

[[noreturn]] void fail(const std::string& msg, const YAML::Node& node) { throw ConfigError("config: " + msg + where(node)); }

YAML::Node section(const YAML::Node& root, const std::string& name) {
  const YAML::Node n = root[name];
  if (!n) throw ConfigError("config: missing section '" + name + "'");
  if (!n.IsMap()) fail("section '" + name + "' must be a mapping", n);
  return n;
}

double number(const YAML::Node& parent, const std::string& sec, const std::string& key) {
  const YAML::Node n = parent[key];
  if (!n) fail("missing field '" + sec + "." + key + "'", parent);
  try {
    const double v = n.as<double>();
    if (!std::isfinite(v)) fail("field '" + sec + "." + key + "' must be finite", n);
    return v;
  } catch (const YAML::BadConversion&) {
    fail("field '" + sec + "." + key + "' must be a number", n);
  }
}

double number_or(const YAML::Node& parent, const std::string& sec, const std::string& key, double fallback) {
  return parent[key] ? number(parent, sec, key) : fallback;
}

std::size_t count_or(const YAML::Node& parent, const std::string& sec, const std::string& key, std::size_t fallback) {
  const YAML::Node n = parent[key];
  if (!n) return fallback;
  try {
    const long long v = n.as<long long>();
    if (v < 0) fail("field '" + sec + "." + key + "' must be non-negative", n);
    return static_cast<std::size_t>(v);
  } catch (const YAML::BadConversion&) {
    fail("field '" + sec + "." + key + "' must be an integer", n);
  }
}

double snap(double v) { return std::round(v * 1e12) / 1e12 + 0.0; }

std::vector<double> range(double from, double to, double step, const std::string& what) {
  if (!(step > 0.0) || !(to >= from)) throw ConfigError("config: " + what + " range needs step > 0 and to >= from");
  const auto n = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = snap(from + static_cast<double>(i) * step);
  return out;
}

// A list of numbers, a scalar, or {from, to, step}.
std::vector<double> grid(const YAML::Node& parent, const std::string& sec, const std::string& key) {
  const YAML::Node n = parent[key];
  if (!n) fail("missing field '" + sec + "." + key + "'", parent);
  const std::string name = sec + "." + key;
  std::vector<double> out;
  if (n.IsSequence()) {
    for (const auto& item : n) {
      try {
        out.push_back(item.as<double>());
      } catch (const YAML::BadConversion&) {
        fail("field '" + name + "' must contain numbers", item);
      }
    }
  } else if (n.IsMap()) {
    out = range(number(n, name, "from"), number(n, name, "to"), number(n, name, "step"), name);
  } else {
    out.push_back(number(parent, sec, key));
  }
  if (out.empty()) fail("empty grid for '" + name + "'", n);
  return out;
}

VolModelParams parse_model(const YAML::Node& m) {
  if (!m["type"]) fail("missing field 'model.type'", m);
  const std::string type = m["type"].as<std::string>();
  try {
    if (type == "heston") {
      HestonParams h{number(m, "model", "sigma2_0"), number(m, "model", "k"), number(m, "model", "theta"),
                     number(m, "model", "nu")};
      h.validate();
      return h;
    }
    if (type == "sabr") {
      SabrParams s{number(m, "model", "sigma0"), number(m, "model", "alpha"), number_or(m, "model", "beta", 1.0)};
      s.validate();
      return s;
    }
    if (type == "rbergomi") {
      RBergomiParams r{number(m, "model", "sigma0"), number(m, "model", "nu"), number(m, "model", "hurst")};
      r.validate();
      return r;
    }
  } catch (const std::invalid_argument& e) {
    fail(e.what(), m);
  }
  fail("unknown model.type '" + type + "' (expected heston, sabr or rbergomi)", m["type"]);
}

}  // namespace

std::string RunConfig::model_name() const {
  if (std::holds_alternative<HestonParams>(model)) return "heston";
  if (std::holds_alternative<SabrParams>(model)) return "sabr";
  return "rbergomi";
}

std::vector<CorrelationStructure> RunConfig::admissible_grid() const {
  std::vector<CorrelationStructure> out;
  for (double r : rho_grid)
    for (double g : gamma_grid)
      if (CorrelationStructure c{eta, r, g}; c.admissible()) out.push_back(c);
  return out;
}

RunConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(std::string("config: YAML syntax error: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("config: top level must be a mapping");

  RunConfig cfg;
  cfg.model = parse_model(section(root, "model"));

  const YAML::Node in = section(root, "intensity");
  cfg.intensity = {number(in, "intensity", "lambda0"), number(in, "intensity", "q"), number(in, "intensity", "mu"),
                   number(in, "intensity", "c")};
  try {
    cfg.intensity.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what(), in);
  }
  if (in["enforce_feller"]) cfg.enforce_feller = in["enforce_feller"].as<bool>();
  if (cfg.enforce_feller && !cfg.intensity.satisfies_feller()) {
    fail("intensity violates the Feller condition c^2 < 2 q mu (set intensity.enforce_feller: false to allow)", in);
  }

  const YAML::Node co = section(root, "correlation");
  cfg.eta = number(co, "correlation", "eta");
  cfg.rho_grid = grid(co, "correlation", "rho");
  cfg.gamma_grid = grid(co, "correlation", "gamma");
  if (cfg.admissible_grid().empty())
    fail("no admissible correlation triple: need eta^2, rho^2, gamma^2 < 1 and "
         "gamma^2 + rho^2 + eta^2 < 1 + 2 gamma eta rho",
         co);

  const YAML::Node ct = section(root, "contract");
  cfg.spot = number(ct, "contract", "spot");
  cfg.strike = number(ct, "contract", "strike");
  if (!(cfg.spot > 0.0 && cfg.strike > 0.0)) fail("contract.spot and contract.strike must be positive", ct);
  cfg.maturities = grid(ct, "contract", "maturities");
  for (double T : cfg.maturities)
    if (!(T > 0.0)) fail("contract.maturities must be positive (years)", ct["maturities"]);
  cfg.recovery = number_or(ct, "contract", "recovery", 0.0);
  if (!(cfg.recovery >= 0.0 && cfg.recovery < 1.0)) fail("contract.recovery must lie in [0, 1)", ct);

  if (const YAML::Node mc = root["mc"]) {
    if (!mc.IsMap()) fail("section 'mc' must be a mapping", mc);
    cfg.mc.n_paths = count_or(mc, "mc", "n_paths", cfg.mc.n_paths);
    cfg.mc.n_steps = count_or(mc, "mc", "n_steps", cfg.mc.n_steps);
    cfg.mc.seed = count_or(mc, "mc", "seed", cfg.mc.seed);
    cfg.mc.chunk_size = count_or(mc, "mc", "chunk_size", cfg.mc.chunk_size);
    cfg.mc.ci_level = number_or(mc, "mc", "ci_level", cfg.mc.ci_level);
    if (cfg.mc.n_steps < 2) fail("mc.n_steps must be at least 2", mc);
    if (cfg.mc.chunk_size < 1) fail("mc.chunk_size must be at least 1", mc);
    if (!(cfg.mc.ci_level > 0.0 && cfg.mc.ci_level < 1.0)) fail("mc.ci_level must lie in (0, 1)", mc);
  }
  if (const YAML::Node out = root["output"]) {
    if (out["dir"]) cfg.out_dir = out["dir"].as<std::string>();
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<double> parse_range(const std::string& spec) {
  std::stringstream ss(spec);
  std::string a, b, s;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, s) || a.empty() || b.empty() ||
      s.empty())
    throw ConfigError("range '" + spec + "' must have the form a:b:step");
  try {
    return range(std::stod(a), std::stod(b), std::stod(s), "range '" + spec + "'");
  } catch (const std::logic_error&) {
    throw ConfigError("range '" + spec + "' must contain numbers");
  }
}

}  // namespace cvarough
