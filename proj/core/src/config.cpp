#include "choquard/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "choquard/errors.hpp"

namespace choquard {

namespace {

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw config_error("cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty()) throw config_error("empty numeric list");
  return out;
}

template <typename T>
void read_json_field(const nlohmann::json& j, const char* key, T& dst) {
  if (!j.contains(key)) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const std::exception& e) {
    throw config_error(std::string("config field '") + key + "': " + e.what());
  }
}

void validate(const RunConfig& cfg) {
  if (cfg.grid_count < 16) throw config_error("config field 'grid.M': need M >= 16");
  if (!(cfg.r_min > 0.0 && cfg.r_min < cfg.r_max))
    throw config_error("config field 'grid': need 0 < rMin < rMax");
  for (double e : cfg.eps_list)
    if (!(e > 0.0)) throw config_error("config field 'epsList': entries must be positive");
  if (cfg.solver.max_iter < 1) throw config_error("config field 'solver.maxIter': need >= 1");
  if (!(cfg.solver.tol_action > 0.0 && cfg.solver.tol_residual > 0.0 &&
        cfg.solver.eta0 > 0.0))
    throw config_error("config field 'solver': tolerances and eta0 must be positive");
  cfg.params();  // range checks on (N, alpha, q)
}

}  // namespace

RunConfig parse_config(const std::optional<std::string>& json_text,
                       const ConfigOverrides& overrides) {
  RunConfig cfg;

  if (json_text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(*json_text);
    } catch (const std::exception& e) {
      throw config_error(std::string("malformed config JSON: ") + e.what());
    }
    read_json_field(j, "N", cfg.dim);
    read_json_field(j, "alpha", cfg.alpha);
    read_json_field(j, "q", cfg.q);
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      if (!g.is_object()) throw config_error("config field 'grid': expected an object");
      read_json_field(g, "rMin", cfg.r_min);
      read_json_field(g, "rMax", cfg.r_max);
      read_json_field(g, "M", cfg.grid_count);
    }
    read_json_field(j, "epsList", cfg.eps_list);
    if (j.contains("sExponent")) {
      double s = 0.0;
      read_json_field(j, "sExponent", s);
      cfg.s_exponent = s;
    }
    if (j.contains("solver")) {
      const auto& s = j.at("solver");
      if (!s.is_object()) throw config_error("config field 'solver': expected an object");
      read_json_field(s, "maxIter", cfg.solver.max_iter);
      read_json_field(s, "tolI", cfg.solver.tol_action);
      read_json_field(s, "tolResidual", cfg.solver.tol_residual);
      read_json_field(s, "eta0", cfg.solver.eta0);
    }
    read_json_field(j, "outputDir", cfg.output_dir);
    read_json_field(j, "seed", cfg.seed);
  }

  if (overrides.dim) cfg.dim = *overrides.dim;
  if (overrides.alpha) cfg.alpha = *overrides.alpha;
  if (overrides.q) cfg.q = *overrides.q;
  if (overrides.grid) {
    const auto parts = parse_double_list(*overrides.grid);
    if (parts.size() != 3) throw config_error("--grid expects rMin,rMax,M");
    cfg.r_min = parts[0];
    cfg.r_max = parts[1];
    if (parts[2] < 1.0) throw config_error("--grid: M must be a positive integer");
    cfg.grid_count = static_cast<std::size_t>(parts[2]);
  }
  if (overrides.eps) cfg.eps_list = parse_double_list(*overrides.eps);
  if (overrides.s_exponent) cfg.s_exponent = *overrides.s_exponent;
  if (overrides.output_dir) cfg.output_dir = *overrides.output_dir;
  if (overrides.input_field) cfg.input_field = *overrides.input_field;
  if (overrides.seed) cfg.seed = *overrides.seed;
  if (overrides.max_iter) cfg.solver.max_iter = *overrides.max_iter;

  validate(cfg);
  return cfg;
}

RunConfig parse_config_file(const std::optional<std::string>& path,
                            const ConfigOverrides& overrides) {
  if (!path) return parse_config(std::nullopt, overrides);
  std::ifstream in(*path);
  if (!in) throw config_error("cannot open config file '" + *path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

}  // namespace choquard
