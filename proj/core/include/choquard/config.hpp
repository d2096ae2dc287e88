#ifndef CHOQUARD_CONFIG_HPP
#define CHOQUARD_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "choquard/levels.hpp"
#include "choquard/params.hpp"

namespace choquard {

// Run configuration: JSON file fields with identical names, overridable
// by CLI flags. Defaults match the reference setup (N=5, alpha=2, q=3,
// grid [1e-6, 1e4] with 2048 nodes).
struct RunConfig {
  int dim = 5;
  double alpha = 2.0;
  double q = 3.0;
  double r_min = 1e-6;
  double r_max = 1e4;
  std::size_t grid_count = 2048;
  std::vector<double> eps_list = {0.1, 0.05, 0.025, 0.0125};
  std::optional<double> s_exponent;  // N=4 families; default eps^1
  SolverOptions solver;
  std::string output_dir = ".";
  std::uint64_t seed = 12345;
  std::optional<std::string> input_field;

  ProblemParams params() const { return ProblemParams(dim, alpha, q); }
};

// CLI flag values; unset optionals fall back to the config file / defaults.
struct ConfigOverrides {
  std::optional<int> dim;
  std::optional<double> alpha;
  std::optional<double> q;
  std::optional<std::string> grid;  // "rMin,rMax,M"
  std::optional<std::string> eps;   // comma list
  std::optional<double> s_exponent;
  std::optional<std::string> output_dir;
  std::optional<std::string> input_field;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_iter;
};

// Parses the optional JSON document, applies flag overrides (flags win),
// validates ranges. Malformed input raises config_error.
RunConfig parse_config(const std::optional<std::string>& json_text,
                       const ConfigOverrides& overrides);

// Convenience: read the file then parse. Missing file raises config_error.
RunConfig parse_config_file(const std::optional<std::string>& path,
                            const ConfigOverrides& overrides);

}  // namespace choquard

#endif
