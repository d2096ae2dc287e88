#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "choquard/config.hpp"
#include "choquard/errors.hpp"
#include "choquard/runner.hpp"

namespace {

struct Cli {
  std::string command;
  std::optional<std::string> config_path;
  choquard::ConfigOverrides overrides;
  std::optional<std::string> oracle_test;
};

void add_common_flags(CLI::App* cmd, Cli& cli) {
  cmd->add_option_function<std::string>(
      "--config", [&](const std::string& v) { cli.config_path = v; },
      "JSON config file");
  cmd->add_option_function<int>(
      "--n", [&](int v) { cli.overrides.dim = v; }, "space dimension N");
  cmd->add_option_function<double>(
      "--alpha", [&](double v) { cli.overrides.alpha = v; }, "Riesz order alpha");
  cmd->add_option_function<double>(
      "--q", [&](double v) { cli.overrides.q = v; }, "subcritical exponent q");
  cmd->add_option_function<std::string>(
      "--eps", [&](const std::string& v) { cli.overrides.eps = v; },
      "comma-separated eps scan list");
  cmd->add_option_function<double>(
      "--s", [&](double v) { cli.overrides.s_exponent = v; },
      "sigma = eps^s exponent (N = 4 families)");
  cmd->add_option_function<std::string>(
      "--grid", [&](const std::string& v) { cli.overrides.grid = v; },
      "grid as rMin,rMax,M");
  cmd->add_option_function<std::string>(
      "--in", [&](const std::string& v) { cli.overrides.input_field = v; },
      "input field CSV");
  cmd->add_option_function<std::string>(
      "--out", [&](const std::string& v) { cli.overrides.output_dir = v; },
      "output directory");
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&](std::uint64_t v) { cli.overrides.seed = v; },
      "seed for synthetic test profiles");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for critical Choquard ground states"};
  app.require_subcommand(1);

  Cli cli;
  for (const char* name : {"constants", "bubble-scan", "fibering", "level-check",
                           "constraint-check", "solve", "oracle"}) {
    CLI::App* cmd = app.add_subcommand(name);
    add_common_flags(cmd, cli);
    if (std::string(name) == "oracle")
      cmd->add_option_function<std::string>(
          "--test", [&](const std::string& v) { cli.oracle_test = v; },
          "run one cross-check: newton, sobolev or hls");
    cmd->callback([&cli, name] { cli.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    const choquard::RunConfig cfg =
        choquard::parse_config_file(cli.config_path, cli.overrides);
    return choquard::run_command(cli.command, cfg, cli.oracle_test);
  } catch (const choquard::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
