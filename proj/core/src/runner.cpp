#include "choquard/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>

#include "choquard/bubbles.hpp"
#include "choquard/constants.hpp"
#include "choquard/errors.hpp"
#include "choquard/report.hpp"

namespace choquard {

namespace {

std::string artifact_path(const RunConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

// smooth positive random profile: a few log-space bumps
RadialField random_profile(const GridPtr& grid, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nbumps(2, 4);
  std::uniform_real_distribution<double> center(-1.0, 1.5), width(0.25, 0.8),
      height(0.2, 1.0);
  RadialField u(grid);
  const int n = nbumps(rng);
  for (int k = 0; k < n; ++k) {
    const double c = center(rng), w = width(rng), a = height(rng);
    for (std::size_t i = 0; i < grid->size(); ++i) {
      const double x = (std::log10(grid->nodes[i]) - c) / w;
      u.values[i] += a * std::exp(-x * x);
    }
  }
  return u;
}

int cmd_constants(const RunConfig& cfg) {
  const ConstantsReport rep = constants_report(cfg.params());
  const std::string text = render_json(rep);
  write_text(text, artifact_path(cfg, "constants.json"));
  std::cout << text;
  return 0;
}

int cmd_bubble_scan(const RunConfig& cfg) {
  const auto params = cfg.params();
  const auto grid = make_grid(cfg.dim, cfg.r_min, cfg.r_max, cfg.grid_count);
  const KernelMatrix kernel = build_kernel(grid, cfg.alpha);
  std::optional<double> s = cfg.s_exponent;
  if (cfg.dim == 4 && !s) s = 1.0;
  const auto rows = bubble_scan(grid, kernel, params, cfg.eps_list, s);
  write_text(render_scan_csv(rows), artifact_path(cfg, "bubble_scan.csv"));

  std::vector<std::pair<double, double>> dpts, cpts;
  for (const auto& row : rows) {
    dpts.emplace_back(row.eps, row.breakdown.d);
    cpts.emplace_back(row.eps, row.breakdown.c);
  }
  std::vector<std::pair<std::string, SlopeFit>> slopes;
  slopes.emplace_back("D", slope_fit(dpts));
  slopes.emplace_back("C", slope_fit(cpts));
  const std::string text = render_json(slopes);
  write_text(text, artifact_path(cfg, "bubble_slopes.json"));
  std::cout << text;
  return 0;
}

int cmd_fibering(const RunConfig& cfg) {
  if (!cfg.input_field) throw config_error("fibering needs --in field.csv");
  const auto params = cfg.params();
  const auto grid = make_grid(cfg.dim, cfg.r_min, cfg.r_max, cfg.grid_count);
  const RadialField u = read_field_csv(grid, *cfg.input_field);
  const KernelMatrix kernel = build_kernel(grid, cfg.alpha);
  const FiberingResult fib = fibering_root(u, kernel, params);
  write_text(render_samples_csv(fib.g_samples, "t", "g"),
             artifact_path(cfg, "fibering.csv"));
  std::printf("t_u = %.12g (g sign change at %.12g)\n", fib.t_root, fib.t_sign_change);
  return 0;
}

int cmd_level_check(const RunConfig& cfg) {
  const auto params = cfg.params();
  params.require_theorem_regime();
  const auto grid = make_grid(cfg.dim, cfg.r_min, cfg.r_max, cfg.grid_count);
  const KernelMatrix kernel = build_kernel(grid, cfg.alpha);
  const LevelReport rep =
      verify_nehari_level(params, grid, kernel, cfg.eps_list, cfg.s_exponent);
  const std::string text = render_json(rep);
  write_text(text, artifact_path(cfg, "level_check.json"));
  std::cout << text;
  return rep.pass ? 0 : 1;
}

int cmd_constraint_check(const RunConfig& cfg) {
  const auto params = cfg.params();
  params.require_theorem_regime();
  const auto grid = make_grid(cfg.dim, cfg.r_min, cfg.r_max, cfg.grid_count);
  const KernelMatrix kernel = build_kernel(grid, cfg.alpha);
  const ConstraintLevelReport rep =
      verify_constraint_level(params, grid, kernel, cfg.eps_list, cfg.s_exponent);
  const std::string text = render_json(rep);
  write_text(text, artifact_path(cfg, "constraint_check.json"));
  std::cout << text;
  return rep.report.pass ? 0 : 1;
}

int cmd_solve(const RunConfig& cfg) {
  const auto params = cfg.params();
  params.require_theorem_regime();
  const auto grid = make_grid(cfg.dim, cfg.r_min, cfg.r_max, cfg.grid_count);
  const KernelMatrix kernel = build_kernel(grid, cfg.alpha);
  RadialField start =
      cfg.input_field
          ? read_field_csv(grid, *cfg.input_field)
          : bubble(grid, BubbleSpec{cfg.dim, cfg.eps_list.front(),
                                    cfg.dim == 4 ? cfg.eps_list.front() : 0.0});
  auto [minimizer, rep] = minimize_nehari(params, grid, kernel, start, cfg.solver);
  write_field_csv(minimizer, artifact_path(cfg, "solve_field.csv"));
  const std::string text = render_json(rep);
  write_text(text, artifact_path(cfg, "solve_report.json"));
  std::cout << text;
  return rep.pass ? 0 : 1;
}

int cmd_oracle(const RunConfig& cfg, const std::optional<std::string>& filter) {
  const auto want = [&](const char* name) { return !filter || *filter == name; };
  const auto grid = make_grid(cfg.dim, cfg.r_min, cfg.r_max, cfg.grid_count);
  bool all_pass = true;
  std::vector<std::pair<std::string, SlopeFit>> unused;
  std::string lines;

  auto record = [&](const char* name, bool pass, const std::string& detail) {
    all_pass = all_pass && pass;
    lines += std::string(pass ? "PASS " : "FAIL ") + name + ": " + detail + "\n";
  };

  if (want("newton")) {
    const KernelMatrix kernel = build_kernel(grid, 2.0);
    std::mt19937_64 rng(cfg.seed);
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
      const RadialField u = random_profile(grid, rng);
      const RadialField a = apply_riesz(kernel, u);
      const RadialField b = newton_oracle(u);
      RadialField diff(grid);
      for (std::size_t i = 0; i < grid->size(); ++i)
        diff.values[i] = a.values[i] - b.values[i];
      worst = std::max(worst, std::sqrt(mass_norm(diff) / mass_norm(b)));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "kernel vs closed form, L2 rel %.3e", worst);
    record("newton", worst < 1e-6, buf);
  }
  if (want("sobolev")) {
    bool ok = true;
    double s = 0.0;
    std::string detail;
    try {
      s = sobolev_constant(cfg.dim);
      char buf[96];
      std::snprintf(buf, sizeof buf, "S = %.10g, quadrature agrees within 1e-4", s);
      detail = buf;
    } catch (const convergence_error& e) {
      ok = false;
      detail = e.what();
    }
    record("sobolev", ok, detail);
  }
  if (want("hls")) {
    const auto params = cfg.params();
    const KernelMatrix kernel = build_kernel(grid, cfg.alpha);
    const RadialField u = bubble(grid, BubbleSpec{cfg.dim, 0.3, 0.0});
    const double b = choquard_energy(kernel, u, params.p());
    const double target = choquard_constant(cfg.dim, cfg.alpha) *
                          std::pow(sobolev_constant(cfg.dim),
                                   0.5 * (cfg.dim + cfg.alpha));
    const double rel = std::abs(b - target) / target;
    char buf[96];
    std::snprintf(buf, sizeof buf, "B(U_eps) vs C0 S^{(N+a)/2}, rel %.3e", rel);
    record("hls", rel < 5e-3, buf);
  }

  if (lines.empty()) throw config_error("unknown oracle test; use newton, sobolev or hls");
  write_text(lines, artifact_path(cfg, "oracle.txt"));
  std::cout << lines;
  return all_pass ? 0 : 1;
}

}  // namespace

int run_command(const std::string& command, const RunConfig& cfg,
                const std::optional<std::string>& oracle_filter) {
  if (command == "constants") return cmd_constants(cfg);
  if (command == "bubble-scan") return cmd_bubble_scan(cfg);
  if (command == "fibering") return cmd_fibering(cfg);
  if (command == "level-check") return cmd_level_check(cfg);
  if (command == "constraint-check") return cmd_constraint_check(cfg);
  if (command == "solve") return cmd_solve(cfg);
  if (command == "oracle") return cmd_oracle(cfg, oracle_filter);
  throw config_error("unknown command '" + command + "'");
}

}  // namespace choquard
