#ifndef CHOQUARD_LEVELS_HPP
#define CHOQUARD_LEVELS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "choquard/functional.hpp"
#include "choquard/grid.hpp"
#include "choquard/params.hpp"
#include "choquard/riesz.hpp"

namespace choquard {

struct LevelReport {
  double level = 0.0;     // computed level estimate
  double bound = 0.0;     // threshold it must stay strictly below
  double margin = 0.0;    // bound - level
  double eps_used = 0.0;  // profile parameter behind the estimate (0 if none)
  int iterations = 0;
  double residual = 0.0;
  EnergyBreakdown breakdown;
  // descent diagnostics: max of coercivity*||u||^2/(I+1) along the run, and
  // the empirical constant of the D(u) bound in terms of A(u)
  double norm_monitor = 0.0;
  double monitor_c = 0.0;
  bool pass = false;
};

struct SolverOptions {
  int max_iter = 2000;
  double tol_action = 1e-10;    // relative |dI| (or |dT|) stop
  double tol_residual = 1e-4;   // Euler-Lagrange residual stop
  double eta0 = 0.5;            // initial step
};

// t* maximizing I(t u) along the ray, with the value I(t* u).
std::pair<double, double> max_energy_along_ray(const RadialField& u,
                                               const KernelMatrix& kernel,
                                               const ProblemParams& params);

// Scans max_t I(t U_eps) over the bubble family (U_eps^sigma with
// sigma = eps^s for N = 4) and reports the smallest value against the
// ground-state threshold. PASS requires margin > 1e-4 * bound.
LevelReport verify_nehari_level(const ProblemParams& params, const GridPtr& grid,
                                const KernelMatrix& kernel,
                                const std::vector<double>& eps_list,
                                std::optional<double> s_exponent = std::nullopt);

// Projected descent for the Nehari ground state: preconditioned gradient
// step, Nehari reprojection, monotone action, Barzilai-Borwein step size.
std::pair<RadialField, LevelReport> minimize_nehari(const ProblemParams& params,
                                                    const GridPtr& grid,
                                                    const KernelMatrix& kernel,
                                                    const RadialField& start,
                                                    const SolverOptions& opts = {});

struct ConstraintProbe {
  double eps = 0.0;
  bool feasible = false;
  double t_eps = 0.0;      // H(t v) = 1 root inside the admissible bracket
  double level = 0.0;      // T(t_eps v_eps)
  double t_of_v = 0.0;     // T(v_eps), expected S/2
  double b_of_v = 0.0;     // B(v_eps), expected C0
};

struct ConstraintLevelReport {
  LevelReport report;
  std::vector<ConstraintProbe> probes;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

// Normalized bubbles v_eps = u_eps/||u_eps||_{2*} scaled onto H = 1 inside
// the bracket [(p/C0)^{1/2p}, (2p/C0)^{1/2p}]; reports T(t_eps v_eps)
// against the constrained-level threshold. Too-large eps are reported as
// infeasible rather than failing the run.
ConstraintLevelReport verify_constraint_level(const ProblemParams& params,
                                              const GridPtr& grid,
                                              const KernelMatrix& kernel,
                                              const std::vector<double>& eps_list,
                                              std::optional<double> s_exponent = std::nullopt);

// Constrained descent for (1.5): T-gradient step, modulus, decreasing
// rearrangement, dilation back to H = 1; T is enforced nonincreasing.
std::pair<RadialField, LevelReport> minimize_constraint(const ProblemParams& params,
                                                        const GridPtr& grid,
                                                        const KernelMatrix& kernel,
                                                        const RadialField& start,
                                                        const SolverOptions& opts = {});

struct BrezisLiebReport {
  double b_u0 = 0.0;
  std::vector<std::pair<double, double>> rows;  // (eps, delta)
  bool decreasing = false;
  bool small_tail = false;  // final delta < 5% of B(u0)
  bool pass = false;
};

// Splitting defect of the nonlocal energy along a concentrating family:
// u_n = u0 + U_eps/||U_eps||_{2*}, delta_n = |B(u_n) - B(u_n - u0) - B(u0)|.
BrezisLiebReport brezis_lieb_check(const ProblemParams& params, const GridPtr& grid,
                                   const KernelMatrix& kernel, const RadialField& u0,
                                   const std::vector<double>& eps_list);

// lambda^{(N-2)/N} + (1-lambda)^{(N-2)/N} - 1, strictly positive on (0,1)
double subadditivity_gap(double lambda, int dim);

// Positive root of l = C0 S^{-p} l^p with l = (2p/(p-1)) c, solved for c;
// reproduces the ground-state threshold.
double contradiction_level(const ProblemParams& params);

}  // namespace choquard

#endif
