#include "choquard/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "choquard/errors.hpp"

namespace choquard {

namespace {

nlohmann::ordered_json breakdown_json(const EnergyBreakdown& e) {
  nlohmann::ordered_json j;
  j["a"] = e.a;
  j["b"] = e.b;
  j["c"] = e.c;
  j["d"] = e.d;
  j["I"] = e.action_i;
  j["J"] = e.nehari_j;
  j["H"] = e.constraint_h;
  j["T"] = e.half_dirichlet_t;
  return j;
}

nlohmann::ordered_json level_json(const LevelReport& rep) {
  nlohmann::ordered_json j;
  j["level"] = rep.level;
  j["bound"] = rep.bound;
  j["margin"] = rep.margin;
  j["epsUsed"] = rep.eps_used;
  j["iterations"] = rep.iterations;
  j["residual"] = rep.residual;
  j["breakdown"] = breakdown_json(rep.breakdown);
  return j;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

void append_num(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

std::string render_json(const ConstantsReport& rep) {
  nlohmann::ordered_json j;
  j["rieszNorm"] = rep.riesz_norm;
  j["hlsSharp"] = rep.hls_sharp;
  j["choquardC0"] = rep.choquard_c0;
  j["sobolevS"] = rep.sobolev_s;
  j["neharilevelBound"] = rep.nehari_bound;
  j["constraintLevelBound"] = rep.constraint_bound;
  return dump(j);
}

std::string render_json(const EnergyBreakdown& e) { return dump(breakdown_json(e)); }

std::string render_json(const LevelReport& rep) { return dump(level_json(rep)); }

std::string render_json(const ConstraintLevelReport& rep) {
  nlohmann::ordered_json j = level_json(rep.report);
  j["bracketLo"] = rep.bracket_lo;
  j["bracketHi"] = rep.bracket_hi;
  nlohmann::ordered_json probes = nlohmann::ordered_json::array();
  for (const auto& p : rep.probes) {
    nlohmann::ordered_json row;
    row["eps"] = p.eps;
    row["feasible"] = p.feasible;
    row["tEps"] = p.t_eps;
    row["level"] = p.level;
    row["TofV"] = p.t_of_v;
    row["BofV"] = p.b_of_v;
    probes.push_back(row);
  }
  j["probes"] = probes;
  return dump(j);
}

std::string render_json(const BrezisLiebReport& rep) {
  nlohmann::ordered_json j;
  j["bU0"] = rep.b_u0;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& [eps, delta] : rep.rows) {
    nlohmann::ordered_json row;
    row["eps"] = eps;
    row["delta"] = delta;
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["decreasing"] = rep.decreasing;
  j["smallTail"] = rep.small_tail;
  j["pass"] = rep.pass;
  return dump(j);
}

std::string render_json(const std::vector<std::pair<std::string, SlopeFit>>& slopes) {
  nlohmann::ordered_json j;
  for (const auto& [name, fit] : slopes) {
    nlohmann::ordered_json f;
    f["slope"] = fit.slope;
    f["rSquared"] = fit.r_squared;
    j[name] = f;
  }
  return dump(j);
}

std::string render_scan_csv(const std::vector<ScanRow>& rows) {
  if (rows.empty()) throw data_error("refusing to render an empty scan");
  std::string out = "eps,sigma,a,b,c,d,I,J,H,T\n";
  for (const auto& row : rows) {
    const EnergyBreakdown& e = row.breakdown;
    const double cols[10] = {row.eps, row.sigma,       e.a,          e.b,
                             e.c,     e.d,             e.action_i,   e.nehari_j,
                             e.constraint_h, e.half_dirichlet_t};
    for (int k = 0; k < 10; ++k) {
      if (k) out += ',';
      append_num(out, cols[k]);
    }
    out += '\n';
  }
  return out;
}

std::string render_samples_csv(const std::vector<std::pair<double, double>>& samples,
                               const std::string& x_name, const std::string& y_name) {
  if (samples.empty()) throw data_error("refusing to render an empty sample list");
  std::string out = x_name + "," + y_name + "\n";
  for (const auto& [x, y] : samples) {
    append_num(out, x);
    out += ',';
    append_num(out, y);
    out += '\n';
  }
  return out;
}

void write_text(const std::string& text, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(p, std::ios::binary);
  if (!out) throw data_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw data_error("write failed for '" + path + "'");
}

}  // namespace choquard
