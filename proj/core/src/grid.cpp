#include "choquard/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "choquard/errors.hpp"
#include "choquard/special.hpp"

namespace choquard {

namespace {

// mu_j = int_0^h s^j e^{N s} ds by series; stable for any N*h >= 0.
std::array<double, 4> exp_moments(double nh, double h) {
  std::array<double, 4> mu{};
  for (int j = 0; j < 4; ++j) {
    double sum = 0.0, term = 1.0;
    for (int m = 0;; ++m) {
      const double c = term / (j + m + 1);
      sum += c;
      if (m > 3 && std::abs(c) < 1e-18 * std::abs(sum)) break;
      if (m > 400) break;
      term *= nh / (m + 1);
    }
    mu[j] = std::pow(h, j + 1) * sum;
  }
  return mu;
}

// coefficients (in s^0..s^3) of the cubic Lagrange basis on nodes d[0..3]
std::array<std::array<double, 4>, 4> lagrange_coeffs(const std::array<double, 4>& d) {
  std::array<std::array<double, 4>, 4> out{};
  for (int k = 0; k < 4; ++k) {
    double poly[4] = {1.0, 0.0, 0.0, 0.0};
    int deg = 0;
    double den = 1.0;
    for (int m = 0; m < 4; ++m) {
      if (m == k) continue;
      // multiply poly by (s - d[m])
      for (int j = deg + 1; j >= 1; --j) poly[j] = poly[j - 1] - d[m] * poly[j];
      poly[0] *= -d[m];
      ++deg;
      den *= d[k] - d[m];
    }
    for (int j = 0; j < 4; ++j) out[k][j] = poly[j] / den;
  }
  return out;
}

}  // namespace

GridPtr make_grid(int dim, double r_min, double r_max, std::size_t count) {
  if (dim < 3) throw config_error("grid dimension must be >= 3");
  if (!(r_min > 0.0 && r_min < r_max))
    throw config_error("grid radii must satisfy 0 < r_min < r_max");
  if (count < 16) throw config_error("grid needs at least 16 nodes");

  auto g = std::make_shared<RadialGrid>();
  g->dim = dim;
  g->r_min = r_min;
  g->r_max = r_max;
  g->sphere = sphere_area(dim);

  const std::size_t m = count;
  const double t0 = std::log(r_min), t1 = std::log(r_max);
  const double h = (t1 - t0) / static_cast<double>(m - 1);
  g->log_step = h;
  g->log_nodes.resize(m);
  g->nodes.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    g->log_nodes[i] = t0 + h * static_cast<double>(i);
    g->nodes[i] = std::exp(g->log_nodes[i]);
  }
  g->log_nodes.back() = t1;
  g->nodes.back() = r_max;

  // interpolatory weights: per interval, integrate the cubic through the
  // 4 nearest nodes against e^{N t} dt exactly
  g->weights.assign(m, 0.0);
  const auto mu = exp_moments(dim * h, h);
  // reference coefficient tables for the three stencil alignments
  const auto interior = lagrange_coeffs({-h, 0.0, h, 2.0 * h});
  const auto left = lagrange_coeffs({0.0, h, 2.0 * h, 3.0 * h});
  const auto right = lagrange_coeffs({-2.0 * h, -h, 0.0, h});
  for (std::size_t i = 0; i + 1 < m; ++i) {
    std::size_t base;
    const std::array<std::array<double, 4>, 4>* coef;
    if (i == 0) {
      base = 0;
      coef = &left;
    } else if (i == m - 2) {
      base = m - 4;
      coef = &right;
    } else {
      base = i - 1;
      coef = &interior;
    }
    const double scale = std::pow(g->nodes[i], dim);  // e^{N t_i}
    for (int k = 0; k < 4; ++k) {
      double wk = 0.0;
      for (int j = 0; j < 4; ++j) wk += (*coef)[k][j] * mu[j];
      g->weights[base + k] += scale * wk;
    }
  }

  // exact midpoint-cell masses of r^{N-1} dr
  g->cell_mass.resize(m);
  double lo = r_min;
  for (std::size_t i = 0; i < m; ++i) {
    const double hi = (i + 1 < m) ? std::sqrt(g->nodes[i] * g->nodes[i + 1]) : r_max;
    g->cell_mass[i] = (std::pow(hi, dim) - std::pow(lo, dim)) / dim;
    lo = hi;
  }
  return g;
}

RadialField::RadialField(GridPtr g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid->size())
    throw data_error("field length does not match grid node count");
}

static void check_finite(const RadialField& f) {
  for (double v : f.values)
    if (!std::isfinite(v)) throw data_error("field contains non-finite values");
}

double integrate(const RadialField& f) {
  check_finite(f);
  const auto& w = f.grid->weights;
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * f.values[i];
  return f.grid->sphere * acc;
}

double mass_norm(const RadialField& u) {
  check_finite(u);
  const auto& w = u.grid->weights;
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * u.values[i] * u.values[i];
  return u.grid->sphere * acc;
}

double lebesgue_q_norm(const RadialField& u, double q) {
  if (!(q > 1.0)) throw std::domain_error("lebesgue_q_norm requires q > 1");
  check_finite(u);
  const auto& w = u.grid->weights;
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    acc += w[i] * std::pow(std::abs(u.values[i]), q);
  return u.grid->sphere * acc;
}

double critical_norm(const RadialField& u) {
  const double ts = 2.0 * u.grid->dim / (u.grid->dim - 2.0);
  return std::pow(lebesgue_q_norm(u, ts), 1.0 / ts);
}

std::vector<double> radial_derivative(const RadialField& u) {
  const auto& g = *u.grid;
  const std::size_t m = g.size();
  if (m < 5) throw data_error("derivative needs at least 5 nodes");
  const double h = g.log_step;
  const auto& v = u.values;
  std::vector<double> out(m);
  // 4th-order stencils in t, then du/dr = (du/dt)/r
  out[0] = (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / (12.0 * h);
  out[1] = (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) / (12.0 * h);
  for (std::size_t i = 2; i + 2 < m; ++i)
    out[i] = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h);
  out[m - 2] =
      (3.0 * v[m - 1] + 10.0 * v[m - 2] - 18.0 * v[m - 3] + 6.0 * v[m - 4] - v[m - 5]) /
      (12.0 * h);
  out[m - 1] =
      (25.0 * v[m - 1] - 48.0 * v[m - 2] + 36.0 * v[m - 3] - 16.0 * v[m - 4] + 3.0 * v[m - 5]) /
      (12.0 * h);
  for (std::size_t i = 0; i < m; ++i) out[i] /= g.nodes[i];
  return out;
}

double dirichlet_energy(const RadialField& u) {
  check_finite(u);
  const auto du = radial_derivative(u);
  const auto& w = u.grid->weights;
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * du[i] * du[i];
  return u.grid->sphere * acc;
}

RadialField dilate(const RadialField& u, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("dilation factor must be positive");
  const auto& g = *u.grid;
  const std::size_t m = g.size();
  const double shift = std::log(sigma);
  const double t0 = g.log_nodes.front(), t1 = g.log_nodes.back();
  const double h = g.log_step;
  RadialField out(u.grid);
  for (std::size_t i = 0; i < m; ++i) {
    const double tq = g.log_nodes[i] - shift;  // u_sigma(r) = u(r/sigma)
    if (tq <= t0) {
      out.values[i] = u.values.front();
      continue;
    }
    if (tq >= t1 + h) {
      out.values[i] = 0.0;
      continue;
    }
    if (tq >= t1) {
      // extrapolate one cell with the boundary cubic, then cut to zero
      const double s = (tq - g.log_nodes[m - 3]) / h;
      const double a = u.values[m - 4], b = u.values[m - 3], c = u.values[m - 2],
                   d = u.values[m - 1];
      out.values[i] = -s * (s - 1.0) * (s - 2.0) / 6.0 * a +
                      (s * s - 1.0) * (s - 2.0) / 2.0 * b -
                      s * (s + 1.0) * (s - 2.0) / 2.0 * c + s * (s * s - 1.0) / 6.0 * d;
      continue;
    }
    auto j = static_cast<std::size_t>((tq - t0) / h);
    j = std::min(std::max<std::size_t>(j, 1), m - 3);
    const double s = (tq - g.log_nodes[j]) / h;
    const double a = u.values[j - 1], b = u.values[j], c = u.values[j + 1],
                 d = u.values[j + 2];
    out.values[i] = -s * (s - 1.0) * (s - 2.0) / 6.0 * a +
                    (s * s - 1.0) * (s - 2.0) / 2.0 * b -
                    s * (s + 1.0) * (s - 2.0) / 2.0 * c +
                    s * (s * s - 1.0) / 6.0 * d;
  }
  return out;
}

RadialField schwarz_rearrange(const RadialField& u) {
  check_finite(u);
  const auto& g = *u.grid;
  const std::size_t m = g.size();

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  const auto& v = u.values;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(v[a]) > std::abs(v[b]);
  });

  // decreasing step function in the volume coordinate: chunk k covers
  // cum[k]..cum[k+1] at value vals[k]
  std::vector<double> vals(m), cum(m + 1, 0.0), prim(m + 1, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    vals[k] = std::abs(v[order[k]]);
    const double mass = g.cell_mass[order[k]];
    cum[k + 1] = cum[k] + mass;
    prim[k + 1] = prim[k] + mass * vals[k];  // primitive of the step
  }

  auto step_primitive = [&](double vol) {
    auto it = std::upper_bound(cum.begin(), cum.end(), vol);
    std::size_t k = static_cast<std::size_t>(it - cum.begin());
    k = (k == 0) ? 0 : k - 1;
    k = std::min(k, m - 1);
    return prim[k] + (vol - cum[k]) * vals[k];
  };

  // conservative cell averages of the step function
  RadialField out(u.grid);
  double lo_vol = 0.0, lo_prim = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double hi_vol = lo_vol + g.cell_mass[i];
    const double hi_prim = step_primitive(hi_vol);
    out.values[i] = (hi_prim - lo_prim) / g.cell_mass[i];
    lo_vol = hi_vol;
    lo_prim = hi_prim;
  }
  return out;
}

void write_field_csv(const RadialField& u, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot open '" + path + "' for writing");
  out << "r,value\n";
  char buf[64];
  for (std::size_t i = 0; i < u.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", u.grid->nodes[i], u.values[i]);
    out << buf;
  }
  if (!out) throw data_error("write failed for '" + path + "'");
}

RadialField read_field_csv(const GridPtr& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("r,value", 0) != 0)
    throw data_error("'" + path + "': expected header \"r,value\"");
  RadialField u(g);
  std::size_t i = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (i >= g->size()) throw data_error("'" + path + "': more rows than grid nodes");
    std::istringstream ss(line);
    double r, val;
    char comma;
    if (!(ss >> r >> comma >> val) || comma != ',')
      throw data_error("'" + path + "': malformed row " + std::to_string(i + 2));
    const double ref = g->nodes[i];
    if (std::abs(r - ref) > 1e-12 * std::abs(ref))
      throw data_error("'" + path + "': radius mismatch with the active grid at row " +
                       std::to_string(i + 2));
    u.values[i++] = val;
  }
  if (i != g->size()) throw data_error("'" + path + "': fewer rows than grid nodes");
  return u;
}

}  // namespace choquard
