#include "choquard/riesz.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "choquard/constants.hpp"
#include "choquard/errors.hpp"
#include "choquard/parallel.hpp"
#include "choquard/quadrature.hpp"
#include "choquard/special.hpp"

namespace choquard {

namespace {

// Phi(rho) = int_0^pi (1 - 2 rho cos t + rho^2)^{(a-N)/2} sin^{N-2} t dt.
// For rho < 1 the integrand is smooth; at rho = 1 it behaves like t^{a-2}
// near 0, so the singular factor is absorbed by t = x^{1/(a-1)}.
double angular_factor(int dim, double alpha, double rho) {
  const double e = 0.5 * (alpha - dim);
  if (rho < 1.0) {
    auto f = [&](double t) {
      return std::pow(1.0 - 2.0 * rho * std::cos(t) + rho * rho, e) *
             std::pow(std::sin(t), dim - 2);
    };
    return adaptive_integrate(f, 0.0, M_PI, 1e-13);
  }
  const double am1 = alpha - 1.0;
  auto f = [&](double x) {
    const double t = std::pow(x, 1.0 / am1);
    if (t <= 0.0) return 0.0;
    const double base = std::pow(2.0 - 2.0 * std::cos(t), e) * std::pow(std::sin(t), dim - 2);
    return base * std::pow(t, 2.0 - alpha) / am1;
  };
  return adaptive_integrate(f, 0.0, std::pow(M_PI, am1), 1e-13);
}

}  // namespace

KernelMatrix::KernelMatrix(GridPtr grid, double alpha, std::vector<double> entries)
    : grid_(std::move(grid)), alpha_(alpha), entries_(std::move(entries)) {
  if (entries_.size() != grid_->size() * grid_->size())
    throw data_error("kernel entry count does not match grid");
}

KernelMatrix build_kernel(const GridPtr& grid, double alpha) {
  const int dim = grid->dim;
  if (!(alpha > 0.0 && alpha < dim))
    throw std::domain_error("kernel alpha must lie in (0, N)");
  if (alpha <= 1.0)
    throw config_error("kernel build supports alpha > 1 only: the diagonal angular "
                       "integrand t^{alpha-2} is not integrable otherwise");

  const std::size_t m = grid->size();
  const double cbar = riesz_normalization(dim, alpha);
  const double s_small = sphere_area(dim - 1);  // |S^{N-2}|

  // one angular integral per node lag
  std::vector<double> phi(m);
  parallel_for(m, [&](std::size_t k) {
    phi[k] = angular_factor(dim, alpha, std::exp(-static_cast<double>(k) * grid->log_step));
  });

  std::vector<double> entries(m * m);
  const auto& r = grid->nodes;
  parallel_for(m, [&](std::size_t i) {
    double* row = entries.data() + i * m;
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t lag = (i > j) ? i - j : j - i;
      const double mx = std::max(r[i], r[j]);
      row[j] = cbar * s_small * std::pow(mx, alpha - dim) * phi[lag];
    }
  });
  return KernelMatrix(grid, alpha, std::move(entries));
}

RadialField apply_riesz(const KernelMatrix& kernel, const RadialField& f) {
  if (f.grid.get() != &kernel.grid())
    throw data_error("applying a kernel to a field on a different grid");
  const std::size_t m = f.size();
  const auto& w = kernel.grid().weights;
  std::vector<double> wf(m);
  for (std::size_t j = 0; j < m; ++j) wf[j] = w[j] * f.values[j];

  RadialField out(f.grid);
  const auto& entries = kernel.entries();
  parallel_for(m, [&](std::size_t i) {
    const double* row = entries.data() + i * m;
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) acc += row[j] * wf[j];
    out.values[i] = acc;
  });
  return out;
}

double choquard_energy(const KernelMatrix& kernel, const RadialField& u, double p) {
  if (!(p >= 1.0)) throw std::domain_error("choquard_energy requires p >= 1");
  RadialField f(u.grid);
  for (std::size_t i = 0; i < u.size(); ++i)
    f.values[i] = std::pow(std::abs(u.values[i]), p);
  const RadialField conv = apply_riesz(kernel, f);
  for (std::size_t i = 0; i < u.size(); ++i) f.values[i] *= conv.values[i];
  const double val = integrate(f);
  if (!std::isfinite(val)) throw data_error("nonlocal energy overflowed");
  return val;
}

RadialField newton_oracle(const RadialField& u) {
  const auto& g = *u.grid;
  const int dim = g.dim;
  const std::size_t m = g.size();
  const double scale = riesz_normalization(dim, 2.0) * g.sphere;

  // max(r,s)^{2-N} splits into r^{2-N} int_0^r u s^{N-1} ds + int_r^inf u s ds
  std::vector<double> wu(m), pre(m), suf(m + 1, 0.0);
  for (std::size_t j = 0; j < m; ++j) wu[j] = g.weights[j] * u.values[j];
  double acc = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    acc += wu[j];
    pre[j] = acc;
  }
  for (std::size_t j = m; j-- > 0;)
    suf[j] = suf[j + 1] + wu[j] * std::pow(g.nodes[j], 2.0 - dim);

  RadialField out(u.grid);
  for (std::size_t i = 0; i < m; ++i)
    out.values[i] = scale * (pre[i] * std::pow(g.nodes[i], 2.0 - dim) + suf[i + 1]);
  return out;
}

namespace {

struct CacheHeader {
  std::int64_t dim;
  double alpha;
  std::int64_t count;
  double r_min;
  double r_max;
};

}  // namespace

void save_kernel(const KernelMatrix& kernel, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot open '" + path + "' for writing");
  const auto& g = kernel.grid();
  CacheHeader h{g.dim, kernel.alpha(), static_cast<std::int64_t>(g.size()), g.r_min,
                g.r_max};
  out.write(reinterpret_cast<const char*>(&h), sizeof h);
  out.write(reinterpret_cast<const char*>(kernel.entries().data()),
            static_cast<std::streamsize>(kernel.entries().size() * sizeof(double)));
  if (!out) throw data_error("write failed for '" + path + "'");
}

KernelMatrix load_kernel(const GridPtr& grid, double alpha, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open '" + path + "'");
  CacheHeader h{};
  in.read(reinterpret_cast<char*>(&h), sizeof h);
  if (!in) throw data_error("'" + path + "': truncated kernel header");
  if (h.dim != grid->dim || h.alpha != alpha ||
      h.count != static_cast<std::int64_t>(grid->size()) || h.r_min != grid->r_min ||
      h.r_max != grid->r_max)
    throw data_error("'" + path + "': kernel header does not match the active grid");
  std::vector<double> entries(grid->size() * grid->size());
  in.read(reinterpret_cast<char*>(entries.data()),
          static_cast<std::streamsize>(entries.size() * sizeof(double)));
  if (!in) throw data_error("'" + path + "': truncated kernel data");
  return KernelMatrix(grid, alpha, std::move(entries));
}

}  // namespace choquard
