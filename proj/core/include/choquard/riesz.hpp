#ifndef CHOQUARD_RIESZ_HPP
#define CHOQUARD_RIESZ_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "choquard/grid.hpp"

namespace choquard {

// Dense table of the sphere-averaged Riesz kernel on a radial grid:
//   K(r,s) = Cbar * |S^{N-2}| * int_0^pi (r^2+s^2-2rs cos t)^{(a-N)/2} sin^{N-2}t dt,
// so that (I_a * f)(r) = sum_j K(r, s_j) f(s_j) w_j for radial f.
//
// On a log-uniform grid K(r,s) = Cbar |S^{N-2}| max(r,s)^{a-N} Phi(min/max),
// and the ratio takes only M distinct values e^{-h k}; the table is filled
// from M angular integrals and is symmetric by construction.
class KernelMatrix {
public:
  KernelMatrix(GridPtr grid, double alpha, std::vector<double> entries);

  const RadialGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  double alpha() const { return alpha_; }
  double entry(std::size_t i, std::size_t j) const {
    return entries_[i * grid_->size() + j];
  }
  const std::vector<double>& entries() const { return entries_; }

private:
  GridPtr grid_;
  double alpha_;
  std::vector<double> entries_;  // row-major, size M*M
};

// Builds the kernel table. alpha must lie in (1, N): for alpha <= 1 the
// sphere average diverges at r = s and is rejected.
KernelMatrix build_kernel(const GridPtr& grid, double alpha);

// (I_alpha * f)(r_i) = sum_j K(i,j) f_j w_j, fixed-order dot products
// (parallel across output nodes).
RadialField apply_riesz(const KernelMatrix& kernel, const RadialField& f);

// B(u) = int (I_alpha * |u|^p) |u|^p
double choquard_energy(const KernelMatrix& kernel, const RadialField& u, double p);

// Independent alpha = 2 route: Newton's theorem reduces the sphere average
// to max(r,s)^{2-N}, evaluated with prefix sums in O(M).
RadialField newton_oracle(const RadialField& u);

// Binary kernel cache: header (int64 N, double alpha, int64 M, double
// r_min, double r_max, little-endian) then M*M doubles row-major. The
// loader validates the header against the active grid exactly.
void save_kernel(const KernelMatrix& kernel, const std::string& path);
KernelMatrix load_kernel(const GridPtr& grid, double alpha, const std::string& path);

}  // namespace choquard

#endif
