#ifndef CHOQUARD_GRID_HPP
#define CHOQUARD_GRID_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace choquard {

// Log-uniform radial grid on [r_min, r_max] discretizing integrals
//   int_{R^N} f(|x|) dx = omega_{N-1} int f(r) r^{N-1} dr.
//
// `weights` integrate f(r) r^{N-1} dr: quadrature is interpolatory of
// order 4 in log r with the r^{N-1} dr cell moments integrated exactly,
// so constants are reproduced to machine precision. `cell_mass` holds the
// exact r^{N-1} dr mass of the midpoint cells (used by the rearrangement
// and the volume coordinate).
struct RadialGrid {
  int dim = 0;
  double r_min = 0.0;
  double r_max = 0.0;
  double log_step = 0.0;
  double sphere = 0.0;  // omega_{N-1}
  std::vector<double> nodes;      // radii, strictly increasing
  std::vector<double> log_nodes;  // ln r
  std::vector<double> weights;
  std::vector<double> cell_mass;

  std::size_t size() const { return nodes.size(); }
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(int dim, double r_min, double r_max, std::size_t count);

// Sampled radial profile on a shared grid. Value semantics; the grid is
// immutable and shared.
struct RadialField {
  GridPtr grid;
  std::vector<double> values;

  RadialField() = default;
  explicit RadialField(GridPtr g) : grid(std::move(g)), values(grid->size(), 0.0) {}
  RadialField(GridPtr g, std::vector<double> v);

  std::size_t size() const { return values.size(); }
};

// Samples f(r) at the nodes.
template <typename F>
RadialField sample(const GridPtr& g, F&& f) {
  RadialField u(g);
  for (std::size_t i = 0; i < g->size(); ++i) u.values[i] = f(g->nodes[i]);
  return u;
}

// omega_{N-1} * sum w_i f_i, fixed ascending order. Throws data_error on
// non-finite values.
double integrate(const RadialField& f);

// D(u) = int u^2 and C(u) = int |u|^q  (value of the integral, not its root)
double mass_norm(const RadialField& u);
double lebesgue_q_norm(const RadialField& u, double q);

// ||u||_{2*}
double critical_norm(const RadialField& u);

// du/dr from 4th-order differences in log r (chain rule 1/r); the same
// stencil backs dirichlet_energy and the stiffness operator, so discrete
// energies and their gradients stay consistent.
std::vector<double> radial_derivative(const RadialField& u);

// A(u) = int |u'|^2 r^{N-1} omega dr
double dirichlet_energy(const RadialField& u);

// u_sigma(x) = u(x/sigma): shift by log(sigma) in log r with cubic
// interpolation; below r_min clamps to u(r_min), above r_max decays to 0.
RadialField dilate(const RadialField& u, double sigma);

// Radially decreasing equimeasurable rearrangement of |u|: decreasing
// step function in the volume coordinate, conservatively averaged back
// onto the cells. Nonincreasing output; exact fixed point on already
// decreasing profiles.
RadialField schwarz_rearrange(const RadialField& u);

// CSV field files: header "r,value", one node per row. Loading validates
// the radii against the active grid to 1e-12 relative.
void write_field_csv(const RadialField& u, const std::string& path);
RadialField read_field_csv(const GridPtr& g, const std::string& path);

}  // namespace choquard

#endif
