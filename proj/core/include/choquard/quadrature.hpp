#ifndef CHOQUARD_QUADRATURE_HPP
#define CHOQUARD_QUADRATURE_HPP

#include <functional>

namespace choquard {

// Adaptive Gauss-Kronrod (G7,K15) on [a,b]. Bisects until the per-panel
// error estimate meets tol (relative to the running total, with an
// absolute floor). Endpoint-integrable singularities are handled by
// refinement; nodes stay interior.
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12, int max_depth = 48);

}  // namespace choquard

#endif
