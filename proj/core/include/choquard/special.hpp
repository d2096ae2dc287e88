#ifndef CHOQUARD_SPECIAL_HPP
#define CHOQUARD_SPECIAL_HPP

namespace choquard {

// Gamma function for positive arguments, Lanczos approximation (g=7, n=9).
// Relative accuracy ~1e-14 on the ranges used here.
// Throws domain error for x <= 0.
double gamma_fn(double x);

// surface measure of the unit sphere S^{dim-1} in R^dim
double sphere_area(int dim);

}  // namespace choquard

#endif
