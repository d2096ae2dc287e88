#ifndef CHOQUARD_CONSTANTS_HPP
#define CHOQUARD_CONSTANTS_HPP

#include "choquard/params.hpp"

namespace choquard {

// Riesz normalization Cbar = Gamma((N-a)/2) / (Gamma(a/2) pi^{N/2} 2^a),
// so that I_a(x) = Cbar |x|^{a-N}.
double riesz_normalization(int dim, double alpha);

// Sharp Hardy-Littlewood-Sobolev constant C(N,lambda) on the diagonal
// s = r = 2N/(2N-lambda).
double hls_sharp_constant(int dim, double lambda);

// C0 = C(N, N-alpha) * Cbar: the sharp constant in
//   int (I_alpha * |u|^p)|u|^p <= C0 ||u||_{2*}^{2p}.
double choquard_constant(int dim, double alpha);

// Best constant S of the embedding D^{1,2} -> L^{2*}, from the closed form
// S = pi N (N-2) (Gamma(N/2)/Gamma(N))^{2/N}, cross-checked against a
// quadrature of the extremal profile; throws on disagreement > 1e-4.
double sobolev_constant(int dim);

// Upper threshold of the ground-state level: (p-1)/(2p) C0^{-1/(p-1)} S^{p/(p-1)}.
double nehari_level_bound(const ProblemParams& params);

// Upper threshold of the constrained minimization level: S/2 (2p/C0)^{1/p}.
double constraint_level_bound(const ProblemParams& params);

struct ConstantsReport {
  double riesz_norm;
  double hls_sharp;
  double choquard_c0;
  double sobolev_s;
  double nehari_bound;
  double constraint_bound;
};

// Evaluates every special constant for one parameter set; hls_sharp is
// reported at lambda = N - alpha, the exponent the nonlocal energy uses.
ConstantsReport constants_report(const ProblemParams& params);

}  // namespace choquard

#endif
