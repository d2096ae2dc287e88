#ifndef CHOQUARD_PARAMS_HPP
#define CHOQUARD_PARAMS_HPP

#include "choquard/errors.hpp"

namespace choquard {

// Parameter set (N, alpha, q) of the critical Choquard problem
//   -Delta u + u = (I_alpha * |u|^p)|u|^{p-2}u + |u|^{q-2}u  on R^N,
// with p pinned to the upper critical exponent (N+alpha)/(N-2).
// Callers never set p directly.
class ProblemParams {
public:
  ProblemParams(int dim, double alpha, double q);

  int dim() const { return dim_; }
  double alpha() const { return alpha_; }
  double q() const { return q_; }
  double p() const { return p_; }

  // critical Sobolev exponent 2N/(N-2)
  double two_star() const { return 2.0 * dim_ / (dim_ - 2.0); }

  // Existence-theorem hypotheses: N>=5 with 2<q<2*, or N=4 with 3<q<4.
  bool theorem_regime() const;
  void require_theorem_regime() const;

private:
  int dim_;
  double alpha_;
  double q_;
  double p_;
};

}  // namespace choquard

#endif
