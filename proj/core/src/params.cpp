#include "choquard/params.hpp"

#include <cmath>
#include <string>

namespace choquard {

ProblemParams::ProblemParams(int dim, double alpha, double q)
    : dim_(dim), alpha_(alpha), q_(q) {
  if (dim < 3)
    throw config_error("dimension must be >= 3, got " + std::to_string(dim));
  if (!(alpha > 0.0 && alpha < dim))
    throw config_error("alpha must lie in (0, N), got alpha=" + std::to_string(alpha) +
                       " with N=" + std::to_string(dim));
  const double ts = 2.0 * dim / (dim - 2.0);
  if (!(q > 2.0 && q < ts))
    throw config_error("q must lie in (2, 2N/(N-2)) = (2, " + std::to_string(ts) +
                       "), got q=" + std::to_string(q));
  p_ = (dim + alpha) / (dim - 2.0);
}

bool ProblemParams::theorem_regime() const {
  if (dim_ >= 5) return q_ > 2.0 && q_ < two_star();
  if (dim_ == 4) return q_ > 3.0 && q_ < 4.0;
  return false;
}

void ProblemParams::require_theorem_regime() const {
  if (!theorem_regime())
    throw config_error(
        "parameters outside the existence regime: need N>=5 with 2<q<2N/(N-2), "
        "or N=4 with 3<q<4 (got N=" + std::to_string(dim_) +
        ", q=" + std::to_string(q_) + ")");
}

}  // namespace choquard
