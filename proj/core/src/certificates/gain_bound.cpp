#include "ddstab/certificates/gain_bound.hpp"

#include <algorithm>

#include "ddstab/errors.hpp"

namespace ddstab::certificates {

namespace {

void check_common(double a, int r, double c, const Eigen::VectorXd& weights) {
  if (!(c > 0.0)) throw ParameterError("gain bound needs c > 0");
  if (!(a >= 0.0)) throw ParameterError("gain bound needs a >= 0");
  if (r < 0) throw ParameterError("gain bound needs r >= 0");
  if (weights.size() == 0 || (weights.array() <= 0.0).any()) {
    throw ParameterError("gain bound needs element-wise positive weights");
  }
}

double worst_ratio_term(const Eigen::VectorXd& weights) {
  const double total = weights.sum();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < weights.size(); ++j) worst = std::max(worst, 1.0 + total / weights[j]);
  return worst;
}

}  // namespace

double required_gain_bound(double a, int r, double d, double c, const Eigen::VectorXd& v) {
  check_common(a, r, c, v);
  if (!(d >= 0.0 && d < 1.0)) throw ParameterError("gain bound needs 0 <= d < 1");
  return a * r / (c * (1.0 - d)) * worst_ratio_term(v);
}

double required_gain_bound_dual(double a, int r, double c, const Eigen::VectorXd& w) {
  check_common(a, r, c, w);
  return a * r / c * worst_ratio_term(w);
}

}  // namespace ddstab::certificates
