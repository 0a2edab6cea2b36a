#include "ddstab/lyapunov/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "ddstab/errors.hpp"

namespace ddstab::lyapunov {

namespace {

double abs_sum(const Eigen::VectorXd& z, Eigen::Index n) { return z.head(n).cwiseAbs().sum(); }

// int_{lo}^{hi} sum_j |x_j(theta)| dtheta by trapezoid over buffer knots.
double window_integral(const dde::HistoryBuffer& buf, double lo, double hi, Eigen::Index n,
                       int stride) {
  if (!(lo >= buf.front_time())) throw OutOfRangeError(lo, buf.front_time(), buf.back_time());
  // First knot strictly inside (lo, hi).
  std::size_t k = 0;
  std::size_t count = buf.size();
  std::size_t first = 0;
  while (count > 0) {
    const std::size_t step = count / 2;
    if (buf.knot_time(first + step) <= lo) {
      first += step + 1;
      count -= step + 1;
    } else {
      count = step;
    }
  }
  k = first;

  double prev_t = lo;
  double prev_f = abs_sum(buf.eval(lo), n);
  double total = 0.0;
  std::size_t taken = 0;
  for (; k < buf.size() && buf.knot_time(k) < hi; ++k, ++taken) {
    if (taken % static_cast<std::size_t>(stride) != 0) continue;
    const double tk = buf.knot_time(k);
    const double fk = abs_sum(buf.knot_state(k), n);
    total += 0.5 * (tk - prev_t) * (fk + prev_f);
    prev_t = tk;
    prev_f = fk;
  }
  const double f_hi = abs_sum(buf.eval(hi), n);
  total += 0.5 * (hi - prev_t) * (f_hi + prev_f);
  return total;
}

}  // namespace

void FunctionalConfig::validate() const {
  if (weights.size() == 0 || (weights.array() <= 0.0).any() || !weights.allFinite()) {
    throw ParameterError("functional weights must be element-wise positive");
  }
  if (!(a >= 0.0)) throw ParameterError("functional needs a >= 0");
  if (!(d >= 0.0 && d < 1.0)) throw ParameterError("functional needs 0 <= d < 1");
  if (quadrature_stride < 1) throw ParameterError("quadrature stride must be >= 1");
}

double eval_Vs(const dde::HistoryBuffer& buf, double t, const FunctionalConfig& cfg) {
  cfg.validate();
  const Eigen::Index n = cfg.weights.size();
  if (n > buf.dim()) throw ParameterError("functional weights exceed buffer dimension");
  const Eigen::VectorXd x = buf.eval(t);
  double integrals = 0.0;
  for (const auto& delay : cfg.delays) {
    integrals += window_integral(buf, t - delay.at(t), t, n, cfg.quadrature_stride);
  }
  return cfg.weights.dot(x.head(n).cwiseAbs()) + cfg.a / (1.0 - cfg.d) * cfg.weights.sum() * integrals;
}

double eval_Vm(const Eigen::VectorXd& x, const Eigen::VectorXd& w) {
  if (x.size() != w.size()) throw ParameterError("eval_Vm: dimension mismatch");
  if ((w.array() <= 0.0).any()) throw ParameterError("eval_Vm: weights must be positive");
  if (x.size() == 0) return 0.0;
  return (x.cwiseAbs().array() / w.array()).maxCoeff();
}

std::vector<std::pair<double, double>> dini_series(const std::vector<std::pair<double, double>>& values) {
  if (values.size() < 2) throw ParameterError("dini_series needs at least two samples");
  std::vector<std::pair<double, double>> out;
  out.reserve(values.size() - 1);
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    const double dt = values[k + 1].first - values[k].first;
    if (!(dt > 0.0)) throw ParameterError("dini_series needs strictly increasing times");
    out.emplace_back(values[k].first, (values[k + 1].second - values[k].second) / dt);
  }
  return out;
}

}  // namespace ddstab::lyapunov
