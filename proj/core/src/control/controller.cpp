#include "ddstab/control/controller.hpp"

#include <string>
#include <utility>

#include "ddstab/errors.hpp"

namespace ddstab::control {

GainParams GainParams::uniform(Eigen::Index n, double a, double b, double delay, double k0) {
  GainParams p;
  p.a = Eigen::VectorXd::Constant(n, a);
  p.b = Eigen::VectorXd::Constant(n, b);
  p.delay = Eigen::VectorXd::Constant(n, delay);
  p.k0 = Eigen::VectorXd::Constant(n, k0);
  return p;
}

void GainParams::validate() const {
  const Eigen::Index n = k0.size();
  if (n == 0) throw ParameterError("gain parameters are empty");
  if (a.size() != n || b.size() != n || delay.size() != n) {
    throw ParameterError("gain parameter vectors must all have length " + std::to_string(n));
  }
  if (!a.allFinite() || (a.array() <= 0.0).any()) throw ParameterError("controller.a: must be > 0");
  if (!b.allFinite() || (b.array() < 0.0).any()) throw ParameterError("controller.b: must be >= 0");
  if (!delay.allFinite() || (delay.array() < 0.0).any()) {
    throw ParameterError("controller.T_k: must be >= 0");
  }
  if (!k0.allFinite() || (k0.array() < 0.0).any()) throw ParameterError("controller.k0: must be >= 0");
  if (upper_bound && upper_bound->size() != n) {
    throw ParameterError("controller.k_max: length mismatch");
  }
}

double gain_rate(Eigen::Index i, double x_delayed, const GainParams& params) {
  return gain_rate(params.a[i], params.b[i], x_delayed);
}

Controller Controller::adaptive(GainParams params) {
  params.validate();
  Controller c;
  c.mode_ = Mode::adaptive;
  c.params_ = std::move(params);
  return c;
}

Controller Controller::fixed(Eigen::VectorXd gains) {
  if (gains.size() == 0 || !gains.allFinite()) {
    throw ParameterError("controller.k_fixed: gains must be finite and non-empty");
  }
  Controller c;
  c.mode_ = Mode::fixed;
  c.fixed_ = std::move(gains);
  return c;
}

Eigen::Index Controller::size() const {
  return is_adaptive() ? params_.size() : fixed_.size();
}

const GainParams& Controller::params() const {
  if (!is_adaptive()) throw Error("fixed-gain controller has no adaptation parameters");
  return params_;
}

const Eigen::VectorXd& Controller::fixed_gains() const {
  if (is_adaptive()) throw Error("adaptive controller has no fixed gain vector");
  return fixed_;
}

const Eigen::VectorXd& Controller::initial_gains() const {
  return is_adaptive() ? params_.k0 : fixed_;
}

}  // namespace ddstab::control
