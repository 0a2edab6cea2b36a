#pragma once

#include <optional>

#include <Eigen/Core>

namespace ddstab::control {

/// Parameters of the decentralized gain law k_i' = min(a_i, b_i |x_i(t - T_i)|).
struct GainParams {
  Eigen::VectorXd a;      // rate caps, > 0
  Eigen::VectorXd b;      // slopes, >= 0
  Eigen::VectorXd delay;  // measurement delays T_i, >= 0
  Eigen::VectorXd k0;     // initial gains, >= 0
  /// Optional per-node cap; adaptation stops once k_i reaches it.
  std::optional<Eigen::VectorXd> upper_bound;

  /// Uniform parameters for n nodes.
  static GainParams uniform(Eigen::Index n, double a, double b, double delay, double k0);

  Eigen::Index size() const { return k0.size(); }
  /// Throws ParameterError on size mismatch or out-of-range values.
  void validate() const;
};

/// Rate of the gain law; always in [0, a_i].
inline double gain_rate(double a_i, double b_i, double x_delayed) {
  const double proposal = b_i * (x_delayed < 0 ? -x_delayed : x_delayed);
  return proposal < a_i ? proposal : a_i;
}

/// Rate for node i under `params`.
double gain_rate(Eigen::Index i, double x_delayed, const GainParams& params);

/// Diagonal feedback K = diag(k), either adapted online or held fixed.
class Controller {
 public:
  enum class Mode { adaptive, fixed };

  static Controller adaptive(GainParams params);
  static Controller fixed(Eigen::VectorXd gains);

  Mode mode() const { return mode_; }
  bool is_adaptive() const { return mode_ == Mode::adaptive; }
  Eigen::Index size() const;
  const GainParams& params() const;
  const Eigen::VectorXd& fixed_gains() const;
  /// k(sigma): k0 for adaptive, the fixed vector otherwise.
  const Eigen::VectorXd& initial_gains() const;

 private:
  Controller() = default;

  Mode mode_ = Mode::fixed;
  GainParams params_;
  Eigen::VectorXd fixed_;
};

}  // namespace ddstab::control
