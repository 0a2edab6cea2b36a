#pragma once

#include <functional>

namespace ddstab::systems {

/// A transport delay T(t) > 0, either constant or time-varying with a
/// declared derivative bound d < 1 and declared range [lower, upper].
class DelaySpec {
 public:
  enum class Kind { constant, time_varying };

  static DelaySpec constant(double value);
  static DelaySpec time_varying(std::function<double(double)> value, double derivative_bound,
                                double lower, double upper);

  Kind kind() const { return kind_; }
  bool is_constant() const { return kind_ == Kind::constant; }

  double at(double t) const { return is_constant() ? lower_ : fn_(t); }

  /// d in [0, 1); zero for constant delays.
  double derivative_bound() const { return d_; }
  double lower_bound() const { return lower_; }
  double upper_bound() const { return upper_; }

 private:
  DelaySpec() = default;

  Kind kind_ = Kind::constant;
  std::function<double(double)> fn_;
  double d_ = 0.0;
  double lower_ = 0.0;
  double upper_ = 0.0;
};

}  // namespace ddstab::systems
