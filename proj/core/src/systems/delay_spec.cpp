#include "ddstab/systems/delay_spec.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "ddstab/errors.hpp"

namespace ddstab::systems {

DelaySpec DelaySpec::constant(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParameterError("constant delay must be finite and > 0, got " + std::to_string(value));
  }
  DelaySpec spec;
  spec.kind_ = Kind::constant;
  spec.lower_ = value;
  spec.upper_ = value;
  return spec;
}

DelaySpec DelaySpec::time_varying(std::function<double(double)> value, double derivative_bound,
                                  double lower, double upper) {
  if (!value) throw ParameterError("time-varying delay needs a callable");
  if (!(derivative_bound >= 0.0 && derivative_bound < 1.0)) {
    throw ParameterError("delay derivative bound d must satisfy 0 <= d < 1");
  }
  if (!(lower > 0.0) || !(upper >= lower) || !std::isfinite(upper)) {
    throw ParameterError("time-varying delay needs 0 < lower <= upper < inf");
  }
  DelaySpec spec;
  spec.kind_ = Kind::time_varying;
  spec.fn_ = std::move(value);
  spec.d_ = derivative_bound;
  spec.lower_ = lower;
  spec.upper_ = upper;
  return spec;
}

}  // namespace ddstab::systems
