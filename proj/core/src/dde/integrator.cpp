#include "ddstab/dde/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "ddstab/errors.hpp"

namespace ddstab::dde {

namespace {

std::string summarize(const Eigen::VectorXd& x) {
  std::ostringstream os;
  os.precision(6);
  os << "[";
  const Eigen::Index shown = std::min<Eigen::Index>(x.size(), 8);
  for (Eigen::Index i = 0; i < shown; ++i) os << (i ? ", " : "") << x[i];
  if (shown < x.size()) os << ", ... (" << x.size() << " entries)";
  os << "]";
  return os.str();
}

void eval_stage(const DelayedRhs& rhs, const HistoryBuffer& buf, double tau,
                const Eigen::VectorXd& x, std::vector<Eigen::VectorXd>& delayed,
                Eigen::VectorXd& out) {
  for (std::size_t l = 0; l < rhs.delays.size(); ++l) {
    buf.eval_into(tau - rhs.delays[l].at(tau), delayed[l]);
  }
  rhs.eval(tau, x, DelayedStates(delayed), out);
  if (out.size() != rhs.dim) throw Error("right-hand side returned a vector of wrong size");
  if (!out.allFinite()) throw NumericBlowupError(tau, summarize(x));
}

}  // namespace

std::size_t SolverConfig::step_count() const {
  return static_cast<std::size_t>(std::ceil(horizon / h - 1e-9));
}

void SolverConfig::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("sim.h: step must be finite and > 0");
  if (!(horizon >= h) || !std::isfinite(horizon)) {
    throw ConfigError("sim.horizon: must be finite and >= h");
  }
  if (record_stride < 1) throw ConfigError("sim.record_stride: must be >= 1");
}

Eigen::VectorXd step_rk4(const DelayedRhs& rhs, const HistoryBuffer& buf, double t, double h,
                         Eigen::VectorXd* start_slope) {
  const Eigen::VectorXd& x = buf.back_state();
  std::vector<Eigen::VectorXd> delayed(rhs.delays.size(), Eigen::VectorXd(rhs.dim));
  Eigen::VectorXd k1(rhs.dim), k2(rhs.dim), k3(rhs.dim), k4(rhs.dim);
  eval_stage(rhs, buf, t, x, delayed, k1);
  const double half = 0.5 * h;
  eval_stage(rhs, buf, t + half, x + half * k1, delayed, k2);
  eval_stage(rhs, buf, t + half, x + half * k2, delayed, k3);
  eval_stage(rhs, buf, t + h, x + h * k3, delayed, k4);
  if (start_slope) *start_slope = k1;
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

HistoryBuffer seed_history(const InitialFunction& phi, Eigen::Index dim, double window,
                           double sigma, double h) {
  HistoryBuffer buf(dim, window);
  // One spare knot so lookups at exactly sigma - window stay in range.
  const auto count = static_cast<long>(std::ceil(window / h - 1e-9)) + 1;
  for (long j = count; j >= 0; --j) {
    const double theta = -static_cast<double>(j) * h;
    Eigen::VectorXd x = phi(theta);
    if (x.size() != dim) {
      throw ConfigError("initial function dimension " + std::to_string(x.size()) +
                        " != state dimension " + std::to_string(dim));
    }
    buf.push(sigma + theta, std::move(x));
  }
  return buf;
}

void integrate(const DelayedRhs& rhs, const InitialFunction& phi, const SolverConfig& cfg,
               double window, const RecordHook& on_record) {
  cfg.validate();
  if (!rhs.eval) throw ConfigError("right-hand side is not set");
  for (const auto& d : rhs.delays) {
    if (cfg.h > 0.5 * d.lower_bound()) {
      std::ostringstream os;
      os << "sim.h: step " << cfg.h << " exceeds half the smallest delay " << d.lower_bound();
      throw ConfigError(os.str());
    }
    if (d.upper_bound() > window) {
      throw ConfigError("history window shorter than the largest delay");
    }
  }

  HistoryBuffer buf = seed_history(phi, rhs.dim, window, cfg.start_time, cfg.h);
  const std::size_t steps = cfg.step_count();
  const auto stride = static_cast<std::size_t>(cfg.record_stride);

  buf.freeze_back_slope();
  if (on_record) on_record(0, cfg.start_time, buf);
  Eigen::VectorXd slope(rhs.dim);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = cfg.start_time + static_cast<double>(k) * cfg.h;
    Eigen::VectorXd next = step_rk4(rhs, buf, t, cfg.h, &slope);
    // Knot at sigma keeps the initial function's one-sided slope on its left.
    if (k == 0) {
      buf.set_back_right_slope(slope);
    } else {
      buf.set_back_slope(slope);
    }
    const double t_next = cfg.start_time + static_cast<double>(k + 1) * cfg.h;
    buf.push(t_next, std::move(next));
    buf.trim(t_next);
    if (on_record && ((k + 1) % stride == 0 || k + 1 == steps)) on_record(k + 1, t_next, buf);
  }
}

}  // namespace ddstab::dde
