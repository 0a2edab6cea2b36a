#include "ddstab/control/closed_loop.hpp"

#include <algorithm>
#include <sstream>

#include "ddstab/errors.hpp"

namespace ddstab::control {

ClosedLoop assemble_closed_loop(const systems::DelayedNetwork& network,
                                const Controller& controller, const AssemblyOptions& options) {
  const Eigen::Index n = network.n();
  if (controller.size() != n) {
    std::ostringstream os;
    os << "controller dimension " << controller.size() << " != network size " << n;
    throw ConfigError(os.str());
  }

  ClosedLoop loop;
  loop.n = n;
  loop.adaptive = controller.is_adaptive();
  loop.plant_delays = network.r();
  loop.window = network.max_delay();
  loop.rhs.delays = network.delays();
  loop.rhs.dim = loop.adaptive ? 2 * n : n;

  // Node -> index into the delayed-state list, or -1 for an undelayed read.
  std::vector<long> gain_lookup(static_cast<std::size_t>(n), -1);
  if (loop.adaptive) {
    const GainParams& p = controller.params();
    std::vector<double> distinct;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (p.delay[i] > 0.0) distinct.push_back(p.delay[i]);
    }
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (double d : distinct) loop.rhs.delays.push_back(systems::DelaySpec::constant(d));
    for (Eigen::Index i = 0; i < n; ++i) {
      if (p.delay[i] <= 0.0) continue;
      const auto pos = std::lower_bound(distinct.begin(), distinct.end(), p.delay[i]) - distinct.begin();
      gain_lookup[static_cast<std::size_t>(i)] = static_cast<long>(network.r()) + pos;
    }
    const double max_gain_delay = distinct.empty() ? 0.0 : distinct.back();
    if (max_gain_delay > loop.window) {
      if (!options.allow_gain_delay_beyond_history) {
        std::ostringstream os;
        os << "controller.T_k: gain delay " << max_gain_delay
           << " exceeds the plant's largest delay " << loop.window
           << " (set allow_gain_delay_beyond_history to extend the history)";
        throw ConfigError(os.str());
      }
      loop.window = max_gain_delay;
    }
  }

  const std::size_t r = network.r();
  const bool adaptive = loop.adaptive;
  const GainParams params = adaptive ? controller.params() : GainParams{};
  const Eigen::VectorXd fixed = adaptive ? Eigen::VectorXd() : controller.fixed_gains();
  const bool state_feedback = network.form() == systems::FeedbackForm::state_feedback;

  loop.rhs.eval = [network, r, n, adaptive, params, fixed, state_feedback, gain_lookup](
                      double t, const Eigen::VectorXd& z, dde::DelayedStates delayed,
                      Eigen::VectorXd& dz) {
    const Eigen::VectorXd x = z.head(n);
    std::vector<Eigen::VectorXd> ys(r);
    for (std::size_t l = 0; l < r; ++l) ys[l] = delayed[l].head(n);
    const systems::DelayedStates y(ys);

    Eigen::VectorXd gains = adaptive ? Eigen::VectorXd(z.tail(n)) : fixed;
    Eigen::VectorXd dx = network.drift(t, x, y);
    if (state_feedback) {
      dx += network.apply_input(t, x, y, gains.cwiseProduct(x));
    } else {
      dx += gains.cwiseProduct(network.output_map(t, x, y));
    }
    dz.head(n) = dx;
    if (!adaptive) return;

    for (Eigen::Index i = 0; i < n; ++i) {
      const long src = gain_lookup[static_cast<std::size_t>(i)];
      const double xd = src < 0 ? x[i] : delayed[static_cast<std::size_t>(src)][i];
      double rate = gain_rate(i, xd, params);
      if (params.upper_bound && gains[i] >= (*params.upper_bound)[i]) rate = 0.0;
      dz[n + i] = rate;
    }
  };
  return loop;
}

}  // namespace ddstab::control
