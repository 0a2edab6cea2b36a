#include "ddstab/dde/simulate.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "ddstab/errors.hpp"
#include "ddstab/rng.hpp"

namespace ddstab::dde {

Trajectory simulate(const systems::DelayedNetwork& network, const control::Controller& controller,
                    const InitialFunction& phi, const SolverConfig& cfg,
                    const SimulateOptions& options) {
  const control::ClosedLoop loop = control::assemble_closed_loop(network, controller, options.assembly);
  const Eigen::Index n = loop.n;
  const Eigen::VectorXd k0 = controller.initial_gains();

  InitialFunction augmented = [&](double theta) -> Eigen::VectorXd {
    Eigen::VectorXd x = phi(theta);
    if (x.size() != n) {
      throw ConfigError("initial function has dimension " + std::to_string(x.size()) +
                        ", network has n=" + std::to_string(n));
    }
    if (!loop.adaptive) return x;
    Eigen::VectorXd z(2 * n);
    z << x, k0;
    return z;
  };

  Trajectory traj;
  traj.n = n;
  traj.adaptive = loop.adaptive;
  const std::size_t expected = cfg.step_count() / static_cast<std::size_t>(std::max(1, cfg.record_stride)) + 2;
  traj.times.reserve(expected);
  traj.states.reserve(expected);
  traj.gains.reserve(expected);

  integrate(loop.rhs, augmented, cfg, loop.window,
            [&](std::size_t, double t, const HistoryBuffer& buf) {
              const Eigen::VectorXd& z = buf.back_state();
              traj.times.push_back(t);
              traj.states.emplace_back(z.head(n));
              traj.gains.emplace_back(loop.adaptive ? Eigen::VectorXd(z.tail(n)) : k0);
              if (options.on_record) options.on_record(t, buf, traj);
            });
  evaluate_convergence(traj, options.criterion);
  return traj;
}

InitialFunction constant_phi(Eigen::VectorXd x0) {
  return [x0 = std::move(x0)](double) { return x0; };
}

InitialFunction uniform_constant_phi(Eigen::Index n, double lo, double hi, std::uint64_t seed) {
  if (!(hi >= lo)) throw ConfigError("sim.phi: need lo <= hi");
  auto eng = make_engine(seed, kPhiStream);
  Eigen::VectorXd x0(n);
  for (Eigen::Index i = 0; i < n; ++i) x0[i] = uniform(eng, lo, hi);
  return constant_phi(std::move(x0));
}

}  // namespace ddstab::dde
