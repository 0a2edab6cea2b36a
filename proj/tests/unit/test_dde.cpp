#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ddstab/control/controller.hpp"
#include "ddstab/dde/history_buffer.hpp"
#include "ddstab/dde/integrator.hpp"
#include "ddstab/dde/simulate.hpp"
#include "ddstab/errors.hpp"
#include "ddstab/systems/delayed_network.hpp"
#include "ddstab/systems/linear_test.hpp"
#include "method_of_steps.hpp"

using namespace ddstab;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> v) {
  VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

dde::DelayedRhs unit_delay_decay() {
  dde::DelayedRhs rhs;
  rhs.dim = 1;
  rhs.delays = {systems::DelaySpec::constant(1.0)};
  rhs.eval = [](double, const VectorXd&, dde::DelayedStates y, VectorXd& out) { out[0] = -y[0][0]; };
  return rhs;
}

// Value at each requested time, read from the recorded knots.
std::vector<double> integrate_at(const dde::DelayedRhs& rhs, double h, double horizon,
                                 const std::vector<double>& times) {
  std::vector<double> out(times.size(), NAN);
  dde::SolverConfig cfg;
  cfg.h = h;
  cfg.horizon = horizon;
  dde::integrate(rhs, [](double) { return VectorXd::Ones(1); }, cfg, 1.0,
                 [&](std::size_t, double t, const dde::HistoryBuffer& buf) {
                   for (std::size_t q = 0; q < times.size(); ++q) {
                     if (std::abs(t - times[q]) < 1e-9) out[q] = buf.back_state()[0];
                   }
                 });
  return out;
}

}  // namespace

TEST(HistoryBuffer, ConstantKnotsInterpolateToConstant) {
  dde::HistoryBuffer buf(1, 10.0);
  for (int k = 0; k <= 4; ++k) buf.push(0.5 * k, vec({1.0}));
  for (double t : {0.0, 0.1, 0.77, 1.3, 2.0}) EXPECT_DOUBLE_EQ(buf.eval(t)[0], 1.0);
}

TEST(HistoryBuffer, LinearDataWithMatchingSlopesIsReproduced) {
  dde::HistoryBuffer buf(1, 10.0);
  buf.push(0.0, vec({0.0}));
  buf.set_back_slope(vec({2.0}));
  buf.push(1.0, vec({2.0}));
  buf.set_back_slope(vec({2.0}));
  EXPECT_NEAR(buf.eval(0.5)[0], 1.0, 1e-15);
}

TEST(HistoryBuffer, LinearDataReproducedByFiniteDifferences) {
  dde::HistoryBuffer buf(1, 10.0);
  for (int k = 0; k <= 5; ++k) buf.push(0.3 * k, vec({2.0 * 0.3 * k - 1.0}));
  for (double t : {0.05, 0.41, 1.17, 1.49}) EXPECT_NEAR(buf.eval(t)[0], 2.0 * t - 1.0, 1e-13);
}

TEST(HistoryBuffer, QueryAtKnotReturnsStoredStateExactly) {
  dde::HistoryBuffer buf(2, 10.0);
  buf.push(0.0, vec({0.1, 0.7}));
  buf.push(1.0, vec({2.0, 1.0 / 3.0}));
  buf.push(2.5, vec({-4.0, 0.2}));
  EXPECT_EQ(buf.eval(1.0)[0], 2.0);
  EXPECT_EQ(buf.eval(1.0)[1], 1.0 / 3.0);
  EXPECT_EQ(buf.eval_component(2.5, 0), -4.0);
}

TEST(HistoryBuffer, OutOfRangeQueryNamesSpanAndQuery) {
  dde::HistoryBuffer buf(1, 10.0);
  buf.push(0.0, vec({0.0}));
  buf.push(1.0, vec({1.0}));
  try {
    (void)buf.eval(1.5);
    FAIL() << "expected OutOfRangeError";
  } catch (const OutOfRangeError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("1.5"), std::string::npos) << msg;
  }
  EXPECT_THROW((void)buf.eval(-0.1), OutOfRangeError);
}

TEST(HistoryBuffer, RejectsNonIncreasingTimes) {
  dde::HistoryBuffer buf(1, 10.0);
  buf.push(1.0, vec({0.0}));
  EXPECT_THROW(buf.push(1.0, vec({0.0})), Error);
}

TEST(HistoryBuffer, TrimKeepsWindowCovered) {
  dde::HistoryBuffer buf(1, 1.0);
  for (int k = 0; k <= 100; ++k) {
    buf.push(0.1 * k, vec({static_cast<double>(k)}));
    buf.trim(0.1 * k);
    if (k >= 10) {
      EXPECT_LE(buf.front_time(), 0.1 * k - 1.0 + 1e-12);
      EXPECT_NO_THROW((void)buf.eval(0.1 * k - 1.0));
    }
  }
  EXPECT_LE(buf.size(), 13u);
}

TEST(HistoryBuffer, CubicReproductionConvergesUnderRefinement) {
  // Finite-difference slopes: interpolation error of a smooth function shrinks with spacing.
  auto err_at = [](double dt) {
    dde::HistoryBuffer buf(1, 100.0);
    for (int k = 0; k * dt <= 2.0 + 1e-12; ++k) buf.push(k * dt, vec({std::sin(k * dt)}));
    double worst = 0.0;
    for (double t = 0.5; t < 1.5; t += 0.013) worst = std::max(worst, std::abs(buf.eval(t)[0] - std::sin(t)));
    return worst;
  };
  EXPECT_GT(err_at(0.1) / err_at(0.05), 6.0);
}

TEST(StepRk4, ZeroStateStaysZero) {
  dde::DelayedRhs rhs;
  rhs.dim = 2;
  rhs.delays = {systems::DelaySpec::constant(0.5)};
  rhs.eval = [](double, const VectorXd& x, dde::DelayedStates y, VectorXd& out) {
    out = -x + 0.3 * y[0].reverse();
  };
  const auto buf = dde::seed_history([](double) { return VectorXd::Zero(2); }, 2, 0.5, 0.0, 0.1);
  const VectorXd next = dde::step_rk4(rhs, buf, 0.0, 0.1);
  EXPECT_EQ(next, VectorXd::Zero(2));
}

TEST(StepRk4, UnitDelayDecayMatchesMethodOfSteps) {
  const oracle::UnitDelayDecay exact(1.0, 3);
  EXPECT_EQ(exact(1.0), 0.0);
  EXPECT_DOUBLE_EQ(exact(2.0), -0.5);
  const auto x = integrate_at(unit_delay_decay(), 1e-3, 2.0, {1.0, 2.0});
  EXPECT_NEAR(x[0], exact(1.0), 1e-6);
  EXPECT_NEAR(x[1], exact(2.0), 1e-6);
}

TEST(StepRk4, FourthOrderBeyondTheInitialKink) {
  // At t = 5 the solution is a degree-5 polynomial piece and truncation error dominates.
  const oracle::UnitDelayDecay exact(1.0, 6);
  const double e1 = std::abs(integrate_at(unit_delay_decay(), 0.1, 5.0, {5.0})[0] - exact(5.0));
  const double e2 = std::abs(integrate_at(unit_delay_decay(), 0.05, 5.0, {5.0})[0] - exact(5.0));
  EXPECT_GE(e1 / e2, 8.0);
}

TEST(StepRk4, DelayFreeExponential) {
  dde::DelayedRhs rhs;
  rhs.dim = 1;
  rhs.eval = [](double, const VectorXd& x, dde::DelayedStates, VectorXd& out) { out = -x; };
  double x1 = NAN;
  dde::SolverConfig cfg;
  cfg.h = 1e-3;
  cfg.horizon = 1.0;
  dde::integrate(rhs, [](double) { return VectorXd::Ones(1); }, cfg, 0.0,
                 [&](std::size_t, double t, const dde::HistoryBuffer& buf) {
                   if (std::abs(t - 1.0) < 1e-9) x1 = buf.back_state()[0];
                 });
  EXPECT_NEAR(x1, std::exp(-1.0), 1e-8);
}

TEST(StepRk4, NonFiniteRightHandSideRaisesBlowup) {
  dde::DelayedRhs rhs;
  rhs.dim = 1;
  rhs.eval = [](double, const VectorXd& x, dde::DelayedStates, VectorXd& out) { out = x.array().square() * 1e200; };
  dde::SolverConfig cfg;
  cfg.h = 0.1;
  cfg.horizon = 10.0;
  EXPECT_THROW(dde::integrate(rhs, [](double) { return VectorXd::Constant(1, 1e200); }, cfg, 0.0, {}),
               NumericBlowupError);
}

TEST(Integrate, RejectsStepAboveHalfTheSmallestDelay) {
  dde::SolverConfig cfg;
  cfg.h = 0.6;
  cfg.horizon = 2.0;
  EXPECT_THROW(dde::integrate(unit_delay_decay(), [](double) { return VectorXd::Ones(1); }, cfg, 1.0, {}),
               ConfigError);
}

TEST(Integrate, RejectsWindowShorterThanDelay) {
  dde::SolverConfig cfg;
  cfg.h = 0.1;
  cfg.horizon = 2.0;
  EXPECT_THROW(dde::integrate(unit_delay_decay(), [](double) { return VectorXd::Ones(1); }, cfg, 0.5, {}),
               ConfigError);
}

TEST(Integrate, TimeVaryingDelayStaysInsideHistory) {
  dde::DelayedRhs rhs;
  rhs.dim = 1;
  rhs.delays = {systems::DelaySpec::time_varying([](double t) { return 1.0 + 0.5 * std::sin(t); }, 0.5, 0.5, 1.5)};
  rhs.eval = [](double, const VectorXd&, dde::DelayedStates y, VectorXd& out) { out[0] = -y[0][0]; };
  dde::SolverConfig cfg;
  cfg.h = 0.01;
  cfg.horizon = 20.0;
  double last = NAN;
  EXPECT_NO_THROW(dde::integrate(rhs, [](double) { return VectorXd::Ones(1); }, cfg, 1.5,
                                 [&](std::size_t, double, const dde::HistoryBuffer& b) { last = b.back_state()[0]; }));
  EXPECT_TRUE(std::isfinite(last));
}

TEST(Integrate, RecordsFirstStridedAndFinalSteps) {
  dde::SolverConfig cfg;
  cfg.h = 0.1;
  cfg.horizon = 1.05;  // 11 steps
  cfg.record_stride = 4;
  std::vector<std::size_t> steps;
  dde::integrate(unit_delay_decay(), [](double) { return VectorXd::Ones(1); }, cfg, 1.0,
                 [&](std::size_t k, double, const dde::HistoryBuffer&) { steps.push_back(k); });
  EXPECT_EQ(steps, (std::vector<std::size_t>{0, 4, 8, 11}));
}

TEST(Simulate, ZeroInitialFunctionFreezesEverything) {
  systems::LinearTestSpec spec;
  spec.A0 = Eigen::MatrixXd::Constant(3, 3, 0.4);
  spec.A = {Eigen::MatrixXd::Constant(3, 3, 0.2)};
  spec.delays = {1.0};
  const auto net = systems::make_linear_test_network(spec);
  const auto ctl = control::Controller::adaptive(control::GainParams::uniform(3, 0.5, 1.0, 0.5, 2.0));
  dde::SolverConfig cfg;
  cfg.h = 0.01;
  cfg.horizon = 5.0;
  cfg.record_stride = 10;
  const Trajectory traj = dde::simulate(net, ctl, dde::constant_phi(VectorXd::Zero(3)), cfg);
  for (std::size_t s = 0; s < traj.size(); ++s) {
    EXPECT_EQ(traj.states[s], VectorXd::Zero(3));
    EXPECT_EQ(traj.gains[s], VectorXd::Constant(3, 2.0));
  }
  EXPECT_TRUE(traj.all_converged());
}

TEST(Simulate, ReproducesDirectSteppingOfScalarDelayedTest) {
  systems::LinearTestSpec spec;
  spec.A0 = Eigen::MatrixXd::Zero(1, 1);
  spec.A = {Eigen::MatrixXd::Constant(1, 1, -1.0)};
  spec.delays = {1.0};
  spec.B = Eigen::MatrixXd::Zero(1, 1);
  const auto net = systems::make_linear_test_network(spec);
  dde::SolverConfig cfg;
  cfg.h = 1e-3;
  cfg.horizon = 2.0;
  cfg.record_stride = 1000;
  const Trajectory traj =
      dde::simulate(net, control::Controller::fixed(VectorXd::Zero(1)), dde::constant_phi(VectorXd::Ones(1)), cfg);
  const auto direct = integrate_at(unit_delay_decay(), 1e-3, 2.0, {1.0, 2.0});
  ASSERT_EQ(traj.size(), 3u);
  EXPECT_NEAR(traj.states[1][0], direct[0], 1e-12);
  EXPECT_NEAR(traj.states[2][0], direct[1], 1e-12);
}

TEST(Simulate, BitIdenticalOnRerun) {
  systems::LinearTestSpec spec;
  spec.A0 = Eigen::MatrixXd::Identity(2, 2) * 0.3;
  spec.A = {Eigen::MatrixXd::Constant(2, 2, 0.2)};
  spec.delays = {0.7};
  const auto net = systems::make_linear_test_network(spec);
  const auto ctl = control::Controller::adaptive(control::GainParams::uniform(2, 1.0, 1.0, 0.3, 0.0));
  dde::SolverConfig cfg;
  cfg.h = 0.01;
  cfg.horizon = 10.0;
  cfg.record_stride = 7;
  const auto phi = dde::uniform_constant_phi(2, -1.0, 1.0, 42);
  const Trajectory a = dde::simulate(net, ctl, phi, cfg);
  const Trajectory b = dde::simulate(net, ctl, dde::uniform_constant_phi(2, -1.0, 1.0, 42), cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t s = 0; s < a.size(); ++s) {
    EXPECT_EQ(a.times[s], b.times[s]);
    EXPECT_EQ(a.states[s], b.states[s]);
    EXPECT_EQ(a.gains[s], b.gains[s]);
  }
}

TEST(Simulate, UniformPhiDependsOnSeedOnly) {
  const VectorXd a = dde::uniform_constant_phi(5, 0.0, 1.0, 7)(-3.0);
  const VectorXd b = dde::uniform_constant_phi(5, 0.0, 1.0, 7)(0.0);
  const VectorXd c = dde::uniform_constant_phi(5, 0.0, 1.0, 8)(0.0);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_TRUE((a.array() >= 0.0).all() && (a.array() < 1.0).all());
}
