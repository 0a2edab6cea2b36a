#include <random>

#include <benchmark/benchmark.h>

#include "ddstab/certificates/dominance.hpp"
#include "ddstab/certificates/weights.hpp"
#include "ddstab/control/closed_loop.hpp"
#include "ddstab/dde/history_buffer.hpp"
#include "ddstab/dde/integrator.hpp"
#include "ddstab/experiments/config.hpp"
#include "ddstab/experiments/runner.hpp"

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void BM_HistoryEval(benchmark::State& state) {
  const auto dim = static_cast<Eigen::Index>(state.range(0));
  ddstab::dde::HistoryBuffer buf(dim, 1000.0);
  for (int k = 0; k <= 1000; ++k) buf.push(0.05 * k, VectorXd::Constant(dim, std::sin(0.05 * k)));
  VectorXd out(dim);
  double t = 0.0;
  for (auto _ : state) {
    t = t > 49.0 ? 0.013 : t + 0.137;
    buf.eval_into(t, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_HistoryEval)->Arg(1)->Arg(200);

// One RK4 step of the adaptive SIS case study (400 states).
void BM_SisClosedLoopStep(benchmark::State& state) {
  using namespace ddstab;
  experiments::ExperimentConfig cfg = experiments::sis_case_study();
  const experiments::BuiltModel model = experiments::build(cfg);
  control::AssemblyOptions opts;
  opts.allow_gain_delay_beyond_history = true;
  const control::ClosedLoop loop = control::assemble_closed_loop(model.network, model.controller, opts);
  dde::HistoryBuffer buf(loop.rhs.dim, loop.window + 1.0);
  const double h = cfg.sim.h;
  for (double t = -loop.window - h; t <= 1e-12; t += h) {
    VectorXd x = VectorXd::Constant(loop.rhs.dim, 0.3);
    buf.push(t, std::move(x));
  }
  for (auto _ : state) {
    VectorXd next = dde::step_rk4(loop.rhs, buf, buf.back_time(), h);
    benchmark::DoNotOptimize(next.data());
  }
}
BENCHMARK(BM_SisClosedLoopStep);

void BM_ColumnMargins(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 eng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const MatrixXd m = MatrixXd::NullaryExpr(n, n, [&] { return u(eng); });
  const VectorXd v = VectorXd::Ones(n);
  for (auto _ : state) {
    VectorXd margins = ddstab::certificates::column_margins(m, v, 0.1);
    benchmark::DoNotOptimize(margins.data());
  }
}
BENCHMARK(BM_ColumnMargins)->Arg(10)->Arg(200);

void BM_FindWeights(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 eng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MatrixXd m = MatrixXd::NullaryExpr(n, n, [&] { return u(eng) - 0.5; });
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = -1.0 - 2.0 * u(eng);
  for (auto _ : state) {
    auto sol = ddstab::certificates::find_weights({m}, ddstab::certificates::DominanceMode::column);
    benchmark::DoNotOptimize(sol);
  }
}
BENCHMARK(BM_FindWeights)->Arg(5)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
