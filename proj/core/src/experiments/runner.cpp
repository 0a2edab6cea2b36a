#include "ddstab/experiments/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <utility>

#include "ddstab/certificates/dominance.hpp"
#include "ddstab/certificates/gain_bound.hpp"
#include "ddstab/certificates/weights.hpp"
#include "ddstab/dde/simulate.hpp"
#include "ddstab/errors.hpp"
#include "ddstab/format.hpp"
#include "ddstab/lyapunov/functionals.hpp"
#include "ddstab/systems/linear_test.hpp"
#include "ddstab/systems/sis.hpp"

namespace ddstab::experiments {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::size_t kMaxDistinctWeightSamples = 64;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::vector<bool> to_bools(const std::vector<bool>& v) { return v; }

std::size_t count_false(const std::vector<bool>& v) {
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), false));
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

lyapunov::FunctionalConfig functional_config(const ExperimentConfig& cfg,
                                             const systems::DelayedNetwork& net) {
  const auto& ly = cfg.outputs.lyapunov;
  lyapunov::FunctionalConfig fc;
  fc.weights = ly.weights ? broadcast(*ly.weights, net.n(), "outputs.lyapunov.weights")
                          : Eigen::VectorXd::Ones(net.n());
  fc.a = ly.a;
  fc.d = ly.d;
  fc.delays = net.delays();
  fc.quadrature_stride = ly.quadrature_stride;
  return fc;
}

double lyapunov_gate(const ExperimentConfig& cfg, const lyapunov::FunctionalConfig& fc, std::size_t r) {
  const auto& ly = cfg.outputs.lyapunov;
  if (ly.gate) return *ly.gate;
  return certificates::required_gain_bound(ly.a, static_cast<int>(r), ly.d, ly.c, fc.weights);
}

// Model settings excluding the controller and output location.
json model_fingerprint(const ExperimentConfig& cfg) {
  json j = to_json(cfg);
  j.erase("controller");
  j.erase("outputs");
  j.erase("seeds");
  j.erase("compare");
  j.erase("certify");
  return j;
}

std::vector<Eigen::MatrixXd> distinct_matrices(const std::vector<certificates::SamplePoint>& points,
                                               const std::function<Eigen::MatrixXd(const certificates::SamplePoint&)>& eval) {
  std::vector<Eigen::MatrixXd> out;
  for (const auto& p : points) {
    Eigen::MatrixXd m = eval(p);
    if (std::none_of(out.begin(), out.end(), [&](const Eigen::MatrixXd& e) { return e == m; })) {
      out.push_back(std::move(m));
      if (out.size() > kMaxDistinctWeightSamples) {
        throw ConfigError("certify.search_weights: more than " + std::to_string(kMaxDistinctWeightSamples) +
                          " distinct sampled matrices; reduce certify.samples");
      }
    }
  }
  return out;
}

}  // namespace

BuiltModel build(const ExperimentConfig& cfg) {
  cfg.validate();
  std::optional<systems::CouplingGraph> graph;
  auto network = [&]() {
    switch (cfg.model.type) {
      case ModelType::sis:
        graph = systems::generate_scale_free(cfg.model.n, cfg.model.m, cfg.model.graph_seed,
                                             cfg.model.coupling_scale);
        return systems::make_sis_network(*graph, cfg.model.delay);
      case ModelType::linear_test:
        return systems::make_linear_test_network(cfg.model.linear);
      case ModelType::custom:
        break;
    }
    return cfg.model.custom_factory();
  }();
  const Eigen::Index n = network.n();

  const auto& c = cfg.controller;
  auto controller = [&]() {
    if (c.mode == control::Controller::Mode::fixed) {
      return control::Controller::fixed(broadcast(c.k_fixed, n, "controller.k_fixed"));
    }
    control::GainParams p;
    p.a = broadcast(c.a, n, "controller.a");
    p.b = broadcast(c.b, n, "controller.b");
    p.delay = broadcast(c.T_k, n, "controller.T_k");
    p.k0 = broadcast(c.k0, n, "controller.k0");
    if (c.k_max) p.upper_bound = broadcast(*c.k_max, n, "controller.k_max");
    return control::Controller::adaptive(std::move(p));
  }();

  dde::InitialFunction phi =
      cfg.sim.phi.type == PhiConfig::Type::uniform_const
          ? dde::uniform_constant_phi(n, cfg.sim.phi.lo, cfg.sim.phi.hi, cfg.sim.phi.seed)
          : dde::constant_phi(broadcast(cfg.sim.phi.values, n, "sim.phi.values"));

  dde::SolverConfig solver;
  solver.h = cfg.sim.h;
  solver.horizon = cfg.sim.horizon;
  solver.record_stride = cfg.sim.record_stride;
  return BuiltModel{std::move(network), std::move(graph), std::move(controller), std::move(phi), solver};
}

double gain_variation(const Trajectory& traj, double fraction) {
  if (traj.gains.empty()) return 0.0;
  const double t0 = traj.times.front();
  const double t1 = traj.times.back();
  const double start = t1 - fraction * (t1 - t0);
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(traj.n, std::numeric_limits<double>::infinity());
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(traj.n, -std::numeric_limits<double>::infinity());
  for (std::size_t s = 0; s < traj.size(); ++s) {
    if (traj.times[s] < start) continue;
    lo = lo.cwiseMin(traj.gains[s]);
    hi = hi.cwiseMax(traj.gains[s]);
  }
  return (hi - lo).maxCoeff();
}

RunResult run(const ExperimentConfig& cfg) {
  BuiltModel model = build(cfg);
  dde::SimulateOptions opts;
  opts.assembly.allow_gain_delay_beyond_history = cfg.controller.allow_gain_delay_beyond_history;
  opts.criterion = cfg.criterion;
  std::optional<lyapunov::FunctionalConfig> fc;
  if (cfg.outputs.emit_lyapunov) {
    fc = functional_config(cfg, model.network);
    opts.on_record = lyapunov::make_functional_recorder(*fc);
  }

  RunResult result;
  result.trajectory = dde::simulate(model.network, model.controller, model.phi, model.solver, opts);
  const Trajectory& traj = result.trajectory;

  json& s = result.summary;
  s["config"] = to_json(cfg);
  s["n"] = traj.n;
  s["adaptive"] = traj.adaptive;
  s["x_tol"] = traj.criterion.x_tol;
  s["final_window_fraction"] = traj.criterion.window_fraction;
  s["converged"] = to_bools(traj.converged);
  s["converged_all"] = traj.all_converged();
  s["nonconverged_nodes"] = count_false(traj.converged);
  s["max_final_x"] = traj.summary.max_final_x;
  s["mean_final_gain"] = traj.summary.mean_final_gain;
  s["t_convergence"] = optional_number(traj.summary.t_convergence);
  s["gain_variation_last_10pct"] = gain_variation(traj);
  if (model.graph) {
    const auto box = systems::check_box_invariance(traj);
    json b = {{"holds", box.holds}, {"tol", 1e-9}};
    if (box.first_violation) {
      b["first_violation"] = {{"t", box.first_violation->t},
                              {"node", box.first_violation->node},
                              {"value", box.first_violation->value}};
    }
    s["box_invariance"] = b;
    s["coupling_scale"] = cfg.model.coupling_scale;
    s["edges"] = model.graph->undirected_edge_count();
  }

  if (fc) {
    const double gate = lyapunov_gate(cfg, *fc, model.network.r());
    result.decrease = lyapunov::monitor_decrease(traj, *fc, gate);
    s["lyapunov_gate"] = gate;
  }

  if (!cfg.outputs.dir.empty()) {
    fs::create_directories(cfg.outputs.dir);
    const fs::path dir(cfg.outputs.dir);
    if (cfg.outputs.write_trajectory) {
      const std::string p = (dir / "trajectory.csv").string();
      write_trajectory_csv(p, traj);
      result.files.push_back(p);
    }
    const std::string sp = (dir / "summary.json").string();
    write_json(sp, s);
    result.files.push_back(sp);
    if (result.decrease) {
      const std::string lp = (dir / "lyapunov.json").string();
      write_json(lp, lyapunov::to_json(*result.decrease));
      result.files.push_back(lp);
    }
    if (model.graph) {
      const std::string gp = (dir / "graph.txt").string();
      std::ofstream out(gp, std::ios::binary);
      systems::write_edge_list(out, *model.graph);
      result.files.push_back(gp);
    }
  }
  return result;
}

ExperimentConfig with_fixed_gain(const ExperimentConfig& cfg, double k) {
  ExperimentConfig out = cfg;
  out.controller.mode = control::Controller::Mode::fixed;
  out.controller.k_fixed = Eigen::VectorXd::Constant(1, k);
  return out;
}

std::vector<CompareRow> compare(const ExperimentConfig& adaptive_cfg, const ExperimentConfig& fixed_cfg,
                                const std::vector<std::uint64_t>& seeds) {
  if (adaptive_cfg.controller.mode != control::Controller::Mode::adaptive) {
    throw ConfigError("compare: first config must use an adaptive controller");
  }
  if (fixed_cfg.controller.mode != control::Controller::Mode::fixed) {
    throw ConfigError("compare: second config must use a fixed controller");
  }
  if (model_fingerprint(adaptive_cfg) != model_fingerprint(fixed_cfg)) {
    throw ConfigError("compare: configs differ in model or simulation settings");
  }
  if (seeds.empty()) throw ConfigError("compare: no seeds given");

  std::vector<CompareRow> rows;
  for (std::uint64_t seed : seeds) {
    ExperimentConfig a = adaptive_cfg;
    ExperimentConfig f = fixed_cfg;
    apply_seed(a, seed);
    apply_seed(f, seed);
    if (!adaptive_cfg.outputs.dir.empty()) {
      const fs::path base = fs::path(adaptive_cfg.outputs.dir) / ("seed_" + std::to_string(seed));
      a.outputs.dir = (base / "adaptive").string();
      f.outputs.dir = (base / "fixed").string();
    }
    const RunResult ra = run(a);
    const RunResult rf = run(f);
    CompareRow row;
    row.seed = seed;
    row.adaptive_converged_all = ra.trajectory.all_converged();
    row.fixed_converged_all = rf.trajectory.all_converged();
    row.adaptive_mean_final_gain = ra.trajectory.summary.mean_final_gain;
    row.fixed_worst_final_x = rf.trajectory.summary.max_final_x;
    row.adaptive_nonconverged_nodes = count_false(ra.trajectory.converged);
    row.fixed_nonconverged_nodes = count_false(rf.trajectory.converged);
    rows.push_back(row);
  }
  return rows;
}

std::vector<SweepRow> sweep(const ExperimentConfig& cfg, const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw ConfigError("sweep: no seeds given");
  std::vector<SweepRow> rows;
  for (std::uint64_t seed : seeds) {
    ExperimentConfig c = cfg;
    apply_seed(c, seed);
    if (!cfg.outputs.dir.empty()) {
      c.outputs.dir = (fs::path(cfg.outputs.dir) / ("seed_" + std::to_string(seed))).string();
    }
    const RunResult r = run(c);
    SweepRow row;
    row.seed = seed;
    row.converged_all = r.trajectory.all_converged();
    row.nonconverged_nodes = count_false(r.trajectory.converged);
    row.max_final_x = r.trajectory.summary.max_final_x;
    row.mean_final_gain = r.trajectory.summary.mean_final_gain;
    row.gain_variation = gain_variation(r.trajectory);
    row.t_convergence = r.trajectory.summary.t_convergence;
    rows.push_back(row);
  }
  return rows;
}

CertifyResult certify(const ExperimentConfig& cfg) {
  BuiltModel model = build(cfg);
  const auto& net = model.network;
  const Eigen::Index n = net.n();
  const std::size_t r = net.r();
  const double d = net.derivative_bound();
  const auto& domain = cfg.certify.domain;
  const Eigen::VectorXd gains = model.controller.initial_gains();
  const bool state_feedback = net.form() == systems::FeedbackForm::state_feedback;
  const auto mode = state_feedback ? certificates::DominanceMode::column : certificates::DominanceMode::row;

  CertifyResult result;
  json& s = result.summary;

  // Structural condition on B (column) or dH/dx (row).
  const certificates::MatrixSampler structural = state_feedback
                                                     ? certificates::input_matrix_sampler(net, domain)
                                                     : certificates::output_jacobian_sampler(net, domain);
  Eigen::VectorXd weights = Eigen::VectorXd::Ones(n);
  if (cfg.certify.search_weights) {
    const auto points = certificates::generate_points(n, r, domain);
    const auto found = certificates::find_weights(distinct_matrices(points, structural.eval), mode);
    s["weight_search"] = found ? json{{"feasible", true}, {"c", found->c}} : json{{"feasible", false}};
    if (found) weights = found->weights;
  }
  const auto structural_report = state_feedback
                                     ? certificates::check_input_matrix_dominance(structural, weights)
                                     : certificates::check_output_map_dominance(structural, weights);
  result.reports.push_back({state_feedback ? "input_matrix" : "output_map", structural_report});

  // Delayed-coupling bound a.
  const certificates::JacobianSampler virt =
      model.graph ? certificates::sis_virtual_sampler(*model.graph, gains, domain)
                  : certificates::virtual_system_sampler(net, gains, domain);
  result.a_estimate = certificates::estimate_a(virt);
  // The drift's own xi-Jacobian must also fit under a r / (1 - d) (column)
  // or a r (row); the SIS virtual system has no drift dependence on xi.
  double drift_share = 0.0;
  if (!model.graph && r > 0) {
    for (const auto& p : certificates::generate_points(n, r, domain)) {
      const Eigen::MatrixXd jf = net.drift_jacobian_x(p.t, p.xi, systems::DelayedStates(p.eta));
      const Eigen::VectorXd mg = state_feedback ? certificates::column_margins(jf, weights)
                                                : certificates::row_margins(jf, weights);
      drift_share = std::max(drift_share, mg.maxCoeff());
    }
    drift_share *= state_feedback ? (1.0 - d) / static_cast<double>(r) : 1.0 / static_cast<double>(r);
  }
  result.a_used = cfg.certify.a_safety_factor * std::max(result.a_estimate, drift_share);

  if (structural_report.passed()) {
    result.gain_bound = state_feedback
                            ? certificates::required_gain_bound(result.a_used, static_cast<int>(r), d,
                                                                structural_report.c_star, weights)
                            : certificates::required_gain_bound_dual(result.a_used, static_cast<int>(r),
                                                                     structural_report.c_star, weights);
  }

  // Closed-loop condition at the configured gains.
  const auto closed = state_feedback ? certificates::check_column_dominance(virt, weights, result.a_used, d)
                                     : certificates::check_row_dominance(virt, weights, result.a_used);
  result.reports.push_back({"closed_loop", closed});

  s["form"] = state_feedback ? "state_feedback" : "output_feedback";
  s["certified_on_samples"] = structural_report.passed();
  s["samples"] = domain.samples;
  s["a_estimate"] = result.a_estimate;
  s["a_safety_factor"] = cfg.certify.a_safety_factor;
  s["drift_share"] = drift_share;
  s["a_used"] = result.a_used;
  s["required_gain_bound"] = optional_number(result.gain_bound);
  s["configured_min_gain"] = gains.minCoeff();
  s["closed_loop_certified_on_samples"] = closed.passed();
  s["note"] = "sampled check: conditions verified on the listed samples only";

  if (!cfg.outputs.dir.empty()) {
    fs::create_directories(cfg.outputs.dir);
    for (const auto& nr : result.reports) {
      const std::string p = (fs::path(cfg.outputs.dir) / ("certificate_" + nr.name + ".json")).string();
      write_json(p, certificates::to_json(nr.report));
      result.files.push_back(p);
    }
    const std::string p = (fs::path(cfg.outputs.dir) / "certify_summary.json").string();
    write_json(p, s);
    result.files.push_back(p);
  }
  return result;
}

void write_compare_csv(const std::string& path, const std::vector<CompareRow>& rows) {
  std::string text =
      "seed,adaptive_converged_all,fixed_converged_all,adaptive_mean_final_gain,fixed_worst_final_x,"
      "adaptive_nonconverged_nodes,fixed_nonconverged_nodes\n";
  for (const auto& r : rows) {
    text += std::to_string(r.seed) + ',' + (r.adaptive_converged_all ? "true" : "false") + ',' +
            (r.fixed_converged_all ? "true" : "false") + ',' + format_double(r.adaptive_mean_final_gain) + ',' +
            format_double(r.fixed_worst_final_x) + ',' + std::to_string(r.adaptive_nonconverged_nodes) + ',' +
            std::to_string(r.fixed_nonconverged_nodes) + '\n';
  }
  write_text(path, text);
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  std::string text = "seed,converged_all,nonconverged_nodes,max_final_x,mean_final_gain,gain_variation,t_convergence\n";
  for (const auto& r : rows) {
    text += std::to_string(r.seed) + ',' + (r.converged_all ? "true" : "false") + ',' +
            std::to_string(r.nonconverged_nodes) + ',' + format_double(r.max_final_x) + ',' +
            format_double(r.mean_final_gain) + ',' + format_double(r.gain_variation) + ',' +
            (r.t_convergence ? format_double(*r.t_convergence) : std::string()) + '\n';
  }
  write_text(path, text);
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << "t,node,x,k\n";
  std::string line;
  for (std::size_t s = 0; s < traj.size(); ++s) {
    const std::string t = format_double(traj.times[s]);
    for (Eigen::Index i = 0; i < traj.n; ++i) {
      line = t;
      line += ',';
      line += std::to_string(i);
      line += ',';
      line += format_double(traj.states[s][i]);
      line += ',';
      line += format_double(traj.gains[s][i]);
      line += '\n';
      out << line;
    }
  }
}

}  // namespace ddstab::experiments
