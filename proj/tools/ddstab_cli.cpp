// Command-line front end: simulate, compare, certify, sweep.
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ddstab/errors.hpp"
#include "ddstab/experiments/config.hpp"
#include "ddstab/experiments/runner.hpp"
#include "ddstab/format.hpp"

namespace {

using namespace ddstab;
using namespace ddstab::experiments;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBlowup = 3;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::optional<double> horizon;
  std::optional<double> step;
};

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--config", f.config, "JSON experiment config (default: SIS case study)");
  sub->add_option("--seed", f.seed, "Override graph and initial-function seeds");
  sub->add_option("--out-dir", f.out_dir, "Directory for output files");
  sub->add_option("--horizon", f.horizon, "Simulation horizon");
  sub->add_option("--step", f.step, "Integration step h");
}

ExperimentConfig load(const std::string& path, const CommonFlags& f) {
  ExperimentConfig cfg = path.empty() ? sis_case_study() : load_config(path);
  if (f.horizon) cfg.sim.horizon = *f.horizon;
  if (f.step) cfg.sim.h = *f.step;
  if (!f.out_dir.empty()) cfg.outputs.dir = f.out_dir;
  cfg.validate();
  return cfg;
}

std::vector<std::uint64_t> seeds_for(const ExperimentConfig& cfg, const CommonFlags& f,
                                     const std::vector<std::uint64_t>& cli_seeds) {
  if (f.seed) return {*f.seed};
  if (!cli_seeds.empty()) return cli_seeds;
  if (!cfg.seeds.empty()) return cfg.seeds;
  return {cfg.model.graph_seed};
}

int cmd_simulate(const CommonFlags& f) {
  ExperimentConfig cfg = load(f.config, f);
  if (f.seed) apply_seed(cfg, *f.seed);
  const RunResult r = run(cfg);
  std::cout << "converged_all=" << (r.trajectory.all_converged() ? "true" : "false")
            << " max_final_x=" << format_double(r.trajectory.summary.max_final_x)
            << " mean_final_gain=" << format_double(r.trajectory.summary.mean_final_gain) << '\n';
  if (r.decrease) {
    std::cout << "lyapunov_decrease_fraction=" << format_double(r.decrease->fraction) << '\n';
  }
  for (const auto& file : r.files) std::cout << "wrote " << file << '\n';
  return kExitOk;
}

int cmd_compare(const CommonFlags& f, const std::string& fixed_config, const std::vector<std::uint64_t>& cli_seeds) {
  ExperimentConfig adaptive = load(f.config, f);
  ExperimentConfig fixed = fixed_config.empty() ? with_fixed_gain(adaptive, adaptive.compare_fixed_gain.value_or(20.0))
                                                : load(fixed_config, f);
  const auto rows = compare(adaptive, fixed, seeds_for(adaptive, f, cli_seeds));
  std::cout << "seed,adaptive_converged_all,fixed_converged_all,adaptive_mean_final_gain,fixed_worst_final_x,"
               "adaptive_nonconverged_nodes,fixed_nonconverged_nodes\n";
  for (const auto& r : rows) {
    std::cout << r.seed << ',' << (r.adaptive_converged_all ? "true" : "false") << ','
              << (r.fixed_converged_all ? "true" : "false") << ',' << format_double(r.adaptive_mean_final_gain) << ','
              << format_double(r.fixed_worst_final_x) << ',' << r.adaptive_nonconverged_nodes << ','
              << r.fixed_nonconverged_nodes << '\n';
  }
  if (!adaptive.outputs.dir.empty()) {
    std::filesystem::create_directories(adaptive.outputs.dir);
    const std::string path = (std::filesystem::path(adaptive.outputs.dir) / "compare.csv").string();
    write_compare_csv(path, rows);
    std::cout << "wrote " << path << '\n';
  }
  return kExitOk;
}

int cmd_sweep(const CommonFlags& f, const std::vector<std::uint64_t>& cli_seeds) {
  ExperimentConfig cfg = load(f.config, f);
  const auto rows = sweep(cfg, seeds_for(cfg, f, cli_seeds));
  for (const auto& r : rows) {
    std::cout << "seed=" << r.seed << " converged_all=" << (r.converged_all ? "true" : "false")
              << " max_final_x=" << format_double(r.max_final_x)
              << " mean_final_gain=" << format_double(r.mean_final_gain)
              << " gain_variation=" << format_double(r.gain_variation) << '\n';
  }
  if (!cfg.outputs.dir.empty()) {
    std::filesystem::create_directories(cfg.outputs.dir);
    const std::string path = (std::filesystem::path(cfg.outputs.dir) / "sweep.csv").string();
    write_sweep_csv(path, rows);
    std::cout << "wrote " << path << '\n';
  }
  return kExitOk;
}

int cmd_certify(const CommonFlags& f) {
  ExperimentConfig cfg = load(f.config, f);
  if (f.seed) apply_seed(cfg, *f.seed);
  const CertifyResult r = certify(cfg);
  for (const auto& nr : r.reports) {
    std::cout << nr.name << ": " << (nr.report.passed() ? "PASS" : "FAIL")
              << " c_star=" << format_double(nr.report.c_star) << '\n';
  }
  std::cout << "a_estimate=" << format_double(r.a_estimate) << " a_used=" << format_double(r.a_used) << '\n';
  if (r.gain_bound) std::cout << "required_gain_bound=" << format_double(*r.gain_bound) << '\n';
  for (const auto& file : r.files) std::cout << "wrote " << file << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized adaptive stabilization of delayed networks"};
  app.require_subcommand(1);

  CommonFlags sim_flags, cmp_flags, cert_flags, sweep_flags;
  std::string fixed_config;
  std::vector<std::uint64_t> cmp_seeds, sweep_seeds;

  auto* sim = app.add_subcommand("simulate", "Run one closed-loop simulation");
  add_common(sim, sim_flags);
  auto* cmp = app.add_subcommand("compare", "Adaptive vs fixed gain over seeds");
  add_common(cmp, cmp_flags);
  cmp->add_option("--fixed-config", fixed_config, "Config for the fixed-gain run (default: compare.k_fixed)");
  cmp->add_option("--seeds", cmp_seeds, "Seed list")->delimiter(',');
  auto* cert = app.add_subcommand("certify", "Sampled dominance certificates and gain bound");
  add_common(cert, cert_flags);
  auto* swp = app.add_subcommand("sweep", "Run the config over several seeds");
  add_common(swp, sweep_flags);
  swp->add_option("--seeds", sweep_seeds, "Seed list")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sim) return cmd_simulate(sim_flags);
    if (*cmp) return cmd_compare(cmp_flags, fixed_config, cmp_seeds);
    if (*cert) return cmd_certify(cert_flags);
    if (*swp) return cmd_sweep(sweep_flags, sweep_seeds);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericBlowupError& e) {
    std::cerr << "numeric blowup: " << e.what() << '\n';
    return kExitBlowup;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
