#include "ddstab/experiments/config.hpp"

#include <fstream>
#include <sstream>

#include "ddstab/errors.hpp"

namespace ddstab::experiments {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(field + ": " + what);
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

double get_number(const json& obj, const std::string& prefix, const char* key, double fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number()) fail(prefix + key, "expected a number");
  return v->get<double>();
}

std::uint64_t get_u64(const json& obj, const std::string& prefix, const char* key,
                      std::uint64_t fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<long long>() >= 0)) {
    fail(prefix + key, "expected a nonnegative integer");
  }
  return v->get<std::uint64_t>();
}

long long get_int(const json& obj, const std::string& prefix, const char* key, long long fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) fail(prefix + key, "expected an integer");
  return v->get<long long>();
}

bool get_bool(const json& obj, const std::string& prefix, const char* key, bool fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_boolean()) fail(prefix + key, "expected true or false");
  return v->get<bool>();
}

std::string get_string(const json& obj, const std::string& prefix, const char* key,
                       const std::string& fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_string()) fail(prefix + key, "expected a string");
  return v->get<std::string>();
}

// Scalar or array of numbers.
Eigen::VectorXd get_vector(const json& obj, const std::string& prefix, const char* key,
                           const Eigen::VectorXd& fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (v->is_number()) return Eigen::VectorXd::Constant(1, v->get<double>());
  if (!v->is_array() || v->empty()) fail(prefix + key, "expected a number or non-empty array");
  Eigen::VectorXd out(static_cast<Eigen::Index>(v->size()));
  for (std::size_t i = 0; i < v->size(); ++i) {
    if (!(*v)[i].is_number()) fail(prefix + key + "[" + std::to_string(i) + "]", "expected a number");
    out[static_cast<Eigen::Index>(i)] = (*v)[i].get<double>();
  }
  return out;
}

Eigen::MatrixXd get_matrix(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) fail(field, "expected a non-empty array of rows");
  const std::size_t rows = v.size();
  const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  if (cols == 0) fail(field, "expected rows to be non-empty arrays");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].size() != cols) fail(field, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) {
      if (!v[i][j].is_number()) fail(field, "expected numeric entries");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[i][j].get<double>();
    }
  }
  return m;
}

json vec_json(const Eigen::VectorXd& v) {
  if (v.size() == 1) return v[0];
  return std::vector<double>(v.data(), v.data() + v.size());
}

json mat_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

certificates::Interval get_interval(const json& obj, const std::string& prefix, const char* key,
                                    certificates::Interval fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number()) {
    fail(prefix + key, "expected [lo, hi]");
  }
  certificates::Interval iv{(*v)[0].get<double>(), (*v)[1].get<double>()};
  if (!(iv.hi >= iv.lo)) fail(prefix + key, "need lo <= hi");
  return iv;
}

void require_object(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
}

ModelConfig parse_model(const json& j) {
  require_object(j, "model");
  ModelConfig m;
  const std::string type = get_string(j, "model.", "type", "sis");
  if (type == "sis") {
    m.type = ModelType::sis;
    m.n = get_int(j, "model.", "n", m.n);
    m.m = static_cast<int>(get_int(j, "model.", "m", m.m));
    m.graph_seed = get_u64(j, "model.", "graph_seed", m.graph_seed);
    m.coupling_scale = get_number(j, "model.", "coupling_scale", m.coupling_scale);
    m.delay = get_number(j, "model.", "delay", m.delay);
  } else if (type == "linear_test") {
    m.type = ModelType::linear_test;
    auto& lin = m.linear;
    const json* a0 = find(j, "A0");
    if (!a0) fail("model.A0", "required for linear_test");
    lin.A0 = get_matrix(*a0, "model.A0");
    m.n = lin.A0.rows();
    if (const json* a1 = find(j, "A1")) lin.A.push_back(get_matrix(*a1, "model.A1"));
    if (!lin.A.empty()) lin.delays.push_back(get_number(j, "model.", "delay", 1.0));
    const std::string nl = get_string(j, "model.", "delayed_nonlinearity", "none");
    if (nl == "tanh") {
      lin.delayed_nonlinearity = systems::DelayedNonlinearity::tanh;
    } else if (nl != "none") {
      fail("model.delayed_nonlinearity", "expected \"none\" or \"tanh\"");
    }
    const std::string form = get_string(j, "model.", "form", "state_feedback");
    if (form == "state_feedback") {
      lin.form = systems::FeedbackForm::state_feedback;
      if (const json* b = find(j, "B")) lin.B = get_matrix(*b, "model.B");
    } else if (form == "output_feedback") {
      lin.form = systems::FeedbackForm::output_feedback;
      const json* h = find(j, "H");
      if (!h) fail("model.H", "required for output_feedback");
      lin.H_lin = get_matrix(*h, "model.H");
      if (const json* ht = find(j, "H_tanh")) lin.H_tanh = get_matrix(*ht, "model.H_tanh");
    } else {
      fail("model.form", "expected \"state_feedback\" or \"output_feedback\"");
    }
    m.delay = lin.delays.empty() ? 0.0 : lin.delays.front();
  } else if (type == "custom") {
    fail("model.type", "custom models can only be constructed programmatically");
  } else {
    fail("model.type", "expected \"sis\" or \"linear_test\"");
  }
  return m;
}

ControllerConfig parse_controller(const json& j) {
  require_object(j, "controller");
  ControllerConfig c;
  const std::string mode = get_string(j, "controller.", "mode", "adaptive");
  if (mode == "adaptive") {
    c.mode = control::Controller::Mode::adaptive;
  } else if (mode == "fixed") {
    c.mode = control::Controller::Mode::fixed;
  } else {
    fail("controller.mode", "expected \"adaptive\" or \"fixed\"");
  }
  c.a = get_vector(j, "controller.", "a", c.a);
  c.b = get_vector(j, "controller.", "b", c.b);
  c.T_k = get_vector(j, "controller.", "T_k", c.T_k);
  c.k0 = get_vector(j, "controller.", "k0", c.k0);
  c.k_fixed = get_vector(j, "controller.", "k_fixed", c.k_fixed);
  if (find(j, "k_max")) c.k_max = get_vector(j, "controller.", "k_max", {});
  c.allow_gain_delay_beyond_history =
      get_bool(j, "controller.", "allow_gain_delay_beyond_history", c.allow_gain_delay_beyond_history);
  return c;
}

SimConfig parse_sim(const json& j) {
  require_object(j, "sim");
  SimConfig s;
  s.h = get_number(j, "sim.", "h", s.h);
  s.horizon = get_number(j, "sim.", "horizon", s.horizon);
  s.record_stride = static_cast<int>(get_int(j, "sim.", "record_stride", s.record_stride));
  if (const json* p = find(j, "phi")) {
    require_object(*p, "sim.phi");
    const std::string type = get_string(*p, "sim.phi.", "type", "uniform_const");
    if (type == "uniform_const") {
      s.phi.type = PhiConfig::Type::uniform_const;
      s.phi.lo = get_number(*p, "sim.phi.", "lo", s.phi.lo);
      s.phi.hi = get_number(*p, "sim.phi.", "hi", s.phi.hi);
      s.phi.seed = get_u64(*p, "sim.phi.", "seed", s.phi.seed);
    } else if (type == "constant") {
      s.phi.type = PhiConfig::Type::constant;
      s.phi.values = get_vector(*p, "sim.phi.", "values", Eigen::VectorXd::Zero(1));
    } else {
      fail("sim.phi.type", "expected \"uniform_const\" or \"constant\"");
    }
  }
  return s;
}

OutputConfig parse_outputs(const json& j) {
  require_object(j, "outputs");
  OutputConfig o;
  o.dir = get_string(j, "outputs.", "dir", o.dir);
  o.write_trajectory = get_bool(j, "outputs.", "write_trajectory", o.write_trajectory);
  o.emit_lyapunov = get_bool(j, "outputs.", "emit_lyapunov", o.emit_lyapunov);
  if (const json* l = find(j, "lyapunov")) {
    require_object(*l, "outputs.lyapunov");
    auto& ly = o.lyapunov;
    if (find(*l, "weights")) ly.weights = get_vector(*l, "outputs.lyapunov.", "weights", {});
    ly.a = get_number(*l, "outputs.lyapunov.", "a", ly.a);
    ly.d = get_number(*l, "outputs.lyapunov.", "d", ly.d);
    ly.c = get_number(*l, "outputs.lyapunov.", "c", ly.c);
    ly.quadrature_stride =
        static_cast<int>(get_int(*l, "outputs.lyapunov.", "quadrature_stride", ly.quadrature_stride));
    if (const json* g = find(*l, "gate")) {
      if (g->is_number()) {
        ly.gate = g->get<double>();
      } else if (!(g->is_string() && g->get<std::string>() == "required_gain_bound")) {
        fail("outputs.lyapunov.gate", "expected a number or \"required_gain_bound\"");
      }
    }
  }
  return o;
}

CertifyConfig parse_certify(const json& j) {
  require_object(j, "certify");
  CertifyConfig c;
  auto& d = c.domain;
  d.t = get_interval(j, "certify.", "t", d.t);
  d.x = get_interval(j, "certify.", "x", d.x);
  d.y = get_interval(j, "certify.", "y", d.y);
  d.xi = get_interval(j, "certify.", "xi", d.xi);
  d.eta = get_interval(j, "certify.", "eta", d.eta);
  d.samples = static_cast<std::size_t>(get_u64(j, "certify.", "samples", d.samples));
  d.seed = get_u64(j, "certify.", "seed", d.seed);
  c.search_weights = get_bool(j, "certify.", "search_weights", c.search_weights);
  c.a_safety_factor = get_number(j, "certify.", "a_safety_factor", c.a_safety_factor);
  return c;
}

}  // namespace

Eigen::VectorXd broadcast(const Eigen::VectorXd& v, Eigen::Index n, const char* field) {
  if (v.size() == 1) return Eigen::VectorXd::Constant(n, v[0]);
  if (v.size() != n) {
    fail(field, "expected a scalar or " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  }
  return v;
}

void ExperimentConfig::validate() const {
  const Eigen::Index n = model.n;
  if (model.type == ModelType::sis) {
    if (n <= 0) fail("model.n", "must be positive");
    if (model.m < 1 || model.m >= n) fail("model.m", "need 1 <= m < n");
    if (!(model.coupling_scale >= 0.0)) fail("model.coupling_scale", "must be >= 0");
    if (!(model.delay > 0.0)) fail("model.delay", "must be > 0");
  }
  if (model.type == ModelType::custom && !model.custom_factory) {
    fail("model.type", "custom model needs a factory");
  }
  if (model.type != ModelType::custom) {
    const auto a = broadcast(controller.a, n, "controller.a");
    const auto b = broadcast(controller.b, n, "controller.b");
    const auto tk = broadcast(controller.T_k, n, "controller.T_k");
    const auto k0 = broadcast(controller.k0, n, "controller.k0");
    broadcast(controller.k_fixed, n, "controller.k_fixed");
    if (controller.k_max) broadcast(*controller.k_max, n, "controller.k_max");
    if ((a.array() <= 0.0).any()) fail("controller.a", "must be > 0");
    if ((b.array() < 0.0).any()) fail("controller.b", "must be >= 0");
    if ((tk.array() < 0.0).any()) fail("controller.T_k", "must be >= 0");
    if ((k0.array() < 0.0).any()) fail("controller.k0", "must be >= 0");
    if (sim.phi.type == PhiConfig::Type::constant) broadcast(sim.phi.values, n, "sim.phi.values");
  }
  if (!(sim.h > 0.0)) fail("sim.h", "must be > 0");
  if (!(sim.horizon >= sim.h)) fail("sim.horizon", "must be >= h");
  if (sim.record_stride < 1) fail("sim.record_stride", "must be >= 1");
  if (sim.phi.type == PhiConfig::Type::uniform_const && !(sim.phi.hi >= sim.phi.lo)) {
    fail("sim.phi", "need lo <= hi");
  }

  // Step must leave every positive delay at least two steps in the past.
  double min_delay = model.type == ModelType::sis ? model.delay : 0.0;
  if (model.type == ModelType::linear_test) {
    for (double d : model.linear.delays) min_delay = min_delay > 0.0 ? std::min(min_delay, d) : d;
  }
  if (controller.mode == control::Controller::Mode::adaptive) {
    for (Eigen::Index i = 0; i < controller.T_k.size(); ++i) {
      const double d = controller.T_k[i];
      if (d > 0.0) min_delay = min_delay > 0.0 ? std::min(min_delay, d) : d;
    }
  }
  if (min_delay > 0.0 && sim.h > 0.5 * min_delay) {
    fail("sim.h", "must be <= half the smallest delay (" + std::to_string(min_delay) + ")");
  }
  if (criterion.x_tol <= 0.0) fail("convergence.x_tol", "must be > 0");
  if (!(criterion.window_fraction > 0.0 && criterion.window_fraction <= 1.0)) {
    fail("convergence.window_fraction", "must be in (0, 1]");
  }
  if (certify.domain.samples == 0) fail("certify.samples", "must be >= 1");
  if (!(certify.a_safety_factor >= 1.0)) fail("certify.a_safety_factor", "must be >= 1");
  if (outputs.emit_lyapunov) {
    const auto& ly = outputs.lyapunov;
    if (!(ly.d >= 0.0 && ly.d < 1.0)) fail("outputs.lyapunov.d", "need 0 <= d < 1");
    if (!(ly.a >= 0.0)) fail("outputs.lyapunov.a", "must be >= 0");
    if (!(ly.c > 0.0)) fail("outputs.lyapunov.c", "must be > 0");
    if (ly.weights && model.type != ModelType::custom) broadcast(*ly.weights, n, "outputs.lyapunov.weights");
  }
}

ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) fail("config", "expected a JSON object");
  ExperimentConfig cfg;
  if (const json* m = find(j, "model")) cfg.model = parse_model(*m);
  if (const json* c = find(j, "controller")) cfg.controller = parse_controller(*c);
  if (const json* s = find(j, "sim")) cfg.sim = parse_sim(*s);
  if (const json* o = find(j, "outputs")) cfg.outputs = parse_outputs(*o);
  if (const json* c = find(j, "certify")) cfg.certify = parse_certify(*c);
  if (const json* c = find(j, "convergence")) {
    require_object(*c, "convergence");
    cfg.criterion.x_tol = get_number(*c, "convergence.", "x_tol", cfg.criterion.x_tol);
    cfg.criterion.window_fraction =
        get_number(*c, "convergence.", "window_fraction", cfg.criterion.window_fraction);
  }
  if (const json* s = find(j, "seeds")) {
    if (!s->is_array()) fail("seeds", "expected an array of integers");
    for (std::size_t i = 0; i < s->size(); ++i) {
      if (!(*s)[i].is_number_integer() || (*s)[i].get<long long>() < 0) {
        fail("seeds[" + std::to_string(i) + "]", "expected a nonnegative integer");
      }
      cfg.seeds.push_back((*s)[i].get<std::uint64_t>());
    }
  }
  if (const json* c = find(j, "compare")) {
    require_object(*c, "compare");
    if (find(*c, "k_fixed")) cfg.compare_fixed_gain = get_number(*c, "compare.", "k_fixed", 0.0);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config: JSON parse error in '" + path + "': " + e.what());
  }
  return parse_config(j);
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  json model;
  switch (cfg.model.type) {
    case ModelType::sis:
      model = {{"type", "sis"},
               {"n", cfg.model.n},
               {"m", cfg.model.m},
               {"graph_seed", cfg.model.graph_seed},
               {"coupling_scale", cfg.model.coupling_scale},
               {"delay", cfg.model.delay}};
      break;
    case ModelType::linear_test: {
      const auto& lin = cfg.model.linear;
      model = {{"type", "linear_test"}, {"A0", mat_json(lin.A0)}};
      if (!lin.A.empty()) {
        model["A1"] = mat_json(lin.A.front());
        model["delay"] = lin.delays.front();
      }
      model["delayed_nonlinearity"] =
          lin.delayed_nonlinearity == systems::DelayedNonlinearity::tanh ? "tanh" : "none";
      if (lin.form == systems::FeedbackForm::state_feedback) {
        model["form"] = "state_feedback";
        if (lin.B.size()) model["B"] = mat_json(lin.B);
      } else {
        model["form"] = "output_feedback";
        model["H"] = mat_json(lin.H_lin);
        if (lin.H_tanh.size()) model["H_tanh"] = mat_json(lin.H_tanh);
      }
      break;
    }
    case ModelType::custom:
      model = {{"type", "custom"}};
      break;
  }

  const auto& c = cfg.controller;
  json controller = {{"mode", c.mode == control::Controller::Mode::adaptive ? "adaptive" : "fixed"},
                     {"a", vec_json(c.a)},
                     {"b", vec_json(c.b)},
                     {"T_k", vec_json(c.T_k)},
                     {"k0", vec_json(c.k0)},
                     {"k_fixed", vec_json(c.k_fixed)},
                     {"allow_gain_delay_beyond_history", c.allow_gain_delay_beyond_history}};
  if (c.k_max) controller["k_max"] = vec_json(*c.k_max);

  json phi;
  if (cfg.sim.phi.type == PhiConfig::Type::uniform_const) {
    phi = {{"type", "uniform_const"}, {"lo", cfg.sim.phi.lo}, {"hi", cfg.sim.phi.hi}, {"seed", cfg.sim.phi.seed}};
  } else {
    phi = {{"type", "constant"}, {"values", vec_json(cfg.sim.phi.values)}};
  }
  json sim = {{"h", cfg.sim.h}, {"horizon", cfg.sim.horizon}, {"record_stride", cfg.sim.record_stride}, {"phi", phi}};

  const auto& ly = cfg.outputs.lyapunov;
  json lyap = {{"a", ly.a}, {"d", ly.d}, {"c", ly.c}, {"quadrature_stride", ly.quadrature_stride}};
  if (ly.weights) lyap["weights"] = vec_json(*ly.weights);
  lyap["gate"] = ly.gate ? json(*ly.gate) : json("required_gain_bound");
  json outputs = {{"dir", cfg.outputs.dir},
                  {"write_trajectory", cfg.outputs.write_trajectory},
                  {"emit_lyapunov", cfg.outputs.emit_lyapunov},
                  {"lyapunov", lyap}};

  const auto& d = cfg.certify.domain;
  auto iv = [](certificates::Interval i) { return json::array({i.lo, i.hi}); };
  json certify = {{"t", iv(d.t)},   {"x", iv(d.x)},         {"y", iv(d.y)},
                  {"xi", iv(d.xi)}, {"eta", iv(d.eta)},     {"samples", d.samples},
                  {"seed", d.seed}, {"search_weights", cfg.certify.search_weights},
                  {"a_safety_factor", cfg.certify.a_safety_factor}};

  json out = {{"model", model},
              {"controller", controller},
              {"sim", sim},
              {"outputs", outputs},
              {"certify", certify},
              {"convergence", {{"x_tol", cfg.criterion.x_tol}, {"window_fraction", cfg.criterion.window_fraction}}},
              {"seeds", cfg.seeds}};
  if (cfg.compare_fixed_gain) out["compare"] = {{"k_fixed", *cfg.compare_fixed_gain}};
  return out;
}

ExperimentConfig sis_case_study() {
  ExperimentConfig cfg;
  cfg.model.type = ModelType::sis;
  cfg.model.n = 200;
  cfg.model.m = 5;
  cfg.model.coupling_scale = 0.05;
  cfg.model.delay = 50.0;
  cfg.controller.mode = control::Controller::Mode::adaptive;
  cfg.controller.a = Eigen::VectorXd::Constant(1, 0.1);
  cfg.controller.b = Eigen::VectorXd::Constant(1, 0.01);
  cfg.controller.T_k = Eigen::VectorXd::Constant(1, 100.0);
  cfg.controller.k0 = Eigen::VectorXd::Constant(1, 10.0);
  cfg.controller.allow_gain_delay_beyond_history = true;
  cfg.sim.h = 0.05;
  cfg.sim.horizon = 5000.0;
  cfg.sim.record_stride = 100;
  cfg.certify.domain.x = cfg.certify.domain.y = {0.0, 1.0};
  cfg.certify.domain.xi = cfg.certify.domain.eta = {0.0, 1.0};
  cfg.compare_fixed_gain = 20.0;
  return cfg;
}

void apply_seed(ExperimentConfig& cfg, std::uint64_t seed) {
  cfg.model.graph_seed = seed;
  cfg.sim.phi.seed = seed;
}

}  // namespace ddstab::experiments
