#include "ddstab/certificates/sampler.hpp"

#include <utility>

#include "ddstab/errors.hpp"
#include "ddstab/rng.hpp"

namespace ddstab::certificates {

namespace {

constexpr std::size_t kHaltonMaxDim = 64;

std::vector<int> first_primes(std::size_t count) {
  std::vector<int> primes;
  for (int c = 2; primes.size() < count; ++c) {
    bool prime = true;
    for (int p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

double radical_inverse(std::size_t index, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double out = 0.0;
  while (index > 0) {
    out += f * static_cast<double>(index % static_cast<std::size_t>(base));
    index /= static_cast<std::size_t>(base);
    f *= inv;
  }
  return out;
}

// Fills a point from unit-cube coordinates u (length 1 + 2n + 2rn).
SamplePoint from_unit(const std::vector<double>& u, Eigen::Index n, std::size_t r,
                      const SamplingDomain& d) {
  auto lerp = [](Interval iv, double s) { return iv.lo + (iv.hi - iv.lo) * s; };
  std::size_t c = 0;
  SamplePoint p;
  p.t = lerp(d.t, u[c++]);
  p.x.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) p.x[i] = lerp(d.x, u[c++]);
  p.y.assign(r, Eigen::VectorXd(n));
  for (auto& y : p.y)
    for (Eigen::Index i = 0; i < n; ++i) y[i] = lerp(d.y, u[c++]);
  p.xi.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) p.xi[i] = lerp(d.xi, u[c++]);
  p.eta.assign(r, Eigen::VectorXd(n));
  for (auto& e : p.eta)
    for (Eigen::Index i = 0; i < n; ++i) e[i] = lerp(d.eta, u[c++]);
  return p;
}

}  // namespace

std::vector<SamplePoint> generate_points(Eigen::Index n, std::size_t r, const SamplingDomain& domain) {
  if (n <= 0) throw ParameterError("sampling needs n > 0");
  if (domain.samples == 0) throw ParameterError("sampling domain needs at least one sample");
  const std::size_t dim = 1 + 2 * static_cast<std::size_t>(n) * (1 + r);
  std::vector<SamplePoint> points;
  points.reserve(domain.samples);
  std::vector<double> u(dim);

  std::fill(u.begin(), u.end(), 0.5);
  points.push_back(from_unit(u, n, r, domain));
  // Group corners: each of the five coordinate groups at its lower or upper end.
  const std::size_t group_sizes[] = {1, static_cast<std::size_t>(n), r * static_cast<std::size_t>(n),
                                     static_cast<std::size_t>(n), r * static_cast<std::size_t>(n)};
  for (unsigned mask = 0; mask < 32 && points.size() < domain.samples; ++mask) {
    std::size_t c = 0;
    for (unsigned g = 0; g < 5; ++g) {
      const double value = (mask >> g) & 1u ? 1.0 : 0.0;
      for (std::size_t k = 0; k < group_sizes[g]; ++k) u[c++] = value;
    }
    points.push_back(from_unit(u, n, r, domain));
  }

  const std::size_t remaining = domain.samples > points.size() ? domain.samples - points.size() : 0;
  std::size_t halton = 0;
  if (dim <= kHaltonMaxDim) {
    halton = remaining / 2;
    const auto primes = first_primes(dim);
    for (std::size_t s = 1; s <= halton; ++s) {
      for (std::size_t k = 0; k < dim; ++k) u[k] = radical_inverse(s, primes[k]);
      points.push_back(from_unit(u, n, r, domain));
    }
  }
  auto eng = make_engine(domain.seed, kSampleStream);
  for (std::size_t s = halton; s < remaining; ++s) {
    for (std::size_t k = 0; k < dim; ++k) u[k] = uniform01(eng);
    points.push_back(from_unit(u, n, r, domain));
  }
  return points;
}

JacobianSampler virtual_system_sampler(const systems::DelayedNetwork& network,
                                       const Eigen::VectorXd& gains, const SamplingDomain& domain) {
  if (gains.size() != network.n()) throw ParameterError("gain vector size mismatch");
  JacobianSampler s;
  s.n = network.n();
  s.r = network.r();
  s.domain = domain;
  const bool state_feedback = network.form() == systems::FeedbackForm::state_feedback;
  s.d_xi = [network, gains, state_feedback](const SamplePoint& p) {
    const systems::DelayedStates eta(p.eta);
    Eigen::MatrixXd j = network.drift_jacobian_x(p.t, p.xi, eta);
    if (state_feedback) {
      j += network.input_matrix(p.t, p.x, systems::DelayedStates(p.y)) * gains.asDiagonal();
    } else {
      j += gains.asDiagonal() * network.output_jacobian_x(p.t, p.xi, eta);
    }
    return j;
  };
  s.d_eta = [network, gains, state_feedback](const SamplePoint& p, std::size_t l) {
    const systems::DelayedStates eta(p.eta);
    Eigen::MatrixXd j = network.drift_jacobian_y(p.t, p.xi, eta, l);
    if (!state_feedback) {
      std::vector<Eigen::VectorXd> ys(p.eta.begin(), p.eta.end());
      j += gains.asDiagonal() * systems::numeric_jacobian(
                                    [&](const Eigen::VectorXd& q) {
                                      ys[l] = q;
                                      return network.output_map(p.t, p.xi, systems::DelayedStates(ys));
                                    },
                                    p.eta[l]);
    }
    return j;
  };
  return s;
}

JacobianSampler sis_virtual_sampler(const systems::CouplingGraph& graph,
                                    const Eigen::VectorXd& gains, const SamplingDomain& domain) {
  if (gains.size() != graph.n) throw ParameterError("gain vector size mismatch");
  JacobianSampler s;
  s.n = graph.n;
  s.r = 1;
  s.domain = domain;
  s.d_xi = [gains](const SamplePoint&) { return Eigen::MatrixXd((-gains).asDiagonal()); };
  const Eigen::MatrixXd c(graph.weights);
  s.d_eta = [c](const SamplePoint& p, std::size_t) {
    return Eigen::MatrixXd((Eigen::VectorXd::Ones(p.x.size()) - p.x).asDiagonal() * c);
  };
  return s;
}

MatrixSampler input_matrix_sampler(const systems::DelayedNetwork& network,
                                   const SamplingDomain& domain) {
  if (!network.has_input_matrix()) throw ParameterError("network has no input matrix");
  MatrixSampler s;
  s.n = network.n();
  s.r = network.r();
  s.domain = domain;
  s.eval = [network](const SamplePoint& p) {
    return network.input_matrix(p.t, p.x, systems::DelayedStates(p.y));
  };
  return s;
}

MatrixSampler output_jacobian_sampler(const systems::DelayedNetwork& network,
                                      const SamplingDomain& domain) {
  if (!network.has_output_map()) throw ParameterError("network has no output map");
  MatrixSampler s;
  s.n = network.n();
  s.r = network.r();
  s.domain = domain;
  s.eval = [network](const SamplePoint& p) {
    return network.output_jacobian_x(p.t, p.x, systems::DelayedStates(p.y));
  };
  return s;
}

MatrixSampler constant_matrix_sampler(const Eigen::MatrixXd& m) {
  MatrixSampler s;
  s.n = m.rows();
  s.r = 0;
  s.domain.samples = 1;
  s.domain.x = s.domain.y = s.domain.xi = s.domain.eta = Interval{0.0, 0.0};
  s.eval = [m](const SamplePoint&) { return m; };
  return s;
}

JacobianSampler constant_jacobian_sampler(const Eigen::MatrixXd& d_xi, const Eigen::MatrixXd& d_eta,
                                          std::size_t r) {
  JacobianSampler s;
  s.n = d_xi.rows();
  s.r = r;
  s.domain.samples = 1;
  s.domain.x = s.domain.y = s.domain.xi = s.domain.eta = Interval{0.0, 0.0};
  s.d_xi = [d_xi](const SamplePoint&) { return d_xi; };
  s.d_eta = [d_eta](const SamplePoint&, std::size_t) { return d_eta; };
  return s;
}

}  // namespace ddstab::certificates
