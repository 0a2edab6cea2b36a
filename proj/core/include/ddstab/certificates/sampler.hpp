#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "ddstab/systems/coupling_graph.hpp"
#include "ddstab/systems/delayed_network.hpp"

namespace ddstab::certificates {

/// A point (t, x, y_1..y_r, xi, eta_1..eta_r) of the virtual-system domain.
struct SamplePoint {
  double t = 0.0;
  Eigen::VectorXd x;
  std::vector<Eigen::VectorXd> y;
  Eigen::VectorXd xi;
  std::vector<Eigen::VectorXd> eta;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Box domain: every coordinate of a group shares one interval.
struct SamplingDomain {
  Interval t{0.0, 0.0};
  Interval x{-1.0, 1.0};
  Interval y{-1.0, 1.0};
  Interval xi{-1.0, 1.0};
  Interval eta{-1.0, 1.0};
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
};

/// Deterministic sample set: the box center and group-wise corners, then a
/// Halton sequence (when the point dimension is small enough) and seeded
/// uniform draws for the remainder. Exactly `domain.samples` points unless
/// the structured part alone exceeds the budget.
std::vector<SamplePoint> generate_points(Eigen::Index n, std::size_t r, const SamplingDomain& domain);

/// Jacobians of a virtual system g with respect to xi and eta_l.
struct JacobianSampler {
  Eigen::Index n = 0;
  std::size_t r = 0;
  std::function<Eigen::MatrixXd(const SamplePoint&)> d_xi;
  std::function<Eigen::MatrixXd(const SamplePoint&, std::size_t l)> d_eta;
  SamplingDomain domain;
};

/// Matrix-valued map over (t, x, y) samples, e.g. B or dH/dx.
struct MatrixSampler {
  Eigen::Index n = 0;
  std::size_t r = 0;
  std::function<Eigen::MatrixXd(const SamplePoint&)> eval;
  SamplingDomain domain;
};

/// g = f(t, xi, eta) + B(t, x, y) diag(k) xi for state feedback and
/// g = f(t, xi, eta) + diag(k) H(t, xi, eta) for output feedback.
JacobianSampler virtual_system_sampler(const systems::DelayedNetwork& network,
                                       const Eigen::VectorXd& gains, const SamplingDomain& domain);

/// g_i = (1 - x_i) sum_j c_{i,j} eta_j - k_i xi_i.
JacobianSampler sis_virtual_sampler(const systems::CouplingGraph& graph,
                                    const Eigen::VectorXd& gains, const SamplingDomain& domain);

MatrixSampler input_matrix_sampler(const systems::DelayedNetwork& network,
                                   const SamplingDomain& domain);
MatrixSampler output_jacobian_sampler(const systems::DelayedNetwork& network,
                                      const SamplingDomain& domain);

/// Constant matrix on a single-point domain.
MatrixSampler constant_matrix_sampler(const Eigen::MatrixXd& m);
/// Constant Jacobians (d_eta identical for every delay).
JacobianSampler constant_jacobian_sampler(const Eigen::MatrixXd& d_xi, const Eigen::MatrixXd& d_eta,
                                          std::size_t r);

}  // namespace ddstab::certificates
