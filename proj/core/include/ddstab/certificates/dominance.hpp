#pragma once

#include <Eigen/Core>

#include "ddstab/certificates/report.hpp"
#include "ddstab/certificates/sampler.hpp"

namespace ddstab::certificates {

/// Normalized column margins of m with weights v:
///   [v_j (s + m_jj) + sum_{i != j} v_i (s + |m_ij|)] / v_j,  s = offset.
Eigen::VectorXd column_margins(const Eigen::MatrixXd& m, const Eigen::VectorXd& v, double offset = 0.0);

/// Normalized row margins of m with weights w:
///   [(s + m_ii) w_i + sum_{j != i} (s + |m_ij|) w_j] / w_i.
Eigen::VectorXd row_margins(const Eigen::MatrixXd& m, const Eigen::VectorXd& w, double offset = 0.0);

/// Sampled lower estimate of a = sup |dg_i / d eta_{l,j}|.
double estimate_a(const JacobianSampler& sampler);

CertificateReport check_column_dominance(const JacobianSampler& sampler, const Eigen::VectorXd& v,
                                         double a, double d);
CertificateReport check_row_dominance(const JacobianSampler& sampler, const Eigen::VectorXd& w,
                                      double a);
CertificateReport check_input_matrix_dominance(const MatrixSampler& b_sampler,
                                               const Eigen::VectorXd& v);
CertificateReport check_output_map_dominance(const MatrixSampler& h_jacobian_sampler,
                                             const Eigen::VectorXd& w);

}  // namespace ddstab::certificates
