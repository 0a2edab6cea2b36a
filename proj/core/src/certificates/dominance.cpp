#include "ddstab/certificates/dominance.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "ddstab/errors.hpp"

namespace ddstab::certificates {

namespace {

void require_positive(const Eigen::VectorXd& weights, Eigen::Index n, const char* what) {
  if (weights.size() != n) {
    throw ParameterError(std::string(what) + ": expected " + std::to_string(n) + " weights");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw ParameterError(std::string(what) + ": weight " + std::to_string(i) + " is not positive");
    }
  }
}

void require_finite(const Eigen::MatrixXd& m, const SamplePoint& p) {
  if (!m.allFinite()) {
    std::ostringstream os;
    os << "non-finite Jacobian entry at sample t=" << p.t;
    throw Error(os.str());
  }
}

// Max margin over all samples; fills the report's witness fields.
template <class MatrixAt, class Margins>
void scan(const std::vector<SamplePoint>& points, MatrixAt matrix_at, Margins margins,
          CertificateReport& report) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    const Eigen::MatrixXd m = matrix_at(p);
    require_finite(m, p);
    const Eigen::VectorXd mg = margins(m);
    Eigen::Index idx = 0;
    const double local = mg.maxCoeff(&idx);
    if (local > worst) {
      worst = local;
      report.worst_sample = p;
      report.worst_index = idx;
    }
  }
  report.samples_checked = points.size();
  report.c_star = -worst;
}

}  // namespace

Eigen::VectorXd column_margins(const Eigen::MatrixXd& m, const Eigen::VectorXd& v, double offset) {
  const Eigen::Index n = m.rows();
  Eigen::VectorXd out(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double sum = v[j] * (offset + m(j, j));
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != j) sum += v[i] * (offset + std::abs(m(i, j)));
    }
    out[j] = sum / v[j];
  }
  return out;
}

Eigen::VectorXd row_margins(const Eigen::MatrixXd& m, const Eigen::VectorXd& w, double offset) {
  const Eigen::Index n = m.rows();
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double sum = (offset + m(i, i)) * w[i];
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) sum += (offset + std::abs(m(i, j))) * w[j];
    }
    out[i] = sum / w[i];
  }
  return out;
}

double estimate_a(const JacobianSampler& sampler) {
  const auto points = generate_points(sampler.n, sampler.r, sampler.domain);
  double a = 0.0;
  for (const auto& p : points) {
    for (std::size_t l = 0; l < sampler.r; ++l) {
      const Eigen::MatrixXd j = sampler.d_eta(p, l);
      require_finite(j, p);
      a = std::max(a, j.cwiseAbs().maxCoeff());
    }
  }
  return a;
}

CertificateReport check_column_dominance(const JacobianSampler& sampler, const Eigen::VectorXd& v,
                                         double a, double d) {
  require_positive(v, sampler.n, "column dominance");
  if (!(d >= 0.0 && d < 1.0)) throw ParameterError("column dominance needs 0 <= d < 1");
  if (!(a >= 0.0)) throw ParameterError("column dominance needs a >= 0");
  CertificateReport report;
  report.condition = Condition::column_dominance;
  report.weight = v;
  report.a_bound = a;
  report.d_bound = d;
  report.r = sampler.r;
  const double offset = a * static_cast<double>(sampler.r) / (1.0 - d);
  scan(generate_points(sampler.n, sampler.r, sampler.domain), sampler.d_xi,
       [&](const Eigen::MatrixXd& m) { return column_margins(m, v, offset); }, report);
  return report;
}

CertificateReport check_row_dominance(const JacobianSampler& sampler, const Eigen::VectorXd& w,
                                      double a) {
  require_positive(w, sampler.n, "row dominance");
  if (!(a >= 0.0)) throw ParameterError("row dominance needs a >= 0");
  CertificateReport report;
  report.condition = Condition::row_dominance;
  report.weight = w;
  report.a_bound = a;
  report.d_bound = 0.0;
  report.r = sampler.r;
  const double offset = a * static_cast<double>(sampler.r);
  scan(generate_points(sampler.n, sampler.r, sampler.domain), sampler.d_xi,
       [&](const Eigen::MatrixXd& m) { return row_margins(m, w, offset); }, report);
  return report;
}

CertificateReport check_input_matrix_dominance(const MatrixSampler& b_sampler,
                                               const Eigen::VectorXd& v) {
  require_positive(v, b_sampler.n, "input matrix dominance");
  CertificateReport report;
  report.condition = Condition::input_matrix_column;
  report.weight = v;
  report.r = b_sampler.r;
  scan(generate_points(b_sampler.n, b_sampler.r, b_sampler.domain), b_sampler.eval,
       [&](const Eigen::MatrixXd& m) { return column_margins(m, v); }, report);
  return report;
}

CertificateReport check_output_map_dominance(const MatrixSampler& h_jacobian_sampler,
                                             const Eigen::VectorXd& w) {
  require_positive(w, h_jacobian_sampler.n, "output map dominance");
  CertificateReport report;
  report.condition = Condition::output_map_row;
  report.weight = w;
  report.r = h_jacobian_sampler.r;
  scan(generate_points(h_jacobian_sampler.n, h_jacobian_sampler.r, h_jacobian_sampler.domain),
       h_jacobian_sampler.eval, [&](const Eigen::MatrixXd& m) { return row_margins(m, w); }, report);
  return report;
}

}  // namespace ddstab::certificates
