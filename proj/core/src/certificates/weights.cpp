#include "ddstab/certificates/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ddstab/certificates/dominance.hpp"
#include "ddstab/certificates/simplex.hpp"
#include "ddstab/errors.hpp"

namespace ddstab::certificates {

namespace {

// Comparison matrix in column orientation: entry (j, i) multiplies v_i in
// constraint j. Diagonal keeps its sign, off-diagonals take magnitudes.
Eigen::MatrixXd comparison(const Eigen::MatrixXd& m, DominanceMode mode, double offset) {
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd c(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      c(i, j) = offset + (i == j ? m(i, j) : std::abs(m(i, j)));
    }
  }
  return mode == DominanceMode::column ? Eigen::MatrixXd(c.transpose()) : c;
}

double achieved_margin(const std::vector<Eigen::MatrixXd>& samples, DominanceMode mode,
                       double offset, const Eigen::VectorXd& w) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& m : samples) {
    const Eigen::VectorXd mg =
        mode == DominanceMode::column ? column_margins(m, w, offset) : row_margins(m, w, offset);
    worst = std::max(worst, mg.maxCoeff());
  }
  return -worst;
}

// Constraints (C_s + c I) (1 + u) <= 0, 0 <= u <= max_weight - 1.
LinearProgram build_lp(const std::vector<Eigen::MatrixXd>& comps, double c, double max_weight) {
  const Eigen::Index n = comps.front().rows();
  const auto s = static_cast<Eigen::Index>(comps.size());
  LinearProgram lp;
  lp.A = Eigen::MatrixXd::Zero(s * n + n, n);
  lp.b = Eigen::VectorXd::Zero(s * n + n);
  for (Eigen::Index k = 0; k < s; ++k) {
    Eigen::MatrixXd shifted = comps[static_cast<std::size_t>(k)];
    shifted.diagonal().array() += c;
    lp.A.middleRows(k * n, n) = shifted;
    lp.b.segment(k * n, n) = -shifted.rowwise().sum();
  }
  lp.A.bottomRows(n).setIdentity();
  lp.b.tail(n).setConstant(max_weight - 1.0);
  lp.cost = Eigen::VectorXd::Ones(n);
  return lp;
}

}  // namespace

std::optional<WeightSolution> find_weights(const std::vector<Eigen::MatrixXd>& samples,
                                           DominanceMode mode, const WeightSearchOptions& options) {
  if (samples.empty()) throw ParameterError("weight search needs at least one sample");
  const Eigen::Index n = samples.front().rows();
  if (!(options.max_weight >= 1.0)) throw ParameterError("weight search needs max_weight >= 1");

  std::vector<Eigen::MatrixXd> comps;
  for (const auto& m : samples) {
    if (m.rows() != n || m.cols() != n) throw ParameterError("weight search: inconsistent sample sizes");
    Eigen::MatrixXd c = comparison(m, mode, options.offset);
    if (std::none_of(comps.begin(), comps.end(), [&](const Eigen::MatrixXd& e) { return e == c; })) {
      comps.push_back(std::move(c));
    }
  }

  // Upper bracket: every diagonal term must be beaten by c alone.
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& c : comps) hi = std::min(hi, -c.diagonal().maxCoeff());
  if (!(hi > 0.0)) return std::nullopt;
  // Lower bracket: unit weights.
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  double lo = achieved_margin(samples, mode, options.offset, ones);

  auto feasible = [&](double c) {
    return solve_lp(build_lp(comps, c, options.max_weight)).status == LpSolution::Status::optimal;
  };
  if (lo < hi && feasible(hi)) lo = hi;
  while (hi - lo > options.tolerance * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  const LpSolution sol = solve_lp(build_lp(comps, lo, options.max_weight));
  Eigen::VectorXd w = sol.status == LpSolution::Status::optimal
                          ? Eigen::VectorXd(ones + sol.x.cwiseMax(0.0))
                          : ones;
  WeightSolution out{w, achieved_margin(samples, mode, options.offset, w)};
  if (!(out.c > 0.0)) return std::nullopt;
  return out;
}

WeightSolution perron_weights(const Eigen::MatrixXd& m, DominanceMode mode, double offset) {
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n) throw ParameterError("perron_weights needs a square matrix");
  const Eigen::MatrixXd c = comparison(m, mode, offset);
  // Shift to a nonnegative matrix with a dominant positive diagonal.
  const double shift = std::max(0.0, -c.diagonal().minCoeff()) + 1.0;
  Eigen::MatrixXd s = c;
  s.diagonal().array() += shift;
  Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXd next = s * w;
    next /= next.maxCoeff();
    const double change = (next - w).cwiseAbs().maxCoeff();
    w = next;
    if (change < 1e-15) break;
  }
  w = w.cwiseMax(1e-300);
  w /= w.minCoeff();
  return WeightSolution{w, achieved_margin({m}, mode, offset, w)};
}

}  // namespace ddstab::certificates
