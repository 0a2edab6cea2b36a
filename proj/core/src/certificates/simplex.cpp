#include "ddstab/certificates/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "ddstab/errors.hpp"

namespace ddstab::certificates {

namespace {

struct Tableau {
  // Rows 0..m-1 are constraints; the last column is the right-hand side.
  Eigen::MatrixXd t;
  std::vector<Eigen::Index> basis;
  Eigen::Index cols = 0;  // number of variable columns

  void pivot(Eigen::Index row, Eigen::Index col) {
    t.row(row) /= t(row, col);
    for (Eigen::Index r = 0; r < t.rows(); ++r) {
      if (r != row && t(r, col) != 0.0) t.row(r) -= t(r, col) * t.row(row);
    }
    basis[static_cast<std::size_t>(row)] = col;
  }
};

// Minimizes obj' x over the tableau (obj has `cols` entries). Columns marked
// in `blocked` never enter. Returns false when unbounded.
bool run_simplex(Tableau& tab, const Eigen::VectorXd& obj, const std::vector<bool>& blocked,
                 double tol) {
  // Blocked columns that are still basic sit at zero; they must stay there.
  auto pinned = [&](Eigen::Index r) { return blocked[static_cast<std::size_t>(tab.basis[static_cast<std::size_t>(r)])]; };
  const Eigen::Index m = tab.t.rows();
  const Eigen::Index rhs = tab.cols;
  for (;;) {
    // Reduced costs: obj_j - obj_B' column_j.
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < tab.cols; ++j) {
      if (blocked[static_cast<std::size_t>(j)]) continue;
      double reduced = obj[j];
      for (Eigen::Index r = 0; r < m; ++r) reduced -= obj[tab.basis[static_cast<std::size_t>(r)]] * tab.t(r, j);
      if (reduced < -tol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return true;

    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < m; ++r) {
      const double coef = tab.t(r, enter);
      const bool stuck = pinned(r) && std::abs(coef) > tol;
      if (coef <= tol && !stuck) continue;
      const double ratio = stuck ? 0.0 : tab.t(r, rhs) / coef;
      if (ratio < best - tol ||
          (std::abs(ratio - best) <= tol && tab.basis[static_cast<std::size_t>(r)] <
                                                tab.basis[static_cast<std::size_t>(leave)])) {
        best = ratio;
        leave = r;
      }
    }
    if (leave < 0) return false;
    tab.pivot(leave, enter);
  }
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, double tol) {
  const Eigen::Index m = lp.A.rows();
  const Eigen::Index nv = lp.A.cols();
  if (lp.b.size() != m || lp.cost.size() != nv) throw ParameterError("LP dimension mismatch");

  std::vector<Eigen::Index> artificial_rows;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (lp.b[i] < 0.0) artificial_rows.push_back(i);
  }
  const auto na = static_cast<Eigen::Index>(artificial_rows.size());
  Tableau tab;
  tab.cols = nv + m + na;
  tab.t = Eigen::MatrixXd::Zero(m, tab.cols + 1);
  tab.basis.assign(static_cast<std::size_t>(m), 0);
  Eigen::Index next_art = nv + m;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double sign = lp.b[i] < 0.0 ? -1.0 : 1.0;
    tab.t.row(i).head(nv) = sign * lp.A.row(i);
    tab.t(i, nv + i) = sign;
    tab.t(i, tab.cols) = sign * lp.b[i];
    if (sign < 0.0) {
      tab.t(i, next_art) = 1.0;
      tab.basis[static_cast<std::size_t>(i)] = next_art++;
    } else {
      tab.basis[static_cast<std::size_t>(i)] = nv + i;
    }
  }

  std::vector<bool> blocked(static_cast<std::size_t>(tab.cols), false);
  LpSolution sol;
  if (na > 0) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(tab.cols);
    phase1.tail(na).setOnes();
    run_simplex(tab, phase1, blocked, tol);
    double infeasibility = 0.0;
    for (Eigen::Index r = 0; r < m; ++r) {
      if (tab.basis[static_cast<std::size_t>(r)] >= nv + m) infeasibility += tab.t(r, tab.cols);
    }
    // Scaled by the rows that needed artificials only; large slack bounds
    // elsewhere must not loosen the feasibility test.
    double scale = 1.0;
    for (Eigen::Index i : artificial_rows) scale = std::max(scale, std::abs(lp.b[i]));
    if (infeasibility > 1e-9 * scale) {
      sol.status = LpSolution::Status::infeasible;
      return sol;
    }
    // Drive zero-level artificials out of the basis where possible.
    for (Eigen::Index r = 0; r < m; ++r) {
      if (tab.basis[static_cast<std::size_t>(r)] < nv + m) continue;
      Eigen::Index best = -1;
      for (Eigen::Index j = 0; j < nv + m; ++j) {
        if (std::abs(tab.t(r, j)) > tol && (best < 0 || std::abs(tab.t(r, j)) > std::abs(tab.t(r, best)))) best = j;
      }
      if (best >= 0) tab.pivot(r, best);
    }
    for (Eigen::Index j = nv + m; j < tab.cols; ++j) blocked[static_cast<std::size_t>(j)] = true;
  }

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(tab.cols);
  phase2.head(nv) = lp.cost;
  if (!run_simplex(tab, phase2, blocked, tol)) {
    sol.status = LpSolution::Status::unbounded;
    return sol;
  }
  sol.status = LpSolution::Status::optimal;
  sol.x = Eigen::VectorXd::Zero(nv);
  for (Eigen::Index r = 0; r < m; ++r) {
    const Eigen::Index b = tab.basis[static_cast<std::size_t>(r)];
    if (b < nv) sol.x[b] = tab.t(r, tab.cols);
  }
  sol.objective = lp.cost.dot(sol.x);
  return sol;
}

}  // namespace ddstab::certificates
