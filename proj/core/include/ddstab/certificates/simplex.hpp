#pragma once

#include <Eigen/Core>

namespace ddstab::certificates {

/// minimize cost' x  subject to  A x <= b,  x >= 0.
struct LinearProgram {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd cost;
};

struct LpSolution {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

/// Dense two-phase tableau simplex with Bland's rule. Intended for the
/// small problems produced by weight searches (hundreds of rows).
LpSolution solve_lp(const LinearProgram& lp, double tol = 1e-10);

}  // namespace ddstab::certificates
