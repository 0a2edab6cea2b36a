#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

namespace ddstab::certificates {

enum class DominanceMode { column, row };

struct WeightSearchOptions {
  /// Added to every entry's magnitude (a r / (1 - d) or a r); 0 for B or dH/dx.
  double offset = 0.0;
  /// Weights are searched in [1, max_weight].
  double max_weight = 1e6;
  /// Bisection stops once the bracket on c is narrower than this.
  double tolerance = 1e-12;
};

struct WeightSolution {
  Eigen::VectorXd weights;
  /// Decay margin achieved by `weights` over all samples (> 0).
  double c = 0.0;
};

/// Finds element-wise positive weights that make every sampled matrix
/// weighted-dominant in the given mode, maximizing the common decay margin
/// c by bisection over LP feasibility problems. Among weights achieving the
/// final c, the one with the smallest sum is returned. std::nullopt when no
/// c > 0 is achievable.
std::optional<WeightSolution> find_weights(const std::vector<Eigen::MatrixXd>& samples,
                                           DominanceMode mode, const WeightSearchOptions& options = {});

/// Single-matrix alternative without an LP: the Perron vector of the
/// Metzler comparison matrix, found by power iteration. The returned c may
/// be <= 0 (not dominant for any weights).
WeightSolution perron_weights(const Eigen::MatrixXd& m, DominanceMode mode, double offset = 0.0);

}  // namespace ddstab::certificates
