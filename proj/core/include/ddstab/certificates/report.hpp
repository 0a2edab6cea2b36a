#pragma once

#include <cstddef>
#include <string_view>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "ddstab/certificates/sampler.hpp"

namespace ddstab::certificates {

enum class Condition {
  column_dominance,     // weighted column dominance of dg/dxi, inflated by a r / (1 - d)
  row_dominance,        // weighted row dominance of dg/dxi, inflated by a r
  input_matrix_column,  // weighted column dominance of B
  output_map_row,       // weighted row dominance of dH/dx
};

std::string_view to_string(Condition c);

/// Outcome of a sampled dominance check. c_star is the best decay margin:
/// c_star > 0 means every checked sample satisfies its inequality with
/// margin <= -c_star (PASS); c_star <= 0 is a FAIL with `worst_sample` as
/// the witness. Results hold on the samples only.
struct CertificateReport {
  Condition condition = Condition::column_dominance;
  Eigen::VectorXd weight;
  double c_star = 0.0;
  SamplePoint worst_sample;
  /// Row or column index attaining the worst margin at `worst_sample`.
  Eigen::Index worst_index = 0;
  std::size_t samples_checked = 0;
  double a_bound = 0.0;
  double d_bound = 0.0;
  std::size_t r = 0;

  bool passed() const { return c_star > 0.0; }
};

nlohmann::json to_json(const SamplePoint& p);
nlohmann::json to_json(const CertificateReport& report);

}  // namespace ddstab::certificates
