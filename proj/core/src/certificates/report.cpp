#include "ddstab/certificates/report.hpp"

#include <vector>

namespace ddstab::certificates {

namespace {

std::vector<double> to_vec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

nlohmann::json to_json_list(const std::vector<Eigen::VectorXd>& vs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : vs) out.push_back(to_vec(v));
  return out;
}

}  // namespace

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::column_dominance:
      return "column_dominance";
    case Condition::row_dominance:
      return "row_dominance";
    case Condition::input_matrix_column:
      return "input_matrix_column";
    case Condition::output_map_row:
      return "output_map_row";
  }
  return "unknown";
}

nlohmann::json to_json(const SamplePoint& p) {
  return nlohmann::json{{"t", p.t},
                        {"x", to_vec(p.x)},
                        {"y", to_json_list(p.y)},
                        {"xi", to_vec(p.xi)},
                        {"eta", to_json_list(p.eta)}};
}

nlohmann::json to_json(const CertificateReport& report) {
  // Key order is fixed by nlohmann's sorted object map.
  return nlohmann::json{{"condition", std::string(to_string(report.condition))},
                        {"weight", to_vec(report.weight)},
                        {"c_star", report.c_star},
                        {"worst_sample", to_json(report.worst_sample)},
                        {"worst_index", report.worst_index},
                        {"samples_checked", report.samples_checked},
                        {"a_bound", report.a_bound},
                        {"d_bound", report.d_bound},
                        {"r", report.r}};
}

}  // namespace ddstab::certificates
