#pragma once

// Exact piecewise-polynomial solution of x'(t) = -x(t - 1) with constant
// initial history, built segment by segment. Independent of the library.

#include <cstddef>
#include <vector>

namespace oracle {

class UnitDelayDecay {
 public:
  // Segment k covers [k, k+1]; coefficients in the local variable s = t - k.
  UnitDelayDecay(double phi, int segments) {
    std::vector<double> prev{phi};
    double start = phi;
    for (int k = 0; k < segments; ++k) {
      // p_k(s) = p_{k-1}(1) - int_0^s p_{k-1}(u) du, with p_{-1} = phi.
      std::vector<double> cur(prev.size() + 1, 0.0);
      cur[0] = start;
      for (std::size_t j = 0; j < prev.size(); ++j) cur[j + 1] = -prev[j] / static_cast<double>(j + 1);
      segments_.push_back(cur);
      start = eval_poly(cur, 1.0);
      prev = cur;
    }
  }

  double operator()(double t) const {
    if (t <= 0.0) return segments_.front()[0];
    std::size_t k = static_cast<std::size_t>(t);
    if (k >= segments_.size()) k = segments_.size() - 1;
    return eval_poly(segments_[k], t - static_cast<double>(k));
  }

 private:
  static double eval_poly(const std::vector<double>& c, double s) {
    double acc = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) acc = acc * s + c[j];
    return acc;
  }

  std::vector<std::vector<double>> segments_;
};

}  // namespace oracle
