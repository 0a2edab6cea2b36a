#include "ddstab/dde/history_buffer.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ddstab/errors.hpp"

namespace ddstab::dde {

HistoryBuffer::HistoryBuffer(Eigen::Index dim, double window) : dim_(dim), window_(window) {
  if (dim <= 0) throw ParameterError("history buffer dimension must be positive");
  if (!(window >= 0.0) || !std::isfinite(window)) {
    throw ParameterError("history buffer window must be finite and >= 0");
  }
}

double HistoryBuffer::front_time() const {
  if (knots_.empty()) throw Error("history buffer is empty");
  return knots_.front().t;
}

double HistoryBuffer::back_time() const {
  if (knots_.empty()) throw Error("history buffer is empty");
  return knots_.back().t;
}

const Eigen::VectorXd& HistoryBuffer::back_state() const {
  if (knots_.empty()) throw Error("history buffer is empty");
  return knots_.back().x;
}

void HistoryBuffer::push(double t, Eigen::VectorXd x) {
  if (x.size() != dim_) {
    throw ParameterError("knot dimension " + std::to_string(x.size()) + " != buffer dimension " +
                         std::to_string(dim_));
  }
  if (!knots_.empty() && !(t > knots_.back().t)) {
    throw ParameterError("knot times must be strictly increasing");
  }
  knots_.push_back(Knot{t, std::move(x), {}, {}});
}

void HistoryBuffer::set_back_slope(const Eigen::VectorXd& slope) {
  if (knots_.empty()) throw Error("history buffer is empty");
  if (slope.size() != dim_) throw ParameterError("slope dimension mismatch");
  knots_.back().left = slope;
  knots_.back().right = slope;
}

void HistoryBuffer::set_back_right_slope(const Eigen::VectorXd& slope) {
  if (knots_.empty()) throw Error("history buffer is empty");
  if (slope.size() != dim_) throw ParameterError("slope dimension mismatch");
  knots_.back().right = slope;
}

void HistoryBuffer::freeze_back_slope() {
  if (knots_.empty()) throw Error("history buffer is empty");
  Eigen::VectorXd slope(dim_);
  for (Eigen::Index i = 0; i < dim_; ++i) slope[i] = fd_slope(knots_.size() - 1, i);
  knots_.back().left = slope;
  knots_.back().right = std::move(slope);
}

void HistoryBuffer::trim(double t_now) {
  const double keep_from = t_now - window_;
  while (knots_.size() > 3 && knots_[2].t <= keep_from) knots_.pop_front();
}

std::size_t HistoryBuffer::locate(double t, bool& exact) const {
  if (knots_.empty()) throw Error("history buffer is empty");
  const double lo = knots_.front().t;
  const double hi = knots_.back().t;
  if (!(t >= lo && t <= hi)) throw OutOfRangeError(t, lo, hi);
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                             [](double value, const Knot& k) { return value < k.t; });
  // it points past the last knot with time <= t.
  const auto k = static_cast<std::size_t>(std::distance(knots_.begin(), it)) - 1;
  exact = knots_[k].t == t;
  return k;
}

double HistoryBuffer::fd_slope(std::size_t k, Eigen::Index i) const {
  const std::size_t n = knots_.size();
  if (n < 2) return 0.0;
  if (n == 2) return (knots_[1].x[i] - knots_[0].x[i]) / (knots_[1].t - knots_[0].t);
  if (k == 0) {
    const double h0 = knots_[1].t - knots_[0].t;
    const double h1 = knots_[2].t - knots_[1].t;
    return -(2 * h0 + h1) / (h0 * (h0 + h1)) * knots_[0].x[i] + (h0 + h1) / (h0 * h1) * knots_[1].x[i] -
           h0 / (h1 * (h0 + h1)) * knots_[2].x[i];
  }
  if (k == n - 1) {
    const double h0 = knots_[k - 1].t - knots_[k - 2].t;
    const double h1 = knots_[k].t - knots_[k - 1].t;
    return h1 / (h0 * (h0 + h1)) * knots_[k - 2].x[i] - (h0 + h1) / (h0 * h1) * knots_[k - 1].x[i] +
           (2 * h1 + h0) / (h1 * (h0 + h1)) * knots_[k].x[i];
  }
  const double h0 = knots_[k].t - knots_[k - 1].t;
  const double h1 = knots_[k + 1].t - knots_[k].t;
  return -h1 / (h0 * (h0 + h1)) * knots_[k - 1].x[i] + (h1 - h0) / (h0 * h1) * knots_[k].x[i] +
         h0 / (h1 * (h0 + h1)) * knots_[k + 1].x[i];
}

double HistoryBuffer::right_slope(std::size_t k, Eigen::Index i) const {
  const auto& s = knots_[k].right;
  return s.size() ? s[i] : fd_slope(k, i);
}

double HistoryBuffer::left_slope(std::size_t k, Eigen::Index i) const {
  const auto& s = knots_[k].left;
  return s.size() ? s[i] : fd_slope(k, i);
}

void HistoryBuffer::eval_into(double t, Eigen::Ref<Eigen::VectorXd> out) const {
  if (out.size() != dim_) throw ParameterError("output dimension mismatch in history lookup");
  bool exact = false;
  const std::size_t k = locate(t, exact);
  if (exact) {
    out = knots_[k].x;
    return;
  }
  const Knot& a = knots_[k];
  const Knot& b = knots_[k + 1];
  const double dt = b.t - a.t;
  const double s = (t - a.t) / dt;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  if (a.right.size() && b.left.size()) {
    out = h00 * a.x + (h10 * dt) * a.right + h01 * b.x + (h11 * dt) * b.left;
    return;
  }
  for (Eigen::Index i = 0; i < dim_; ++i) {
    out[i] = h00 * a.x[i] + h10 * dt * right_slope(k, i) + h01 * b.x[i] +
             h11 * dt * left_slope(k + 1, i);
  }
}

Eigen::VectorXd HistoryBuffer::eval(double t) const {
  Eigen::VectorXd out(dim_);
  eval_into(t, out);
  return out;
}

double HistoryBuffer::eval_component(double t, Eigen::Index i) const {
  if (i < 0 || i >= dim_) throw ParameterError("component index out of range");
  bool exact = false;
  const std::size_t k = locate(t, exact);
  if (exact) return knots_[k].x[i];
  const Knot& a = knots_[k];
  const Knot& b = knots_[k + 1];
  const double dt = b.t - a.t;
  const double s = (t - a.t) / dt;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * a.x[i] + (s3 - 2 * s2 + s) * dt * right_slope(k, i) +
         (-2 * s3 + 3 * s2) * b.x[i] + (s3 - s2) * dt * left_slope(k + 1, i);
}

}  // namespace ddstab::dde
