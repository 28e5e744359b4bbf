#ifndef ERGM_LOGSPACE_HPP
#define ERGM_LOGSPACE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

namespace ergm {

/// log Σ e^{x_i}; -inf for an empty or all -inf input.
inline double log_sum_exp(std::span<const double> xs) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : xs) hi = std::max(hi, x);
  if (!std::isfinite(hi)) return hi;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - hi);
  return hi + std::log(acc);
}

/// log((1/N) Σ e^{x_i}).
inline double log_mean_exp(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("log_mean_exp of an empty sample");
  return log_sum_exp(xs) - std::log(static_cast<double>(xs.size()));
}

/// log C(m, j) via lgamma.
inline double log_binomial(double m, double j) {
  return std::lgamma(m + 1.0) - std::lgamma(j + 1.0) - std::lgamma(m - j + 1.0);
}

/// Running log-sum-exp accumulator.
class LogSum {
 public:
  void add(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return;
    if (x <= hi_) {
      acc_ += std::exp(x - hi_);
    } else {
      acc_ = acc_ * std::exp(hi_ - x) + 1.0;
      hi_ = x;
    }
  }

  [[nodiscard]] double value() const {
    return acc_ > 0.0 ? hi_ + std::log(acc_) : -std::numeric_limits<double>::infinity();
  }

 private:
  double hi_ = -std::numeric_limits<double>::infinity();
  double acc_ = 0.0;
};

}  // namespace ergm

#endif
