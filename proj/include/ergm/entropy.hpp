#ifndef ERGM_ENTROPY_HPP
#define ERGM_ENTROPY_HPP

#include <cmath>
#include <stdexcept>

namespace ergm {

/// x log x with the continuous extension 0 log 0 = 0.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

/// Entropy cost I(u) = ½u log u + ½(1-u) log(1-u); I(0) = I(1) = 0, minimum -½log2 at ½.
inline double entropy_cost(double u) { return 0.5 * (xlogx(u) + xlogx(1.0 - u)); }

/// Relative cost I_p(u) = ½u log(u/p) + ½(1-u) log((1-u)/(1-p)); zero only at u = p.
inline double relative_cost(double u, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("reference density p must lie in (0, 1)");
  double acc = 0.0;
  if (u > 0.0) acc += u * std::log(u / p);
  if (u < 1.0) acc += (1.0 - u) * std::log((1.0 - u) / (1.0 - p));
  return 0.5 * acc;
}

inline double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

inline double logit(double u) { return std::log(u) - std::log1p(-u); }

/// log(1 + e^x) without overflow.
inline double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

}  // namespace ergm

#endif
