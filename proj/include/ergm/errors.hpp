#ifndef ERGM_ERRORS_HPP
#define ERGM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ergm {

/// A computation refused to run because its cost or range exceeds a fixed bound
/// (enumeration size, double overflow). Distinct from bad input.
class guard_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative method stopped without meeting its tolerance.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double residual, long iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}

  [[nodiscard]] double residual() const noexcept { return residual_; }
  [[nodiscard]] long iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  long iterations_;
};

}  // namespace ergm

#endif
