#ifndef BLP_ERRORS_HPP
#define BLP_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace blp {

// Argument outside the mathematical domain of an operation (|z| > 1, |a| >= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid sizes, enum values or option combinations. The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A pointwise integrand produced a non-finite value at a quadrature node.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, std::complex<double> node)
      : std::runtime_error(what), node_(node) {}

  std::complex<double> node() const { return node_; }

 private:
  std::complex<double> node_;
};

// A quadrature result failed its refinement check. The CLI maps this to exit code 3.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double relative_change)
      : std::runtime_error(what), relative_change_(relative_change) {}

  double relative_change() const { return relative_change_; }

 private:
  double relative_change_;
};

}  // namespace blp

#endif  // BLP_ERRORS_HPP
