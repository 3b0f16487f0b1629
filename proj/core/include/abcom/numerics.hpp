#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace abcom {

/// Thrown when an iterative numeric routine fails to converge within its
/// budget. The message carries the diagnostics (achieved error, target, ...).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Regularized lower incomplete gamma function P(a, x) = gamma(a, x) / Gamma(a),
/// a > 0, x >= 0. Series expansion for x < a + 1, continued fraction otherwise.
double regularized_lower_gamma(double a, double x);

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 200;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 1;
};

/// Adaptive Gauss-Kronrod (7,15) integration of f over [lo, hi]. Splits the
/// worst interval until the summed error estimate meets
/// max(abs_tol, rel_tol * |value|), else throws NumericalError.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    const QuadratureSpec& spec = {});

}  // namespace abcom
