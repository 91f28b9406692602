#pragma once

#include <stdexcept>

namespace qillume {

/// Result of a truncated series evaluation.
struct SeriesValue {
  double value = 0.0;
  long terms_used = 0;
  bool converged = false;
};

/// Thrown when a series fails to converge within the hard term cap.
/// Carries the partial sum accumulated so far.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, SeriesValue partial)
      : std::runtime_error(what), partial_(partial) {}
  const SeriesValue& partial() const { return partial_; }

 private:
  SeriesValue partial_;
};

/// Gauss hypergeometric series 2F1(a,b;c;x) for positive integer
/// parameters and 0 <= x < 1, accumulated by term-ratio recursion.
SeriesValue hyp2f1(int a, int b, int c, double x, long term_cap = 1000000);

/// Jacobi theta function of the third kind at z = 0:
/// theta3(0,q) = 1 + 2 sum_{n>=1} q^(n^2), for 0 <= q < 1.
SeriesValue jacobi_theta3_zero(double q);

/// ln(n!) from an immutable cumulative table.
double log_factorial(int n);

/// ln C(n,k); exact 0 for k in {0, n}. Requires 0 <= k <= n.
double log_binomial(int n, int k);

}  // namespace qillume
