#include "qillume/special_functions.hpp"

#include <cmath>
#include <mutex>
#include <vector>

namespace qillume {

namespace {

constexpr int kLogFactorialMax = 65536;

const std::vector<double>& log_factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kLogFactorialMax + 1);
    t[0] = 0.0;
    for (int n = 1; n <= kLogFactorialMax; ++n) {
      t[n] = t[n - 1] + std::log(static_cast<double>(n));
    }
    return t;
  }();
  return table;
}

}  // namespace

double log_factorial(int n) {
  if (n < 0) throw std::domain_error("log_factorial: negative argument");
  if (n > kLogFactorialMax) {
    throw std::domain_error("log_factorial: argument exceeds table size");
  }
  return log_factorial_table()[n];
}

double log_binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) {
    throw std::domain_error("log_binomial: requires 0 <= k <= n");
  }
  if (k == 0 || k == n) return 0.0;
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

SeriesValue hyp2f1(int a, int b, int c, double x, long term_cap) {
  if (a < 1 || b < 1 || c < 1) {
    throw std::domain_error("hyp2f1: parameters must be positive integers");
  }
  if (!(x >= 0.0 && x < 1.0)) {
    throw std::domain_error("hyp2f1: x must lie in [0,1)");
  }

  SeriesValue out;
  double term = 1.0;
  double sum = 1.0;
  out.terms_used = 1;
  for (long n = 0; n < term_cap; ++n) {
    const double ratio = (static_cast<double>(a + n) * (b + n)) /
                         (static_cast<double>(c + n) * (n + 1)) * x;
    term *= ratio;
    sum += term;
    ++out.terms_used;
    if (std::abs(term) < 1e-15 * std::abs(sum) && ratio < 1.0) {
      out.value = sum;
      out.converged = true;
      return out;
    }
  }
  out.value = sum;
  out.converged = false;
  throw NonConvergenceError("hyp2f1: no convergence within term cap", out);
}

SeriesValue jacobi_theta3_zero(double q) {
  if (!(q >= 0.0 && q < 1.0)) {
    throw std::domain_error("jacobi_theta3_zero: q must lie in [0,1)");
  }
  SeriesValue out;
  double sum = 1.0;
  out.terms_used = 1;
  for (long n = 1;; ++n) {
    const double term = 2.0 * std::pow(q, static_cast<double>(n) * n);
    sum += term;
    ++out.terms_used;
    if (term < 1e-15 * sum) break;
    if (n > 1000000) {
      out.value = sum;
      throw NonConvergenceError("jacobi_theta3_zero: no convergence", out);
    }
  }
  out.value = sum;
  out.converged = true;
  return out;
}

}  // namespace qillume
