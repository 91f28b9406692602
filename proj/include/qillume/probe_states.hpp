#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qillume {

enum class ProbeOp {
  TMSV,
  ADD_BOTH,
  SUB_BOTH,
  ADD_IDLER,
  ADD_SIGNAL,
  SUB_IDLER,
  SUB_SIGNAL,
};

std::string to_string(ProbeOp op);
ProbeOp probe_op_from_string(const std::string& name);

/// Symbolic description of a probe family. k counts photons added to or
/// subtracted from the idler mode, l the signal mode, x = tanh^2(r).
struct ProbeSpec {
  ProbeOp op = ProbeOp::TMSV;
  int k = 0;
  int l = 0;
  double x = 0.0;

  void validate() const;
  /// Human-readable descriptor, e.g. "SUB_BOTH(k=2,l=2,x=0.2)".
  std::string describe() const;
};

/// Thrown when the coefficient tail dropped by truncation is too heavy.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, int suggested_trunc)
      : std::runtime_error(what), suggested_trunc_(suggested_trunc) {}
  int suggested_trunc() const { return suggested_trunc_; }

 private:
  int suggested_trunc_;
};

/// Truncated coefficient vector of a pure two-mode state on the
/// correlated ladder index n. Physical Fock indices are
/// (n + idler_offset, n + signal_offset).
struct FockVector {
  std::vector<double> coeffs;  // coeffs[i] is c_{n_start + i}
  int n_start = 0;
  int idler_offset = 0;
  int signal_offset = 0;
  int truncation = 0;        // largest ladder index kept
  double norm_deficit = 0.0; // 1 - sum c_n^2

  double coeff(int n) const {
    return (n < n_start || n > truncation) ? 0.0
                                           : coeffs[static_cast<size_t>(n - n_start)];
  }
  int max_idler_index() const { return truncation + idler_offset; }
  int max_signal_index() const { return truncation + signal_offset; }
};

/// Suggested starting truncation for the ladder sum: 35 for the TMSV and
/// photon-added states, 45 for photon-subtracted ones.
int choose_truncation(const ProbeSpec& spec);

/// Normalized coefficient vector on ladder indices n_start..trunc.
/// Throws TruncationError if the dropped tail weight is >= 1e-8.
FockVector build_probe(const ProbeSpec& spec, int trunc);

/// build_probe with automatic escalation of the truncation until the
/// tail weight drops below 1e-8.
FockVector build_probe_auto(const ProbeSpec& spec);

/// Mean photon number of the signal mode, sum_n (n + signal_offset) c_n^2.
double signal_strength(const FockVector& v);

/// Matched coherent amplitude squared |omega|^2 for the classical
/// comparison; identical to signal_strength by definition.
double coherent_signal_match(const FockVector& v);

}  // namespace qillume
