#include "qillume/probe_states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qillume/special_functions.hpp"

namespace qillume {

std::string to_string(ProbeOp op) {
  switch (op) {
    case ProbeOp::TMSV: return "TMSV";
    case ProbeOp::ADD_BOTH: return "ADD_BOTH";
    case ProbeOp::SUB_BOTH: return "SUB_BOTH";
    case ProbeOp::ADD_IDLER: return "ADD_IDLER";
    case ProbeOp::ADD_SIGNAL: return "ADD_SIGNAL";
    case ProbeOp::SUB_IDLER: return "SUB_IDLER";
    case ProbeOp::SUB_SIGNAL: return "SUB_SIGNAL";
  }
  throw std::logic_error("to_string: bad ProbeOp");
}

ProbeOp probe_op_from_string(const std::string& name) {
  if (name == "TMSV") return ProbeOp::TMSV;
  if (name == "ADD_BOTH") return ProbeOp::ADD_BOTH;
  if (name == "SUB_BOTH") return ProbeOp::SUB_BOTH;
  if (name == "ADD_IDLER") return ProbeOp::ADD_IDLER;
  if (name == "ADD_SIGNAL") return ProbeOp::ADD_SIGNAL;
  if (name == "SUB_IDLER") return ProbeOp::SUB_IDLER;
  if (name == "SUB_SIGNAL") return ProbeOp::SUB_SIGNAL;
  throw std::invalid_argument("unknown probe operation: " + name);
}

void ProbeSpec::validate() const {
  if (!(x >= 0.0 && x <= 0.95)) {
    throw std::domain_error("ProbeSpec: x must lie in [0, 0.95]");
  }
  if (k < 0 || l < 0) throw std::domain_error("ProbeSpec: negative photon count");
  switch (op) {
    case ProbeOp::TMSV:
      if (k != 0 || l != 0) throw std::domain_error("ProbeSpec: TMSV requires k = l = 0");
      break;
    case ProbeOp::ADD_BOTH:
    case ProbeOp::SUB_BOTH:
      if (k == 0 && l == 0) throw std::domain_error("ProbeSpec: two-mode op needs photons");
      break;
    case ProbeOp::ADD_IDLER:
    case ProbeOp::SUB_IDLER:
      if (k < 1 || l != 0) throw std::domain_error("ProbeSpec: idler op uses k only");
      break;
    case ProbeOp::ADD_SIGNAL:
    case ProbeOp::SUB_SIGNAL:
      if (l < 1 || k != 0) throw std::domain_error("ProbeSpec: signal op uses l only");
      break;
  }
}

std::string ProbeSpec::describe() const {
  std::ostringstream os;
  os << to_string(op) << "(k=" << k << ",l=" << l << ",x=" << x << ")";
  return os.str();
}

int choose_truncation(const ProbeSpec& spec) {
  switch (spec.op) {
    case ProbeOp::SUB_BOTH:
    case ProbeOp::SUB_IDLER:
    case ProbeOp::SUB_SIGNAL:
      return 45;
    default:
      return 35;
  }
}

namespace {

struct LadderShape {
  int n_start;
  int idler_offset;
  int signal_offset;
};

LadderShape shape_of(const ProbeSpec& s) {
  switch (s.op) {
    case ProbeOp::TMSV: return {0, 0, 0};
    case ProbeOp::ADD_BOTH: return {0, s.k, s.l};
    case ProbeOp::SUB_BOTH: return {std::max(s.k, s.l), -s.k, -s.l};
    case ProbeOp::ADD_IDLER: return {0, s.k, 0};
    case ProbeOp::ADD_SIGNAL: return {0, 0, s.l};
    case ProbeOp::SUB_IDLER: return {s.k, -s.k, 0};
    case ProbeOp::SUB_SIGNAL: return {s.l, 0, -s.l};
  }
  throw std::logic_error("shape_of: bad ProbeOp");
}

// ln c_n for ladder index n, before exponentiation. -inf means zero.
double log_coeff(const ProbeSpec& s, int n) {
  const double lx = s.x > 0.0 ? std::log(s.x) : 0.0;
  const double l1mx = std::log1p(-s.x);
  auto xpow = [&](double half_exponent) -> double {
    if (s.x == 0.0) {
      return half_exponent == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    return half_exponent * lx;
  };
  switch (s.op) {
    case ProbeOp::TMSV:
      return 0.5 * l1mx + xpow(0.5 * n);
    case ProbeOp::ADD_BOTH: {
      const double norm = hyp2f1(s.k + 1, s.l + 1, 1, s.x).value;
      return xpow(0.5 * n) - 0.5 * std::log(norm) +
             0.5 * (log_binomial(n + s.k, s.k) + log_binomial(n + s.l, s.l));
    }
    case ProbeOp::SUB_BOTH: {
      // For l > k the paper's interchange applies to the hypergeometric
      // normalization and the denominator binomial.
      const int hi = std::max(s.k, s.l);
      const int lo = std::min(s.k, s.l);
      const double norm = hyp2f1(hi + 1, hi + 1, 1 + hi - lo, s.x).value;
      return xpow(0.5 * (n - hi)) - 0.5 * std::log(norm) +
             0.5 * (log_binomial(n, s.k) + log_binomial(n, s.l) - log_binomial(hi, lo));
    }
    case ProbeOp::ADD_IDLER:
      return xpow(0.5 * n) + 0.5 * (1 + s.k) * l1mx + 0.5 * log_binomial(n + s.k, s.k);
    case ProbeOp::ADD_SIGNAL:
      return xpow(0.5 * n) + 0.5 * (1 + s.l) * l1mx + 0.5 * log_binomial(n + s.l, s.l);
    case ProbeOp::SUB_IDLER:
      return xpow(0.5 * (n - s.k)) + 0.5 * (1 + s.k) * l1mx + 0.5 * log_binomial(n, s.k);
    case ProbeOp::SUB_SIGNAL:
      return xpow(0.5 * (n - s.l)) + 0.5 * (1 + s.l) * l1mx + 0.5 * log_binomial(n, s.l);
  }
  throw std::logic_error("log_coeff: bad ProbeOp");
}

}  // namespace

FockVector build_probe(const ProbeSpec& spec, int trunc) {
  spec.validate();
  const LadderShape shape = shape_of(spec);
  if (trunc < shape.n_start) {
    throw std::domain_error("build_probe: truncation below the lower summation limit");
  }

  FockVector v;
  v.n_start = shape.n_start;
  v.idler_offset = shape.idler_offset;
  v.signal_offset = shape.signal_offset;
  v.truncation = trunc;
  v.coeffs.resize(static_cast<size_t>(trunc - shape.n_start + 1));

  double norm = 0.0;
  for (int n = shape.n_start; n <= trunc; ++n) {
    const double c = std::exp(log_coeff(spec, n));
    v.coeffs[static_cast<size_t>(n - shape.n_start)] = c;
    norm += c * c;
  }
  v.norm_deficit = std::max(0.0, 1.0 - norm);
  if (!(v.norm_deficit < 1e-8)) {
    // Estimate the truncation needed from the asymptotic term ratio -> x.
    const double last = v.coeffs.back() * v.coeffs.back();
    int extra = 16;
    if (spec.x > 0.0 && last > 0.0) {
      extra = static_cast<int>(std::ceil(std::log(1e-9 * (1.0 - spec.x) / last) /
                                         std::log(spec.x))) +
              8;
      extra = std::clamp(extra, 16, 512);
    }
    throw TruncationError("build_probe: tail weight " + std::to_string(v.norm_deficit) +
                              " >= 1e-8 at truncation " + std::to_string(trunc),
                          trunc + extra);
  }
  return v;
}

FockVector build_probe_auto(const ProbeSpec& spec) {
  int trunc = choose_truncation(spec);
  for (int attempt = 0; attempt < 24; ++attempt) {
    try {
      return build_probe(spec, trunc);
    } catch (const TruncationError& e) {
      trunc = std::max(e.suggested_trunc(), trunc + trunc / 4 + 1);
    }
  }
  throw TruncationError("build_probe_auto: escalation failed for " + spec.describe(), trunc);
}

double signal_strength(const FockVector& v) {
  double ns = 0.0;
  for (int n = v.n_start; n <= v.truncation; ++n) {
    const double c = v.coeff(n);
    ns += static_cast<double>(n + v.signal_offset) * c * c;
  }
  return ns;
}

double coherent_signal_match(const FockVector& v) { return signal_strength(v); }

}  // namespace qillume
