#include <doctest.h>

#include <cmath>
#include <vector>

#include "qillume/probe_states.hpp"

using namespace qillume;

namespace {

// Oracle: apply the ladder-operator factors of k additions/subtractions on
// the idler and l on the signal to a long raw TMSV coefficient vector and
// renormalize. Signs of k/l distinguish addition (+) from subtraction (-).
struct OracleState {
  std::vector<double> c;  // c[i] is the coefficient of ladder index n_start + i
  int n_start;
  int idler_offset;
  int signal_offset;
};

OracleState apply_ops(double x, int k_idler, int l_signal, int big = 400) {
  const int k = std::abs(k_idler), l = std::abs(l_signal);
  const int n_start = std::max(k_idler < 0 ? k : 0, l_signal < 0 ? l : 0);
  OracleState s;
  s.n_start = n_start;
  s.idler_offset = k_idler < 0 ? -k : k;
  s.signal_offset = l_signal < 0 ? -l : l;
  double norm = 0.0;
  for (int n = n_start; n <= big; ++n) {
    double amp = std::pow(x, 0.5 * n);
    auto raise = [&](int count) {
      for (int j = 1; j <= count; ++j) amp *= std::sqrt(static_cast<double>(n + j));
    };
    auto lower = [&](int count) {
      for (int j = 0; j < count; ++j) amp *= std::sqrt(static_cast<double>(n - j));
    };
    if (k_idler > 0) raise(k); else lower(k);
    if (l_signal > 0) raise(l); else lower(l);
    s.c.push_back(amp);
    norm += amp * amp;
  }
  for (double& v : s.c) v /= std::sqrt(norm);
  return s;
}

void check_against_oracle(const ProbeSpec& spec, int k_idler, int l_signal) {
  CAPTURE(spec.describe());
  const FockVector v = build_probe_auto(spec);
  const OracleState o = apply_ops(spec.x, k_idler, l_signal);
  REQUIRE(v.n_start == o.n_start);
  REQUIRE(v.idler_offset == o.idler_offset);
  REQUIRE(v.signal_offset == o.signal_offset);
  for (int n = v.n_start; n <= v.truncation; ++n) {
    CHECK(v.coeff(n) ==
          doctest::Approx(o.c[static_cast<size_t>(n - o.n_start)]).epsilon(1e-11));
  }
}

}  // namespace

TEST_CASE("probe coefficients match the ladder-operator oracle") {
  const double x = 0.2;
  check_against_oracle({ProbeOp::TMSV, 0, 0, x}, 0, 0);
  check_against_oracle({ProbeOp::ADD_BOTH, 2, 1, x}, 2, 1);
  check_against_oracle({ProbeOp::ADD_BOTH, 3, 3, x}, 3, 3);
  check_against_oracle({ProbeOp::SUB_BOTH, 2, 1, x}, -2, -1);
  check_against_oracle({ProbeOp::SUB_BOTH, 1, 2, x}, -1, -2);
  check_against_oracle({ProbeOp::SUB_BOTH, 5, 5, x}, -5, -5);
  check_against_oracle({ProbeOp::ADD_IDLER, 2, 0, x}, 2, 0);
  check_against_oracle({ProbeOp::ADD_SIGNAL, 0, 3, x}, 0, 3);
  check_against_oracle({ProbeOp::SUB_IDLER, 2, 0, x}, -2, 0);
  check_against_oracle({ProbeOp::SUB_SIGNAL, 0, 2, x}, 0, -2);
  check_against_oracle({ProbeOp::ADD_BOTH, 2, 1, 0.05}, 2, 1);
  check_against_oracle({ProbeOp::SUB_BOTH, 2, 2, 0.05}, -2, -2);
}

TEST_CASE("signal-mode addition equals idler-mode subtraction") {
  for (int m : {1, 2, 3}) {
    const FockVector add = build_probe_auto({ProbeOp::ADD_SIGNAL, 0, m, 0.2});
    const FockVector sub = build_probe_auto({ProbeOp::SUB_IDLER, m, 0, 0.2});
    // Same physical amplitudes: ADD_SIGNAL ladder n sits at (n, n+m), which
    // is SUB_IDLER ladder index n + m.
    for (int n = 0; n <= add.truncation; ++n) {
      CHECK(add.coeff(n) == doctest::Approx(sub.coeff(n + m)).epsilon(1e-12));
    }
  }
}

TEST_CASE("normalization bookkeeping") {
  for (const ProbeSpec spec : {ProbeSpec{ProbeOp::TMSV, 0, 0, 0.2},
                               ProbeSpec{ProbeOp::SUB_BOTH, 4, 4, 0.2},
                               ProbeSpec{ProbeOp::ADD_BOTH, 5, 5, 0.05}}) {
    const FockVector v = build_probe_auto(spec);
    double norm = 0.0;
    for (double c : v.coeffs) norm += c * c;
    CHECK(norm == doctest::Approx(1.0 - v.norm_deficit).epsilon(1e-14));
    CHECK(v.norm_deficit < 1e-8);
    CHECK(v.norm_deficit >= 0.0);
  }
}

TEST_CASE("truncation escalation") {
  CHECK_THROWS_AS(build_probe({ProbeOp::TMSV, 0, 0, 0.5}, 5), TruncationError);
  try {
    build_probe({ProbeOp::TMSV, 0, 0, 0.5}, 5);
  } catch (const TruncationError& e) {
    CHECK(e.suggested_trunc() > 5);
  }
  const FockVector v = build_probe_auto({ProbeOp::TMSV, 0, 0, 0.9});
  CHECK(v.norm_deficit < 1e-8);
  CHECK(v.truncation > 35);
}

TEST_CASE("zero squeezing degenerates to Fock products") {
  const FockVector tmsv = build_probe_auto({ProbeOp::TMSV, 0, 0, 0.0});
  CHECK(tmsv.coeff(0) == doctest::Approx(1.0));
  for (int n = 1; n <= tmsv.truncation; ++n) CHECK(tmsv.coeff(n) == 0.0);

  const FockVector added = build_probe_auto({ProbeOp::ADD_IDLER, 2, 0, 0.0});
  CHECK(added.coeff(0) == doctest::Approx(1.0));
  CHECK(added.max_idler_index() >= 2);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(ProbeSpec({ProbeOp::TMSV, 1, 0, 0.2}).validate(), std::domain_error);
  CHECK_THROWS_AS(ProbeSpec({ProbeOp::TMSV, 0, 0, 0.96}).validate(), std::domain_error);
  CHECK_THROWS_AS(ProbeSpec({ProbeOp::ADD_IDLER, 0, 0, 0.2}).validate(),
                  std::domain_error);
  CHECK_THROWS_AS(ProbeSpec({ProbeOp::ADD_SIGNAL, 1, 1, 0.2}).validate(),
                  std::domain_error);
  CHECK_THROWS_AS(ProbeSpec({ProbeOp::SUB_BOTH, 0, 0, 0.2}).validate(),
                  std::domain_error);
  CHECK_NOTHROW(ProbeSpec({ProbeOp::SUB_BOTH, 2, 0, 0.2}).validate());
}

TEST_CASE("signal strength closed form for the TMSV") {
  for (double x : {0.05, 0.2, 0.5}) {
    const FockVector v = build_probe_auto({ProbeOp::TMSV, 0, 0, x});
    CHECK(signal_strength(v) == doctest::Approx(x / (1.0 - x)).epsilon(1e-9));
    CHECK(coherent_signal_match(v) == signal_strength(v));
  }
}

TEST_CASE("probe op round trip") {
  for (ProbeOp op : {ProbeOp::TMSV, ProbeOp::ADD_BOTH, ProbeOp::SUB_BOTH,
                     ProbeOp::ADD_IDLER, ProbeOp::ADD_SIGNAL, ProbeOp::SUB_IDLER,
                     ProbeOp::SUB_SIGNAL}) {
    CHECK(probe_op_from_string(to_string(op)) == op);
  }
  CHECK_THROWS_AS(probe_op_from_string("BOGUS"), std::invalid_argument);
}
