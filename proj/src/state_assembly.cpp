#include "qillume/state_assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "qillume/special_functions.hpp"

namespace qillume {

void ChannelParams::validate() const {
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    throw std::domain_error("ChannelParams: kappa must lie in [0,1]");
  }
  if (!(n_bath >= 0.0)) throw std::domain_error("ChannelParams: n_bath must be >= 0");
}

std::vector<double> gaussian_fock_weights(double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("gaussian_fock_weights: sigma must be > 0");
  const double q = std::exp(-1.0 / (sigma * sigma));
  const double norm = 2.0 / (1.0 + jacobi_theta3_zero(q).value);
  std::vector<double> w;
  for (int n = 0;; ++n) {
    const double wn = norm * std::exp(-static_cast<double>(n) * n / (sigma * sigma));
    if (n > 0 && wn < 1e-18) break;
    w.push_back(wn);
  }
  return w;
}

double ProbeEnsemble::total_weight() const {
  double t = 0.0;
  for (const auto& c : pure) t += c.weight;
  for (const auto& c : product) t += c.weight;
  return t;
}

ProbeEnsemble mix_local_gaussian(const FockVector& v, const NoiseModel& noise) {
  if (noise.kind != NoiseModel::Kind::LOCAL_GAUSSIAN) {
    throw std::invalid_argument("mix_local_gaussian: wrong noise kind");
  }
  if (!(noise.p >= 0.0 && noise.p <= 1.0)) {
    throw std::domain_error("mix_local_gaussian: p must lie in [0,1]");
  }
  const auto mu = gaussian_fock_weights(noise.sigma1);
  const auto nu = gaussian_fock_weights(noise.sigma2);

  ProbeEnsemble e;
  e.pure.push_back({1.0 - noise.p, v});
  for (size_t a = 0; a < mu.size(); ++a) {
    for (size_t b = 0; b < nu.size(); ++b) {
      e.product.push_back({noise.p * mu[a] * nu[b], static_cast<int>(a), static_cast<int>(b)});
    }
  }
  if (std::abs(e.total_weight() - 1.0) > 1e-10) {
    throw std::runtime_error("mix_local_gaussian: ensemble weights do not sum to 1");
  }
  return e;
}

ProbeSpec apply_faulty_squeezer(const ProbeSpec& spec, const NoiseModel& noise) {
  if (noise.kind != NoiseModel::Kind::FAULTY_SQUEEZER) {
    throw std::invalid_argument("apply_faulty_squeezer: wrong noise kind");
  }
  if (!(noise.x_actual <= spec.x)) {
    throw std::domain_error("apply_faulty_squeezer: x' must not exceed the designed x");
  }
  ProbeSpec out = spec;
  out.x = noise.x_actual;
  return out;
}

std::vector<std::pair<double, ProbeSpec>> mix_imperfect_operation(const ProbeSpec& base,
                                                                  const NoiseModel& noise) {
  if (noise.kind != NoiseModel::Kind::IMPERFECT_OP) {
    throw std::invalid_argument("mix_imperfect_operation: wrong noise kind");
  }
  double total = 0.0;
  std::vector<std::pair<double, ProbeSpec>> out;
  for (const auto& [p_i, i] : noise.mixture_weights) {
    if (p_i < 0.0) throw std::domain_error("mix_imperfect_operation: negative weight");
    total += p_i;
    ProbeSpec comp = base;
    if (comp.k > 0) {
      if (i > comp.k) throw std::domain_error("mix_imperfect_operation: discrepancy exceeds k");
      comp.k -= i;
    }
    if (comp.l > 0) {
      if (i > comp.l) throw std::domain_error("mix_imperfect_operation: discrepancy exceeds l");
      comp.l -= i;
    }
    if (comp.k == 0 && comp.l == 0) comp.op = ProbeOp::TMSV;
    out.emplace_back(p_i, comp);
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::runtime_error("mix_imperfect_operation: weights do not sum to 1");
  }
  return out;
}

namespace {

// Thermal occupation weight N_B^m / (1+N_B)^(m+1).
double thermal_weight(double n_bath, int m) {
  if (n_bath == 0.0) return m == 0 ? 1.0 : 0.0;
  return std::exp(m * std::log(n_bath) - (m + 1) * std::log1p(n_bath));
}

// Beam-splitter transition amplitudes for one signal input |s> mixed with
// a thermal input |m>: amp(s,m,d) is the amplitude of finding d photons in
// the detector port (the remaining s+m-d are lost). Rows of the cached
// matrices are additionally weighted by sqrt of the thermal weight, so a
// column dot product directly yields the thermal-averaged element.
class BsAmplitudes {
 public:
  BsAmplitudes(const ChannelParams& ch, int m_trunc, int d_max)
      : ch_(ch), m_trunc_(m_trunc), d_max_(d_max) {}

  const Eigen::MatrixXd& row(int s) {
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
    Eigen::MatrixXd w(m_trunc_ + 1, d_max_ + 1);
    for (int m = 0; m <= m_trunc_; ++m) {
      const double sq = std::sqrt(thermal_weight(ch_.n_bath, m));
      for (int d = 0; d <= d_max_; ++d) w(m, d) = sq * amplitude(s, m, d);
    }
    return cache_.emplace(s, std::move(w)).first->second;
  }

  double amplitude(int s, int m, int d) const {
    const int lost = s + m - d;
    if (lost < 0) return 0.0;
    const double log_k = ch_.kappa > 0.0 ? std::log(ch_.kappa) : 0.0;
    const double log_1mk = ch_.kappa < 1.0 ? std::log1p(-ch_.kappa) : 0.0;
    const double base =
        0.5 * (log_factorial(lost) + log_factorial(d) - log_factorial(s) - log_factorial(m));
    long double acc = 0.0L;
    for (int r = std::max(0, d - m); r <= std::min(s, d); ++r) {
      const int u = d - r;
      const int e_kappa = 2 * r + m - d;      // power of sqrt(kappa), doubled
      const int e_trans = s + d - 2 * r;      // power of sqrt(1-kappa), doubled
      if (ch_.kappa == 0.0 && e_kappa > 0) continue;
      if (ch_.kappa == 1.0 && e_trans > 0) continue;
      const double lt = log_binomial(s, r) + log_binomial(m, u) +
                        0.5 * (e_kappa * log_k + e_trans * log_1mk) + base;
      const double sign = ((m - u) % 2 == 0) ? 1.0 : -1.0;
      acc += static_cast<long double>(sign) * std::exp(static_cast<long double>(lt));
    }
    return static_cast<double>(acc);
  }

 private:
  ChannelParams ch_;
  int m_trunc_;
  int d_max_;
  std::map<int, Eigen::MatrixXd> cache_;
};

// Accumulates matrix elements into ladder-coherence blocks (key i - j).
class BlockAccum {
 public:
  BlockAccum(int d_idler, int d_signal) : di_(d_idler), ds_(d_signal) {}

  void add(int i, int j, int i2, int j2, double val) {
    const int key = i - j;
    auto& blk = block(key);
    const int lo = std::max(0, key);
    const int p = i - lo, q = i2 - lo;
    blk(p, q) += val;
    if (p != q) blk(q, p) += val;
  }

  DensityMatrix finish(std::vector<int> dims, double trace_deficit) {
    DensityMatrix out;
    out.dims = std::move(dims);
    out.trace_deficit = trace_deficit;
    for (auto& [key, m] : blocks_) {
      DensityMatrix::Block blk;
      const int lo = std::max(0, key);
      for (int i = lo; i < lo + m.rows(); ++i) blk.members.push_back(i * ds_ + (i - key));
      blk.m = std::move(m);
      out.blocks.push_back(std::move(blk));
    }
    std::sort(out.blocks.begin(), out.blocks.end(), [](const auto& a, const auto& b) {
      return a.members.front() < b.members.front();
    });
    return out;
  }

 private:
  Eigen::MatrixXd& block(int key) {
    auto it = blocks_.find(key);
    if (it != blocks_.end()) return it->second;
    const int lo = std::max(0, key);
    const int hi = std::min(di_ - 1, ds_ - 1 + key);
    if (hi < lo) throw std::logic_error("BlockAccum: index outside matrix dims");
    return blocks_.emplace(key, Eigen::MatrixXd::Zero(hi - lo + 1, hi - lo + 1))
        .first->second;
  }

  int di_, ds_;
  std::map<int, Eigen::MatrixXd> blocks_;
};

// Shared worker for rho1/rho0 over an ensemble at fixed dims and caps.
class ChannelAssembler {
 public:
  ChannelAssembler(const ChannelParams& ch, int d_idler, int d_signal, int m_trunc)
      : ch_(ch),
        di_(d_idler),
        ds_(d_signal),
        m_trunc_(m_trunc),
        amps_(ch, m_trunc, d_signal - 1),
        rho1_(d_idler, d_signal),
        rho0_(d_idler, d_signal) {}

  void add_pure(const FockVector& v, double w) {
    if (w == 0.0) return;
    if (v.max_idler_index() >= di_ || 2 * v.truncation + v.signal_offset >= ds_) {
      throw std::invalid_argument("ChannelAssembler: dims too small for probe");
    }
    for (int n = v.n_start; n <= v.truncation; ++n) {
      const auto& ws = amps_.row(n + v.signal_offset);
      const int i = n + v.idler_offset;
      for (int n2 = n; n2 <= v.truncation; ++n2) {
        const auto& ws2 = amps_.row(n2 + v.signal_offset);
        const int i2 = n2 + v.idler_offset;
        const int shift = n2 - n;
        const double cc = w * v.coeff(n) * v.coeff(n2);
        for (int d = 0; d + shift < ds_; ++d) {
          const double val = cc * ws.col(d).dot(ws2.col(d + shift));
          if (val != 0.0) rho1_.add(i, d, i2, d + shift, val);
        }
      }
      // rho0: idler marginal (x) thermal, diagonal by construction.
      const double c2 = w * v.coeff(n) * v.coeff(n);
      for (int m = 0; m < ds_; ++m) {
        rho0_.add(i, m, i, m, c2 * thermal_weight(ch_.n_bath, m));
      }
    }
  }

  void add_product(int idler_n, int signal_n, double w) {
    if (w == 0.0) return;
    if (idler_n >= di_) throw std::invalid_argument("ChannelAssembler: idler noise index");
    const auto& ws = amps_.row(signal_n);
    for (int d = 0; d < ds_; ++d) {
      const double val = w * ws.col(d).squaredNorm();
      if (val != 0.0) rho1_.add(idler_n, d, idler_n, d, val);
    }
    for (int m = 0; m < ds_; ++m) {
      rho0_.add(idler_n, m, idler_n, m, w * thermal_weight(ch_.n_bath, m));
    }
  }

  DensityMatrix take_rho1() {
    auto out = rho1_.finish({di_, ds_}, 0.0);
    out.trace_deficit = 1.0 - out.trace();
    return out;
  }
  DensityMatrix take_rho0() {
    auto out = rho0_.finish({di_, ds_}, 0.0);
    out.trace_deficit = 1.0 - out.trace();
    return out;
  }

 private:
  ChannelParams ch_;
  int di_, ds_, m_trunc_;
  BsAmplitudes amps_;
  BlockAccum rho1_;
  BlockAccum rho0_;
};

struct TwoModeDims {
  int d_idler;
  int d_signal;
};

TwoModeDims dims_for(const FockVector& v) {
  return {v.max_idler_index() + 1, 2 * v.truncation + v.signal_offset + 1};
}

constexpr double kTraceTol = 1e-8;
constexpr int kMtruncAttempts = 5;

}  // namespace

DensityMatrix assemble_rho1(const FockVector& v, const ChannelParams& ch, int m_trunc) {
  ch.validate();
  const auto [di, ds] = dims_for(v);
  if (static_cast<long>(di) * ds > 4096) {
    throw ResourceError("assemble_rho1: matrix dimension exceeds cap");
  }
  for (int attempt = 0; attempt < kMtruncAttempts; ++attempt) {
    ChannelAssembler asmb(ch, di, ds, m_trunc);
    asmb.add_pure(v, 1.0);
    auto rho1 = asmb.take_rho1();
    if (rho1.trace_deficit < kTraceTol) return rho1;
    m_trunc += m_trunc / 4 + 1;
  }
  throw TruncationError("assemble_rho1: trace deficit stuck above 1e-8; increase the ladder truncation",
                        v.truncation + v.truncation / 4 + 1);
}

DensityMatrix assemble_rho0(const FockVector& v, const ChannelParams& ch, int m_trunc) {
  ch.validate();
  (void)m_trunc;  // rho0's thermal index is capped by the signal dimension
  const auto [di, ds] = dims_for(v);
  ChannelAssembler asmb(ch, di, ds, 0);
  asmb.add_pure(v, 0.0);  // no-op; keeps layout identical
  BlockAccum accum(di, ds);
  for (int n = v.n_start; n <= v.truncation; ++n) {
    const double c2 = v.coeff(n) * v.coeff(n);
    for (int m = 0; m < ds; ++m) {
      accum.add(n + v.idler_offset, m, n + v.idler_offset, m, c2 * thermal_weight(ch.n_bath, m));
    }
  }
  auto out = accum.finish({di, ds}, 0.0);
  out.trace_deficit = 1.0 - out.trace();
  return out;
}

HypothesisPair assemble_hypotheses(const ProbeSpec& spec, const NoiseModel& noise,
                                   const ChannelParams& ch, int dim_cap) {
  ch.validate();
  std::vector<std::pair<double, ProbeSpec>> pures;
  double noise_p = 0.0;
  std::vector<double> mu, nu;
  switch (noise.kind) {
    case NoiseModel::Kind::NONE:
      pures.emplace_back(1.0, spec);
      break;
    case NoiseModel::Kind::LOCAL_GAUSSIAN:
      pures.emplace_back(1.0 - noise.p, spec);
      noise_p = noise.p;
      mu = gaussian_fock_weights(noise.sigma1);
      nu = gaussian_fock_weights(noise.sigma2);
      break;
    case NoiseModel::Kind::IMPERFECT_OP:
      pures = mix_imperfect_operation(spec, noise);
      break;
    case NoiseModel::Kind::FAULTY_SQUEEZER:
      throw std::invalid_argument(
          "assemble_hypotheses: resolve FAULTY_SQUEEZER via apply_faulty_squeezer first");
  }

  // Each mixture component is truncated independently; a subtracted component
  // needs a deeper ladder than a TMSV one, and sharing the deepest cut would
  // inflate every component's dimensions past the cap.
  std::vector<int> truncs;
  truncs.reserve(pures.size());
  for (const auto& [w, s] : pures) truncs.push_back(choose_truncation(s));

  for (int escalation = 0; escalation < 12; ++escalation) {
    std::vector<std::pair<double, FockVector>> built;
    bool retry = false;
    for (size_t i = 0; i < pures.size(); ++i) {
      try {
        built.emplace_back(pures[i].first, build_probe(pures[i].second, truncs[i]));
      } catch (const TruncationError& e) {
        truncs[i] = std::max(e.suggested_trunc(), truncs[i] + truncs[i] / 4 + 1);
        retry = true;
        break;
      }
    }
    if (retry) continue;

    int di = 0, ds = 0;
    for (const auto& [w, v] : built) {
      di = std::max(di, v.max_idler_index() + 1);
      ds = std::max(ds, 2 * v.truncation + v.signal_offset + 1);
    }
    di = std::max<int>(di, static_cast<int>(mu.size()));
    if (static_cast<long>(di) * ds > dim_cap) {
      throw ResourceError("assemble_hypotheses: dimension " + std::to_string(di) + "x" +
                          std::to_string(ds) + " exceeds cap for " + spec.describe());
    }

    const int trunc = *std::max_element(truncs.begin(), truncs.end());
    int m_trunc = 2 * trunc;
    for (int attempt = 0; attempt < kMtruncAttempts; ++attempt) {
      ChannelAssembler asmb(ch, di, ds, m_trunc);
      for (const auto& [w, v] : built) asmb.add_pure(v, w);
      for (size_t a = 0; a < mu.size(); ++a) {
        for (size_t b = 0; b < nu.size(); ++b) {
          asmb.add_product(static_cast<int>(a), static_cast<int>(b), noise_p * mu[a] * nu[b]);
        }
      }
      HypothesisPair pair{asmb.take_rho0(), asmb.take_rho1(), trunc, m_trunc};
      if (pair.rho1.trace_deficit < kTraceTol && pair.rho0.trace_deficit < kTraceTol) {
        const double min_eig = pair.rho1.min_eigenvalue();
        if (min_eig < -1e-8) {
          throw NumericalIntegrityError("assemble_hypotheses: eigenvalue " +
                                        std::to_string(min_eig) + " below -1e-8");
        }
        return pair;
      }
      m_trunc += m_trunc / 4 + 1;
    }
    for (auto& t : truncs) t += t / 4 + 1;
  }
  throw TruncationError("assemble_hypotheses: escalation failed for " + spec.describe(),
                        truncs.empty() ? 0 : truncs.front());
}

namespace {

// Coherent-state Fock coefficients, cut once the Poisson tail is negligible.
std::vector<double> coherent_coeffs(double omega_sq) {
  std::vector<double> c;
  if (omega_sq == 0.0) {
    c.push_back(1.0);
    return c;
  }
  const double lw = std::log(omega_sq);
  for (int n = 0;; ++n) {
    const double cn = std::exp(0.5 * (-omega_sq + n * lw - log_factorial(n)));
    c.push_back(cn);
    if (n > omega_sq + 4 && cn * cn < 1e-20) break;
    if (n > 512) break;
  }
  return c;
}

// The single-mode benchmark specifies the background by the occupation seen
// at the detector, so the bath entering the beam splitter carries
// n_bath / (1 - kappa); the received thermal occupation then equals n_bath
// under both hypotheses and the bound reduces to the closed form exactly.
ChannelParams coherent_bath(const ChannelParams& ch) {
  ChannelParams eff = ch;
  if (ch.kappa < 1.0) eff.n_bath = ch.n_bath / (1.0 - ch.kappa);
  return eff;
}

DensityMatrix coherent_rho1_at(double omega_sq, const ChannelParams& ch, double p,
                               const std::vector<double>& noise_mu, int m_trunc, int ds) {
  BsAmplitudes amps(coherent_bath(ch), m_trunc, ds - 1);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ds, ds);
  const auto c = coherent_coeffs(omega_sq);
  const double w_pure = 1.0 - p;
  if (w_pure > 0.0) {
    for (int n = 0; n < static_cast<int>(c.size()); ++n) {
      const auto& ws = amps.row(n);
      for (int n2 = n; n2 < static_cast<int>(c.size()); ++n2) {
        const auto& ws2 = amps.row(n2);
        const int shift = n2 - n;
        const double cc = w_pure * c[n] * c[n2] * (n == n2 ? 1.0 : 2.0);
        for (int d = 0; d + shift < ds; ++d) {
          const double val = cc * ws.col(d).dot(ws2.col(d + shift));
          m(d, d + shift) += 0.5 * val;
          m(d + shift, d) += 0.5 * val;
        }
      }
    }
  }
  if (p > 0.0) {
    for (int b = 0; b < static_cast<int>(noise_mu.size()); ++b) {
      const auto& ws = amps.row(b);
      for (int d = 0; d < ds; ++d) m(d, d) += p * noise_mu[b] * ws.col(d).squaredNorm();
    }
  }
  DensityMatrix out;
  out.dims = {ds};
  DensityMatrix::Block blk;
  blk.members.resize(ds);
  for (int d = 0; d < ds; ++d) blk.members[d] = d;
  blk.m = std::move(m);
  out.blocks.push_back(std::move(blk));
  out.trace_deficit = 1.0 - out.trace();
  return out;
}

}  // namespace

DensityMatrix assemble_coherent_rho0(const ChannelParams& ch, int d_signal) {
  ch.validate();
  DensityMatrix out;
  out.dims = {d_signal};
  DensityMatrix::Block blk;
  blk.members.resize(d_signal);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d_signal, d_signal);
  for (int d = 0; d < d_signal; ++d) {
    blk.members[d] = d;
    m(d, d) = thermal_weight(ch.n_bath, d);
  }
  blk.m = std::move(m);
  out.blocks.push_back(std::move(blk));
  out.trace_deficit = 1.0 - out.trace();
  return out;
}

DensityMatrix assemble_coherent_rho1(double omega_sq, const ChannelParams& ch, double p,
                                     const std::vector<double>& noise_mu) {
  ch.validate();
  if (omega_sq < 0.0) throw std::domain_error("assemble_coherent_rho1: omega_sq < 0");
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("assemble_coherent_rho1: p outside [0,1]");
  int m_trunc = 48;
  const double n_eff = coherent_bath(ch).n_bath;
  if (n_eff > 0.0) {
    const double ratio = std::log(n_eff / (1.0 + n_eff));
    m_trunc = std::max(m_trunc, static_cast<int>(std::ceil(std::log(1e-12) / ratio)));
  }
  int ds = m_trunc + static_cast<int>(coherent_coeffs(omega_sq).size()) + 8;
  for (int attempt = 0; attempt < kMtruncAttempts; ++attempt) {
    auto rho1 = coherent_rho1_at(omega_sq, ch, p, noise_mu, m_trunc, ds);
    if (rho1.trace_deficit < kTraceTol) return rho1;
    m_trunc += m_trunc / 4 + 1;
    ds += ds / 4 + 1;
    if (ds > 4096) throw ResourceError("assemble_coherent_rho1: dimension exceeds cap");
  }
  throw TruncationError("assemble_coherent_rho1: trace deficit stuck above 1e-8", ds);
}

HypothesisPair assemble_coherent_hypotheses(double omega_sq, const ChannelParams& ch,
                                            double p, double sigma) {
  std::vector<double> mu;
  if (p > 0.0) mu = gaussian_fock_weights(sigma);
  auto rho1 = assemble_coherent_rho1(omega_sq, ch, p, mu);
  const int ds = rho1.dims[0];
  auto rho0 = assemble_coherent_rho0(ch, ds);
  return {std::move(rho0), std::move(rho1), ds - 1, ds - 1};
}

double bs_amplitude(const ChannelParams& ch, int s, int m, int d) {
  ch.validate();
  if (s < 0 || m < 0 || d < 0) throw std::domain_error("bs_amplitude: negative index");
  return BsAmplitudes(ch, m, d).amplitude(s, m, d);
}

DensityMatrix probe_density_matrix(const ProbeEnsemble& ensemble) {
  int di = 0, ds = 0;
  for (const auto& c : ensemble.pure) {
    di = std::max(di, c.state.max_idler_index() + 1);
    ds = std::max(ds, c.state.max_signal_index() + 1);
  }
  for (const auto& c : ensemble.product) {
    di = std::max(di, c.idler_n + 1);
    ds = std::max(ds, c.signal_n + 1);
  }
  BlockAccum accum(di, ds);
  for (const auto& c : ensemble.pure) {
    if (c.weight == 0.0) continue;
    const auto& v = c.state;
    for (int n = v.n_start; n <= v.truncation; ++n) {
      for (int n2 = n; n2 <= v.truncation; ++n2) {
        accum.add(n + v.idler_offset, n + v.signal_offset, n2 + v.idler_offset,
                  n2 + v.signal_offset, c.weight * v.coeff(n) * v.coeff(n2));
      }
    }
  }
  for (const auto& c : ensemble.product) {
    if (c.weight == 0.0) continue;
    accum.add(c.idler_n, c.signal_n, c.idler_n, c.signal_n, c.weight);
  }
  auto out = accum.finish({di, ds}, 0.0);
  out.trace_deficit = 1.0 - out.trace();
  return out;
}

}  // namespace qillume
