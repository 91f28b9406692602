#include "qillume/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qillume {

namespace {

constexpr double kNegativityFloor = -1e-8;
constexpr double kSupportCut = 1e-13;

// Eigendecompose a restricted submatrix, reject structural negativity,
// and drop the numerical null space.
void clean_eig(const Eigen::MatrixXd& m, Eigen::VectorXd& lam, Eigen::MatrixXd& vec) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::VectorXd& e = es.eigenvalues();
  int keep = 0;
  for (int i = 0; i < e.size(); ++i) {
    if (e[i] < kNegativityFloor) {
      throw NumericalIntegrityError("chernoff: eigenvalue " + std::to_string(e[i]) +
                                    " below tolerance");
    }
    if (e[i] > kSupportCut) ++keep;
  }
  lam.resize(keep);
  vec.resize(m.rows(), keep);
  int j = 0;
  for (int i = 0; i < e.size(); ++i) {
    if (e[i] > kSupportCut) {
      lam[j] = e[i];
      vec.col(j) = es.eigenvectors().col(i);
      ++j;
    }
  }
}

}  // namespace

OverlapSpectrum::OverlapSpectrum(const DensityMatrix& rho0, const DensityMatrix& rho1) {
  if (rho0.dims != rho1.dims) {
    throw std::invalid_argument("OverlapSpectrum: dimension mismatch");
  }
  for (const auto& members : merged_partition({&rho0, &rho1})) {
    Eigen::VectorXd lam0, lam1;
    Eigen::MatrixXd u0, u1;
    clean_eig(restrict_to(rho0, members), lam0, u0);
    clean_eig(restrict_to(rho1, members), lam1, u1);
    if (lam0.size() == 0 || lam1.size() == 0) continue;
    BlockData b;
    b.lam0 = std::move(lam0);
    b.lam1 = std::move(lam1);
    b.w = (u0.transpose() * u1).array().square();
    blocks_.push_back(std::move(b));
  }
}

double OverlapSpectrum::s_overlap(double alpha) const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::domain_error("s_overlap: alpha outside [0,1]");
  }
  double total = 0.0;
  for (const auto& b : blocks_) {
    const Eigen::VectorXd p0 = b.lam0.array().pow(alpha);
    const Eigen::VectorXd p1 = b.lam1.array().pow(1.0 - alpha);
    total += p0.dot(b.w * p1);
  }
  return total;
}

double s_overlap(const DensityMatrix& rho0, const DensityMatrix& rho1, double alpha) {
  return OverlapSpectrum(rho0, rho1).s_overlap(alpha);
}

ChernoffResult chernoff_bound(const DensityMatrix& rho0, const DensityMatrix& rho1,
                              double alpha_tol) {
  const OverlapSpectrum spec(rho0, rho1);
  ChernoffResult res;
  int best = 0;
  for (int i = 0; i <= 100; ++i) {
    res.curve[i] = spec.s_overlap(i / 100.0);
    if (res.curve[i] < res.curve[best]) best = i;
  }
  double lo = std::max(0, best - 1) / 100.0;
  double hi = std::min(100, best + 1) / 100.0;

  // Golden-section on the bracket; s(alpha) is smooth and unimodal there.
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = spec.s_overlap(c), fd = spec.s_overlap(d);
  while (b - a > alpha_tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = spec.s_overlap(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = spec.s_overlap(d);
    }
  }
  res.alpha_star = 0.5 * (a + b);
  res.q_value = std::min({spec.s_overlap(res.alpha_star), res.curve[best]});
  if (res.q_value == res.curve[best]) res.alpha_star = best / 100.0;
  return res;
}

double chernoff_fixed_alpha(const DensityMatrix& rho0, const DensityMatrix& rho1,
                            double alpha) {
  return s_overlap(rho0, rho1, alpha);
}

double classical_bound(double kappa, double n_s, double n_bath) {
  const double gap = std::sqrt(n_bath + 1.0) - std::sqrt(n_bath);
  return std::exp(-kappa * n_s * gap * gap);
}

double classical_bound_high_nb(double kappa, double n_s, double n_bath) {
  if (!(n_bath > 0.0)) throw std::domain_error("classical_bound_high_nb: n_bath must be > 0");
  return std::exp(-kappa * n_s / (4.0 * n_bath));
}

AdvantageResult quantum_advantage(double q_quantum, double kappa, double n_s,
                                  double n_bath) {
  return quantum_advantage_numeric(q_quantum, classical_bound(kappa, n_s, n_bath));
}

AdvantageResult quantum_advantage_numeric(double q_quantum, double q_classical) {
  AdvantageResult r;
  r.q_quantum = q_quantum;
  r.q_classical = q_classical;
  r.delta = q_classical - q_quantum;
  return r;
}

double m_copy_error(double q_value, long m) {
  if (m < 1) throw std::domain_error("m_copy_error: m must be >= 1");
  return 0.5 * std::pow(q_value, static_cast<double>(m));
}

EfficiencyResult min_efficiency(double q_ref, double q_probe) {
  if (!(q_ref > 0.0 && q_probe > 0.0)) {
    throw std::domain_error("min_efficiency: bounds must be positive");
  }
  if (q_ref >= 1.0 - 1e-9 || q_probe >= 1.0 - 1e-9) {
    throw std::domain_error("min_efficiency: bound too close to 1 to define a ratio");
  }
  EfficiencyResult r;
  r.q_ref = q_ref;
  r.q_probe = q_probe;
  r.eta = std::log(q_ref) / std::log(q_probe);
  return r;
}

}  // namespace qillume
