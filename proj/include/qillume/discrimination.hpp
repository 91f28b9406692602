#pragma once

#include <array>
#include <vector>

#include "qillume/density_matrix.hpp"
#include "qillume/state_assembly.hpp"

namespace qillume {

/// Eigen-decomposed overlap data for one hypothesis pair, cached so that
/// s(alpha) = tr[rho0^alpha rho1^(1-alpha)] costs only a small matrix-vector
/// product per evaluation. Powers of zero eigenvalues follow the support
/// convention 0^0 = 0 (such eigenvalues are dropped up front).
class OverlapSpectrum {
 public:
  OverlapSpectrum(const DensityMatrix& rho0, const DensityMatrix& rho1);

  double s_overlap(double alpha) const;

 private:
  struct BlockData {
    Eigen::VectorXd lam0, lam1;
    Eigen::MatrixXd w;  // squared eigenvector overlaps
  };
  std::vector<BlockData> blocks_;
};

/// One-shot evaluation of tr[rho0^alpha rho1^(1-alpha)].
double s_overlap(const DensityMatrix& rho0, const DensityMatrix& rho1, double alpha);

struct ChernoffResult {
  double q_value = 1.0;
  double alpha_star = 0.5;
  std::array<double, 101> curve{};  // s(alpha) on the uniform scan grid

  double error_prob() const { return 0.5 * q_value; }
  bool no_advantage() const { return q_value >= 0.9998; }
};

/// Quantum Chernoff bound: minimize s(alpha) over [0,1] with a uniform
/// 101-point scan followed by golden-section refinement of the bracketing
/// interval down to alpha_tol.
ChernoffResult chernoff_bound(const DensityMatrix& rho0, const DensityMatrix& rho1,
                              double alpha_tol = 1e-6);

/// s(alpha) at a caller-chosen alpha (used when the exponent was optimized
/// for a different pair, e.g. the faulty-squeezer scenario).
double chernoff_fixed_alpha(const DensityMatrix& rho0, const DensityMatrix& rho1,
                            double alpha);

/// Closed-form coherent-state benchmark exp(-kappa n_s (sqrt(n_bath+1) -
/// sqrt(n_bath))^2) and its large-n_bath simplification.
double classical_bound(double kappa, double n_s, double n_bath);
double classical_bound_high_nb(double kappa, double n_s, double n_bath);

struct AdvantageResult {
  double q_quantum = 1.0;
  double q_classical = 1.0;
  double delta = 0.0;  // q_classical - q_quantum; positive means advantage
};

AdvantageResult quantum_advantage(double q_quantum, double kappa, double n_s,
                                  double n_bath);
AdvantageResult quantum_advantage_numeric(double q_quantum, double q_classical);

/// Error probability after m independent shots.
double m_copy_error(double q_value, long m);

struct EfficiencyResult {
  double eta = 1.0;       // shot-ratio break-even efficiency ln q_ref / ln q
  double q_ref = 0.0;
  double q_probe = 0.0;
};

/// Minimum per-shot apparatus efficiency at which the probe still beats the
/// reference: eta = ln(q_ref) / ln(q_probe). Requires both bounds < 1.
EfficiencyResult min_efficiency(double q_ref, double q_probe);

}  // namespace qillume
