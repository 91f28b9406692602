#include "qillume/correlations.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qillume/state_assembly.hpp"

namespace qillume {

double von_neumann_entropy(const std::vector<double>& eigenvalues) {
  double s = 0.0;
  for (double lam : eigenvalues) {
    if (lam < -1e-8) {
      throw NumericalIntegrityError("von_neumann_entropy: eigenvalue " +
                                    std::to_string(lam) + " below tolerance");
    }
    if (lam > 1e-13) s -= lam * std::log2(lam);
  }
  return s;
}

double von_neumann_entropy(const Eigen::MatrixXd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho, Eigen::EigenvaluesOnly);
  const auto& v = es.eigenvalues();
  return von_neumann_entropy(std::vector<double>(v.data(), v.data() + v.size()));
}

double mutual_information(const DensityMatrix& rho) {
  if (!rho.two_mode()) {
    throw std::invalid_argument("mutual_information: needs a two-mode matrix");
  }
  const double s_idler = von_neumann_entropy(partial_trace_signal(rho));
  const double s_signal = von_neumann_entropy(partial_trace_idler(rho));
  const double s_joint = von_neumann_entropy(rho.eigenvalues());
  return s_idler + s_signal - s_joint;
}

double log_negativity(const DensityMatrix& rho) {
  const DensityMatrix pt = partial_transpose_idler(rho);
  double neg = 0.0;
  for (double lam : pt.eigenvalues()) {
    if (lam < 0.0) neg -= lam;
  }
  return std::log2(1.0 + 2.0 * neg);
}

double tmsv_entanglement_closed_form(double n_s) {
  if (n_s < 0.0) throw std::domain_error("tmsv_entanglement_closed_form: n_s < 0");
  if (n_s == 0.0) return 0.0;
  return (n_s + 1.0) * std::log2(n_s + 1.0) - n_s * std::log2(n_s);
}

double tmsv_log_negativity_closed_form(double x) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw std::domain_error("tmsv_log_negativity_closed_form: x outside [0,1)");
  }
  const double root = 1.0 - std::sqrt(x);
  return std::log2((1.0 - x) / (root * root));
}

CorrelationReport correlation_report(const DensityMatrix& rho) {
  const Eigen::MatrixXd signal = partial_trace_idler(rho);
  double n_s = 0.0;
  for (int j = 0; j < signal.rows(); ++j) n_s += j * signal(j, j);
  return correlation_report(rho, n_s);
}

CorrelationReport correlation_report(const DensityMatrix& rho, double n_s_ref) {
  if (n_s_ref < 0.0) throw std::domain_error("correlation_report: negative n_s");
  CorrelationReport rep;
  rep.mi = mutual_information(rho);
  rep.ln = log_negativity(rho);
  rep.n_s = n_s_ref;
  if (rep.n_s > 0.0) {
    rep.mi_per_photon = rep.mi / rep.n_s;
    rep.ln_per_photon = rep.ln / rep.n_s;
  }
  return rep;
}

}  // namespace qillume
