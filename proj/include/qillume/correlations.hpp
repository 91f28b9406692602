#pragma once

#include <vector>

#include "qillume/density_matrix.hpp"

namespace qillume {

/// Shannon-style von Neumann entropy in bits, -sum lambda log2 lambda,
/// with 0 log 0 = 0. Small negative eigenvalues are clipped; structurally
/// negative ones throw.
double von_neumann_entropy(const std::vector<double>& eigenvalues);
double von_neumann_entropy(const Eigen::MatrixXd& rho);

/// I(I:S) = S(rho_I) + S(rho_S) - S(rho), in bits.
double mutual_information(const DensityMatrix& rho);

/// Logarithmic negativity log2 || rho^T_I ||_1 across the idler/signal cut.
double log_negativity(const DensityMatrix& rho);

/// Entanglement entropy of the two-mode squeezed vacuum as a function of
/// its mean signal photon number, in bits.
double tmsv_entanglement_closed_form(double n_s);

/// Closed-form TMSV log negativity log2[(1-x) / (1-sqrt(x))^2].
double tmsv_log_negativity_closed_form(double x);

struct CorrelationReport {
  double mi = 0.0;
  double ln = 0.0;
  double n_s = 0.0;          // signal photon number used for normalization
  double mi_per_photon = 0.0;
  double ln_per_photon = 0.0;
};

/// Normalizes the per-photon figures by the state's own signal-mode mean.
CorrelationReport correlation_report(const DensityMatrix& rho);

/// Normalizes by a caller-supplied signal strength; used when probes are
/// compared at the photon budget of the underlying noiseless probe.
CorrelationReport correlation_report(const DensityMatrix& rho, double n_s_ref);

}  // namespace qillume
