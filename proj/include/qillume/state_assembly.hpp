#pragma once

#include <utility>
#include <vector>

#include "qillume/density_matrix.hpp"
#include "qillume/probe_states.hpp"

namespace qillume {

/// Target reflectivity and thermal background of the illumination channel.
struct ChannelParams {
  double kappa = 0.01;
  double n_bath = 1.0;

  void validate() const;
};

struct NoiseModel {
  enum class Kind { NONE, LOCAL_GAUSSIAN, FAULTY_SQUEEZER, IMPERFECT_OP };

  Kind kind = Kind::NONE;
  double p = 0.0;             // mixing weight of the noise branch
  double sigma1 = 1.0;        // idler-mode Gaussian noise width
  double sigma2 = 1.0;        // signal-mode Gaussian noise width
  double x_actual = 0.0;      // x' delivered by a faulty twin-beam generator
  std::vector<std::pair<double, int>> mixture_weights;  // (probability, discrepancy)
};

/// Thrown when truncation escalation would exceed the matrix dimension cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an assembled matrix has a structurally negative eigenvalue.
class NumericalIntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Normalized Fock-diagonal weights w_n ~ exp(-n^2/sigma^2), cut once the
/// tail is negligible.
std::vector<double> gaussian_fock_weights(double sigma);

/// Weighted ensemble of probe pieces: pure two-mode states plus
/// Fock-product projectors |n><n| (x) |m><m|.
struct ProbeEnsemble {
  struct Pure {
    double weight;
    FockVector state;
  };
  struct Product {
    double weight;
    int idler_n;
    int signal_n;
  };
  std::vector<Pure> pure;
  std::vector<Product> product;

  double total_weight() const;
};

/// Local-Gaussian-noise ensemble (1-p) |psi><psi| + p (mu (x) nu).
ProbeEnsemble mix_local_gaussian(const FockVector& v, const NoiseModel& noise);

/// Spec actually delivered by a faulty twin-beam generator (x -> x').
/// The designed x stays with the caller: the Chernoff alpha must come
/// from the designed-x optimization, not from x'.
ProbeSpec apply_faulty_squeezer(const ProbeSpec& spec, const NoiseModel& noise);

/// Imperfect addition/subtraction: mixture of specs with photon counts
/// reduced by each discrepancy i, weighted by the given probabilities.
std::vector<std::pair<double, ProbeSpec>> mix_imperfect_operation(
    const ProbeSpec& base, const NoiseModel& noise);

/// Two-mode (idler x signal) target-present matrix for a pure probe.
/// m_trunc caps the thermal summation and is escalated by 25% steps
/// until the trace deficit drops below 1e-8.
DensityMatrix assemble_rho1(const FockVector& v, const ChannelParams& ch, int m_trunc);

/// Diagonal target-absent matrix on the same layout as assemble_rho1.
DensityMatrix assemble_rho0(const FockVector& v, const ChannelParams& ch, int m_trunc);

/// Single-mode signal-only matrices for the (optionally noisy) coherent
/// probe. noise_mu are the Fock weights of the noise branch (ignored for
/// p = 0).
DensityMatrix assemble_coherent_rho1(double omega_sq, const ChannelParams& ch, double p,
                                     const std::vector<double>& noise_mu);
DensityMatrix assemble_coherent_rho0(const ChannelParams& ch, int d_signal);

/// Both hypotheses at matched dims and truncation.
struct HypothesisPair {
  DensityMatrix rho0;
  DensityMatrix rho1;
  int trunc = 0;    // ladder truncation N actually used
  int m_trunc = 0;  // thermal summation cap actually used
};

/// Probe + noise + channel -> hypothesis pair, escalating the ladder
/// truncation and the thermal cap until both trace deficits are < 1e-8.
/// FAULTY_SQUEEZER is resolved by the caller via apply_faulty_squeezer.
HypothesisPair assemble_hypotheses(const ProbeSpec& spec, const NoiseModel& noise,
                                   const ChannelParams& ch, int dim_cap = 4096);

/// Noisy-coherent hypothesis pair (numerical, Fock basis), used for the
/// noisy-transmission-line baseline.
HypothesisPair assemble_coherent_hypotheses(double omega_sq, const ChannelParams& ch,
                                            double p, double sigma);

/// The probe itself (before the channel) as a density matrix, for
/// correlation measures.
DensityMatrix probe_density_matrix(const ProbeEnsemble& ensemble);

/// Amplitude of finding d photons in the detector port when the signal
/// carries s photons and the background port m; the remaining s + m - d
/// photons leave through the lost port.
double bs_amplitude(const ChannelParams& ch, int s, int m, int d);

}  // namespace qillume
