#pragma once

#include <string>
#include <vector>

#include "qillume/probe_states.hpp"
#include "qillume/state_assembly.hpp"

namespace qillume {

enum class Experiment {
  CB_VS_N,
  DELTA_VS_N,
  CB_VS_KAPPA_SET,
  DELTA_VS_KAPPA,
  ROBUSTNESS_P,
  DELTA_VS_P_NOISY_LINE,
  FAULTY_SQUEEZER,
  IMPERFECT_SUBTRACTION,
  MIN_EFFICIENCY,
  CORRELATIONS_VS_P,
  ENTANGLEMENT_LIMIT,
};

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& name);

struct SweepConfig {
  Experiment experiment = Experiment::CB_VS_N;
  std::vector<ProbeSpec> probes;
  std::vector<double> kappas{0.01};
  double n_bath = 1.0;
  NoiseModel noise;                 // base noise settings (sigmas etc.)
  std::vector<double> p_values;     // noise mixing grid, where applicable
  std::vector<double> x_primes;     // faulty-generator x' grid
  std::vector<double> ppp_values;   // fixed p'' values (imperfect subtraction)
  std::vector<double> n_s_values;   // closed-form entanglement grid
  double p_step = 0.1;              // robustness search grid step
  bool refine_pstar = false;
  std::string output_path;
  int parallelism = 0;              // 0 = env override or hardware default
  std::string dump_dir;             // when set, dump hypothesis matrices here

  void validate() const;
};

struct ResultRow {
  std::string experiment;
  std::string probe;
  int n = 0;
  double kappa = 0.0;
  double p = 0.0;
  double x = 0.0;
  double x_prime = 0.0;
  double q_value = 0.0;
  double alpha_star = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  double mi = 0.0;
  double ln = 0.0;
  double n_s = 0.0;
  int trunc_n = 0;
  int m_trunc = 0;
  double trace_deficit = 0.0;
  double wall_time = 0.0;  // seconds; NaN unless timings were requested
  std::string status = "ok";
};

struct SweepResult {
  std::vector<ResultRow> rows;
  int failed = 0;
};

/// Evaluate every grid point of the config on a bounded worker pool.
/// Row order is deterministic (task order) regardless of parallelism.
/// A point that fails to converge is reported with status != "ok" and
/// counted in failed; the sweep continues.
SweepResult run_sweep(const SweepConfig& cfg, bool timings = false);

/// Largest p on the {0, step, 2*step, ...} grid at which the probe mixed
/// with local Gaussian noise still discriminates (error probability
/// < 0.4999). With refine, the threshold is sharpened by bisection inside
/// the bracketing grid cell. Returns 0 if even p = 0 fails.
double find_threshold_p_star(const ProbeSpec& probe, double step, double kappa,
                             double n_bath, double sigma, bool refine = false);

/// CSV with a fixed header; 12 significant digits; NaN cells left empty.
std::string emit_csv(const std::vector<ResultRow>& rows);
/// JSON array of row objects; NaN fields omitted.
std::string emit_json(const std::vector<ResultRow>& rows);

/// Named built-in experiment configs (fig2..fig11, sec5a-robustness,
/// entanglement-limit). Throws std::invalid_argument for unknown names.
SweepConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/// Parse a JSON config file into a SweepConfig.
SweepConfig load_config(const std::string& path);

}  // namespace qillume
