#include <fstream>

#include <json.hpp>

#include "qillume/sweep.hpp"

namespace qillume {

namespace {

ProbeSpec spec_for(ProbeOp family, int n, double x) {
  ProbeSpec s;
  s.x = x;
  if (n == 0) {
    s.op = ProbeOp::TMSV;
    return s;
  }
  s.op = family;
  switch (family) {
    case ProbeOp::ADD_BOTH:
    case ProbeOp::SUB_BOTH:
      s.k = s.l = n;
      break;
    case ProbeOp::ADD_IDLER:
    case ProbeOp::SUB_IDLER:
      s.k = n;
      break;
    case ProbeOp::ADD_SIGNAL:
    case ProbeOp::SUB_SIGNAL:
      s.l = n;
      break;
    case ProbeOp::TMSV:
      throw std::invalid_argument("spec_for: TMSV has no photon count");
  }
  return s;
}

const std::vector<ProbeOp> kFamilies = {ProbeOp::ADD_BOTH, ProbeOp::SUB_BOTH,
                                        ProbeOp::ADD_IDLER, ProbeOp::ADD_SIGNAL};

// One curve per family over n, the n = 0 point being the plain TMSV.
std::vector<ProbeSpec> family_grid(double x, int n_lo, int n_hi) {
  std::vector<ProbeSpec> out;
  for (ProbeOp family : kFamilies) {
    for (int n = n_lo; n <= n_hi; ++n) out.push_back(spec_for(family, n, x));
  }
  return out;
}

std::vector<ProbeSpec> n5_set(double x) {
  std::vector<ProbeSpec> out{spec_for(ProbeOp::TMSV, 0, x)};
  for (ProbeOp family : kFamilies) out.push_back(spec_for(family, 5, x));
  return out;
}

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double v = lo + i * step;
    if (v > hi + 1e-12) break;
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig2", "fig3", "fig4",  "fig5",  "fig6",           "fig7",
          "fig8", "fig9", "fig10", "fig11", "sec5a-robustness", "entanglement-limit"};
}

SweepConfig preset(const std::string& name) {
  SweepConfig cfg;
  if (name == "fig2" || name == "fig3") {
    cfg.experiment = name == "fig2" ? Experiment::CB_VS_N : Experiment::DELTA_VS_N;
    for (double x : {0.2, 0.05}) {
      auto probes = family_grid(x, 0, 5);
      cfg.probes.insert(cfg.probes.end(), probes.begin(), probes.end());
    }
  } else if (name == "fig4") {
    cfg.experiment = Experiment::CB_VS_KAPPA_SET;
    cfg.kappas = {0.0009, 0.001, 0.003, 0.05};
    cfg.probes = family_grid(0.2, 0, 5);
  } else if (name == "fig5") {
    cfg.experiment = Experiment::DELTA_VS_KAPPA;
    cfg.kappas = {0.001, 0.002, 0.005, 0.01, 0.02, 0.05};
    cfg.probes = n5_set(0.2);
  } else if (name == "fig6") {
    cfg.experiment = Experiment::DELTA_VS_P_NOISY_LINE;
    cfg.p_values = grid(0.0, 0.9, 0.1);
    cfg.probes = n5_set(0.2);
  } else if (name == "fig7") {
    cfg.experiment = Experiment::FAULTY_SQUEEZER;
    cfg.x_primes = {0.005, 0.015, 0.025, 0.045};
    cfg.probes = family_grid(0.05, 0, 5);
  } else if (name == "fig8" || name == "fig10") {
    cfg.experiment = Experiment::MIN_EFFICIENCY;
    cfg.probes = family_grid(0.2, 1, 5);
    if (name == "fig10") {
      cfg.noise.kind = NoiseModel::Kind::LOCAL_GAUSSIAN;
      cfg.noise.p = 0.3;
    }
  } else if (name == "fig9") {
    cfg.experiment = Experiment::IMPERFECT_SUBTRACTION;
    ProbeSpec base;
    base.op = ProbeOp::SUB_BOTH;
    base.k = base.l = 2;
    base.x = 0.2;
    cfg.probes = {base};
    cfg.ppp_values = {0.1, 0.2, 0.3, 0.4};
  } else if (name == "fig11") {
    cfg.experiment = Experiment::CORRELATIONS_VS_P;
    cfg.p_values = grid(0.0, 0.5, 0.1);
    cfg.probes = n5_set(0.2);
  } else if (name == "sec5a-robustness") {
    cfg.experiment = Experiment::ROBUSTNESS_P;
    cfg.probes = {spec_for(ProbeOp::TMSV, 0, 0.2), spec_for(ProbeOp::TMSV, 0, 0.05),
                  spec_for(ProbeOp::ADD_SIGNAL, 1, 0.2),
                  spec_for(ProbeOp::ADD_IDLER, 1, 0.2),
                  spec_for(ProbeOp::ADD_IDLER, 2, 0.2)};
  } else if (name == "entanglement-limit") {
    cfg.experiment = Experiment::ENTANGLEMENT_LIMIT;
    cfg.n_s_values = {1.0, 10.0, 100.0, 1000.0};
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  return cfg;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config parse error in " + path + ": " + e.what());
  }

  SweepConfig cfg;
  try {
    cfg.experiment = experiment_from_string(j.at("experiment").get<std::string>());
    for (const auto& pj : j.value("probes", nlohmann::json::array())) {
      ProbeSpec s;
      s.op = probe_op_from_string(pj.at("op").get<std::string>());
      s.k = pj.value("k", 0);
      s.l = pj.value("l", 0);
      s.x = pj.value("x", 0.0);
      cfg.probes.push_back(s);
    }
    if (j.contains("kappas")) cfg.kappas = j["kappas"].get<std::vector<double>>();
    cfg.n_bath = j.value("n_bath", 1.0);
    if (j.contains("noise")) {
      const auto& nj = j["noise"];
      const std::string kind = nj.value("kind", "NONE");
      if (kind == "NONE") {
        cfg.noise.kind = NoiseModel::Kind::NONE;
      } else if (kind == "LOCAL_GAUSSIAN") {
        cfg.noise.kind = NoiseModel::Kind::LOCAL_GAUSSIAN;
      } else if (kind == "FAULTY_SQUEEZER") {
        cfg.noise.kind = NoiseModel::Kind::FAULTY_SQUEEZER;
      } else if (kind == "IMPERFECT_OP") {
        cfg.noise.kind = NoiseModel::Kind::IMPERFECT_OP;
      } else {
        throw std::invalid_argument("unknown noise kind: " + kind);
      }
      cfg.noise.p = nj.value("p", 0.0);
      cfg.noise.sigma1 = nj.value("sigma1", 1.0);
      cfg.noise.sigma2 = nj.value("sigma2", 1.0);
      cfg.noise.x_actual = nj.value("x_actual", 0.0);
      for (const auto& mw : nj.value("mixture_weights", nlohmann::json::array())) {
        cfg.noise.mixture_weights.emplace_back(mw.at(0).get<double>(),
                                               mw.at(1).get<int>());
      }
    }
    if (j.contains("p_values")) cfg.p_values = j["p_values"].get<std::vector<double>>();
    if (j.contains("x_primes")) cfg.x_primes = j["x_primes"].get<std::vector<double>>();
    if (j.contains("ppp_values")) {
      cfg.ppp_values = j["ppp_values"].get<std::vector<double>>();
    }
    if (j.contains("n_s_values")) {
      cfg.n_s_values = j["n_s_values"].get<std::vector<double>>();
    }
    cfg.p_step = j.value("p_step", 0.1);
    cfg.refine_pstar = j.value("refine_pstar", false);
    cfg.output_path = j.value("output_path", std::string());
    cfg.parallelism = j.value("parallelism", 0);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config error in " + path + ": " + e.what());
  }
  cfg.validate();
  return cfg;
}

}  // namespace qillume
