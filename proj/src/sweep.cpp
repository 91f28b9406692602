#include "qillume/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qillume/correlations.hpp"
#include "qillume/discrimination.hpp"

namespace qillume {

namespace {

constexpr double kNA = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::CB_VS_N: return "CB_VS_N";
    case Experiment::DELTA_VS_N: return "DELTA_VS_N";
    case Experiment::CB_VS_KAPPA_SET: return "CB_VS_KAPPA_SET";
    case Experiment::DELTA_VS_KAPPA: return "DELTA_VS_KAPPA";
    case Experiment::ROBUSTNESS_P: return "ROBUSTNESS_P";
    case Experiment::DELTA_VS_P_NOISY_LINE: return "DELTA_VS_P_NOISY_LINE";
    case Experiment::FAULTY_SQUEEZER: return "FAULTY_SQUEEZER";
    case Experiment::IMPERFECT_SUBTRACTION: return "IMPERFECT_SUBTRACTION";
    case Experiment::MIN_EFFICIENCY: return "MIN_EFFICIENCY";
    case Experiment::CORRELATIONS_VS_P: return "CORRELATIONS_VS_P";
    case Experiment::ENTANGLEMENT_LIMIT: return "ENTANGLEMENT_LIMIT";
  }
  throw std::logic_error("to_string: bad Experiment");
}

Experiment experiment_from_string(const std::string& name) {
  static const std::vector<Experiment> all = {
      Experiment::CB_VS_N,          Experiment::DELTA_VS_N,
      Experiment::CB_VS_KAPPA_SET,  Experiment::DELTA_VS_KAPPA,
      Experiment::ROBUSTNESS_P,     Experiment::DELTA_VS_P_NOISY_LINE,
      Experiment::FAULTY_SQUEEZER,  Experiment::IMPERFECT_SUBTRACTION,
      Experiment::MIN_EFFICIENCY,   Experiment::CORRELATIONS_VS_P,
      Experiment::ENTANGLEMENT_LIMIT};
  for (Experiment e : all) {
    if (to_string(e) == name) return e;
  }
  throw std::invalid_argument("unknown experiment: " + name);
}

void SweepConfig::validate() const {
  if (!(n_bath >= 0.0)) throw std::invalid_argument("config: n_bath must be >= 0");
  for (const auto& s : probes) s.validate();
  for (double k : kappas) {
    if (!(k >= 0.0 && k <= 1.0)) throw std::invalid_argument("config: kappa outside [0,1]");
  }
  if (!(p_step > 0.0 && p_step <= 1.0)) {
    throw std::invalid_argument("config: p_step outside (0,1]");
  }
  switch (experiment) {
    case Experiment::FAULTY_SQUEEZER:
      if (x_primes.empty()) throw std::invalid_argument("config: x_primes required");
      break;
    case Experiment::IMPERFECT_SUBTRACTION:
      if (ppp_values.empty()) throw std::invalid_argument("config: ppp_values required");
      break;
    case Experiment::DELTA_VS_P_NOISY_LINE:
    case Experiment::CORRELATIONS_VS_P:
      if (p_values.empty()) throw std::invalid_argument("config: p_values required");
      break;
    case Experiment::ENTANGLEMENT_LIMIT:
      if (n_s_values.empty()) throw std::invalid_argument("config: n_s_values required");
      break;
    default:
      break;
  }
}

namespace {

ResultRow na_row(const SweepConfig& cfg) {
  ResultRow r;
  r.experiment = to_string(cfg.experiment);
  r.kappa = kNA;
  r.p = kNA;
  r.x = kNA;
  r.x_prime = kNA;
  r.q_value = kNA;
  r.alpha_star = kNA;
  r.delta = kNA;
  r.eta = kNA;
  r.mi = kNA;
  r.ln = kNA;
  r.n_s = kNA;
  r.trunc_n = -1;
  r.m_trunc = -1;
  r.trace_deficit = kNA;
  r.wall_time = kNA;
  return r;
}

int probe_n(const ProbeSpec& s) { return std::max(s.k, s.l); }

void dump_density_matrix(const std::string& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  out << "row,col,value\n";
  char buf[64];
  for (const auto& blk : rho.blocks) {
    for (size_t p = 0; p < blk.members.size(); ++p) {
      for (size_t q = 0; q < blk.members.size(); ++q) {
        std::snprintf(buf, sizeof buf, "%.17g", blk.m(p, q));
        out << blk.members[p] << ',' << blk.members[q] << ',' << buf << '\n';
      }
    }
  }
}

void maybe_dump(const SweepConfig& cfg, size_t index, const HypothesisPair& pair) {
  if (cfg.dump_dir.empty()) return;
  std::filesystem::create_directories(cfg.dump_dir);
  const std::string stem = cfg.dump_dir + "/row" + std::to_string(index);
  dump_density_matrix(stem + "_rho0.csv", pair.rho0);
  dump_density_matrix(stem + "_rho1.csv", pair.rho1);
}

struct Task {
  ResultRow base;
  std::function<void(ResultRow&, size_t)> fill;
};

// Chernoff evaluation for one probe/noise/channel point; fills the common
// diagnostics columns.
void fill_cb(ResultRow& r, size_t index, const SweepConfig& cfg, const ProbeSpec& spec,
             double kappa, const NoiseModel& noise, bool with_delta) {
  const ChannelParams ch{kappa, cfg.n_bath};
  const auto pair = assemble_hypotheses(spec, noise, ch);
  maybe_dump(cfg, index, pair);
  const auto cb = chernoff_bound(pair.rho0, pair.rho1);
  r.q_value = cb.q_value;
  r.alpha_star = cb.alpha_star;
  r.n_s = signal_strength(build_probe_auto(spec));
  r.trunc_n = pair.trunc;
  r.m_trunc = pair.m_trunc;
  r.trace_deficit = std::max(pair.rho0.trace_deficit, pair.rho1.trace_deficit);
  if (with_delta) r.delta = classical_bound(kappa, r.n_s, cfg.n_bath) - cb.q_value;
}

std::vector<Task> build_tasks(const SweepConfig& cfg) {
  std::vector<Task> tasks;
  auto push = [&](ResultRow base, std::function<void(ResultRow&, size_t)> fill) {
    tasks.push_back({std::move(base), std::move(fill)});
  };

  switch (cfg.experiment) {
    case Experiment::CB_VS_N:
    case Experiment::DELTA_VS_N:
    case Experiment::CB_VS_KAPPA_SET:
    case Experiment::DELTA_VS_KAPPA: {
      const bool with_delta = cfg.experiment == Experiment::DELTA_VS_N ||
                              cfg.experiment == Experiment::DELTA_VS_KAPPA;
      for (double kappa : cfg.kappas) {
        for (const auto& spec : cfg.probes) {
          ResultRow r = na_row(cfg);
          r.probe = spec.describe();
          r.n = probe_n(spec);
          r.kappa = kappa;
          r.x = spec.x;
          push(std::move(r), [&cfg, spec, kappa, with_delta](ResultRow& row, size_t i) {
            fill_cb(row, i, cfg, spec, kappa, cfg.noise, with_delta);
          });
        }
      }
      break;
    }

    case Experiment::ROBUSTNESS_P: {
      const double kappa = cfg.kappas.front();
      for (const auto& spec : cfg.probes) {
        ResultRow r = na_row(cfg);
        r.probe = spec.describe();
        r.n = probe_n(spec);
        r.kappa = kappa;
        r.x = spec.x;
        push(std::move(r), [&cfg, spec, kappa](ResultRow& row, size_t) {
          row.p = find_threshold_p_star(spec, cfg.p_step, kappa, cfg.n_bath,
                                        cfg.noise.sigma1, cfg.refine_pstar);
        });
      }
      break;
    }

    case Experiment::DELTA_VS_P_NOISY_LINE: {
      const double kappa = cfg.kappas.front();
      for (double p : cfg.p_values) {
        for (const auto& spec : cfg.probes) {
          ResultRow r = na_row(cfg);
          r.probe = spec.describe();
          r.n = probe_n(spec);
          r.kappa = kappa;
          r.x = spec.x;
          r.p = p;
          push(std::move(r), [&cfg, spec, kappa, p](ResultRow& row, size_t i) {
            NoiseModel noise = cfg.noise;
            noise.kind = NoiseModel::Kind::LOCAL_GAUSSIAN;
            noise.p = p;
            const ChannelParams ch{kappa, cfg.n_bath};
            const auto pair = assemble_hypotheses(spec, noise, ch);
            maybe_dump(cfg, i, pair);
            const auto cb = chernoff_bound(pair.rho0, pair.rho1);
            row.q_value = cb.q_value;
            row.alpha_star = cb.alpha_star;
            row.n_s = signal_strength(build_probe_auto(spec));
            row.trunc_n = pair.trunc;
            row.m_trunc = pair.m_trunc;
            row.trace_deficit =
                std::max(pair.rho0.trace_deficit, pair.rho1.trace_deficit);
            // Both contenders travel the same noisy line, so the coherent
            // benchmark is assembled numerically with the same admixture.
            const auto coh =
                assemble_coherent_hypotheses(row.n_s, ch, p, cfg.noise.sigma1);
            const auto cb_cl = chernoff_bound(coh.rho0, coh.rho1);
            row.delta = cb_cl.q_value - cb.q_value;
          });
        }
      }
      break;
    }

    case Experiment::FAULTY_SQUEEZER: {
      const double kappa = cfg.kappas.front();
      for (double xp : cfg.x_primes) {
        for (const auto& spec : cfg.probes) {
          ResultRow r = na_row(cfg);
          r.probe = spec.describe();
          r.n = probe_n(spec);
          r.kappa = kappa;
          r.x = spec.x;
          r.x_prime = xp;
          push(std::move(r), [&cfg, spec, kappa, xp](ResultRow& row, size_t i) {
            const ChannelParams ch{kappa, cfg.n_bath};
            const auto designed = assemble_hypotheses(spec, {}, ch);
            const auto cb = chernoff_bound(designed.rho0, designed.rho1);
            NoiseModel fault;
            fault.kind = NoiseModel::Kind::FAULTY_SQUEEZER;
            fault.x_actual = xp;
            const ProbeSpec actual_spec = apply_faulty_squeezer(spec, fault);
            const auto actual = assemble_hypotheses(actual_spec, {}, ch);
            maybe_dump(cfg, i, actual);
            row.alpha_star = cb.alpha_star;
            row.q_value =
                chernoff_fixed_alpha(actual.rho0, actual.rho1, cb.alpha_star);
            row.n_s = signal_strength(build_probe_auto(actual_spec));
            row.trunc_n = actual.trunc;
            row.m_trunc = actual.m_trunc;
            row.trace_deficit =
                std::max(actual.rho0.trace_deficit, actual.rho1.trace_deficit);
          });
        }
      }
      break;
    }

    case Experiment::IMPERFECT_SUBTRACTION: {
      const double kappa = cfg.kappas.front();
      for (const auto& base_spec : cfg.probes) {
        for (double ppp : cfg.ppp_values) {
          for (int i = 0;; ++i) {
            const double p = i * cfg.p_step;
            if (p > 1.0 - ppp + 1e-12) break;
            const double p_mid = 1.0 - ppp - p;
            ResultRow r = na_row(cfg);
            {
              std::ostringstream os;
              os << base_spec.describe() << " p''=" << ppp;
              r.probe = os.str();
            }
            r.n = probe_n(base_spec);
            r.kappa = kappa;
            r.x = base_spec.x;
            r.p = p;
            push(std::move(r), [&cfg, base_spec, kappa, ppp, p, p_mid](ResultRow& row,
                                                                       size_t idx) {
              NoiseModel noise;
              noise.kind = NoiseModel::Kind::IMPERFECT_OP;
              noise.mixture_weights = {{p, 0}, {p_mid, 1}, {ppp, 2}};
              fill_cb(row, idx, cfg, base_spec, kappa, noise, true);
            });
          }
        }
      }
      break;
    }

    case Experiment::MIN_EFFICIENCY: {
      const double kappa = cfg.kappas.front();
      for (const auto& spec : cfg.probes) {
        ResultRow r = na_row(cfg);
        r.probe = spec.describe();
        r.n = probe_n(spec);
        r.kappa = kappa;
        r.x = spec.x;
        r.p = cfg.noise.kind == NoiseModel::Kind::LOCAL_GAUSSIAN ? cfg.noise.p : 0.0;
        push(std::move(r), [&cfg, spec, kappa](ResultRow& row, size_t i) {
          fill_cb(row, i, cfg, spec, kappa, cfg.noise, false);
          ProbeSpec ref;
          ref.op = ProbeOp::TMSV;
          ref.x = spec.x;
          const ChannelParams ch{kappa, cfg.n_bath};
          const auto ref_pair = assemble_hypotheses(ref, cfg.noise, ch);
          const auto ref_cb = chernoff_bound(ref_pair.rho0, ref_pair.rho1);
          row.eta = min_efficiency(ref_cb.q_value, row.q_value).eta;
        });
      }
      break;
    }

    case Experiment::CORRELATIONS_VS_P: {
      for (double p : cfg.p_values) {
        for (const auto& spec : cfg.probes) {
          ResultRow r = na_row(cfg);
          r.probe = spec.describe();
          r.n = probe_n(spec);
          r.x = spec.x;
          r.p = p;
          push(std::move(r), [&cfg, spec, p](ResultRow& row, size_t) {
            const FockVector pure = build_probe_auto(spec);
            NoiseModel noise = cfg.noise;
            noise.kind = NoiseModel::Kind::LOCAL_GAUSSIAN;
            noise.p = p;
            const ProbeEnsemble ens = mix_local_gaussian(pure, noise);
            const auto rep = correlation_report(probe_density_matrix(ens));
            row.mi = rep.mi;
            row.ln = rep.ln;
            row.n_s = rep.n_s;
            row.trunc_n = pure.truncation;
            row.trace_deficit = pure.norm_deficit;
          });
        }
      }
      break;
    }

    case Experiment::ENTANGLEMENT_LIMIT: {
      for (double ns : cfg.n_s_values) {
        ResultRow r = na_row(cfg);
        r.probe = "TMSV";
        r.n_s = ns;
        r.x = ns / (1.0 + ns);
        push(std::move(r), [ns](ResultRow& row, size_t) {
          row.mi = tmsv_entanglement_closed_form(ns);
          row.ln = tmsv_log_negativity_closed_form(ns / (1.0 + ns));
        });
      }
      break;
    }
  }
  return tasks;
}

int resolve_workers(int configured) {
  if (configured > 0) return configured;
  if (const char* env = std::getenv("QILLUME_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string fmt12(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg, bool timings) {
  cfg.validate();
  auto tasks = build_tasks(cfg);
  SweepResult result;
  result.rows.resize(tasks.size());

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      ResultRow row = tasks[i].base;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        tasks[i].fill(row, i);
      } catch (const std::exception& e) {
        row.status = std::string("failed: ") + e.what();
      }
      if (timings) {
        row.wall_time =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      }
      result.rows[i] = std::move(row);
    }
  };

  const int workers =
      std::min<int>(resolve_workers(cfg.parallelism), std::max<size_t>(tasks.size(), 1));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& r : result.rows) {
    if (r.status != "ok") ++result.failed;
  }
  return result;
}

double find_threshold_p_star(const ProbeSpec& probe, double step, double kappa,
                             double n_bath, double sigma, bool refine) {
  const ChannelParams ch{kappa, n_bath};
  auto discriminates = [&](double p) {
    NoiseModel noise;
    noise.kind = NoiseModel::Kind::LOCAL_GAUSSIAN;
    noise.p = p;
    noise.sigma1 = sigma;
    noise.sigma2 = sigma;
    const auto pair = assemble_hypotheses(probe, noise, ch);
    return chernoff_bound(pair.rho0, pair.rho1).error_prob() < 0.4999;
  };

  double last_ok = -1.0;
  for (int i = 0;; ++i) {
    const double p = i * step;
    if (p > 1.0 + 1e-12) break;
    if (!discriminates(std::min(p, 1.0))) break;
    last_ok = std::min(p, 1.0);
  }
  if (last_ok < 0.0) return 0.0;
  if (!refine || last_ok >= 1.0) return last_ok;

  double lo = last_ok, hi = std::min(last_ok + step, 1.0);
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    (discriminates(mid) ? lo : hi) = mid;
  }
  return lo;
}

std::string emit_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << "experiment,probe,n,kappa,p,x,x_prime,q_value,alpha_star,delta,eta,mi,ln,"
        "n_s,trunc_N,m_trunc,trace_deficit,wall_time,status\n";
  for (const auto& r : rows) {
    os << r.experiment << ',' << r.probe << ',' << r.n << ',' << fmt12(r.kappa) << ','
       << fmt12(r.p) << ',' << fmt12(r.x) << ',' << fmt12(r.x_prime) << ','
       << fmt12(r.q_value) << ',' << fmt12(r.alpha_star) << ',' << fmt12(r.delta) << ','
       << fmt12(r.eta) << ',' << fmt12(r.mi) << ',' << fmt12(r.ln) << ','
       << fmt12(r.n_s) << ',';
    if (r.trunc_n >= 0) os << r.trunc_n;
    os << ',';
    if (r.m_trunc >= 0) os << r.m_trunc;
    os << ',' << fmt12(r.trace_deficit) << ',' << fmt12(r.wall_time) << ',' << r.status
       << '\n';
  }
  return os.str();
}

std::string emit_json(const std::vector<ResultRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json o;
    o["experiment"] = r.experiment;
    o["probe"] = r.probe;
    o["n"] = r.n;
    auto put = [&](const char* key, double v) {
      if (!std::isnan(v)) o[key] = v;
    };
    put("kappa", r.kappa);
    put("p", r.p);
    put("x", r.x);
    put("x_prime", r.x_prime);
    put("q_value", r.q_value);
    put("alpha_star", r.alpha_star);
    put("delta", r.delta);
    put("eta", r.eta);
    put("mi", r.mi);
    put("ln", r.ln);
    put("n_s", r.n_s);
    if (r.trunc_n >= 0) o["trunc_N"] = r.trunc_n;
    if (r.m_trunc >= 0) o["m_trunc"] = r.m_trunc;
    put("trace_deficit", r.trace_deficit);
    put("wall_time", r.wall_time);
    o["status"] = r.status;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

}  // namespace qillume
