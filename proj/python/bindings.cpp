#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qillume/correlations.hpp"
#include "qillume/discrimination.hpp"
#include "qillume/sweep.hpp"

namespace py = pybind11;
using namespace qillume;

PYBIND11_MODULE(_core, m) {
  m.doc() = "quantum illumination bounds for Gaussian and non-Gaussian probes";

  py::enum_<ProbeOp>(m, "ProbeOp")
      .value("TMSV", ProbeOp::TMSV)
      .value("ADD_BOTH", ProbeOp::ADD_BOTH)
      .value("SUB_BOTH", ProbeOp::SUB_BOTH)
      .value("ADD_IDLER", ProbeOp::ADD_IDLER)
      .value("ADD_SIGNAL", ProbeOp::ADD_SIGNAL)
      .value("SUB_IDLER", ProbeOp::SUB_IDLER)
      .value("SUB_SIGNAL", ProbeOp::SUB_SIGNAL);

  py::class_<ProbeSpec>(m, "ProbeSpec")
      .def(py::init([](ProbeOp op, int k, int l, double x) {
             ProbeSpec s{op, k, l, x};
             s.validate();
             return s;
           }),
           py::arg("op"), py::arg("k") = 0, py::arg("l") = 0, py::arg("x") = 0.0)
      .def_readwrite("op", &ProbeSpec::op)
      .def_readwrite("k", &ProbeSpec::k)
      .def_readwrite("l", &ProbeSpec::l)
      .def_readwrite("x", &ProbeSpec::x)
      .def("describe", &ProbeSpec::describe)
      .def("__repr__", &ProbeSpec::describe);

  py::class_<FockVector>(m, "FockVector")
      .def_readonly("coeffs", &FockVector::coeffs)
      .def_readonly("n_start", &FockVector::n_start)
      .def_readonly("idler_offset", &FockVector::idler_offset)
      .def_readonly("signal_offset", &FockVector::signal_offset)
      .def_readonly("truncation", &FockVector::truncation)
      .def_readonly("norm_deficit", &FockVector::norm_deficit)
      .def("coeff", &FockVector::coeff);

  py::class_<ChannelParams>(m, "ChannelParams")
      .def(py::init([](double kappa, double n_bath) {
             ChannelParams ch{kappa, n_bath};
             ch.validate();
             return ch;
           }),
           py::arg("kappa") = 0.01, py::arg("n_bath") = 1.0)
      .def_readwrite("kappa", &ChannelParams::kappa)
      .def_readwrite("n_bath", &ChannelParams::n_bath);

  py::enum_<NoiseModel::Kind>(m, "NoiseKind")
      .value("NONE", NoiseModel::Kind::NONE)
      .value("LOCAL_GAUSSIAN", NoiseModel::Kind::LOCAL_GAUSSIAN)
      .value("FAULTY_SQUEEZER", NoiseModel::Kind::FAULTY_SQUEEZER)
      .value("IMPERFECT_OP", NoiseModel::Kind::IMPERFECT_OP);

  py::class_<NoiseModel>(m, "NoiseModel")
      .def(py::init<>())
      .def_readwrite("kind", &NoiseModel::kind)
      .def_readwrite("p", &NoiseModel::p)
      .def_readwrite("sigma1", &NoiseModel::sigma1)
      .def_readwrite("sigma2", &NoiseModel::sigma2)
      .def_readwrite("x_actual", &NoiseModel::x_actual)
      .def_readwrite("mixture_weights", &NoiseModel::mixture_weights);

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def_readonly("dims", &DensityMatrix::dims)
      .def_readonly("trace_deficit", &DensityMatrix::trace_deficit)
      .def("trace", &DensityMatrix::trace)
      .def("dense", &DensityMatrix::dense)
      .def("eigenvalues", &DensityMatrix::eigenvalues)
      .def("min_eigenvalue", &DensityMatrix::min_eigenvalue)
      .def("entry", &DensityMatrix::entry);

  py::class_<HypothesisPair>(m, "HypothesisPair")
      .def_readonly("rho0", &HypothesisPair::rho0)
      .def_readonly("rho1", &HypothesisPair::rho1)
      .def_readonly("trunc", &HypothesisPair::trunc)
      .def_readonly("m_trunc", &HypothesisPair::m_trunc);

  py::class_<ChernoffResult>(m, "ChernoffResult")
      .def_readonly("q_value", &ChernoffResult::q_value)
      .def_readonly("alpha_star", &ChernoffResult::alpha_star)
      .def("error_prob", &ChernoffResult::error_prob)
      .def("no_advantage", &ChernoffResult::no_advantage);

  py::class_<CorrelationReport>(m, "CorrelationReport")
      .def_readonly("mi", &CorrelationReport::mi)
      .def_readonly("ln", &CorrelationReport::ln)
      .def_readonly("n_s", &CorrelationReport::n_s)
      .def_readonly("mi_per_photon", &CorrelationReport::mi_per_photon)
      .def_readonly("ln_per_photon", &CorrelationReport::ln_per_photon);

  m.def("build_probe", &build_probe, py::arg("spec"), py::arg("trunc"));
  m.def("build_probe_auto", &build_probe_auto, py::arg("spec"));
  m.def("signal_strength", &signal_strength);
  m.def("assemble_hypotheses", &assemble_hypotheses, py::arg("spec"),
        py::arg("noise") = NoiseModel{}, py::arg("channel") = ChannelParams{},
        py::arg("dim_cap") = 4096, py::call_guard<py::gil_scoped_release>());
  m.def("assemble_coherent_hypotheses", &assemble_coherent_hypotheses,
        py::arg("omega_sq"), py::arg("channel"), py::arg("p") = 0.0,
        py::arg("sigma") = 1.0, py::call_guard<py::gil_scoped_release>());
  m.def("apply_faulty_squeezer", &apply_faulty_squeezer);
  m.def(
      "probe_state",
      [](const ProbeSpec& spec) {
        ProbeEnsemble ens;
        ens.pure.push_back({1.0, build_probe_auto(spec)});
        return probe_density_matrix(ens);
      },
      py::arg("spec"));
  m.def(
      "noisy_probe_state",
      [](const ProbeSpec& spec, const NoiseModel& noise) {
        return probe_density_matrix(mix_local_gaussian(build_probe_auto(spec), noise));
      },
      py::arg("spec"), py::arg("noise"));

  m.def("chernoff_bound", &chernoff_bound, py::arg("rho0"), py::arg("rho1"),
        py::arg("alpha_tol") = 1e-6, py::call_guard<py::gil_scoped_release>());
  m.def("chernoff_fixed_alpha", &chernoff_fixed_alpha,
        py::call_guard<py::gil_scoped_release>());
  m.def("s_overlap",
        py::overload_cast<const DensityMatrix&, const DensityMatrix&, double>(&s_overlap));
  m.def("classical_bound", &classical_bound, py::arg("kappa"), py::arg("n_s"),
        py::arg("n_bath"));
  m.def("m_copy_error", &m_copy_error, py::arg("q_value"), py::arg("m"));
  m.def(
      "min_efficiency",
      [](double q_ref, double q_probe) { return min_efficiency(q_ref, q_probe).eta; },
      py::arg("q_ref"), py::arg("q_probe"));

  m.def("mutual_information", &mutual_information);
  m.def("log_negativity", &log_negativity);
  m.def("correlation_report",
        py::overload_cast<const DensityMatrix&>(&correlation_report), py::arg("rho"));
  m.def("correlation_report",
        py::overload_cast<const DensityMatrix&, double>(&correlation_report),
        py::arg("rho"), py::arg("n_s_ref"));
  m.def("tmsv_entanglement_closed_form", &tmsv_entanglement_closed_form);
  m.def("tmsv_log_negativity_closed_form", &tmsv_log_negativity_closed_form);

  m.def("find_threshold_p_star", &find_threshold_p_star, py::arg("probe"),
        py::arg("step") = 0.1, py::arg("kappa") = 0.01, py::arg("n_bath") = 1.0,
        py::arg("sigma") = 1.0, py::arg("refine") = false,
        py::call_guard<py::gil_scoped_release>());
  m.def("preset_names", &preset_names);
  m.def(
      "run_preset",
      [](const std::string& name, const std::string& format, int parallelism) {
        SweepConfig cfg = preset(name);
        cfg.parallelism = parallelism;
        SweepResult result;
        {
          py::gil_scoped_release release;
          result = run_sweep(cfg);
        }
        return py::make_tuple(
            format == "json" ? emit_json(result.rows) : emit_csv(result.rows),
            result.failed);
      },
      py::arg("name"), py::arg("format") = "csv", py::arg("parallelism") = 0);

  py::register_exception<TruncationError>(m, "TruncationError");
  py::register_exception<ResourceError>(m, "ResourceError");
  py::register_exception<NumericalIntegrityError>(m, "NumericalIntegrityError");
}
