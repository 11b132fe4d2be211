#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spincert/app/commands.hpp"
#include "spincert/app/report.hpp"
#include "spincert/criteria.hpp"
#include "spincert/measurement.hpp"
#include "spincert/noise.hpp"
#include "spincert/oracle.hpp"
#include "spincert/states.hpp"

namespace py = pybind11;
using namespace spincert;

namespace {

std::vector<BlochAngles> to_angles(const std::vector<std::pair<double, double>>& pairs) {
  std::vector<BlochAngles> angles;
  angles.reserve(pairs.size());
  for (const auto& [theta, phi] : pairs) angles.push_back({theta, phi});
  return angles;
}

std::string certify_report_json(const std::string& config_json) {
  const auto config = app::parse_config(nlohmann::json::parse(config_json));
  return app::cmd_certify(config).report.dump(2);
}

}  // namespace

PYBIND11_MODULE(_spincert, m) {
  m.doc() = "Collective-spin moments, noise channels and entanglement-depth certification";
  m.attr("__version__") = app::kToolVersion;
  m.attr("generator_id") = kGeneratorId;

  py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
  py::register_exception<size_error>(m, "SizeError", PyExc_ValueError);
  py::register_exception<conversion_error>(m, "ConversionError", PyExc_ValueError);
  py::register_exception<numerics_error>(m, "NumericsError", PyExc_ArithmeticError);
  py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
  py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);

  py::enum_<Axis>(m, "Axis")
      .value("x", Axis::x)
      .value("y", Axis::y)
      .value("z", Axis::z);

  py::enum_<Representation>(m, "Representation")
      .value("dense_density_matrix", Representation::dense_density_matrix)
      .value("symmetric_pure", Representation::symmetric_pure)
      .value("symmetric_mixed", Representation::symmetric_mixed);

  py::class_<Numerics>(m, "Numerics")
      .def(py::init<>())
      .def_readwrite("physics_tol", &Numerics::physics_tol)
      .def_readwrite("linalg_tol", &Numerics::linalg_tol)
      .def_readwrite("positivity_tol", &Numerics::positivity_tol)
      .def_readwrite("degenerate_tol", &Numerics::degenerate_tol)
      .def_readwrite("margin_tol", &Numerics::margin_tol)
      .def_readwrite("dense_cap", &Numerics::dense_cap)
      .def_readwrite("spectral_check_dim", &Numerics::spectral_check_dim);

  py::class_<QubitEnsembleState>(m, "QubitEnsembleState")
      .def_property_readonly("n_qubits", &QubitEnsembleState::n_qubits)
      .def_property_readonly("representation", &QubitEnsembleState::representation)
      .def("ladder", &QubitEnsembleState::ladder, py::return_value_policy::copy)
      .def("matrix", &QubitEnsembleState::matrix, py::return_value_policy::copy)
      .def("validate", &QubitEnsembleState::validate, py::arg("num") = Numerics{},
           py::arg("force_spectral") = false)
      .def_static("symmetric_pure", &QubitEnsembleState::symmetric_pure, py::arg("ladder"),
                  py::arg("num") = Numerics{})
      .def_static("symmetric_mixed", &QubitEnsembleState::symmetric_mixed, py::arg("rho"),
                  py::arg("num") = Numerics{})
      .def_static("dense", &QubitEnsembleState::dense, py::arg("n_qubits"), py::arg("rho"),
                  py::arg("num") = Numerics{})
      .def_static("dense_pure", &QubitEnsembleState::dense_pure, py::arg("n_qubits"),
                  py::arg("statevector"), py::arg("num") = Numerics{});

  py::class_<MomentSet>(m, "MomentSet")
      .def(py::init<>())
      .def_readwrite("jx2", &MomentSet::jx2)
      .def_readwrite("jy2", &MomentSet::jy2)
      .def_readwrite("jz_mean", &MomentSet::jz_mean)
      .def_readwrite("jz2", &MomentSet::jz2)
      .def_readwrite("jz4", &MomentSet::jz4)
      .def_readwrite("n_qubits", &MomentSet::n_qubits)
      .def("jz_variance", &MomentSet::jz_variance)
      .def("jz2_variance", &MomentSet::jz2_variance)
      .def("__repr__", [](const MomentSet& m) {
        return "MomentSet(jx2=" + std::to_string(m.jx2) + ", jy2=" + std::to_string(m.jy2) +
               ", jz_mean=" + std::to_string(m.jz_mean) + ", jz2=" + std::to_string(m.jz2) +
               ", jz4=" + std::to_string(m.jz4) + ", n_qubits=" + std::to_string(m.n_qubits) +
               ")";
      });

  m.def("validate_moments", &validate_moments, py::arg("moments"), py::arg("num") = Numerics{});
  m.def("collective_operator", &collective_operator, py::arg("n_qubits"), py::arg("axis"),
        py::arg("representation"), py::arg("num") = Numerics{});
  m.def("compute_moments", &compute_moments, py::arg("state"));
  m.def("rotate_collective", &rotate_collective, py::arg("state"), py::arg("axis"),
        py::arg("angle"));
  m.def("convert_representation", &convert_representation, py::arg("state"), py::arg("target"),
        py::arg("num") = Numerics{});

  m.def("make_dicke", &make_dicke, py::arg("n_qubits"), py::arg("jz_twice"));
  m.def(
      "make_product",
      [](const std::vector<std::pair<double, double>>& angles, const Numerics& num) {
        return make_product(to_angles(angles), num);
      },
      py::arg("bloch_angles"), py::arg("num") = Numerics{});
  m.def("make_superposition", &make_superposition, py::arg("terms"), py::arg("num") = Numerics{});
  m.def("make_mixture", &make_mixture, py::arg("parts"), py::arg("num") = Numerics{});
  m.def("make_biseparable_random", &make_biseparable_random, py::arg("n_qubits"),
        py::arg("block_cap"), py::arg("n_components"), py::arg("seed"),
        py::arg("num") = Numerics{});

  py::class_<NoiseModel>(m, "NoiseModel")
      .def(py::init<>())
      .def(py::init([](double dephasing, double bitflip) {
             return NoiseModel{dephasing, bitflip};
           }),
           py::arg("dephasing_rate") = 0.0, py::arg("bitflip_rate") = 0.0)
      .def_readwrite("dephasing_rate", &NoiseModel::dephasing_rate)
      .def_readwrite("bitflip_rate", &NoiseModel::bitflip_rate);

  m.def("apply_noise", &apply_noise, py::arg("state"), py::arg("model"),
        py::arg("num") = Numerics{});
  m.def("xi_dephasing_estimate", &xi_dephasing_estimate, py::arg("n_qubits"), py::arg("p"));
  m.def("xi_dephasing_estimate_linear", &xi_dephasing_estimate_linear, py::arg("n_qubits"),
        py::arg("p"));
  m.def("xi_bitflip_estimate", &xi_bitflip_estimate, py::arg("n_qubits"), py::arg("p_b"));

  py::enum_<SimpleBoundKind>(m, "SimpleBoundKind")
      .value("single_axis", SimpleBoundKind::single_axis)
      .value("transverse_sum", SimpleBoundKind::transverse_sum);

  py::class_<CriteriaResult>(m, "CriteriaResult")
      .def_readonly("inputs", &CriteriaResult::inputs)
      .def_readonly("xi", &CriteriaResult::xi)
      .def_readonly("chi", &CriteriaResult::chi)
      .def_readonly("alpha", &CriteriaResult::alpha)
      .def_readonly("bound_table", &CriteriaResult::bound_table)
      .def_readonly("depth_criterion1", &CriteriaResult::depth_criterion1)
      .def_readonly("depth_criterion2", &CriteriaResult::depth_criterion2)
      .def_readonly("certified_depth", &CriteriaResult::certified_depth)
      .def("bound", &CriteriaResult::bound, py::arg("m"));

  m.def("xi", &xi, py::arg("moments"));
  m.def("alpha", &alpha, py::arg("moments"), py::arg("num") = Numerics{});
  m.def("chi", &chi, py::arg("moments"), py::arg("num") = Numerics{});
  m.def("partition_bound", &partition_bound, py::arg("n_qubits"), py::arg("m"), py::arg("chi"),
        py::arg("num") = Numerics{});
  m.def("simple_bound", &simple_bound, py::arg("n_qubits"), py::arg("m0"),
        py::arg("jz_variance"), py::arg("kind"));
  m.def("certify_depth", &certify_depth, py::arg("moments"), py::arg("num") = Numerics{});

  py::class_<MeasurementRecordSet::Entry>(m, "MeasurementEntry")
      .def_readonly("axis", &MeasurementRecordSet::Entry::axis)
      .def_readonly("outcome", &MeasurementRecordSet::Entry::outcome)
      .def_readonly("count", &MeasurementRecordSet::Entry::count);

  py::class_<MeasurementRecordSet>(m, "MeasurementRecordSet")
      .def(py::init<>())
      .def_readwrite("entries", &MeasurementRecordSet::entries)
      .def_readwrite("n_qubits", &MeasurementRecordSet::n_qubits)
      .def_readwrite("metadata", &MeasurementRecordSet::metadata)
      .def("add", [](MeasurementRecordSet& records, Axis axis, double outcome,
                     std::uint64_t count) { records.entries.push_back({axis, outcome, count}); });

  py::class_<OutcomeDistribution>(m, "OutcomeDistribution")
      .def_readonly("outcomes", &OutcomeDistribution::outcomes)
      .def_readonly("probabilities", &OutcomeDistribution::probabilities);

  py::class_<EstimatedMoments>(m, "EstimatedMoments")
      .def_readonly("moments", &EstimatedMoments::moments)
      .def_readonly("se_jx2", &EstimatedMoments::se_jx2)
      .def_readonly("se_jy2", &EstimatedMoments::se_jy2)
      .def_readonly("se_jz_mean", &EstimatedMoments::se_jz_mean)
      .def_readonly("se_jz2", &EstimatedMoments::se_jz2)
      .def_readonly("se_jz4", &EstimatedMoments::se_jz4)
      .def_readonly("xi", &EstimatedMoments::xi)
      .def_readonly("se_xi", &EstimatedMoments::se_xi)
      .def_readonly("chi", &EstimatedMoments::chi)
      .def_readonly("se_chi", &EstimatedMoments::se_chi)
      .def_readonly("shots_x", &EstimatedMoments::shots_x)
      .def_readonly("shots_y", &EstimatedMoments::shots_y)
      .def_readonly("shots_z", &EstimatedMoments::shots_z);

  py::class_<BootstrapErrors>(m, "BootstrapErrors")
      .def_readonly("se_xi", &BootstrapErrors::se_xi)
      .def_readonly("se_chi", &BootstrapErrors::se_chi)
      .def_readonly("resamples", &BootstrapErrors::resamples);

  m.def("outcome_distribution", &outcome_distribution, py::arg("state"), py::arg("axis"));
  m.def("sample_shots", &sample_shots, py::arg("state"), py::arg("axis"), py::arg("shots"),
        py::arg("seed"));
  m.def("sample_all_axes", &sample_all_axes, py::arg("state"), py::arg("shots_per_axis"),
        py::arg("seed"));
  m.def("estimate_moments", &estimate_moments, py::arg("records"), py::arg("num") = Numerics{});
  m.def("bootstrap_errors", &bootstrap_errors, py::arg("records"), py::arg("resamples"),
        py::arg("seed"), py::arg("num") = Numerics{});
  m.def("to_csv", &to_csv, py::arg("records"));
  m.def("write_csv", &write_csv, py::arg("records"), py::arg("path"));
  m.def("ingest_csv", &ingest_csv, py::arg("path"), py::arg("expected_n_qubits") = 0);

  py::class_<ViolationSample>(m, "ViolationSample")
      .def_readonly("trial", &ViolationSample::trial)
      .def_readonly("margin", &ViolationSample::margin)
      .def_readonly("xi", &ViolationSample::xi)
      .def_readonly("chi", &ViolationSample::chi)
      .def_readonly("layouts", &ViolationSample::layouts)
      .def_readonly("weights", &ViolationSample::weights)
      .def_readonly("reference", &ViolationSample::reference)
      .def_readonly("optimized", &ViolationSample::optimized);

  py::class_<ViolationReport>(m, "ViolationReport")
      .def_readonly("n_qubits", &ViolationReport::n_qubits)
      .def_readonly("block_cap", &ViolationReport::block_cap)
      .def_readonly("bound_m", &ViolationReport::bound_m)
      .def_readonly("trials", &ViolationReport::trials)
      .def_readonly("seed", &ViolationReport::seed)
      .def_readonly("optimize", &ViolationReport::optimize)
      .def_readonly("sanity_mode", &ViolationReport::sanity_mode)
      .def_readonly("max_margin", &ViolationReport::max_margin)
      .def_readonly("max_xi", &ViolationReport::max_xi)
      .def_readonly("worst", &ViolationReport::worst)
      .def_readonly("violation", &ViolationReport::violation);

  py::class_<EstimateComparisonRow>(m, "EstimateComparisonRow")
      .def_readonly("n_qubits", &EstimateComparisonRow::n_qubits)
      .def_readonly("dephasing_rate", &EstimateComparisonRow::dephasing_rate)
      .def_readonly("bitflip_rate", &EstimateComparisonRow::bitflip_rate)
      .def_readonly("xi_exact", &EstimateComparisonRow::xi_exact)
      .def_readonly("jz_variance_exact", &EstimateComparisonRow::jz_variance_exact)
      .def_readonly("xi_dephasing_sum", &EstimateComparisonRow::xi_dephasing_sum)
      .def_readonly("xi_dephasing_linear", &EstimateComparisonRow::xi_dephasing_linear)
      .def_readonly("xi_bitflip", &EstimateComparisonRow::xi_bitflip)
      .def_readonly("abs_deviation", &EstimateComparisonRow::abs_deviation)
      .def_readonly("rel_deviation", &EstimateComparisonRow::rel_deviation)
      .def_readonly("note", &EstimateComparisonRow::note);

  py::class_<PartitionMax>(m, "PartitionMax")
      .def_readonly("value", &PartitionMax::value)
      .def_readonly("parts", &PartitionMax::parts);

  m.def("bound_violation_search", &bound_violation_search, py::arg("n_qubits"),
        py::arg("block_cap"), py::arg("trials"), py::arg("seed"), py::arg("optimize") = false,
        py::arg("num") = Numerics{});
  m.def("estimate_vs_exact", &estimate_vs_exact, py::arg("n_qubits"), py::arg("grid"),
        py::arg("num") = Numerics{});
  m.def("partition_bruteforce", &partition_bruteforce, py::arg("n_qubits"), py::arg("m"),
        py::arg("chi"), py::arg("num") = Numerics{});

  m.def("certify_report_json", &certify_report_json, py::arg("config_json"),
        "Run the certify pipeline on a JSON config string and return the report document");
}
