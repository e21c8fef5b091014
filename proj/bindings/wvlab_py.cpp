// Python bindings for the wvlab core: states, operators, weak values,
// small-transform estimators, sampling statistics, and the Gaussian-probe
// oracle. Eigen types cross the boundary as numpy arrays.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wvlab/wvlab.hpp"

namespace py = pybind11;
using namespace wvlab;

namespace {

DiffMethod parse_method(const std::string& name) {
  if (name == "forward") return DiffMethod::forward;
  if (name == "symmetric") return DiffMethod::symmetric;
  throw InvalidArgument("method must be 'forward' or 'symmetric'");
}

Part parse_part(const std::string& name) {
  if (name == "re") return Part::re;
  if (name == "im") return Part::im;
  throw InvalidArgument("part must be 're' or 'im'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "weak-value numerical laboratory";

  py::register_exception<DimensionMismatch>(m, "DimensionMismatchError", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgumentError", PyExc_ValueError);
  py::register_exception<OrthogonalSelection>(m, "OrthogonalSelectionError", PyExc_ValueError);
  py::register_exception<NoFringe>(m, "NoFringeError", PyExc_ValueError);
  py::register_exception<RegimeViolation>(m, "RegimeViolationError", PyExc_ValueError);

  py::class_<Ket>(m, "Ket")
      .def(py::init<Vector>(), py::arg("amplitudes"))
      .def_static("basis", &Ket::basis, py::arg("dim"), py::arg("index"))
      .def_static("unit", &Ket::unit, py::arg("amplitudes"))
      .def_property_readonly("dim", &Ket::dim)
      .def_property_readonly("amplitudes", &Ket::amplitudes)
      .def("norm", &Ket::norm)
      .def("is_normalized", &Ket::is_normalized, py::arg("tol") = kStructuralTol);

  py::class_<Operator>(m, "Operator")
      .def(py::init<Matrix>(), py::arg("entries"))
      .def_static("identity", &Operator::identity)
      .def_static("zero", &Operator::zero)
      .def_static("projector", &Operator::projector)
      .def_static("pauli_x", &Operator::pauli_x)
      .def_static("pauli_y", &Operator::pauli_y)
      .def_static("pauli_z", &Operator::pauli_z)
      .def_static("spin_z", &Operator::spin_z)
      .def_property_readonly("dim", &Operator::dim)
      .def_property_readonly("entries", &Operator::entries)
      .def("adjoint", &Operator::adjoint)
      .def("is_hermitian", &Operator::is_hermitian, py::arg("tol") = kStructuralTol)
      .def("is_normal", &Operator::is_normal, py::arg("tol") = kStructuralTol)
      .def("is_unitary", &Operator::is_unitary, py::arg("tol") = kStructuralTol);

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init<Matrix, double>(), py::arg("entries"), py::arg("tol") = kStructuralTol)
      .def_static("maximally_mixed", &DensityMatrix::maximally_mixed)
      .def_property_readonly("dim", &DensityMatrix::dim)
      .def_property_readonly("entries", &DensityMatrix::entries);

  m.def("inner", &inner);
  m.def("apply", &apply);
  m.def("matexp", &matexp, py::arg("M"), py::arg("s"));
  m.def("kron", py::overload_cast<const Operator&, const Operator&>(&kron));
  m.def("kron", py::overload_cast<const Ket&, const Ket&>(&kron));
  m.def("density_from_ket", &density_from_ket);

  py::class_<WeakValue>(m, "WeakValue")
      .def_readonly("value", &WeakValue::value)
      .def_readonly("generator_label", &WeakValue::generator_label);

  py::class_<Selection>(m, "Selection")
      .def_static("pure", &Selection::pure, py::arg("pre"), py::arg("post"))
      .def_static("mixed",
                  py::overload_cast<DensityMatrix, DensityMatrix>(&Selection::mixed))
      .def_static("mixed", py::overload_cast<Ket, DensityMatrix>(&Selection::mixed))
      .def_static("mixed", py::overload_cast<DensityMatrix, Ket>(&Selection::mixed))
      .def_property_readonly("is_pure", &Selection::is_pure)
      .def_property_readonly("dim", &Selection::dim)
      .def_property_readonly("overlap", &Selection::overlap)
      .def_property_readonly("baseline_probability", &Selection::baseline_probability);

  m.def("weak_value", &weak_value, py::arg("C"), py::arg("sel"), py::arg("label") = "");
  m.def("weak_value_mixed", &weak_value_mixed, py::arg("C"), py::arg("sel"),
        py::arg("label") = "");
  m.def("expectation", &expectation);
  m.def("weak_probability_profile", &weak_probability_profile);

  py::class_<SmallTransform>(m, "SmallTransform")
      .def_static("exponential_of", &SmallTransform::exponential_of)
      .def_static("linear_of", &SmallTransform::linear_of)
      .def_static("table_of", &SmallTransform::table_of, py::arg("family"),
                  py::arg("generator"))
      .def("evaluate", &SmallTransform::evaluate)
      .def_property_readonly("generator", &SmallTransform::generator)
      .def_property_readonly("dim", &SmallTransform::dim);

  m.def(
      "unitary_of",
      [](const Operator& a, bool linear) {
        return unitary_of(a, linear ? Exactness::linear : Exactness::exponential);
      },
      py::arg("A"), py::arg("linear") = false);
  m.def(
      "attenuation_of",
      [](const Operator& b, bool linear) {
        return attenuation_of(b, linear ? Exactness::linear : Exactness::exponential);
      },
      py::arg("B"), py::arg("linear") = false);

  py::class_<DilationResult>(m, "DilationResult")
      .def_readonly("target_dim", &DilationResult::target_dim)
      .def_readonly("total_dim", &DilationResult::total_dim)
      .def_readonly("unitary", &DilationResult::unitary)
      .def("embed", &DilationResult::embed)
      .def("project", &DilationResult::project);
  m.def("dilate_attenuation", &dilate_attenuation, py::arg("B"), py::arg("theta"));

  py::class_<AncillaCoupling>(m, "AncillaCoupling")
      .def_readonly("prefactor", &AncillaCoupling::prefactor)
      .def_readonly("effective", &AncillaCoupling::effective);
  m.def("ancilla_coupling", &ancilla_coupling, py::arg("A1"), py::arg("A2"),
        py::arg("phi_i"), py::arg("phi_f"), py::arg("theta"));

  py::class_<Estimate>(m, "Estimate")
      .def_readonly("value", &Estimate::value)
      .def_readonly("theta_used", &Estimate::theta_used);

  py::class_<InterferometerConfig>(m, "InterferometerConfig")
      .def_static("with_default_grid", &InterferometerConfig::with_default_grid,
                  py::arg("arm"), py::arg("samples") = 16)
      .def_readonly("delta_samples", &InterferometerConfig::delta_samples);

  m.def("post_selection_probability", &post_selection_probability);
  m.def("probability_ratio", &probability_ratio);
  m.def("amplitude_ratio", &amplitude_ratio);
  m.def("estimate_re_forward", &estimate_re_forward);
  m.def("estimate_re_symmetric", &estimate_re_symmetric);
  m.def("fringe_probability", &fringe_probability);
  m.def("fit_fringe_phase", &fit_fringe_phase);
  m.def(
      "estimate_im",
      [](const Selection& sel, const InterferometerConfig& cfg, double theta,
         const std::string& method) { return estimate_im(sel, cfg, theta, parse_method(method)); },
      py::arg("sel"), py::arg("cfg"), py::arg("theta"), py::arg("method") = "symmetric");
  m.def(
      "estimate_expectation_pre_only",
      [](const Ket& i, const SmallTransform& t, double theta, const std::string& part,
         const std::string& method) {
        return estimate_expectation_pre_only(i, t, theta, parse_part(part),
                                             parse_method(method));
      },
      py::arg("i"), py::arg("T"), py::arg("theta"), py::arg("part"),
      py::arg("method") = "symmetric");

  m.def("derive_stream", &derive_stream);
  m.def("simulate_detections", &simulate_detections, py::arg("p"), py::arg("n"),
        py::arg("seed"));

  py::class_<ClassicalFisher>(m, "ClassicalFisher")
      .def_readonly("exact", &ClassicalFisher::exact)
      .def_readonly("leading_order", &ClassicalFisher::leading_order);
  m.def("classical_fisher_re", &classical_fisher_re);
  m.def("binary_fisher_theta", &binary_fisher_theta);
  m.def("quantum_fisher_theta", &quantum_fisher_theta);
  m.def("optimal_postselection", &optimal_postselection);

  py::class_<WvaEstimate>(m, "WvaEstimate")
      .def_readonly("theta_hat", &WvaEstimate::theta_hat)
      .def_readonly("std_error", &WvaEstimate::std_error)
      .def_readonly("amplification", &WvaEstimate::amplification);
  m.def("wva_estimate_theta", &wva_estimate_theta);

  py::class_<GaussianProbe>(m, "GaussianProbe")
      .def(py::init([](double sigma) { return GaussianProbe{sigma, std::nullopt}; }),
           py::arg("sigma") = 1.0)
      .def_readonly("sigma", &GaussianProbe::sigma);

  py::class_<PointerDistribution>(m, "PointerDistribution")
      .def_readonly("x", &PointerDistribution::x)
      .def_readonly("density", &PointerDistribution::density)
      .def_readonly("normalization", &PointerDistribution::normalization)
      .def_readonly("clipped_mass", &PointerDistribution::clipped_mass);
  m.def("pointer_distribution_exact", &pointer_distribution_exact);
  m.def("pointer_distribution_expanded", &pointer_distribution_expanded);
  m.def("mean_pointer_shift", &mean_pointer_shift);

  py::class_<GaussianFisher>(m, "GaussianFisher")
      .def_readonly("numeric", &GaussianFisher::numeric)
      .def_readonly("leading_order", &GaussianFisher::leading_order);
  m.def("fisher_gaussian", &fisher_gaussian);

  m.def("three_box_pre", &three_box_pre);
  m.def("three_box_post", &three_box_post);
  m.def("three_box_selection", &three_box_selection);
  m.def("spin_pre", &spin_pre);
  m.def("spin_post", &spin_post);
  m.def("spin_selection", &spin_selection);
  m.def("quantum_pre_only_slope", &quantum_pre_only_slope);
  m.def("weak_probability_slope", &weak_probability_slope);
  m.def("spin_pre_only_phase_slope", &spin_pre_only_phase_slope);
  m.def("spin_post_selected_phase_slope", &spin_post_selected_phase_slope);

  py::class_<ClassicalThreeBox>(m, "ClassicalThreeBox")
      .def(py::init([](std::array<double, 3> p_pre, std::array<double, 3> p_post,
                       int shutter_path, double theta) {
             return ClassicalThreeBox{p_pre, p_post, shutter_path, theta};
           }),
           py::arg("p_pre"), py::arg("p_post"), py::arg("shutter_path"), py::arg("theta"))
      .def_readwrite("theta", &ClassicalThreeBox::theta);
  m.def("classical_detection", &classical_detection);
  m.def("classical_slope", &classical_slope);

  py::class_<WvaScenarioResult>(m, "WvaScenarioResult")
      .def_readonly("ratio", &WvaScenarioResult::ratio)
      .def_readonly("amplification", &WvaScenarioResult::amplification);
  m.def("wva_scenario", &wva_scenario);

  m.attr("PATH_A") = kPathA;
  m.attr("PATH_B") = kPathB;
  m.attr("PATH_C") = kPathC;
  m.attr("STRUCTURAL_TOL") = kStructuralTol;
  m.attr("DEFAULT_THETA") = kDefaultTheta;

#ifdef WVLAB_VERSION
  m.attr("__version__") = WVLAB_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
