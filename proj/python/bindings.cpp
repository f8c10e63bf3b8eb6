#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gdicke/bogoliubov.hpp"
#include "gdicke/criticality.hpp"
#include "gdicke/dicke.hpp"
#include "gdicke/errors.hpp"
#include "gdicke/oracle.hpp"

namespace py = pybind11;
using namespace gdicke;

namespace {

QuadraticBosonForm make_form(const CMatrix& a, const CMatrix& b, double c0) {
  QuadraticBosonForm f{a, b, c0};
  validate(f);
  return f;
}

}  // namespace

PYBIND11_MODULE(gdicke, m) {
  m.doc() = "Bogoliubov spectra and phase structure of the spatially extended Dicke model";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base);
  py::register_exception<PairingFailure>(m, "PairingFailure", base);
  py::register_exception<ZeroModeUnnormalizable>(m, "ZeroModeUnnormalizable", base);
  py::register_exception<UnstableForm>(m, "UnstableForm", base);
  py::register_exception<UnphysicalPhase>(m, "UnphysicalPhase", base);
  py::register_exception<DisplacementUndefined>(m, "DisplacementUndefined", base);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<BracketError>(m, "BracketError", base);
  py::register_exception<ResourceError>(m, "ResourceError", base);
  py::register_exception<NumericFailure>(m, "NumericFailure", base);

  py::enum_<Stability>(m, "Stability")
      .value("AllPositive", Stability::AllPositive)
      .value("HasZero", Stability::HasZero)
      .value("HasNegative", Stability::HasNegative)
      .value("HasComplex", Stability::HasComplex);

  py::enum_<Branch>(m, "Branch")
      .value("Normal", Branch::Normal)
      .value("Sr1", Branch::Sr1)
      .value("Sr2", Branch::Sr2)
      .value("Sr3", Branch::Sr3)
      .value("Sr4", Branch::Sr4);

  py::enum_<FitTarget>(m, "FitTarget")
      .value("Gap", FitTarget::Gap)
      .value("Length", FitTarget::Length)
      .value("OrderParameter", FitTarget::OrderParameter);

  py::class_<QuadraticBosonForm>(m, "QuadraticBosonForm")
      .def(py::init(&make_form), py::arg("a"), py::arg("b"), py::arg("c0") = 0.0)
      .def_readwrite("a", &QuadraticBosonForm::a)
      .def_readwrite("b", &QuadraticBosonForm::b)
      .def_readwrite("c0", &QuadraticBosonForm::c0)
      .def_property_readonly("modes", &QuadraticBosonForm::modes);

  py::class_<SpectrumTolerances>(m, "SpectrumTolerances")
      .def(py::init([](double zero, double imag) { return SpectrumTolerances{zero, imag}; }),
           py::arg("zero") = 1e-6, py::arg("imag") = 1e-6)
      .def_readwrite("zero", &SpectrumTolerances::zero)
      .def_readwrite("imag", &SpectrumTolerances::imag);

  py::class_<BogoliubovSpectrum>(m, "BogoliubovSpectrum")
      .def_readonly("frequencies", &BogoliubovSpectrum::frequencies)
      .def_readonly("krein_signs", &BogoliubovSpectrum::krein_signs)
      .def_readonly("classification", &BogoliubovSpectrum::classification)
      .def_readonly("transformation", &BogoliubovSpectrum::transformation);

  m.def("bogoliubov_spectrum",
        py::overload_cast<const QuadraticBosonForm&, const SpectrumTolerances&>(&bogoliubov_spectrum),
        py::arg("form"), py::arg("tol"));
  m.def("bogoliubov_spectrum", py::overload_cast<const QuadraticBosonForm&>(&bogoliubov_spectrum),
        py::arg("form"));
  m.def("diagonalize", [](const QuadraticBosonForm& f) { return diagonalize(f, SpectrumTolerances::for_form(f)); },
        py::arg("form"));
  m.def("ground_energy", &ground_energy, py::arg("form"), py::arg("spectrum"));

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double omega, double omega0, double lambda, double n_atoms) {
             ModelParams p{omega, omega0, lambda, n_atoms};
             p.validate();
             return p;
           }),
           py::arg("omega") = 1.0, py::arg("omega0") = 1.0, py::arg("lambda_") = 0.0,
           py::arg("n_atoms") = 1e6)
      .def_readwrite("omega", &ModelParams::omega)
      .def_readwrite("omega0", &ModelParams::omega0)
      .def_readwrite("lambda_", &ModelParams::lambda)
      .def_readwrite("n_atoms", &ModelParams::n_atoms);

  py::class_<BranchCoefficients>(m, "BranchCoefficients")
      .def_readonly("x_plus", &BranchCoefficients::x_plus)
      .def_readonly("x_minus", &BranchCoefficients::x_minus)
      .def_readonly("alpha", &BranchCoefficients::alpha)
      .def_readonly("beta", &BranchCoefficients::beta)
      .def_readonly("gamma", &BranchCoefficients::gamma)
      .def_readonly("c0", &BranchCoefficients::c0);

  m.def("critical_coupling", &critical_coupling, py::arg("omega"), py::arg("omega0"));
  m.def("normal_form", &normal_form, py::arg("params"));
  m.def("superradiant_form", &superradiant_form, py::arg("params"), py::arg("branch"));
  m.def("effective_form", &effective_form, py::arg("params"), py::arg("branch"));
  m.def("branch_coefficients", &branch_coefficients, py::arg("params"), py::arg("branch"));
  m.def("order_parameter", &order_parameter, py::arg("params"));

  py::class_<SweepRecord>(m, "SweepRecord")
      .def_readonly("lambda_", &SweepRecord::lambda)
      .def_readonly("branch", &SweepRecord::branch)
      .def_readonly("frequencies", &SweepRecord::frequencies)
      .def_readonly("physical", &SweepRecord::physical)
      .def_readonly("energy_density", &SweepRecord::energy_density)
      .def_readonly("note", &SweepRecord::note);

  m.def(
      "sweep",
      [](const ModelParams& p, Branch b, const std::vector<double>& grid, unsigned threads) {
        return sweep(p, b, grid, SweepOptions{std::nullopt, threads});
      },
      py::arg("params"), py::arg("branch"), py::arg("grid"), py::arg("threads") = 1);
  m.def("linear_grid", &linear_grid, py::arg("lo"), py::arg("hi"), py::arg("steps"));
  m.def(
      "find_critical",
      [](Branch b, double omega, double omega0, std::optional<std::pair<double, double>> bracket,
         double tol) {
        return find_critical(b, omega, omega0, bracket.value_or(default_bracket(omega, omega0)), tol)
            .lambda_c;
      },
      py::arg("branch"), py::arg("omega") = 1.0, py::arg("omega0") = 1.0,
      py::arg("bracket") = std::nullopt, py::arg("tol") = 1e-8);
  m.def(
      "find_complex_onset",
      [](double omega, double omega0, std::optional<std::pair<double, double>> bracket, double tol) {
        return find_complex_onset(omega, omega0,
                                  bracket.value_or(default_onset_bracket(omega, omega0)), tol);
      },
      py::arg("omega") = 1.0, py::arg("omega0") = 1.0, py::arg("bracket") = std::nullopt,
      py::arg("tol") = 1e-8);
  m.def(
      "fit_exponent",
      [](FitTarget t, double omega, double omega0, int n_points) {
        return fit_exponent(t, omega, omega0, default_window(t), n_points).exponent;
      },
      py::arg("target"), py::arg("omega") = 1.0, py::arg("omega0") = 1.0, py::arg("n_points") = 41);

  m.def(
      "fock_ed",
      [](const QuadraticBosonForm& f, const std::vector<int>& cutoffs, int k) {
        return fock_ed(f, FockSpec{cutoffs, {}, kDefaultDimensionCap}, k);
      },
      py::arg("form"), py::arg("cutoffs"), py::arg("k_lowest"));
  m.def(
      "spin_ed",
      [](double omega, double omega0, double lambda, const std::vector<double>& phases,
         int photon_cutoff, int k) {
        const SpinEnsemble e{static_cast<int>(phases.size()), phases, photon_cutoff};
        return spin_ed(omega, omega0, lambda, e, k);
      },
      py::arg("omega"), py::arg("omega0"), py::arg("lambda_"), py::arg("phases"),
      py::arg("photon_cutoff"), py::arg("k_lowest"));
  m.def(
      "collective_commutators",
      [](const std::vector<double>& phases) {
        const auto c = collective_commutators(SpinEnsemble{static_cast<int>(phases.size()), phases, 1});
        return std::make_pair(c.bb_dag, c.bc_dag);
      },
      py::arg("phases"));
}
