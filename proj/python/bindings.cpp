#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "debroglie/analysis.hpp"
#include "debroglie/cli.hpp"
#include "debroglie/oracle.hpp"
#include "debroglie/rates.hpp"
#include "debroglie/spectra.hpp"

namespace py = pybind11;
using namespace debroglie;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-photon de Broglie wave interference: closed forms, oracle, analysis";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

  m.def("fwhm_to_gaussian_width", &fwhm_to_gaussian_width, py::arg("fwhm_wavelength"),
        py::arg("center_wavelength"));
  m.def("effective_bandwidth",
        [](double pump, double filter) { return effective_bandwidth(pump, filter).value; },
        py::arg("pump_width"), py::arg("filter_width"));

  py::class_<SpectralProfile>(m, "SpectralProfile")
      .def_static("from_wavelength", &SpectralProfile::from_wavelength,
                  py::arg("center_wavelength"), py::arg("fwhm_wavelength"))
      .def_property_readonly("center_wavelength", &SpectralProfile::center_wavelength)
      .def_property_readonly("fwhm_wavelength", &SpectralProfile::fwhm_wavelength)
      .def_property_readonly("center_frequency", &SpectralProfile::center_frequency)
      .def_property_readonly("gaussian_width", &SpectralProfile::gaussian_width)
      .def("coherence_time", &SpectralProfile::coherence_time);

  py::enum_<SourceKind>(m, "SourceKind")
      .value("spdc", SourceKind::spdc)
      .value("separable", SourceKind::separable)
      .value("distinguishable", SourceKind::distinguishable);

  py::class_<SourceModel>(m, "SourceModel")
      .def_static("spdc", &SourceModel::spdc, py::arg("pump"), py::arg("filter"))
      .def_static("separable", &SourceModel::separable, py::arg("photon"))
      .def_static("distinguishable", &SourceModel::distinguishable, py::arg("photon"))
      .def_property_readonly("kind", &SourceModel::kind)
      .def_property_readonly("photon", &SourceModel::photon)
      .def("fringe_bandwidth", &SourceModel::fringe_bandwidth);

  py::class_<DelayConfig>(m, "DelayConfig")
      .def(py::init([](double tau1, double tau2) { return DelayConfig{tau1, tau2}; }),
           py::arg("tau1") = 0.0, py::arg("tau2") = 0.0)
      .def_static("from_lengths", &DelayConfig::from_lengths, py::arg("x1"), py::arg("x2"))
      .def_readwrite("tau1", &DelayConfig::tau1)
      .def_readwrite("tau2", &DelayConfig::tau2);

  py::class_<OracleConfig>(m, "OracleConfig")
      .def(py::init<>())
      .def_readwrite("time_half_window", &OracleConfig::time_half_window)
      .def_readwrite("time_samples_per_axis", &OracleConfig::time_samples_per_axis)
      .def_readwrite("pump_samples", &OracleConfig::pump_samples)
      .def_readwrite("relative_tolerance", &OracleConfig::relative_tolerance)
      .def_readwrite("check_convergence", &OracleConfig::check_convergence);

  m.def("hom_rate", &hom_rate, py::arg("filter_width"), py::arg("tau1"));
  m.def("spdc_debroglie_rate", &spdc_debroglie_rate, py::arg("center_frequency"),
        py::arg("filter_width"), py::arg("effective_width"), py::arg("tau1"), py::arg("tau2"),
        py::arg("visibility") = 1.0);
  m.def("separable_rate", &separable_rate, py::arg("center_frequency"), py::arg("photon_width"),
        py::arg("tau1"), py::arg("tau2"), py::arg("visibility") = 1.0);
  m.def("distinguishable_rate", &distinguishable_rate, py::arg("center_frequency"),
        py::arg("photon_width"), py::arg("tau2"), py::arg("visibility") = 1.0);
  m.def("coincidence_rate", &coincidence_rate, py::arg("source"), py::arg("delays"),
        py::arg("visibility") = 1.0);
  m.def("singles_rate", &singles_rate, py::arg("source"), py::arg("delays"));

  m.def("numeric_coincidence_rate", &numeric_coincidence_rate, py::arg("source"),
        py::arg("delays"), py::arg("config") = OracleConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("numeric_hom_rate", &numeric_hom_rate, py::arg("source"), py::arg("tau1"),
        py::arg("config") = OracleConfig{}, py::call_guard<py::gil_scoped_release>());
  m.def("numeric_singles_rate", &numeric_singles_rate, py::arg("source"), py::arg("delays"),
        py::arg("config") = OracleConfig{}, py::call_guard<py::gil_scoped_release>());

  // Analysis on plain sequences; axis in meters.
  auto make_curve = [](std::vector<double> axis, std::vector<double> rates, double x1,
                       double center_wavelength, double filter_fwhm) {
    RateCurve c;
    c.axis = std::move(axis);
    c.rates = std::move(rates);
    c.meta.x1 = x1;
    c.meta.center_wavelength = center_wavelength;
    c.meta.filter_fwhm = filter_fwhm;
    return c;
  };
  m.def("visibility",
        [=](std::vector<double> axis, std::vector<double> rates, double center, double window) {
          return visibility(make_curve(std::move(axis), std::move(rates), 0, 0, 0), center, window);
        },
        py::arg("axis"), py::arg("rates"), py::arg("center"), py::arg("window"));
  m.def("estimate_period",
        [=](std::vector<double> axis, std::vector<double> rates) {
          return estimate_period(make_curve(std::move(axis), std::move(rates), 0, 0, 0));
        },
        py::arg("axis"), py::arg("rates"));
  m.def("classify_packet",
        [=](std::vector<double> axis, std::vector<double> rates, double center_wavelength,
            double filter_fwhm) {
          const auto report = extract_envelope(
              make_curve(std::move(axis), std::move(rates), 0, center_wavelength, filter_fwhm));
          return std::string(to_string(report.classification));
        },
        py::arg("axis"), py::arg("rates"), py::arg("center_wavelength"), py::arg("filter_fwhm"));

  m.def("run_cli",
        [](std::vector<std::string> args) {
          std::vector<const char*> argv{"debroglie"};
          for (const auto& a : args) argv.push_back(a.c_str());
          std::ostringstream out;
          std::ostringstream err;
          const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line tool; returns (exit_code, stdout, stderr).");
}
