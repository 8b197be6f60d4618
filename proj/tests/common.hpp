#pragma once

#include <cmath>

#include "debroglie/sources.hpp"
#include "debroglie/spectra.hpp"

namespace fixtures {

inline constexpr double lambda0 = 810e-9;
inline constexpr double filter_fwhm = 5e-9;

inline debroglie::SpectralProfile photon(double fwhm = filter_fwhm, double center = lambda0) {
  return debroglie::SpectralProfile::from_wavelength(center, fwhm);
}

inline debroglie::SourceModel spdc(double pump_fwhm = 2e-9, double fwhm = filter_fwhm,
                                   double center = lambda0) {
  return debroglie::SourceModel::spdc(
      debroglie::SpectralProfile::from_wavelength(center / 2.0, pump_fwhm), photon(fwhm, center));
}

inline debroglie::SourceModel separable(double fwhm = filter_fwhm) {
  return debroglie::SourceModel::separable(photon(fwhm));
}

inline debroglie::SourceModel distinguishable(double fwhm = filter_fwhm) {
  return debroglie::SourceModel::distinguishable(photon(fwhm));
}

// Delay nearest `target` at which cos(2 w0 tau2) = 1.
inline double fringe_peak_near(double target, double w0) {
  const double period = M_PI / w0;
  return std::round(target / period) * period;
}

}  // namespace fixtures
