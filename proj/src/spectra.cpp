#include "debroglie/spectra.hpp"

#include <cmath>
#include <numbers>

#include "debroglie/errors.hpp"
#include "debroglie/units.hpp"

namespace debroglie {

namespace {

// Ratio between intensity FWHM and the Gaussian amplitude width dw.
const double kIntensityFwhmFactor = 2.0 * std::sqrt(std::numbers::ln2);

}  // namespace

double fwhm_to_gaussian_width(double fwhm_wavelength, double center_wavelength) {
  if (!(center_wavelength > 0.0)) {
    throw DomainError("center wavelength must be positive");
  }
  if (!(fwhm_wavelength >= 0.0)) {
    throw DomainError("FWHM bandwidth must be non-negative");
  }
  const double fwhm_omega = 2.0 * std::numbers::pi * units::speed_of_light * fwhm_wavelength /
                            (center_wavelength * center_wavelength);
  return fwhm_omega / kIntensityFwhmFactor;
}

double gaussian_width_to_fwhm(double gaussian_width, double center_wavelength) {
  if (!(center_wavelength > 0.0)) {
    throw DomainError("center wavelength must be positive");
  }
  if (!(gaussian_width >= 0.0)) {
    throw DomainError("Gaussian width must be non-negative");
  }
  return gaussian_width * kIntensityFwhmFactor * center_wavelength * center_wavelength /
         (2.0 * std::numbers::pi * units::speed_of_light);
}

SpectralProfile::SpectralProfile(double center_wavelength, double fwhm_wavelength)
    : center_wavelength_(center_wavelength),
      fwhm_wavelength_(fwhm_wavelength),
      center_frequency_(units::angular_frequency(center_wavelength)),
      gaussian_width_(fwhm_to_gaussian_width(fwhm_wavelength, center_wavelength)) {}

SpectralProfile SpectralProfile::from_wavelength(double center_wavelength,
                                                 double fwhm_wavelength) {
  if (!std::isfinite(center_wavelength) || !std::isfinite(fwhm_wavelength)) {
    throw DomainError("spectral parameters must be finite");
  }
  return SpectralProfile(center_wavelength, fwhm_wavelength);
}

double SpectralProfile::coherence_time() const {
  if (is_monochromatic()) {
    throw DomainError("a monochromatic line has no finite coherence time");
  }
  return std::numbers::sqrt2 / gaussian_width_;
}

double amplitude(const SpectralProfile& profile, double omega) {
  if (profile.is_monochromatic()) {
    throw DomainError("degenerate profile: a delta line has no spectral amplitude");
  }
  const double dw = profile.gaussian_width();
  const double x = omega - profile.center_frequency();
  return std::exp(-x * x / (2.0 * dw * dw)) / std::sqrt(dw * std::sqrt(std::numbers::pi));
}

double pump_density(const SpectralProfile& pump, double omega) {
  if (pump.is_monochromatic()) {
    throw DomainError("monochromatic pump: density is a delta function");
  }
  const double dw = pump.gaussian_width();
  const double x = omega - pump.center_frequency();
  return std::exp(-x * x / (2.0 * dw * dw)) / (dw * std::sqrt(2.0 * std::numbers::pi));
}

EffectiveBandwidth effective_bandwidth(double pump_width, double filter_width) {
  if (pump_width == 0.0 && filter_width == 0.0) {
    throw DomainError("effective bandwidth undefined for two zero widths");
  }
  if (!(filter_width > 0.0) || !(pump_width >= 0.0)) {
    throw DomainError("effective bandwidth requires filter width > 0 and pump width >= 0");
  }
  if (pump_width == 0.0) {
    return {0.0};
  }
  const double inv_sq = 1.0 / (pump_width * pump_width) + 1.0 / (filter_width * filter_width);
  return {1.0 / std::sqrt(inv_sq)};
}

}  // namespace debroglie
