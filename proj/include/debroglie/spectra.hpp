#pragma once

namespace debroglie {

/// Converts an intensity-FWHM bandwidth quoted in wavelength to the Gaussian
/// width dw of the amplitude exp(-(w-w0)^2 / 2dw^2).
///
/// The intensity |phi|^2 = exp(-(w-w0)^2/dw^2) has FWHM 2*sqrt(ln 2)*dw, which
/// is matched to the frequency-domain FWHM 2*pi*c*dlambda/lambda^2.
double fwhm_to_gaussian_width(double fwhm_wavelength, double center_wavelength);

/// Inverse of fwhm_to_gaussian_width at fixed center wavelength.
double gaussian_width_to_fwhm(double gaussian_width, double center_wavelength);

/// A Gaussian spectral line given by its center and intensity-FWHM in
/// wavelength. Zero FWHM is a monochromatic line.
class SpectralProfile {
 public:
  /// Throws DomainError unless center_wavelength > 0 and fwhm_wavelength >= 0.
  static SpectralProfile from_wavelength(double center_wavelength, double fwhm_wavelength);

  double center_wavelength() const { return center_wavelength_; }
  double fwhm_wavelength() const { return fwhm_wavelength_; }
  double center_frequency() const { return center_frequency_; }
  double gaussian_width() const { return gaussian_width_; }
  bool is_monochromatic() const { return gaussian_width_ == 0.0; }

  /// sqrt(2)/dw: the 1/e half-width of the temporal amplitude envelope.
  double coherence_time() const;

  friend bool operator==(const SpectralProfile&, const SpectralProfile&) = default;

 private:
  SpectralProfile(double center_wavelength, double fwhm_wavelength);

  double center_wavelength_;
  double fwhm_wavelength_;
  double center_frequency_;
  double gaussian_width_;
};

/// Filter / single-photon spectral amplitude
/// phi(w) = exp(-(w-w0)^2 / 2dw^2) / sqrt(dw*sqrt(pi)), with int |phi|^2 dw = 1.
/// Throws DomainError for a monochromatic profile.
double amplitude(const SpectralProfile& profile, double omega);

/// Pump spectral power density S(w) = exp(-(w-wp0)^2 / 2dwp^2) / (dwp*sqrt(2pi)),
/// with int S dw = 1. A monochromatic pump is a delta line and must be handled
/// by the caller; passing one throws DomainError.
double pump_density(const SpectralProfile& pump, double omega);

/// Combined pump + filter width, 1/dwe^2 = 1/dwp^2 + 1/dw^2.
struct EffectiveBandwidth {
  double value;
};

/// pump_width may be +inf (filter-limited) or 0 (monochromatic pump, dwe = 0).
/// Throws DomainError if filter_width <= 0 or pump_width < 0.
EffectiveBandwidth effective_bandwidth(double pump_width, double filter_width);

}  // namespace debroglie
