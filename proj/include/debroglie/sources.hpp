#pragma once

#include <complex>
#include <optional>
#include <string_view>

#include "debroglie/spectra.hpp"

namespace debroglie {

enum class SourceKind { spdc, separable, distinguishable };
enum class Polarization { H, V };

std::string_view to_string(SourceKind kind);
/// Parses "spdc", "separable" or "distinguishable"; throws DomainError otherwise.
SourceKind parse_source_kind(std::string_view name);

/// The two-photon state entering ports a and b of the interferometer.
///
/// - spdc: CW-pumped down-conversion, an incoherent mixture over the pump
///   spectrum of frequency-anticorrelated pairs, both photons filtered.
/// - separable: two independent photons with identical spectra and polarization.
/// - distinguishable: as separable, but mode a carries H and mode b carries V.
class SourceModel {
 public:
  /// Throws DomainError unless the pump is centered at half the filter
  /// wavelength within 1% and the filter has non-zero width.
  static SourceModel spdc(const SpectralProfile& pump, const SpectralProfile& filter);
  static SourceModel separable(const SpectralProfile& photon);
  static SourceModel distinguishable(const SpectralProfile& photon);

  SourceKind kind() const { return kind_; }

  /// Single-photon spectrum (the filter for spdc).
  const SpectralProfile& photon() const { return photon_; }
  /// Pump spectrum; set only for spdc.
  const std::optional<SpectralProfile>& pump() const { return pump_; }

  Polarization polarization_a() const { return Polarization::H; }
  Polarization polarization_b() const {
    return kind_ == SourceKind::distinguishable ? Polarization::V : Polarization::H;
  }

  /// Width governing the tau2 decay of the 2w0 fringe: dwe for spdc, dw otherwise.
  double fringe_bandwidth() const;
  /// sqrt(2)/fringe_bandwidth(); infinite for a monochromatic pump.
  double coherence_time() const;
  /// sqrt(2)/dw of the single-photon (filter) envelope.
  double photon_coherence_time() const { return photon_.coherence_time(); }

  /// Carrier of the two-photon fringe: the pump center for spdc, 2*w0 otherwise.
  double two_photon_frequency() const;

 private:
  SourceModel(SourceKind kind, SpectralProfile photon, std::optional<SpectralProfile> pump);

  SourceKind kind_;
  SpectralProfile photon_;
  std::optional<SpectralProfile> pump_;
};

/// Filtered single-photon temporal mode
/// g(t) = sqrt(dw/sqrt(pi)) exp(-dw^2 t^2 / 2) exp(-i w0 t), with int |g|^2 dt = 1.
class SinglePhotonKernel {
 public:
  explicit SinglePhotonKernel(const SpectralProfile& photon);

  /// Real, non-negative envelope |g(t)|.
  double envelope(double t) const;
  double carrier() const { return carrier_; }
  std::complex<double> operator()(double t) const;
  /// g(t - shift).
  std::complex<double> operator()(double t, double shift) const { return (*this)(t - shift); }

 private:
  double width_;
  double carrier_;
  double peak_;
};

/// Throws DomainError for a monochromatic profile.
SinglePhotonKernel single_photon_kernel(const SpectralProfile& photon);

/// Two-time amplitude of a pair produced by one pump frequency wp, both
/// photons passing the filter phi:
///   A(ts, ti) = int dws phi(ws) phi(wp - ws) exp(-i ws ts) exp(-i (wp - ws) ti)
///             = W(wp) exp(-i wp (ts + ti) / 2) exp(-dw^2 (ts - ti)^2 / 4),
/// W(wp) = exp(-(wp/2 - w0)^2 / dw^2). The envelope depends only on ts - ti,
/// so the CW pair is stationary in the mean detection time.
class SpdcPairKernel {
 public:
  SpdcPairKernel(const SpectralProfile& filter, double pump_frequency);

  /// exp(-dw^2 (ts - ti)^2 / 4); independent of the pump frequency.
  double envelope(double t_signal, double t_idler) const;
  /// Spectral weight W(wp) of this pump frequency.
  double spectral_weight() const { return weight_; }
  double pump_frequency() const { return pump_frequency_; }

  /// Closed-form Gaussian integral.
  std::complex<double> operator()(double t_signal, double t_idler) const;
  /// The defining frequency integral evaluated by trapezoid quadrature over
  /// +-span_widths * dw around the degenerate point, with the pump carrier
  /// factored out.
  std::complex<double> quadrature(double t_signal, double t_idler, int samples = 2001,
                                  double span_widths = 10.0) const;

 private:
  SpectralProfile filter_;
  double width_;
  double pump_frequency_;
  double weight_;
};

SpdcPairKernel spdc_pair_kernel(const SpectralProfile& filter, double pump_frequency);

}  // namespace debroglie
