#include "debroglie/sources.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "debroglie/errors.hpp"

namespace debroglie {

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::spdc:
      return "spdc";
    case SourceKind::separable:
      return "separable";
    case SourceKind::distinguishable:
      return "distinguishable";
  }
  return "unknown";
}

SourceKind parse_source_kind(std::string_view name) {
  if (name == "spdc") return SourceKind::spdc;
  if (name == "separable") return SourceKind::separable;
  if (name == "distinguishable") return SourceKind::distinguishable;
  throw DomainError("unknown source kind '" + std::string(name) +
                    "' (expected spdc, separable or distinguishable)");
}

SourceModel::SourceModel(SourceKind kind, SpectralProfile photon,
                         std::optional<SpectralProfile> pump)
    : kind_(kind), photon_(photon), pump_(pump) {
  if (photon_.is_monochromatic()) {
    throw DomainError("photon/filter spectrum must have a non-zero bandwidth");
  }
}

SourceModel SourceModel::spdc(const SpectralProfile& pump, const SpectralProfile& filter) {
  const double expected = filter.center_wavelength() / 2.0;
  if (std::abs(pump.center_wavelength() - expected) > 0.01 * expected) {
    throw DomainError("pump center wavelength must be half the filter center within 1%");
  }
  return SourceModel(SourceKind::spdc, filter, pump);
}

SourceModel SourceModel::separable(const SpectralProfile& photon) {
  return SourceModel(SourceKind::separable, photon, std::nullopt);
}

SourceModel SourceModel::distinguishable(const SpectralProfile& photon) {
  return SourceModel(SourceKind::distinguishable, photon, std::nullopt);
}

double SourceModel::fringe_bandwidth() const {
  if (kind_ != SourceKind::spdc) {
    return photon_.gaussian_width();
  }
  return effective_bandwidth(pump_->gaussian_width(), photon_.gaussian_width()).value;
}

double SourceModel::coherence_time() const {
  const double width = fringe_bandwidth();
  if (width == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return std::numbers::sqrt2 / width;
}

double SourceModel::two_photon_frequency() const {
  return kind_ == SourceKind::spdc ? pump_->center_frequency()
                                   : 2.0 * photon_.center_frequency();
}

SinglePhotonKernel::SinglePhotonKernel(const SpectralProfile& photon)
    : width_(photon.gaussian_width()), carrier_(photon.center_frequency()) {
  if (photon.is_monochromatic()) {
    throw DomainError("single-photon kernel needs a non-zero bandwidth");
  }
  peak_ = std::sqrt(width_ / std::sqrt(std::numbers::pi));
}

double SinglePhotonKernel::envelope(double t) const {
  return peak_ * std::exp(-0.5 * width_ * width_ * t * t);
}

std::complex<double> SinglePhotonKernel::operator()(double t) const {
  return envelope(t) * std::polar(1.0, -carrier_ * t);
}

SinglePhotonKernel single_photon_kernel(const SpectralProfile& photon) {
  return SinglePhotonKernel(photon);
}

SpdcPairKernel::SpdcPairKernel(const SpectralProfile& filter, double pump_frequency)
    : filter_(filter), width_(filter.gaussian_width()), pump_frequency_(pump_frequency) {
  if (filter.is_monochromatic()) {
    throw DomainError("pair kernel needs a filter with non-zero bandwidth");
  }
  const double detuning = pump_frequency / 2.0 - filter.center_frequency();
  weight_ = std::exp(-detuning * detuning / (width_ * width_));
}

double SpdcPairKernel::envelope(double t_signal, double t_idler) const {
  const double dt = t_signal - t_idler;
  return std::exp(-0.25 * width_ * width_ * dt * dt);
}

std::complex<double> SpdcPairKernel::operator()(double t_signal, double t_idler) const {
  return weight_ * envelope(t_signal, t_idler) *
         std::polar(1.0, -0.5 * pump_frequency_ * (t_signal + t_idler));
}

std::complex<double> SpdcPairKernel::quadrature(double t_signal, double t_idler, int samples,
                                                double span_widths) const {
  if (samples < 3) {
    throw DomainError("quadrature needs at least 3 samples");
  }
  // ws = wp/2 + u: exp(-i ws ts - i (wp - ws) ti) = exp(-i wp (ts+ti)/2) exp(-i u (ts-ti)).
  const double half_pump = 0.5 * pump_frequency_;
  const double dt = t_signal - t_idler;
  const double span = span_widths * width_;
  const double h = 2.0 * span / (samples - 1);
  std::complex<double> sum = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double u = -span + k * h;
    const double w = (k == 0 || k == samples - 1) ? 0.5 : 1.0;
    const double spectral =
        amplitude(filter_, half_pump + u) * amplitude(filter_, pump_frequency_ - half_pump - u);
    sum += w * spectral * std::polar(1.0, -u * dt);
  }
  return h * sum * std::polar(1.0, -half_pump * (t_signal + t_idler));
}

SpdcPairKernel spdc_pair_kernel(const SpectralProfile& filter, double pump_frequency) {
  return SpdcPairKernel(filter, pump_frequency);
}

}  // namespace debroglie
