#include "debroglie/rates.hpp"

#include <cmath>
#include <numbers>

#include "debroglie/errors.hpp"
#include "debroglie/units.hpp"

namespace debroglie {

namespace {

void require_positive_width(double width) {
  if (!(width > 0.0)) {
    throw DomainError("spectral width must be positive");
  }
}

void require_visibility(double visibility) {
  if (!(visibility >= 0.0 && visibility <= 1.0)) {
    throw DomainError("visibility factor must lie in [0, 1]");
  }
}

double gauss(double tau, double width) {
  const double x = tau * width;
  return std::exp(-0.5 * x * x);
}

}  // namespace

double hom_rate(double filter_width, double tau1) {
  require_positive_width(filter_width);
  return 1.0 - gauss(tau1, filter_width);
}

double spdc_debroglie_rate(double center_frequency, double filter_width, double effective_width,
                           double tau1, double tau2, double visibility) {
  require_positive_width(filter_width);
  if (!(effective_width >= 0.0)) {
    throw DomainError("effective bandwidth must be non-negative");
  }
  require_visibility(visibility);
  const double dw = filter_width;
  const double fringe = std::cos(2.0 * center_frequency * tau2) * gauss(tau2, effective_width) *
                        (1.0 + gauss(tau1, dw));
  return 0.25 * (4.0 + gauss(tau1 - tau2, dw) + gauss(tau1 + tau2, dw) - 2.0 * gauss(tau2, dw) -
                 2.0 * visibility * fringe);
}

double separable_rate(double center_frequency, double photon_width, double tau1, double tau2,
                      double visibility) {
  return spdc_debroglie_rate(center_frequency, photon_width, photon_width, tau1, tau2,
                             visibility);
}

double distinguishable_rate(double center_frequency, double photon_width, double tau2,
                            double visibility) {
  require_positive_width(photon_width);
  require_visibility(visibility);
  const double envelope = gauss(tau2, photon_width);
  return 0.25 * (4.0 - 2.0 * envelope -
                 2.0 * visibility * std::cos(2.0 * center_frequency * tau2) * envelope);
}

double coincidence_rate(const SourceModel& source, const DelayConfig& delays, double visibility) {
  const double w0 = source.photon().center_frequency();
  const double dw = source.photon().gaussian_width();
  switch (source.kind()) {
    case SourceKind::spdc:
      return spdc_debroglie_rate(w0, dw, source.fringe_bandwidth(), delays.tau1, delays.tau2,
                                 visibility);
    case SourceKind::separable:
      return separable_rate(w0, dw, delays.tau1, delays.tau2, visibility);
    case SourceKind::distinguishable:
      return distinguishable_rate(w0, dw, delays.tau2, visibility);
  }
  throw DomainError("unknown source kind");
}

double singles_rate(const SourceModel&, const DelayConfig& delays) {
  if (!std::isfinite(delays.tau1) || !std::isfinite(delays.tau2)) {
    throw DomainError("delays must be finite");
  }
  return 0.5;
}

double fringe_period_length(double center_frequency) {
  if (!(center_frequency > 0.0)) {
    throw DomainError("center frequency must be positive");
  }
  return std::numbers::pi * units::speed_of_light / center_frequency;
}

}  // namespace debroglie
