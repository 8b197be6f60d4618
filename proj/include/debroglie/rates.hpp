#pragma once

#include "debroglie/interferometer.hpp"
#include "debroglie/sources.hpp"

namespace debroglie {

/// A sampled rate, normalized so that the fully distinguishable baseline
/// (tau2 -> infinity) is 1.
struct RatePoint {
  double axis_value;
  double rate;
};

/// D1 x D2 coincidences behind BS1: 1 - exp(-dw^2 tau1^2 / 2).
double hom_rate(double filter_width, double tau1);

/// D3 x D4 coincidences for CW-pumped down-conversion:
///   1/4 { 4 + G(tau1 - tau2) + G(tau1 + tau2) - 2 G(tau2)
///         - 2 v cos(2 w0 tau2) exp(-tau2^2 dwe^2 / 2) (1 + G(tau1)) },
/// G(x) = exp(-x^2 dw^2 / 2). `visibility` (v, default 1) scales the fringe
/// term only and models experimental fringe degradation.
double spdc_debroglie_rate(double center_frequency, double filter_width, double effective_width,
                           double tau1, double tau2, double visibility = 1.0);

/// Two separable identical photons: the spdc rate with dwe replaced by dw.
double separable_rate(double center_frequency, double photon_width, double tau1, double tau2,
                      double visibility = 1.0);

/// Two orthogonally polarized photons; independent of tau1:
///   1/4 { 4 - 2 G(tau2) - 2 v cos(2 w0 tau2) G(tau2) }.
double distinguishable_rate(double center_frequency, double photon_width, double tau2,
                            double visibility = 1.0);

/// Closed-form coincidence rate for any source.
double coincidence_rate(const SourceModel& source, const DelayConfig& delays,
                        double visibility = 1.0);

/// Single-detector (D3 or D4) rate per pair: constant 1/2, as there is no
/// first-order interference for any of the sources.
double singles_rate(const SourceModel& source, const DelayConfig& delays);

/// x2 period of the cos(2 w0 tau2) fringe, pi*c/w0 = lambda0/2.
double fringe_period_length(double center_frequency);

}  // namespace debroglie
