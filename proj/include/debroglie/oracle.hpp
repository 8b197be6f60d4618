#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "debroglie/interferometer.hpp"
#include "debroglie/sources.hpp"

namespace debroglie {

/// Quadrature settings for the brute-force detection integrals.
struct OracleConfig {
  /// Half-width of each time window, in coherence times sqrt(2)/dw.
  double time_half_window = 8.0;
  /// Samples across one full window (2 * time_half_window coherence times).
  int time_samples_per_axis = 512;
  /// Minimum number of pump-frequency nodes (spdc only).
  int pump_samples = 64;
  double relative_tolerance = 1e-3;
  /// Re-evaluate on a grid with doubled sampling and fail if the result moves
  /// by more than relative_tolerance.
  bool check_convergence = true;

  /// Throws DomainError unless samples >= 64 and window >= 5.
  void validate() const;
  /// Same settings with time and pump sampling doubled.
  OracleConfig refined() const;

  friend bool operator==(const OracleConfig&, const OracleConfig&) = default;
};

/// |value - reference| / max(|reference|, 1e-3). Rates are normalized to a
/// unit baseline; the floor keeps exact nulls comparable.
double relative_deviation(double value, double reference);

/// Tensor-product time grid and per-term envelopes for a fixed set of
/// detection amplitudes.
///
/// Every term is K(t_a - shift_a, t_b - shift_b) times a constant phase: the
/// optical carriers factor out of the Gaussian kernels exactly, so the grid
/// only has to resolve envelopes. Separable and distinguishable sources use a
/// (t, t') grid made of windows around each distinct shift. The CW-pumped pair
/// is stationary in the mean time (t + t')/2, so it is integrated on a
/// (mean, relative) grid and divided by the mean-time window: a rate per unit
/// time.
class PathIntegrator {
 public:
  PathIntegrator(const SourceModel& source, std::span<const FeynmanPath> paths,
                 const OracleConfig& config);

  /// Sum over groups of int dt dt' |sum_{k in group} c_k F_k(t, t')|^2.
  double integrate(std::span<const std::complex<double>> coefficients) const;

  std::size_t grid_points() const;
  std::size_t term_count() const { return paths_.size(); }

 private:
  struct Axis {
    std::vector<double> nodes;
    std::vector<double> weights;
  };

  void build_product_grid(const SourceModel& source, const OracleConfig& config);
  void build_stationary_grid(const SourceModel& source, const OracleConfig& config);
  double integrate_product(std::span<const std::complex<double>> c, int group) const;
  double integrate_stationary(std::span<const std::complex<double>> c, int group) const;

  std::vector<FeynmanPath> paths_;
  std::vector<int> groups_;
  bool stationary_ = false;

  // Product grid: per-term envelopes sampled on the shared axis.
  Axis axis_;
  std::vector<std::vector<double>> env_a_;
  std::vector<std::vector<double>> env_b_;

  // Stationary grid: envelopes on (mean, relative) points, term-major.
  Axis mean_axis_;
  Axis relative_axis_;
  double mean_window_ = 1.0;
  std::vector<std::vector<double>> env_pair_;
};

/// Pump-frequency nodes and trapezoid weights S(wp) * h covering the weighted
/// integrand S(wp) W(wp)^2, resolved finely enough that phases exp(i wp T)
/// with |T| <= max_phase_spread do not alias. A monochromatic pump yields a
/// single node of weight 1. Throws DomainError for non-spdc sources.
struct PumpQuadrature {
  std::vector<double> frequencies;
  std::vector<double> weights;
};
PumpQuadrature pump_quadrature(const SourceModel& source, double max_phase_spread,
                               const OracleConfig& config);

/// c_k = amplitude * sign_k * exp(i * frequency * (shift_a + shift_b) / 2).
std::vector<std::complex<double>> path_coefficients(std::span<const FeynmanPath> paths,
                                                    double two_photon_frequency,
                                                    double amplitude = 1.0);

/// Largest |phase_delay_k - phase_delay_l| / 2 over a path set.
double max_phase_spread(std::span<const FeynmanPath> paths);

/// Unnormalized detection rate of a path set. For spdc the squared amplitude
/// is averaged over the pump spectrum (an incoherent mixture); amplitudes
/// from different pump frequencies are never added.
double two_photon_rate(const SourceModel& source, std::span<const FeynmanPath> paths,
                       const OracleConfig& config);

/// D3 x D4 coincidence rate from the eight Feynman amplitudes, normalized to
/// the distinguishable baseline (tau2 far outside the coherence time,
/// averaged over half a fringe period). Throws ConvergenceError.
double numeric_coincidence_rate(const SourceModel& source, const DelayConfig& delays,
                                const OracleConfig& config = {});

/// D1 x D2 coincidence rate behind BS1, normalized to the far-delay baseline.
/// Spdc and separable sources only.
double numeric_hom_rate(const SourceModel& source, double tau1, const OracleConfig& config = {});

/// D3 (or D4) single-detector rate per pair: the mode-e photon number,
/// halved by BS3.
double numeric_singles_rate(const SourceModel& source, const DelayConfig& delays,
                            const OracleConfig& config = {});

}  // namespace debroglie
