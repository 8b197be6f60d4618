#pragma once

#include <string_view>
#include <vector>

#include "debroglie/sources.hpp"

namespace debroglie {

enum class AxisKind { length, time };

/// Provenance of a sampled curve. Zero wavelengths mean "unknown".
struct CurveMeta {
  SourceKind source = SourceKind::spdc;
  AxisKind axis_kind = AxisKind::length;
  double x1 = 0.0;                 ///< fixed input delay (m)
  double x2 = 0.0;                 ///< fixed MZI imbalance (m), for x1 scans
  double center_wavelength = 0.0;  ///< lambda0 (m)
  double filter_fwhm = 0.0;        ///< photon / filter intensity FWHM (m)
  double pump_fwhm = 0.0;          ///< pump intensity FWHM (m)
};

/// A uniformly sampled rate scan. Axis values are SI (m or s).
struct RateCurve {
  std::vector<double> axis;
  std::vector<double> rates;
  CurveMeta meta;

  /// Throws DomainError unless the axis is strictly increasing and uniform
  /// (1e-9 relative), lengths match, and rates are finite and >= 0
  /// (down to -1e-9 rounding noise).
  void validate() const;
  double spacing() const;
};

/// Thresholds for envelope classification, in baseline-normalized units.
namespace shape_thresholds {
/// Upper envelope evenness for symmetric_gaussian, relative to its peak height.
inline constexpr double evenness = 0.02;
/// Side-peak height above baseline.
inline constexpr double side_peak_height = 0.1;
/// Minimum side-peak offset from the packet center, in two-photon coherence
/// lengths (FWHM of the HOM dip, c * 2 sqrt(2 ln 2) / dw).
inline constexpr double side_peak_offset = 3.0;
/// Fringe region: where the fringe amplitude exceeds this fraction of its max.
inline constexpr double fringe_region = 0.1;
/// Minimum prominence of an envelope extremum.
inline constexpr double prominence = 0.02;
/// Minimum prominence of a hump inside the fringe region.
inline constexpr double hump_prominence = 0.01;
}  // namespace shape_thresholds

enum class PacketShape { symmetric_gaussian, asymmetric, double_hump_single_dip, side_peaks };

std::string_view to_string(PacketShape shape);

struct EnvelopePoint {
  double position;
  double rate;
};

struct EnvelopeReport {
  std::vector<EnvelopePoint> upper;  ///< per-period maxima
  std::vector<EnvelopePoint> lower;  ///< per-period minima
  double baseline = 1.0;             ///< far-field level used for normalization
  PacketShape classification = PacketShape::asymmetric;
};

/// (max - min) / (max + min) over |x - center| <= window/2, with parabolic
/// refinement of the discrete extrema. A flat window returns 0.
/// Throws AnalysisError when the window holds fewer than ~2 fringe periods,
/// fewer than 16 samples per period, or max + min = 0.
double visibility(const RateCurve& curve, double center, double window);

/// Dominant fringe period from same-direction crossings of the mean-subtracted
/// curve, linearly interpolated. Throws AnalysisError for aperiodic input,
/// fewer than 4 periods, or fewer than 16 samples per period.
double estimate_period(const RateCurve& curve);

/// Upper/lower envelopes from per-period extrema and the packet shape.
/// The period comes from meta.center_wavelength when known.
EnvelopeReport extract_envelope(const RateCurve& curve);

/// Upper-envelope maxima above baseline + 0.05 lying outside the central
/// fringe region (side peaks carry no fringes). Empty when there are none.
std::vector<EnvelopePoint> find_side_peaks(const RateCurve& curve, double baseline);

struct HomFit {
  double bandwidth;     ///< fitted dw (rad/s)
  double visibility;    ///< fitted dip depth V
  double dip_minimum;   ///< 1 - V
  double rms_residual;
  int iterations;
};

/// Least-squares fit of 1 - V exp(-dw^2 tau^2 / 2) to an x1 (or tau1) scan,
/// Levenberg-Marquardt in (V, dw). Throws AnalysisError if the scan does not
/// span +-4/dw or the fit does not converge.
HomFit fit_hom_dip(const RateCurve& curve);

}  // namespace debroglie
