#include "debroglie/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "debroglie/errors.hpp"
#include "debroglie/spectra.hpp"
#include "debroglie/units.hpp"

namespace debroglie {

namespace {

constexpr double kMinSamplesPerPeriod = 16.0;

struct Crossing {
  double position;
  bool rising;
};

std::vector<Crossing> mean_crossings(const std::vector<double>& x, const std::vector<double>& y,
                                     std::size_t lo, std::size_t hi, double mean) {
  std::vector<Crossing> out;
  for (std::size_t i = lo; i < hi; ++i) {
    const double a = y[i] - mean;
    const double b = y[i + 1] - mean;
    const bool above_a = a >= 0.0;
    const bool above_b = b >= 0.0;
    if (above_a != above_b) {
      const double frac = a / (a - b);
      out.push_back({x[i] + frac * (x[i + 1] - x[i]), above_b});
    }
  }
  return out;
}

double mean_of(const std::vector<double>& y, std::size_t lo, std::size_t hi) {
  double sum = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) sum += y[i];
  return sum / static_cast<double>(hi - lo + 1);
}

// Period from crossings of the same direction; invariant under sign flips.
double period_from_crossings(const std::vector<Crossing>& crossings) {
  double total = 0.0;
  int estimates = 0;
  for (bool rising : {true, false}) {
    std::vector<double> pos;
    for (const auto& c : crossings) {
      if (c.rising == rising) pos.push_back(c.position);
    }
    if (pos.size() >= 2) {
      total += (pos.back() - pos.front()) / static_cast<double>(pos.size() - 1);
      ++estimates;
    }
  }
  return estimates > 0 ? total / estimates : 0.0;
}

// Vertex of the parabola through samples i-1, i, i+1.
EnvelopePoint refine_extremum(const RateCurve& curve, std::size_t i) {
  const auto& x = curve.axis;
  const auto& y = curve.rates;
  if (i == 0 || i + 1 >= y.size()) {
    return {x[i], y[i]};
  }
  const double ym = y[i - 1];
  const double y0 = y[i];
  const double yp = y[i + 1];
  const double denom = ym - 2.0 * y0 + yp;
  if (denom == 0.0) {
    return {x[i], y0};
  }
  const double delta = std::clamp(0.5 * (ym - yp) / denom, -1.0, 1.0);
  return {x[i] + delta * (x[i + 1] - x[i]), y0 - 0.25 * (ym - yp) * delta};
}

// Interior local maxima of v[lo..hi] whose prominence within that range is at
// least min_prominence.
std::vector<std::size_t> prominent_peaks(const std::vector<double>& v, std::size_t lo,
                                         std::size_t hi, double min_prominence) {
  std::vector<std::size_t> peaks;
  if (hi < lo + 2) return peaks;
  std::size_t i = lo + 1;
  while (i < hi) {
    if (v[i] > v[i - 1]) {
      std::size_t j = i;
      while (j + 1 < hi && v[j + 1] == v[i]) ++j;
      if (j + 1 <= hi && v[j + 1] < v[i]) {
        const std::size_t peak = (i + j) / 2;
        double left_base = v[peak];
        for (std::size_t k = peak; k-- > lo;) {
          if (v[k] > v[peak]) break;
          left_base = std::min(left_base, v[k]);
        }
        double right_base = v[peak];
        for (std::size_t k = peak + 1; k <= hi; ++k) {
          if (v[k] > v[peak]) break;
          right_base = std::min(right_base, v[k]);
        }
        if (v[peak] - std::max(left_base, right_base) >= min_prominence) {
          peaks.push_back(peak);
        }
      }
      i = j + 1;
    } else {
      ++i;
    }
  }
  return peaks;
}

std::vector<std::size_t> prominent_dips(const std::vector<double>& v, std::size_t lo,
                                        std::size_t hi, double min_prominence) {
  std::vector<double> negated(v.size());
  std::transform(v.begin(), v.end(), negated.begin(), [](double a) { return -a; });
  return prominent_peaks(negated, lo, hi, min_prominence);
}

double fringe_period(const RateCurve& curve) {
  if (curve.meta.center_wavelength > 0.0) {
    const double half = curve.meta.center_wavelength / 2.0;
    return curve.meta.axis_kind == AxisKind::length ? half : units::length_to_time(half);
  }
  return estimate_period(curve);
}

// Two-photon coherence length: FWHM of the HOM dip in the curve's axis units.
double dip_fwhm(const CurveMeta& meta) {
  if (!(meta.filter_fwhm > 0.0) || !(meta.center_wavelength > 0.0)) {
    throw AnalysisError("packet classification needs the filter bandwidth and center wavelength");
  }
  const double dw = fwhm_to_gaussian_width(meta.filter_fwhm, meta.center_wavelength);
  const double tau = 2.0 * std::sqrt(2.0 * std::numbers::ln2) / dw;
  return meta.axis_kind == AxisKind::length ? units::time_to_length(tau) : tau;
}

struct Envelopes {
  std::vector<EnvelopePoint> upper;
  std::vector<EnvelopePoint> lower;
  double baseline;
};

Envelopes per_period_extrema(const RateCurve& curve) {
  curve.validate();
  const double period = fringe_period(curve);
  const double h = curve.spacing();
  if (period / h < kMinSamplesPerPeriod) {
    throw AnalysisError("fewer than 16 samples per fringe period");
  }
  Envelopes env;
  const auto& x = curve.axis;
  const auto& y = curve.rates;
  std::size_t start = 0;
  while (start < x.size()) {
    const double edge = x[start] + period;
    std::size_t end = start;
    while (end + 1 < x.size() && x[end + 1] < edge) ++end;
    if (x[end] - x[start] < 0.5 * period && !env.upper.empty()) {
      break;  // drop a trailing partial window
    }
    std::size_t imax = start;
    std::size_t imin = start;
    for (std::size_t i = start; i <= end; ++i) {
      if (y[i] > y[imax]) imax = i;
      if (y[i] < y[imin]) imin = i;
    }
    env.upper.push_back(refine_extremum(curve, imax));
    env.lower.push_back(refine_extremum(curve, imin));
    start = end + 1;
  }
  if (env.upper.size() < 3) {
    throw AnalysisError("curve spans fewer than three fringe periods");
  }
  const double first = 0.5 * (env.upper.front().rate + env.lower.front().rate);
  const double last = 0.5 * (env.upper.back().rate + env.lower.back().rate);
  env.baseline = 0.5 * (first + last);
  if (!(env.baseline > 0.0)) {
    throw AnalysisError("curve baseline is zero");
  }
  return env;
}

struct FringeRegion {
  std::size_t center;  // index of the deepest lower-envelope point
  std::size_t lo;
  std::size_t hi;
};

FringeRegion fringe_region(const std::vector<double>& upper, const std::vector<double>& lower) {
  const std::size_t n = upper.size();
  std::vector<double> amplitude(n);
  for (std::size_t k = 0; k < n; ++k) amplitude[k] = upper[k] - lower[k];
  const double threshold =
      shape_thresholds::fringe_region * *std::max_element(amplitude.begin(), amplitude.end());
  FringeRegion r;
  r.center = static_cast<std::size_t>(std::min_element(lower.begin(), lower.end()) - lower.begin());
  r.lo = r.center;
  r.hi = r.center;
  while (r.lo > 0 && amplitude[r.lo - 1] >= threshold) --r.lo;
  while (r.hi + 1 < n && amplitude[r.hi + 1] >= threshold) ++r.hi;
  return r;
}

std::vector<double> rates_of(const std::vector<EnvelopePoint>& pts, double scale) {
  std::vector<double> v;
  v.reserve(pts.size());
  for (const auto& p : pts) v.push_back(p.rate / scale);
  return v;
}

double interpolate(const std::vector<EnvelopePoint>& pts, const std::vector<double>& values,
                   double position) {
  auto it = std::lower_bound(pts.begin(), pts.end(), position,
                             [](const EnvelopePoint& p, double x) { return p.position < x; });
  if (it == pts.begin()) return values.front();
  if (it == pts.end()) return values.back();
  const auto k = static_cast<std::size_t>(it - pts.begin());
  const double x0 = pts[k - 1].position;
  const double x1 = pts[k].position;
  const double f = x1 > x0 ? (position - x0) / (x1 - x0) : 0.0;
  return values[k - 1] + f * (values[k] - values[k - 1]);
}

// Side peaks on the envelope normalized by `scale`; heights returned unscaled.
std::vector<EnvelopePoint> side_peaks_of(const Envelopes& env, double scale, double min_height) {
  const auto upper = rates_of(env.upper, scale);
  const auto lower = rates_of(env.lower, scale);
  const FringeRegion region = fringe_region(upper, lower);
  std::vector<EnvelopePoint> out;
  for (std::size_t k : prominent_peaks(upper, 0, upper.size() - 1, 0.5 * shape_thresholds::prominence)) {
    if (k >= region.lo && k <= region.hi) continue;
    if (upper[k] >= min_height) out.push_back(env.upper[k]);
  }
  return out;
}

PacketShape classify(const Envelopes& env, double coherence_length) {
  const auto upper = rates_of(env.upper, env.baseline);
  const auto lower = rates_of(env.lower, env.baseline);
  const std::size_t last = upper.size() - 1;
  const FringeRegion region = fringe_region(upper, lower);
  const double center = env.lower[region.center].position;

  for (const auto& p : side_peaks_of(env, env.baseline, 1.0 + shape_thresholds::side_peak_height)) {
    if (std::abs(p.position - center) > shape_thresholds::side_peak_offset * coherence_length) {
      return PacketShape::side_peaks;
    }
  }

  const auto peaks = prominent_peaks(upper, 0, last, shape_thresholds::prominence);
  const auto dips = prominent_dips(lower, 0, last, shape_thresholds::prominence);
  if (peaks.size() == 1 && dips.size() == 1 && peaks.front() >= region.lo &&
      peaks.front() <= region.hi) {
    const double height = upper[peaks.front()] - 1.0;
    double worst = 0.0;
    for (std::size_t k = region.lo; k <= region.hi; ++k) {
      const double mirrored = 2.0 * center - env.upper[k].position;
      worst = std::max(worst, std::abs(upper[k] - interpolate(env.upper, upper, mirrored)));
    }
    if (height > 0.0 && worst <= shape_thresholds::evenness * height) {
      return PacketShape::symmetric_gaussian;
    }
  }

  const auto humps =
      prominent_peaks(upper, region.lo, region.hi, shape_thresholds::hump_prominence);
  const auto region_dips =
      prominent_dips(lower, region.lo, region.hi, shape_thresholds::prominence);
  const bool left = std::any_of(humps.begin(), humps.end(),
                                [&](std::size_t k) { return k < region.center; });
  const bool right = std::any_of(humps.begin(), humps.end(),
                                 [&](std::size_t k) { return k > region.center; });
  if (left && right && region_dips.size() <= 1) {
    return PacketShape::double_hump_single_dip;
  }
  return PacketShape::asymmetric;
}

}  // namespace

std::string_view to_string(PacketShape shape) {
  switch (shape) {
    case PacketShape::symmetric_gaussian:
      return "symmetric_gaussian";
    case PacketShape::asymmetric:
      return "asymmetric";
    case PacketShape::double_hump_single_dip:
      return "double_hump_single_dip";
    case PacketShape::side_peaks:
      return "side_peaks";
  }
  return "unknown";
}

void RateCurve::validate() const {
  if (axis.size() != rates.size()) {
    throw DomainError("axis and rate lengths differ");
  }
  if (axis.size() < 2) {
    throw DomainError("a curve needs at least two samples");
  }
  const double h = (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
  if (!(h > 0.0)) {
    throw DomainError("axis must be strictly increasing");
  }
  for (std::size_t i = 0; i + 1 < axis.size(); ++i) {
    const double step = axis[i + 1] - axis[i];
    if (!(step > 0.0)) {
      throw DomainError("axis must be strictly increasing");
    }
    const double expected = axis.front() + static_cast<double>(i + 1) * h;
    const double scale = std::max({std::abs(axis.front()), std::abs(axis.back()), h});
    if (std::abs(axis[i + 1] - expected) > 1e-9 * scale) {
      throw DomainError("axis spacing is not uniform");
    }
  }
  for (double r : rates) {
    // Closed forms can round a true zero to about -1e-16.
    if (!std::isfinite(r) || r < -1e-9) {
      throw DomainError("rates must be finite and non-negative");
    }
  }
}

double RateCurve::spacing() const {
  return (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
}

double visibility(const RateCurve& curve, double center, double window) {
  curve.validate();
  const auto& x = curve.axis;
  const auto& y = curve.rates;
  std::size_t lo = x.size();
  std::size_t hi = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i] - center) <= 0.5 * window) {
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
  }
  if (lo >= hi || hi - lo < 2) {
    throw AnalysisError("visibility window holds fewer than three samples");
  }
  std::size_t imax = lo;
  std::size_t imin = lo;
  for (std::size_t i = lo; i <= hi; ++i) {
    if (y[i] > y[imax]) imax = i;
    if (y[i] < y[imin]) imin = i;
  }
  const double top = refine_extremum(curve, imax).rate;
  const double bottom = refine_extremum(curve, imin).rate;
  if (top + bottom == 0.0) {
    throw AnalysisError("visibility undefined: max + min = 0");
  }
  if (y[imax] == y[imin]) {
    return 0.0;
  }
  // Two periods give at least three crossings of the window mean.
  const auto crossings = mean_crossings(x, y, lo, hi, mean_of(y, lo, hi));
  if (crossings.size() < 3) {
    throw AnalysisError("visibility window must contain at least two fringe periods");
  }
  const double period = 2.0 * (crossings.back().position - crossings.front().position) /
                        static_cast<double>(crossings.size() - 1);
  if (period / curve.spacing() < kMinSamplesPerPeriod) {
    throw AnalysisError("fewer than 16 samples per fringe period");
  }
  return (top - bottom) / (top + bottom);
}

double estimate_period(const RateCurve& curve) {
  curve.validate();
  const auto& x = curve.axis;
  const auto& y = curve.rates;
  const std::size_t last = x.size() - 1;
  const auto crossings = mean_crossings(x, y, 0, last, mean_of(y, 0, last));
  const double period = period_from_crossings(crossings);
  if (!(period > 0.0)) {
    throw AnalysisError("aperiodic input: no repeated crossings of the mean");
  }
  if ((x.back() - x.front()) / period < 4.0) {
    throw AnalysisError("curve spans fewer than four periods");
  }
  if (period / curve.spacing() < kMinSamplesPerPeriod) {
    throw AnalysisError("fewer than 16 samples per period");
  }
  return period;
}

EnvelopeReport extract_envelope(const RateCurve& curve) {
  Envelopes env = per_period_extrema(curve);
  EnvelopeReport report;
  report.classification = classify(env, dip_fwhm(curve.meta));
  report.baseline = env.baseline;
  report.upper = std::move(env.upper);
  report.lower = std::move(env.lower);
  return report;
}

std::vector<EnvelopePoint> find_side_peaks(const RateCurve& curve, double baseline) {
  const Envelopes env = per_period_extrema(curve);
  return side_peaks_of(env, 1.0, baseline + 0.05);
}

HomFit fit_hom_dip(const RateCurve& curve) {
  curve.validate();
  std::vector<double> tau(curve.axis);
  if (curve.meta.axis_kind == AxisKind::length) {
    for (double& t : tau) t = units::length_to_time(t);
  }
  const auto& y = curve.rates;
  const std::size_t n = y.size();
  if (n < 5) {
    throw AnalysisError("too few samples for a dip fit");
  }

  // Initial guess: depth from the minimum, width from the half-depth crossings.
  const std::size_t imin =
      static_cast<std::size_t>(std::min_element(y.begin(), y.end()) - y.begin());
  double depth = std::clamp(1.0 - y[imin], 0.05, 1.5);
  const double half = 1.0 - 0.5 * depth;
  double half_width = 0.0;
  int sides = 0;
  for (std::size_t i = imin; i + 1 < n; ++i) {
    if (y[i] <= half && y[i + 1] > half) {
      half_width += std::abs(tau[i] + (half - y[i]) / (y[i + 1] - y[i]) * (tau[i + 1] - tau[i]));
      ++sides;
      break;
    }
  }
  for (std::size_t i = imin; i > 0; --i) {
    if (y[i] <= half && y[i - 1] > half) {
      half_width += std::abs(tau[i] + (half - y[i]) / (y[i - 1] - y[i]) * (tau[i - 1] - tau[i]));
      ++sides;
      break;
    }
  }
  if (sides == 0) {
    throw AnalysisError("dip half-depth crossings not found; scan too narrow");
  }
  const double scale = std::sqrt(2.0 * std::numbers::ln2) / (half_width / sides);

  // Levenberg-Marquardt in (V, s) with dw = s * scale.
  double v = depth;
  double s = 1.0;
  auto cost_at = [&](double vv, double ss) {
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = ss * scale * tau[i];
      const double r = y[i] - (1.0 - vv * std::exp(-0.5 * u * u));
      c += r * r;
    }
    return c;
  };
  double cost = cost_at(v, s);
  double lambda = 1e-3;
  int iter = 0;
  bool converged = false;
  for (; iter < 200; ++iter) {
    double jtj00 = 0.0, jtj01 = 0.0, jtj11 = 0.0, jtr0 = 0.0, jtr1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = scale * tau[i];
      const double u = s * t;
      const double e = std::exp(-0.5 * u * u);
      const double r = y[i] - (1.0 - v * e);
      const double dv = -e;             // d model / dV
      const double ds = v * e * u * t;  // d model / ds
      jtj00 += dv * dv;
      jtj01 += dv * ds;
      jtj11 += ds * ds;
      jtr0 += dv * r;
      jtr1 += ds * r;
    }
    bool improved = false;
    while (lambda < 1e12) {
      const double a00 = jtj00 * (1.0 + lambda);
      const double a11 = jtj11 * (1.0 + lambda);
      const double det = a00 * a11 - jtj01 * jtj01;
      if (det == 0.0) {
        lambda *= 10.0;
        continue;
      }
      const double step_v = (a11 * jtr0 - jtj01 * jtr1) / det;
      const double step_s = (a00 * jtr1 - jtj01 * jtr0) / det;
      const double trial = cost_at(v + step_v, s + step_s);
      if (trial <= cost && s + step_s > 0.0) {
        const double rel = std::abs(step_v) + std::abs(step_s);
        v += step_v;
        s += step_s;
        const double drop = cost - trial;
        cost = trial;
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = true;
        if (rel < 1e-12 || drop <= 1e-15 * std::max(cost, 1e-300)) {
          converged = true;
        }
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) {
      converged = true;  // no descent direction left: at a minimum
    }
    if (converged) break;
  }
  const double rms = std::sqrt(cost / static_cast<double>(n));
  if (!converged || !std::isfinite(v) || !std::isfinite(s)) {
    std::ostringstream msg;
    msg << "HOM dip fit did not converge after " << iter << " iterations (rms residual " << rms
        << ")";
    throw AnalysisError(msg.str());
  }
  const double dw = s * scale;
  if (tau.front() > -4.0 / dw || tau.back() < 4.0 / dw) {
    throw AnalysisError("HOM scan must span +-4/dw around the dip");
  }
  return {dw, v, 1.0 - v, rms, iter + 1};
}

}  // namespace debroglie
