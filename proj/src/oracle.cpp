#include "debroglie/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "debroglie/errors.hpp"
#include "debroglie/spectra.hpp"

namespace debroglie {

namespace {

using Complex = std::complex<double>;

// Nodes along the mean-time axis of the stationary (CW pair) grid.
constexpr int kMeanTimeSamples = 17;

// Far-delay multiple of the coherence time used for baselines.
constexpr double kBaselineCoherenceTimes = 50.0;

struct Interval {
  double lo;
  double hi;
};

// Union of [c - half_width, c + half_width] windows, each merged interval
// sampled uniformly at (at most) `step` with trapezoid weights.
void merged_axis(std::vector<double> centers, double half_width, double step,
                 std::vector<double>& nodes, std::vector<double>& weights) {
  std::sort(centers.begin(), centers.end());
  std::vector<Interval> intervals;
  for (double c : centers) {
    const Interval next{c - half_width, c + half_width};
    if (!intervals.empty() && next.lo <= intervals.back().hi) {
      intervals.back().hi = std::max(intervals.back().hi, next.hi);
    } else {
      intervals.push_back(next);
    }
  }
  nodes.clear();
  weights.clear();
  for (const auto& iv : intervals) {
    const double length = iv.hi - iv.lo;
    const auto n = static_cast<std::size_t>(std::ceil(length / step - 1e-9)) + 1;
    const double h = length / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
      nodes.push_back(iv.lo + static_cast<double>(k) * h);
      weights.push_back((k == 0 || k + 1 == n) ? 0.5 * h : h);
    }
  }
}

std::vector<int> distinct_groups(std::span<const FeynmanPath> paths) {
  std::vector<int> groups;
  for (const auto& p : paths) {
    if (std::find(groups.begin(), groups.end(), p.group) == groups.end()) {
      groups.push_back(p.group);
    }
  }
  std::sort(groups.begin(), groups.end());
  return groups;
}

// Baseline cache keyed by everything that determines the normalization.
using BaselineKey = std::tuple<int, int, double, double, double, double, double, int, int, double>;

BaselineKey make_key(int tag, const SourceModel& source, const OracleConfig& cfg) {
  const auto& photon = source.photon();
  const double pump_center = source.pump() ? source.pump()->center_wavelength() : 0.0;
  const double pump_fwhm = source.pump() ? source.pump()->fwhm_wavelength() : 0.0;
  return {tag,
          static_cast<int>(source.kind()),
          photon.center_wavelength(),
          photon.fwhm_wavelength(),
          pump_center,
          pump_fwhm,
          cfg.time_half_window,
          cfg.time_samples_per_axis,
          cfg.pump_samples,
          cfg.relative_tolerance};
}

std::mutex& baseline_mutex() {
  static std::mutex m;
  return m;
}

std::map<BaselineKey, double>& baseline_cache() {
  static std::map<BaselineKey, double> cache;
  return cache;
}

template <typename Compute>
double cached_baseline(const BaselineKey& key, Compute compute) {
  {
    std::lock_guard lock(baseline_mutex());
    const auto it = baseline_cache().find(key);
    if (it != baseline_cache().end()) {
      return it->second;
    }
  }
  const double value = compute();
  std::lock_guard lock(baseline_mutex());
  baseline_cache().emplace(key, value);
  return value;
}

double baseline_delay(const SourceModel& source) {
  double scale = source.photon_coherence_time();
  const double fringe = source.coherence_time();
  if (std::isfinite(fringe)) {
    scale = std::max(scale, fringe);
  }
  return kBaselineCoherenceTimes * scale;
}

double coincidence_baseline(const SourceModel& source, const OracleConfig& cfg) {
  return cached_baseline(make_key(0, source, cfg), [&] {
    // Two points half a fringe period apart cancel any residual 2w0 term,
    // including the undamped one of a monochromatic pump.
    const double far = baseline_delay(source);
    const double half_period = std::numbers::pi / source.two_photon_frequency();
    const auto p1 = enumerate_paths(source, {0.0, far});
    const auto p2 = enumerate_paths(source, {0.0, far + half_period});
    return 0.5 * (two_photon_rate(source, p1, cfg) + two_photon_rate(source, p2, cfg));
  });
}

double hom_baseline(const SourceModel& source, const OracleConfig& cfg) {
  return cached_baseline(make_key(1, source, cfg), [&] {
    const double far = kBaselineCoherenceTimes * source.photon_coherence_time();
    return two_photon_rate(source, enumerate_hom_paths(source, far), cfg);
  });
}

double pair_norm(const SourceModel& source, const OracleConfig& cfg) {
  return cached_baseline(make_key(2, source, cfg), [&] {
    const std::vector<FeynmanPath> bare{FeynmanPath{}};
    return two_photon_rate(source, bare, cfg);
  });
}

template <typename Evaluate>
double with_convergence_check(const OracleConfig& cfg, const char* what, Evaluate evaluate) {
  cfg.validate();
  const double value = evaluate(cfg);
  if (cfg.check_convergence) {
    const double refined = evaluate(cfg.refined());
    if (relative_deviation(value, refined) > cfg.relative_tolerance) {
      throw ConvergenceError(std::string(what) + ": grid refinement changed the rate", value,
                             refined);
    }
  }
  return value;
}

}  // namespace

void OracleConfig::validate() const {
  if (time_samples_per_axis < 64 || pump_samples < 64) {
    throw DomainError("oracle sampling must be at least 64 points");
  }
  if (!(time_half_window >= 5.0)) {
    throw DomainError("oracle time window must span at least 5 coherence times");
  }
  if (!(relative_tolerance > 0.0)) {
    throw DomainError("oracle tolerance must be positive");
  }
}

OracleConfig OracleConfig::refined() const {
  OracleConfig r = *this;
  r.time_samples_per_axis = 2 * time_samples_per_axis;
  r.pump_samples = 2 * pump_samples;
  return r;
}

double relative_deviation(double value, double reference) {
  return std::abs(value - reference) / std::max(std::abs(reference), 1e-3);
}

PathIntegrator::PathIntegrator(const SourceModel& source, std::span<const FeynmanPath> paths,
                               const OracleConfig& config)
    : paths_(paths.begin(), paths.end()), groups_(distinct_groups(paths)) {
  config.validate();
  if (paths_.empty()) {
    throw DomainError("path integrator needs at least one amplitude");
  }
  stationary_ = source.kind() == SourceKind::spdc;
  if (stationary_) {
    build_stationary_grid(source, config);
  } else {
    build_product_grid(source, config);
  }
}

void PathIntegrator::build_product_grid(const SourceModel& source, const OracleConfig& config) {
  const SinglePhotonKernel kernel(source.photon());
  const double half_width = config.time_half_window * source.photon_coherence_time();
  const double step = 2.0 * half_width / (config.time_samples_per_axis - 1);

  std::vector<double> centers;
  for (const auto& p : paths_) {
    centers.push_back(p.shift_a);
    centers.push_back(p.shift_b);
  }
  merged_axis(centers, half_width, step, axis_.nodes, axis_.weights);

  env_a_.assign(paths_.size(), {});
  env_b_.assign(paths_.size(), {});
  for (std::size_t k = 0; k < paths_.size(); ++k) {
    env_a_[k].reserve(axis_.nodes.size());
    env_b_[k].reserve(axis_.nodes.size());
    for (double t : axis_.nodes) {
      env_a_[k].push_back(kernel.envelope(t - paths_[k].shift_a));
      env_b_[k].push_back(kernel.envelope(t - paths_[k].shift_b));
    }
  }
}

void PathIntegrator::build_stationary_grid(const SourceModel& source,
                                           const OracleConfig& config) {
  const SpdcPairKernel kernel(source.photon(), source.pump()->center_frequency());
  const double half_width = config.time_half_window * source.photon_coherence_time();
  const double step = 2.0 * half_width / (config.time_samples_per_axis - 1);

  // Term k peaks where its signal/idler arguments coincide.
  std::vector<double> centers;
  for (const auto& p : paths_) {
    const double offset = p.shift_a - p.shift_b;
    centers.push_back(p.exchange ? -offset : offset);
  }
  merged_axis(centers, half_width, step, relative_axis_.nodes, relative_axis_.weights);
  merged_axis({0.0}, half_width, 2.0 * half_width / (kMeanTimeSamples - 1), mean_axis_.nodes,
              mean_axis_.weights);
  mean_window_ = 2.0 * half_width;

  const std::size_t points = mean_axis_.nodes.size() * relative_axis_.nodes.size();
  env_pair_.assign(paths_.size(), {});
  for (std::size_t k = 0; k < paths_.size(); ++k) {
    const auto& p = paths_[k];
    auto& env = env_pair_[k];
    env.reserve(points);
    for (double mean : mean_axis_.nodes) {
      for (double rel : relative_axis_.nodes) {
        const double t = mean + 0.5 * rel;
        const double t_prime = mean - 0.5 * rel;
        env.push_back(p.exchange ? kernel.envelope(t_prime - p.shift_a, t - p.shift_b)
                                 : kernel.envelope(t - p.shift_a, t_prime - p.shift_b));
      }
    }
  }
}

std::size_t PathIntegrator::grid_points() const {
  if (stationary_) {
    return mean_axis_.nodes.size() * relative_axis_.nodes.size();
  }
  return axis_.nodes.size() * axis_.nodes.size();
}

double PathIntegrator::integrate(std::span<const Complex> coefficients) const {
  if (coefficients.size() != paths_.size()) {
    throw DomainError("one coefficient per amplitude term is required");
  }
  double total = 0.0;
  for (int group : groups_) {
    total += stationary_ ? integrate_stationary(coefficients, group)
                         : integrate_product(coefficients, group);
  }
  return total;
}

double PathIntegrator::integrate_product(std::span<const Complex> c, int group) const {
  std::vector<std::size_t> terms;
  for (std::size_t k = 0; k < paths_.size(); ++k) {
    if (paths_[k].group == group) terms.push_back(k);
  }
  const std::size_t n = axis_.nodes.size();
  std::vector<Complex> alpha(terms.size());
  std::vector<const double*> column(terms.size());

  double peak = 0.0;
  for (std::size_t k : terms) {
    peak = std::max(peak, std::abs(c[k]) * *std::max_element(env_a_[k].begin(), env_a_[k].end()));
  }
  const double negligible = 1e-20 * peak;

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // Row i fixes t; each term is alpha_k(t) * u_k(t').
    double largest = 0.0;
    for (std::size_t m = 0; m < terms.size(); ++m) {
      const std::size_t k = terms[m];
      if (paths_[k].exchange) {
        alpha[m] = c[k] * env_b_[k][i];
        column[m] = env_a_[k].data();
      } else {
        alpha[m] = c[k] * env_a_[k][i];
        column[m] = env_b_[k].data();
      }
      largest = std::max(largest, std::abs(alpha[m]));
    }
    if (largest < negligible) {
      continue;
    }
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      Complex amp = 0.0;
      for (std::size_t m = 0; m < terms.size(); ++m) {
        amp += alpha[m] * column[m][j];
      }
      row += axis_.weights[j] * std::norm(amp);
    }
    total += axis_.weights[i] * row;
  }
  return total;
}

double PathIntegrator::integrate_stationary(std::span<const Complex> c, int group) const {
  const std::size_t n_mean = mean_axis_.nodes.size();
  const std::size_t n_rel = relative_axis_.nodes.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n_mean; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_rel; ++j) {
      const std::size_t idx = i * n_rel + j;
      Complex amp = 0.0;
      for (std::size_t k = 0; k < paths_.size(); ++k) {
        if (paths_[k].group == group) {
          amp += c[k] * env_pair_[k][idx];
        }
      }
      row += relative_axis_.weights[j] * std::norm(amp);
    }
    total += mean_axis_.weights[i] * row;
  }
  return total / mean_window_;
}

PumpQuadrature pump_quadrature(const SourceModel& source, double max_phase_spread,
                               const OracleConfig& config) {
  if (source.kind() != SourceKind::spdc) {
    throw DomainError("pump quadrature applies to spdc sources only");
  }
  const SpectralProfile& pump = *source.pump();
  if (pump.is_monochromatic()) {
    return {{pump.center_frequency()}, {1.0}};
  }
  const double pump_width = pump.gaussian_width();
  const double filter_width = source.photon().gaussian_width();
  const double dwe = effective_bandwidth(pump_width, filter_width).value;

  // S(wp) W(wp)^2 is a Gaussian of width dwe between wp0 and 2 w0.
  const double center = dwe * dwe *
                        (pump.center_frequency() / (pump_width * pump_width) +
                         2.0 * source.photon().center_frequency() / (filter_width * filter_width));
  const double half_span = 7.0 * dwe;
  const double alias_step = 2.0 * std::numbers::pi / (max_phase_spread + 12.0 / dwe);
  const double nominal_step = 2.0 * half_span / (config.pump_samples - 1);
  const double target_step = std::min(alias_step, nominal_step);
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * half_span / target_step)) + 1;
  const double h = 2.0 * half_span / static_cast<double>(n - 1);

  PumpQuadrature q;
  q.frequencies.reserve(n);
  q.weights.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double w = center - half_span + static_cast<double>(j) * h;
    const double trap = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
    q.frequencies.push_back(w);
    q.weights.push_back(trap * h * pump_density(pump, w));
  }
  return q;
}

std::vector<Complex> path_coefficients(std::span<const FeynmanPath> paths,
                                       double two_photon_frequency, double amplitude) {
  std::vector<Complex> c;
  c.reserve(paths.size());
  for (const auto& p : paths) {
    c.push_back(amplitude * p.sign * std::polar(1.0, 0.5 * two_photon_frequency * p.phase_delay()));
  }
  return c;
}

double max_phase_spread(std::span<const FeynmanPath> paths) {
  if (paths.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(
      paths.begin(), paths.end(),
      [](const FeynmanPath& x, const FeynmanPath& y) { return x.phase_delay() < y.phase_delay(); });
  return 0.5 * (hi->phase_delay() - lo->phase_delay());
}

double two_photon_rate(const SourceModel& source, std::span<const FeynmanPath> paths,
                       const OracleConfig& config) {
  const PathIntegrator integrator(source, paths, config);
  if (source.kind() != SourceKind::spdc) {
    return integrator.integrate(path_coefficients(paths, source.two_photon_frequency()));
  }
  const PumpQuadrature pump = pump_quadrature(source, max_phase_spread(paths), config);
  double rate = 0.0;
  for (std::size_t j = 0; j < pump.frequencies.size(); ++j) {
    const SpdcPairKernel kernel(source.photon(), pump.frequencies[j]);
    rate += pump.weights[j] * integrator.integrate(path_coefficients(
                                  paths, pump.frequencies[j], kernel.spectral_weight()));
  }
  return rate;
}

double numeric_coincidence_rate(const SourceModel& source, const DelayConfig& delays,
                                const OracleConfig& config) {
  const auto paths = enumerate_paths(source, delays);
  return with_convergence_check(config, "coincidence rate", [&](const OracleConfig& cfg) {
    return two_photon_rate(source, paths, cfg) / coincidence_baseline(source, cfg);
  });
}

double numeric_hom_rate(const SourceModel& source, double tau1, const OracleConfig& config) {
  if (source.kind() == SourceKind::distinguishable) {
    throw DomainError("HOM rate is defined for spdc and separable sources");
  }
  const auto paths = enumerate_hom_paths(source, tau1);
  return with_convergence_check(config, "HOM rate", [&](const OracleConfig& cfg) {
    return two_photon_rate(source, paths, cfg) / hom_baseline(source, cfg);
  });
}

double numeric_singles_rate(const SourceModel& source, const DelayConfig& delays,
                            const OracleConfig& config) {
  const auto paths = enumerate_singles_paths(source, delays);
  return with_convergence_check(config, "singles rate", [&](const OracleConfig& cfg) {
    // Each route carries modulus 1/2; BS3 sends half of mode e to D3.
    return 0.125 * two_photon_rate(source, paths, cfg) / pair_norm(source, cfg);
  });
}

}  // namespace debroglie
