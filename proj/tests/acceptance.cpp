// One line per acceptance criterion; exit status is nonzero if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "debroglie/analysis.hpp"
#include "debroglie/cli.hpp"
#include "debroglie/oracle.hpp"
#include "debroglie/rates.hpp"
#include "debroglie/units.hpp"

using namespace debroglie;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SpectralProfile photon() { return SpectralProfile::from_wavelength(810e-9, 5e-9); }

SourceModel spdc(double pump_fwhm) {
  return SourceModel::spdc(SpectralProfile::from_wavelength(405e-9, pump_fwhm), photon());
}

Outcome noon_null() {
  const auto t0 = Clock::now();
  const auto source = spdc(0.67e-9);
  const double closed = coincidence_rate(source, {0.0, 0.0});
  const double oracle = numeric_coincidence_rate(source, {0.0, 0.0});
  const double t = seconds_since(t0);
  return {closed == 0.0 && std::abs(oracle) <= 1e-3 && t < 1.0,
          fmt("closed=%.3g oracle=%.3g time=%.2fs", closed, oracle, t)};
}

Outcome hom_dip() {
  const auto t0 = Clock::now();
  const double dw = photon().gaussian_width();
  const double at0 = hom_rate(dw, 0.0);
  const double at_tc = hom_rate(dw, std::numbers::sqrt2 / dw);
  const double target = 1.0 - std::exp(-1.0);
  const auto source = spdc(0.67e-9);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double tau1 = (-4.0 + 8.0 * i / 49.0) / dw;
    worst = std::max(worst, relative_deviation(numeric_hom_rate(source, tau1), hom_rate(dw, tau1)));
  }
  const double t = seconds_since(t0);
  return {at0 == 0.0 && std::abs(at_tc - target) <= 1e-12 && worst <= 1e-3 && t < 30.0,
          fmt("R(0)=%.3g R(sqrt2/dw)-(1-1/e)=%.2g scan max rel err=%.2g time=%.2fs", at0,
              at_tc - target, worst, t)};
}

Outcome fringe_period() {
  cli::RunConfig cfg;
  cfg.command = cli::Command::fringe;
  bool ok = true;
  std::ostringstream detail;
  for (double v : {1.0, 0.98}) {
    cfg.vis_degrade = v;
    for (double x1 : {0.0, 62e-6, 2.8e-3, 5.7e-3}) {
      const auto report = cli::analyze_fringe(cli::fringe_scan(cfg, x1));
      const bool good = std::abs(report.period / 405e-9 - 1.0) <= 5e-3 &&
                        std::abs(report.visibility - v) <= 1e-3;
      ok = ok && good;
      if (!good || x1 == 5.7e-3) {
        detail << fmt("[v=%.2f x1=%gum period=%.3fnm vis=%.5f] ", v, x1 / units::um,
                      report.period / units::nm, report.visibility);
      }
    }
  }
  return {ok, detail.str()};
}

Outcome packet_shapes() {
  cli::RunConfig cfg;
  cfg.command = cli::Command::packet;
  const std::pair<double, PacketShape> cases[] = {{0.0, PacketShape::symmetric_gaussian},
                                                  {100e-6, PacketShape::asymmetric},
                                                  {200e-6, PacketShape::double_hump_single_dip},
                                                  {500e-6, PacketShape::side_peaks}};
  bool ok = true;
  std::ostringstream detail;
  for (const auto& [x1, want] : cases) {
    const auto scan = cli::packet_scan(cfg, x1);
    const auto report = extract_envelope(scan.curve);
    ok = ok && report.classification == want;
    detail << to_string(report.classification) << " ";
    if (x1 == 500e-6) {
      const auto peaks = find_side_peaks(scan.curve, report.baseline);
      bool peaks_ok = peaks.size() == 2;
      for (const auto& p : peaks) {
        peaks_ok = peaks_ok && std::abs(std::abs(p.position) - 500e-6) <= 2e-6 &&
                   std::abs(p.rate - 1.25) <= 0.02;
        detail << fmt("peak(%.3fum, %.4f) ", p.position / units::um, p.rate);
      }
      ok = ok && peaks_ok;
    }
  }
  return {ok, detail.str()};
}

Outcome identities() {
  std::mt19937_64 rng(2024);
  auto u = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  double worst_sep = 0.0;
  double worst_dist = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double w0 = units::angular_frequency(u(400e-9, 1600e-9));
    const double dw = u(1e12, 5e13);
    const double t1 = u(-6.0, 6.0) / dw;
    const double t2 = u(-6.0, 6.0) / dw;
    worst_sep = std::max(worst_sep, std::abs(separable_rate(w0, dw, t1, t2) -
                                             spdc_debroglie_rate(w0, dw, dw, t1, t2)));
  }
  for (int i = 0; i < 1000; ++i) {
    const double w0 = units::angular_frequency(u(400e-9, 1600e-9));
    const double dw = u(1e12, 5e13);
    const double t2 = u(-6.0, 6.0) / dw;
    worst_dist = std::max(worst_dist, std::abs(distinguishable_rate(w0, dw, t2) -
                                               separable_rate(w0, dw, 20.0 / dw, t2)));
  }
  return {worst_sep <= 1e-12 && worst_dist <= 1e-6,
          fmt("separable-vs-spdc max=%.2g distinguishable-vs-separable(20/dw) max=%.2g", worst_sep,
              worst_dist)};
}

Outcome oracle_certification() {
  cli::RunConfig cfg;
  cfg.command = cli::Command::oracle_check;
  std::ostringstream log;
  const auto report = cli::oracle_check(cfg, log);
  std::ostringstream detail;
  bool ok = report.seconds <= 300.0;
  for (const auto& f : report.formulas) {
    ok = ok && f.passed() && f.points == 50 && f.max_relative_error <= 1e-3;
    detail << fmt("%s=%.2g ", f.name.c_str(), f.max_relative_error);
  }
  detail << fmt("time=%.1fs", report.seconds);
  return {ok, detail.str()};
}

Outcome singles_flat() {
  const double tc = photon().coherence_time();
  const SourceModel sources[] = {spdc(0.67e-9), SourceModel::separable(photon()),
                                 SourceModel::distinguishable(photon())};
  bool ok = true;
  std::ostringstream detail;
  for (const auto& s : sources) {
    double lo = 1.0;
    double hi = 0.0;
    for (int i = 0; i <= 40; ++i) {
      const double x = (-6.0 + 0.3 * i) * tc;
      for (const DelayConfig d : {DelayConfig{0.5 * tc, x}, DelayConfig{x, 0.8 * tc}}) {
        const double r = numeric_singles_rate(s, d);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
    }
    ok = ok && hi - lo <= 2e-3;
    detail << fmt("%s=%.2g ", std::string(to_string(s.kind())).c_str(), hi - lo);
  }
  return {ok, detail.str()};
}

Outcome broadband_convergence() {
  cli::RunConfig cfg;
  cfg.command = cli::Command::packet;
  cfg.source = SourceKind::separable;
  std::vector<double> reference;
  for (double x1 : {0.0, 100e-6}) {
    const auto r = cli::packet_scan(cfg, x1).curve.rates;
    reference.insert(reference.end(), r.begin(), r.end());
  }
  cfg.source = SourceKind::spdc;
  std::vector<double> deviations;
  for (int nm = 2; nm <= 20; nm += 2) {
    cfg.pump_fwhm = nm * 1e-9;
    std::vector<double> rates;
    for (double x1 : {0.0, 100e-6}) {
      const auto r = cli::packet_scan(cfg, x1).curve.rates;
      rates.insert(rates.end(), r.begin(), r.end());
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < rates.size(); ++i) {
      worst = std::max(worst, std::abs(rates[i] - reference[i]));
    }
    deviations.push_back(worst);
  }
  const bool monotone = std::is_sorted(deviations.rbegin(), deviations.rend()) &&
                        std::adjacent_find(deviations.begin(), deviations.end()) == deviations.end();
  return {monotone && deviations.back() < 0.01,
          fmt("max deviation 2nm=%.3g 10nm=%.3g 20nm=%.3g monotone=%s", deviations.front(),
              deviations[4], deviations.back(), monotone ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"NOON-state null", noon_null},
      {"HOM dip", hom_dip},
      {"de Broglie period and visibility", fringe_period},
      {"wave-packet morphology", packet_shapes},
      {"rate identities", identities},
      {"oracle certification", oracle_certification},
      {"no first-order interference", singles_flat},
      {"broadband-pump convergence", broadband_convergence},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
