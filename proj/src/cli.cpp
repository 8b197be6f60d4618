#include "debroglie/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "debroglie/rates.hpp"
#include "debroglie/units.hpp"

namespace debroglie::cli {

namespace {

// Default panels: fringe scans at these input delays, packet scans at these.
constexpr double kFringePanels[] = {0.0, 62e-6, 2.8e-3, 5.7e-3};
constexpr double kPacketPanels[] = {0.0, 100e-6, 200e-6, 500e-6};

constexpr double kDefaultPumpFwhm = 0.67e-9;
constexpr double kPacketPumpFwhm = 2e-9;
constexpr std::size_t kMaxScanPoints = 20'000'000;

const std::set<std::string> kKnownKeys = {
    "source", "lambda0", "filter-fwhm", "pump-fwhm", "x1", "scan", "oracle", "out",
    "vis-degrade", "seed", "points", "oracle-samples", "oracle-window"};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(value)) {
    throw ConfigError(key + ": not a number: '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "1" || text == "true" || text == "on" || text == "yes") return true;
  if (text == "0" || text == "false" || text == "off" || text == "no") return false;
  throw ConfigError(key + ": expected true/false, got '" + text + "'");
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError(key + ": expected an unsigned integer, got '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw ConfigError(key + ": out of range: '" + text + "'");
  }
}

ScanSpec parse_scan(const std::string& text, double default_unit) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(trim(part));
  if (parts.size() != 3) {
    throw ConfigError("scan: expected start:stop:step, got '" + text + "'");
  }
  return {parse_length(parts[0], default_unit), parse_length(parts[1], default_unit),
          parse_length(parts[2], default_unit)};
}

double photon_coherence_length(const RunConfig& c) {
  const auto photon = SpectralProfile::from_wavelength(c.lambda0, c.filter_fwhm);
  return units::time_to_length(photon.coherence_time());
}

// FWHM of the HOM dip as a length.
double dip_fwhm_length(const RunConfig& c) {
  const double dw = fwhm_to_gaussian_width(c.filter_fwhm, c.lambda0);
  return units::time_to_length(2.0 * std::sqrt(2.0 * std::numbers::ln2) / dw);
}

std::string format_g(double value, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

std::filesystem::path with_suffix(const std::filesystem::path& path, const std::string& suffix) {
  auto result = path;
  result.replace_filename(path.stem().string() + suffix + path.extension().string());
  return result;
}

std::string x1_label(double x1) { return "_x1_" + format_g(x1 / units::um, 6) + "um"; }

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw ConfigError("cannot create directory " + path.parent_path().string());
  }
  std::ofstream file(path);
  if (!file) throw ConfigError("cannot open " + path.string() + " for writing");
  return file;
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::hom:
      return "hom";
    case Command::fringe:
      return "fringe";
    case Command::packet:
      return "packet";
    case Command::oracle_check:
      return "oracle-check";
  }
  return "unknown";
}

std::vector<double> ScanSpec::points() const {
  if (!(step > 0.0)) throw ConfigError("scan step must be positive");
  if (!(stop > start)) throw ConfigError("scan range is empty (stop <= start)");
  const double count = std::floor((stop - start) / step * (1.0 + 1e-12)) + 1.0;
  if (count > static_cast<double>(kMaxScanPoints)) {
    throw ConfigError("scan has too many points");
  }
  std::vector<double> pts(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pts[i] = start + static_cast<double>(i) * step;
  }
  return pts;
}

Settings read_config_file(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot read config file " + path.string());
  Settings settings;
  std::string line;
  int number = 0;
  while (std::getline(file, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(number) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (!kKnownKeys.contains(key)) {
      throw ConfigError(path.string() + ":" + std::to_string(number) + ": unknown key '" + key +
                        "'");
    }
    settings[key] = trim(line.substr(eq + 1));
  }
  return settings;
}

double parse_length(const std::string& raw, double default_unit) {
  const std::string text = trim(raw);
  struct Suffix {
    const char* name;
    double scale;
  };
  static constexpr Suffix suffixes[] = {{"nm", units::nm}, {"um", units::um}, {"mm", units::mm}};
  for (const auto& s : suffixes) {
    const std::string name = s.name;
    if (text.size() > name.size() && text.ends_with(name)) {
      return parse_number("length", trim(text.substr(0, text.size() - name.size()))) * s.scale;
    }
  }
  return parse_number("length", text) * default_unit;
}

double RunConfig::pump_fwhm_or_default() const {
  if (pump_fwhm) return *pump_fwhm;
  return command == Command::packet ? kPacketPumpFwhm : kDefaultPumpFwhm;
}

SourceModel RunConfig::source_model() const {
  const auto photon = SpectralProfile::from_wavelength(lambda0, filter_fwhm);
  switch (source) {
    case SourceKind::spdc:
      return SourceModel::spdc(SpectralProfile::from_wavelength(lambda0 / 2.0, pump_fwhm_or_default()),
                               photon);
    case SourceKind::separable:
      return SourceModel::separable(photon);
    case SourceKind::distinguishable:
      return SourceModel::distinguishable(photon);
  }
  throw ConfigError("unknown source");
}

std::string RunConfig::axis_unit() const { return command == Command::fringe ? "nm" : "um"; }

double RunConfig::axis_scale() const { return command == Command::fringe ? units::nm : units::um; }

ScanSpec RunConfig::scan_or_default(double x1_value) const {
  if (scan) return *scan;
  switch (command) {
    case Command::hom: {
      const double half = std::ceil(6.0 * photon_coherence_length(*this) / (10 * units::um)) *
                          (10 * units::um);
      return {-half, half, half / 100.0};
    }
    case Command::fringe:
      return {-3.0 * lambda0, 3.0 * lambda0, lambda0 / 160.0};
    case Command::packet: {
      // The distinguishable packet does not depend on x1, so neither does its range.
      const double shift = source == SourceKind::distinguishable ? 0.0 : std::abs(x1_value);
      const double half = shift + 5.0 * dip_fwhm_length(*this);
      const double step = lambda0 / 40.0;
      const double n = std::ceil(half / step);
      return {-n * step, n * step, step};
    }
    case Command::oracle_check:
      break;
  }
  throw ConfigError("oracle-check takes no scan");
}

std::filesystem::path RunConfig::output_path() const {
  if (!out.empty()) return out;
  std::filesystem::path dir = ".";
  if (const char* env = std::getenv(output_dir_env); env != nullptr && *env != '\0') {
    dir = env;
  }
  const std::string name =
      command == Command::oracle_check ? "oracle_check.txt" : std::string(to_string(command)) + ".csv";
  return dir / name;
}

void RunConfig::validate() const {
  if (!(lambda0 > 0.0)) throw ConfigError("lambda0 must be positive");
  if (!(filter_fwhm > 0.0)) throw ConfigError("filter-fwhm must be positive");
  if (filter_fwhm >= lambda0) throw ConfigError("filter-fwhm must be smaller than lambda0");
  if (pump_fwhm && !(*pump_fwhm >= 0.0)) throw ConfigError("pump-fwhm must be >= 0");
  if (!(vis_degrade >= 0.0 && vis_degrade <= 1.0)) {
    throw ConfigError("vis-degrade must lie in [0, 1]");
  }
  if (oracle && vis_degrade != 1.0) {
    throw ConfigError("--oracle computes ideal rates; it cannot be combined with vis-degrade < 1");
  }
  if (command == Command::hom && source == SourceKind::distinguishable) {
    throw ConfigError("hom: orthogonally polarized photons show no dip; use spdc or separable");
  }
  if (sweep_points < 1) throw ConfigError("points must be >= 1");
  try {
    oracle_config.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (scan) {
    if (command == Command::oracle_check) throw ConfigError("oracle-check takes no scan");
    (void)scan->points();
    if (command == Command::hom) {
      const double limit = photon_coherence_length(*this) / 4.0;
      if (scan->step > limit) {
        throw ConfigError("scan step " + format_g(scan->step / units::um, 6) +
                          " um exceeds a quarter coherence length (" +
                          format_g(limit / units::um, 6) + " um)");
      }
    } else {
      const double limit = lambda0 / 2.0 / 16.0;
      if (scan->step > limit) {
        throw ConfigError("scan step " + format_g(scan->step / units::nm, 6) +
                          " nm exceeds a sixteenth of the fringe period (" +
                          format_g(limit / units::nm, 6) + " nm)");
      }
    }
  }
  try {
    (void)source_model();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

RunConfig resolve(Command command, const Settings& settings) {
  RunConfig c;
  c.command = command;
  auto get = [&](const std::string& key) -> const std::string* {
    const auto it = settings.find(key);
    return it == settings.end() ? nullptr : &it->second;
  };
  for (const auto& [key, value] : settings) {
    if (!kKnownKeys.contains(key)) throw ConfigError("unknown setting '" + key + "'");
  }
  if (const auto* v = get("source")) {
    try {
      c.source = parse_source_kind(*v);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  if (const auto* v = get("lambda0")) c.lambda0 = parse_length(*v, units::nm);
  if (const auto* v = get("filter-fwhm")) c.filter_fwhm = parse_length(*v, units::nm);
  if (const auto* v = get("pump-fwhm")) c.pump_fwhm = parse_length(*v, units::nm);
  if (const auto* v = get("x1")) c.x1 = parse_length(*v, units::um);
  if (const auto* v = get("scan")) c.scan = parse_scan(*v, c.axis_scale());
  if (const auto* v = get("oracle")) c.oracle = parse_bool("oracle", *v);
  if (const auto* v = get("out")) c.out = *v;
  if (const auto* v = get("vis-degrade")) c.vis_degrade = parse_number("vis-degrade", *v);
  if (const auto* v = get("seed")) c.seed = parse_u64("seed", *v);
  if (const auto* v = get("points")) {
    const auto n = parse_u64("points", *v);
    if (n == 0 || n > 100000) throw ConfigError("points must lie in [1, 100000]");
    c.sweep_points = static_cast<int>(n);
  }
  if (const auto* v = get("oracle-samples")) {
    const auto n = parse_u64("oracle-samples", *v);
    if (n > 1u << 16) throw ConfigError("oracle-samples too large");
    c.oracle_config.time_samples_per_axis = static_cast<int>(n);
  }
  if (const auto* v = get("oracle-window")) {
    c.oracle_config.time_half_window = parse_number("oracle-window", *v);
  }
  c.validate();
  return c;
}

ScanResult hom_scan(const RunConfig& config) {
  const auto source = config.source_model();
  const double dw = source.photon().gaussian_width();
  ScanResult result;
  result.unit = config.axis_unit();
  result.scale = config.axis_scale();
  result.curve.axis = config.scan_or_default(0.0).points();
  result.curve.meta = {config.source, AxisKind::length, 0.0, 0.0, config.lambda0,
                       config.filter_fwhm, config.pump_fwhm_or_default()};
  if (config.oracle) result.oracle.emplace();
  for (double x1 : result.curve.axis) {
    const double tau1 = units::length_to_time(x1);
    result.curve.rates.push_back(hom_rate(dw, tau1));
    if (config.oracle) {
      result.oracle->push_back(numeric_hom_rate(source, tau1, config.oracle_config));
    }
  }
  return result;
}

namespace {

ScanResult x2_scan(const RunConfig& config, double x1) {
  const auto source = config.source_model();
  ScanResult result;
  result.unit = config.axis_unit();
  result.scale = config.axis_scale();
  result.curve.axis = config.scan_or_default(x1).points();
  result.curve.meta = {config.source, AxisKind::length, x1, 0.0, config.lambda0,
                       config.filter_fwhm, config.pump_fwhm_or_default()};
  if (config.oracle) result.oracle.emplace();
  for (double x2 : result.curve.axis) {
    const auto delays = DelayConfig::from_lengths(x1, x2);
    result.curve.rates.push_back(coincidence_rate(source, delays, config.vis_degrade));
    if (config.oracle) {
      result.oracle->push_back(numeric_coincidence_rate(source, delays, config.oracle_config));
    }
  }
  return result;
}

}  // namespace

ScanResult fringe_scan(const RunConfig& config, double x1) { return x2_scan(config, x1); }

ScanResult packet_scan(const RunConfig& config, double x1) { return x2_scan(config, x1); }

FringeReport analyze_fringe(const ScanResult& scan) {
  const auto& axis = scan.curve.axis;
  const double center = 0.5 * (axis.front() + axis.back());
  const double window = axis.back() - axis.front();
  return {scan.curve.meta.x1, estimate_period(scan.curve), visibility(scan.curve, center, window)};
}

bool FormulaCheck::passed() const { return failures == 0 && points > 0; }

bool OracleCheckReport::passed() const {
  for (const auto& f : formulas) {
    if (!f.passed() || f.max_relative_error > tolerance) return false;
  }
  return singles_failures == 0 && singles_spread <= singles_tolerance;
}

OracleCheckReport oracle_check(const RunConfig& config, std::ostream& log) {
  const auto t0 = std::chrono::steady_clock::now();
  OracleCheckReport report;
  report.tolerance = config.oracle_config.relative_tolerance;
  std::mt19937_64 rng(config.seed);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };

  struct Draw {
    SourceModel source;
    double tau1;
    double tau2;
  };
  // Random spectra around lambda0; delays within +-3 coherence times where
  // every term of the rate contributes.
  auto draw = [&](SourceKind kind) {
    const double lambda0 = config.lambda0 * uniform(0.95, 1.05);
    const auto photon = SpectralProfile::from_wavelength(lambda0, uniform(2e-9, 10e-9));
    std::optional<SourceModel> source;
    switch (kind) {
      case SourceKind::spdc:
        source = SourceModel::spdc(
            SpectralProfile::from_wavelength(lambda0 / 2.0, uniform(0.3e-9, 5e-9)), photon);
        break;
      case SourceKind::separable:
        source = SourceModel::separable(photon);
        break;
      case SourceKind::distinguishable:
        source = SourceModel::distinguishable(photon);
        break;
    }
    const double tc = photon.coherence_time();
    const double tau1 = uniform(-3.0, 3.0) * tc;
    const double tau2 = uniform(-3.0, 3.0) * tc;
    return Draw{*source, tau1, tau2};
  };

  struct Case {
    const char* name;
    SourceKind kind;
    bool hom;
  };
  const Case cases[] = {{"hom", SourceKind::spdc, true},
                        {"spdc", SourceKind::spdc, false},
                        {"separable", SourceKind::separable, false},
                        {"distinguishable", SourceKind::distinguishable, false}};
  for (const auto& c : cases) {
    FormulaCheck check;
    check.name = c.name;
    for (int i = 0; i < config.sweep_points; ++i) {
      const Draw d = draw(c.kind);
      ++check.points;
      try {
        double closed = 0.0;
        double numeric = 0.0;
        if (c.hom) {
          closed = hom_rate(d.source.photon().gaussian_width(), d.tau1);
          numeric = numeric_hom_rate(d.source, d.tau1, config.oracle_config);
        } else {
          const DelayConfig delays{d.tau1, d.tau2};
          closed = coincidence_rate(d.source, delays);
          numeric = numeric_coincidence_rate(d.source, delays, config.oracle_config);
        }
        const double err = relative_deviation(numeric, closed);
        if (err > check.max_relative_error) {
          check.max_relative_error = err;
          check.worst_tau1 = d.tau1;
          check.worst_tau2 = d.tau2;
        }
      } catch (const NumericError& e) {
        ++check.failures;
        log << c.name << " point " << i << ": " << e.what() << "\n";
      }
    }
    log << c.name << ": max relative error " << format_g(check.max_relative_error, 4) << " over "
        << check.points << " points\n";
    report.formulas.push_back(check);
  }

  // Singles: x2 and x1 scans at the configured spectra for each source.
  double lo = 1e300;
  double hi = -1e300;
  for (auto kind : {SourceKind::spdc, SourceKind::separable, SourceKind::distinguishable}) {
    RunConfig c = config;
    c.source = kind;
    const auto source = c.source_model();
    const double tc = source.photon_coherence_time();
    const double x1_fixed = units::time_to_length(uniform(0.0, 2.0) * tc);
    for (int axis = 0; axis < 2; ++axis) {
      for (int i = 0; i <= 20; ++i) {
        const double s = (-4.0 + 0.4 * i) * tc;
        const DelayConfig delays = axis == 0 ? DelayConfig{units::length_to_time(x1_fixed), s}
                                             : DelayConfig{s, 0.3 * tc};
        try {
          const double r = numeric_singles_rate(source, delays, config.oracle_config);
          lo = std::min(lo, r);
          hi = std::max(hi, r);
        } catch (const NumericError& e) {
          ++report.singles_failures;
          log << "singles " << to_string(kind) << ": " << e.what() << "\n";
        }
      }
    }
  }
  report.singles_spread = hi >= lo ? hi - lo : 0.0;
  log << "singles: max - min " << format_g(report.singles_spread, 4) << "\n";
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

void write_csv(const std::filesystem::path& path, const ScanResult& scan) {
  auto file = open_output(path);
  file << "axis_" << scan.unit << ",rate";
  if (scan.oracle) file << ",oracle_rate";
  file << "\n";
  for (std::size_t i = 0; i < scan.curve.axis.size(); ++i) {
    file << format_g(scan.curve.axis[i] / scan.scale) << "," << format_g(scan.curve.rates[i]);
    if (scan.oracle) file << "," << format_g((*scan.oracle)[i]);
    file << "\n";
  }
  if (!file) throw ConfigError("failed writing " + path.string());
}

void write_envelope_csv(const std::filesystem::path& path, const EnvelopeReport& report,
                        double scale, const std::string& unit) {
  auto file = open_output(path);
  file << "upper_axis_" << unit << ",upper_rate,lower_axis_" << unit << ",lower_rate\n";
  for (std::size_t i = 0; i < report.upper.size(); ++i) {
    file << format_g(report.upper[i].position / scale) << "," << format_g(report.upper[i].rate)
         << "," << format_g(report.lower[i].position / scale) << ","
         << format_g(report.lower[i].rate) << "\n";
  }
  if (!file) throw ConfigError("failed writing " + path.string());
}

namespace {

double max_oracle_deviation(const ScanResult& scan) {
  double worst = 0.0;
  if (scan.oracle) {
    for (std::size_t i = 0; i < scan.curve.rates.size(); ++i) {
      worst = std::max(worst, relative_deviation((*scan.oracle)[i], scan.curve.rates[i]));
    }
  }
  return worst;
}

void check_oracle(const RunConfig& config, const ScanResult& scan, std::ostream& out) {
  if (!scan.oracle) return;
  const double worst = max_oracle_deviation(scan);
  out << "oracle_max_relative_error=" << format_g(worst, 4) << "\n";
  if (worst > config.oracle_config.relative_tolerance) {
    throw NumericError("oracle disagrees with the closed form by " + format_g(worst, 4));
  }
}

std::vector<double> panels(const RunConfig& config) {
  if (config.x1) return {*config.x1};
  if (config.command == Command::fringe) return {std::begin(kFringePanels), std::end(kFringePanels)};
  return {std::begin(kPacketPanels), std::end(kPacketPanels)};
}

std::filesystem::path panel_path(const RunConfig& config, double x1) {
  const auto base = config.output_path();
  return config.x1 ? base : with_suffix(base, x1_label(x1));
}

void cmd_hom(const RunConfig& config, std::ostream& out) {
  const auto scan = hom_scan(config);
  const auto path = config.output_path();
  write_csv(path, scan);
  out << "csv=" << path.string() << "\n";
  const auto min_it = std::min_element(scan.curve.rates.begin(), scan.curve.rates.end());
  const auto i = static_cast<std::size_t>(min_it - scan.curve.rates.begin());
  out << "min_rate=" << format_g(*min_it) << " at_x1_um=" << format_g(scan.curve.axis[i] / units::um)
      << "\n";
  try {
    const HomFit fit = fit_hom_dip(scan.curve);
    out << "fit_visibility=" << format_g(fit.visibility, 8)
        << " fit_bandwidth_rad_s=" << format_g(fit.bandwidth, 8) << "\n";
  } catch (const AnalysisError& e) {
    out << "fit_skipped=" << e.what() << "\n";
  }
  check_oracle(config, scan, out);
}

void cmd_fringe(const RunConfig& config, std::ostream& out) {
  for (double x1 : panels(config)) {
    const auto scan = fringe_scan(config, x1);
    const auto path = panel_path(config, x1);
    write_csv(path, scan);
    const auto report = analyze_fringe(scan);
    out << "x1_um=" << format_g(x1 / units::um) << " period_nm=" << format_g(report.period / units::nm, 8)
        << " visibility=" << format_g(report.visibility, 8) << " csv=" << path.string() << "\n";
    check_oracle(config, scan, out);
  }
}

void cmd_packet(const RunConfig& config, std::ostream& out) {
  for (double x1 : panels(config)) {
    const auto scan = packet_scan(config, x1);
    const auto path = panel_path(config, x1);
    write_csv(path, scan);
    const auto report = extract_envelope(scan.curve);
    const auto envelope_path = with_suffix(path, "_envelope");
    write_envelope_csv(envelope_path, report, scan.scale, scan.unit);
    out << "x1_um=" << format_g(x1 / units::um) << " classification=" << to_string(report.classification)
        << " baseline=" << format_g(report.baseline, 8) << " csv=" << path.string()
        << " envelope=" << envelope_path.string() << "\n";
    for (const auto& p : find_side_peaks(scan.curve, report.baseline)) {
      out << "  side_peak x2_um=" << format_g(p.position / units::um, 8)
          << " rate=" << format_g(p.rate, 8) << "\n";
    }
    check_oracle(config, scan, out);
  }
}

void cmd_oracle_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto report = oracle_check(config, err);
  const auto path = config.output_path();
  auto file = open_output(path);
  std::ostringstream text;
  text << "seed=" << config.seed << "\n";
  text << "points_per_formula=" << config.sweep_points << "\n";
  text << "tolerance=" << format_g(report.tolerance, 4) << "\n";
  for (const auto& f : report.formulas) {
    const bool ok = f.passed() && f.max_relative_error <= report.tolerance;
    text << f.name << " max_relative_error=" << format_g(f.max_relative_error, 6)
         << " convergence_failures=" << f.failures << " status=" << (ok ? "pass" : "fail") << "\n";
  }
  text << "singles max_minus_min=" << format_g(report.singles_spread, 6)
       << " convergence_failures=" << report.singles_failures << " status="
       << (report.singles_failures == 0 && report.singles_spread <= report.singles_tolerance
               ? "pass"
               : "fail")
       << "\n";
  text << "seconds=" << format_g(report.seconds, 4) << "\n";
  file << text.str();
  out << text.str() << "report=" << path.string() << "\n";
  if (!report.passed()) {
    throw NumericError("oracle check failed");
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-photon de Broglie wave interference in a Mach-Zehnder interferometer",
               "debroglie"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  struct Sub {
    Command command;
    CLI::App* app;
    Settings values;
    std::string config_file;
  };
  std::vector<Sub> subs;
  subs.reserve(4);
  const std::pair<Command, const char*> commands[] = {
      {Command::hom, "HOM dip: coincidences behind the first beam splitter versus x1"},
      {Command::fringe, "de Broglie fringes versus x2 at fixed x1 (default: four panels)"},
      {Command::packet, "biphoton wave packet versus x2 with envelope and shape"},
      {Command::oracle_check, "randomized closed-form versus numerical-oracle sweep"}};
  for (const auto& [command, help] : commands) {
    subs.push_back({command, app.add_subcommand(std::string(to_string(command)), help), {}, {}});
  }
  for (auto& s : subs) {
    auto* a = s.app;
    auto opt = [&](const char* name, const char* help) {
      a->add_option(std::string("--") + name, s.values[name], help);
    };
    opt("source", "spdc | separable | distinguishable");
    opt("lambda0", "photon center wavelength (nm)");
    opt("filter-fwhm", "filter / photon intensity FWHM (nm)");
    opt("pump-fwhm", "pump intensity FWHM (nm); 0 = monochromatic");
    if (s.command != Command::oracle_check) {
      if (s.command != Command::hom) opt("x1", "input delay, e.g. 62um or 5.7mm (bare = um)");
      opt("scan", "start:stop:step along the scan axis (hom: um, fringe: nm, packet: um)");
      a->add_flag("--oracle", "add an oracle_rate column");
      opt("vis-degrade", "fringe visibility factor in [0, 1]");
    } else {
      opt("seed", "sweep seed (default 0)");
      opt("points", "random parameter sets per formula (default 50)");
    }
    opt("oracle-samples", "oracle time samples per axis");
    opt("oracle-window", "oracle half window in coherence times");
    opt("out", "output path (default: $DEBROGLIE_OUT_DIR or .)");
    a->add_option("--config", s.config_file, "key=value file; flags take precedence");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_config;
  }

  for (auto& s : subs) {
    if (!s.app->parsed()) continue;
    try {
      Settings merged;
      if (!s.config_file.empty()) merged = read_config_file(s.config_file);
      for (const auto* option : s.app->get_options()) {
        const std::string name = option->get_name(false, true);
        if (option->count() == 0 || name == "--config" || name == "--help") continue;
        const std::string key = name.substr(2);
        merged[key] = key == "oracle" ? "true" : s.values[key];
      }
      if (s.command == Command::hom) merged.erase("x1");
      if (s.command != Command::oracle_check) {
        merged.erase("seed");
        merged.erase("points");
      } else {
        for (const char* k : {"x1", "scan", "oracle", "vis-degrade"}) merged.erase(k);
      }
      const RunConfig config = resolve(s.command, merged);
      switch (s.command) {
        case Command::hom:
          cmd_hom(config, out);
          break;
        case Command::fringe:
          cmd_fringe(config, out);
          break;
        case Command::packet:
          cmd_packet(config, out);
          break;
        case Command::oracle_check:
          cmd_oracle_check(config, out, err);
          break;
      }
      return exit_ok;
    } catch (const DomainError& e) {
      err << "error: " << e.what() << "\n";
      return exit_config;
    } catch (const NumericError& e) {
      err << "numeric error: " << e.what() << "\n";
      return exit_numeric;
    }
  }
  return exit_config;
}

}  // namespace debroglie::cli
