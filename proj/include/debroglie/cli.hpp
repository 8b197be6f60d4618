#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "debroglie/analysis.hpp"
#include "debroglie/errors.hpp"
#include "debroglie/oracle.hpp"
#include "debroglie/sources.hpp"

namespace debroglie::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_numeric = 3;

/// Environment variable naming the default output directory.
inline constexpr const char* output_dir_env = "DEBROGLIE_OUT_DIR";

class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

enum class Command { hom, fringe, packet, oracle_check };

std::string_view to_string(Command command);

/// Scan range along the command's axis, SI meters.
struct ScanSpec {
  double start;
  double stop;
  double step;

  std::vector<double> points() const;
};

/// Raw option values keyed by long flag name without dashes.
using Settings = std::map<std::string, std::string>;

/// Flat `key=value` file; `#` starts a comment. Throws ConfigError.
Settings read_config_file(const std::filesystem::path& path);

/// Lengths like "62um", "5.7mm", "405nm"; bare numbers take `default_unit`
/// (meters per unit).
double parse_length(const std::string& text, double default_unit);

struct RunConfig {
  Command command = Command::fringe;
  SourceKind source = SourceKind::spdc;
  double lambda0 = 810e-9;
  double filter_fwhm = 5e-9;
  /// Pump FWHM; unset means the per-command default (2 nm for packet
  /// scans, 0.67 nm otherwise).
  std::optional<double> pump_fwhm;
  std::optional<double> x1;
  std::optional<ScanSpec> scan;
  bool oracle = false;
  OracleConfig oracle_config;
  std::filesystem::path out;  ///< empty: default under $DEBROGLIE_OUT_DIR
  double vis_degrade = 1.0;
  std::uint64_t seed = 0;
  int sweep_points = 50;

  double pump_fwhm_or_default() const;
  SourceModel source_model() const;
  /// Axis unit used for the command's CSV and for unitless scan values.
  std::string axis_unit() const;
  double axis_scale() const;
  ScanSpec scan_or_default(double x1) const;
  std::filesystem::path output_path() const;
  /// Throws ConfigError.
  void validate() const;
};

/// Builds a RunConfig from merged settings (flags already override file).
RunConfig resolve(Command command, const Settings& settings);

struct ScanResult {
  RateCurve curve;                  ///< axis in meters
  std::optional<std::vector<double>> oracle;
  std::string unit;
  double scale = 1.0;               ///< meters per axis unit
};

ScanResult hom_scan(const RunConfig& config);
ScanResult fringe_scan(const RunConfig& config, double x1);
ScanResult packet_scan(const RunConfig& config, double x1);

struct FringeReport {
  double x1;
  double period;
  double visibility;
};
FringeReport analyze_fringe(const ScanResult& scan);

struct FormulaCheck {
  std::string name;
  int points = 0;
  int failures = 0;  ///< convergence failures
  double max_relative_error = 0.0;
  double worst_tau1 = 0.0;
  double worst_tau2 = 0.0;
  bool passed() const;
};

struct OracleCheckReport {
  std::vector<FormulaCheck> formulas;
  double singles_spread = 0.0;
  int singles_failures = 0;
  double tolerance = 1e-3;
  double singles_tolerance = 2e-3;
  double seconds = 0.0;
  bool passed() const;
};

/// Randomized closed-form vs oracle sweep, deterministic for a given seed.
OracleCheckReport oracle_check(const RunConfig& config, std::ostream& log);

void write_csv(const std::filesystem::path& path, const ScanResult& scan);
void write_envelope_csv(const std::filesystem::path& path, const EnvelopeReport& report,
                        double scale, const std::string& unit);

/// Runs the tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace debroglie::cli
