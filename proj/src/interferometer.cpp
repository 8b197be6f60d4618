#include "debroglie/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "debroglie/errors.hpp"
#include "debroglie/units.hpp"

namespace debroglie {

namespace {

constexpr Complex kI{0.0, 1.0};

// Real sign of `value / reference`, which must be +-1 up to rounding.
int relative_sign(Complex value, Complex reference) {
  const Complex ratio = value / reference;
  return ratio.real() >= 0.0 ? 1 : -1;
}

Polarization polarization_of(const SourceModel& source, InputMode mode) {
  return mode == InputMode::a ? source.polarization_a() : source.polarization_b();
}

}  // namespace

DelayConfig DelayConfig::from_lengths(double x1, double x2) {
  if (!std::isfinite(x1) || !std::isfinite(x2)) {
    throw DomainError("delays must be finite");
  }
  return {units::length_to_time(x1), units::length_to_time(x2)};
}

double DelayConfig::x1() const { return units::time_to_length(tau1); }
double DelayConfig::x2() const { return units::time_to_length(tau2); }

Complex FieldTransform::to_e(InputMode input, Arm arm) const {
  return bs2[0][static_cast<int>(arm)] * bs1[static_cast<int>(arm)][static_cast<int>(input)];
}

double FieldTransform::delay(InputMode input, Arm arm) const {
  return (input == InputMode::a ? tau1 : 0.0) + (arm == Arm::d ? tau2 : 0.0);
}

FieldTransform hom_output_fields(const DelayConfig& delays) {
  const double r = 1.0 / std::numbers::sqrt2;
  FieldTransform f;
  f.bs1 = {{{kI * r, Complex(r)}, {Complex(r), kI * r}}};
  f.bs2 = f.bs1;
  f.tau1 = delays.tau1;
  f.tau2 = delays.tau2;
  return f;
}

bool is_unitary(const Matrix2& m, double tolerance) {
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Complex dot = 0.0;
      for (int k = 0; k < 2; ++k) {
        dot += std::conj(m[k][i]) * m[k][j];
      }
      const Complex expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(dot - expected) > tolerance) {
        return false;
      }
    }
  }
  return true;
}

std::vector<FeynmanPath> enumerate_paths(const SourceModel& source, const DelayConfig& delays) {
  const FieldTransform f = hom_output_fields(delays);
  // Routes in the order (a via d, b via d), (c, c), (c, d), (d, c).
  constexpr std::array<std::array<Arm, 2>, 4> routes{{
      {Arm::d, Arm::d},
      {Arm::c, Arm::c},
      {Arm::c, Arm::d},
      {Arm::d, Arm::c},
  }};
  const Complex reference = kI / 4.0;
  const bool split_groups = source.kind() == SourceKind::distinguishable;

  std::vector<FeynmanPath> paths;
  paths.reserve(8);
  for (bool exchange : {false, true}) {
    for (std::size_t line = 0; line < routes.size(); ++line) {
      const auto [arm_a, arm_b] = routes[line];
      FeynmanPath p;
      p.shift_a = f.delay(InputMode::a, arm_a);
      p.shift_b = f.delay(InputMode::b, arm_b);
      p.sign = relative_sign(f.to_e(InputMode::a, arm_a) * f.to_e(InputMode::b, arm_b), reference);
      p.exchange = exchange;
      p.pol_a = polarization_of(source, InputMode::a);
      p.pol_b = polarization_of(source, InputMode::b);
      p.group = (split_groups && exchange) ? 1 : 0;
      p.line = static_cast<int>(line) + 1;
      paths.push_back(p);
    }
  }
  return paths;
}

std::vector<FeynmanPath> enumerate_hom_paths(const SourceModel& source, double tau1) {
  const FieldTransform f = hom_output_fields({tau1, 0.0});
  const auto c = static_cast<int>(Arm::c);
  const auto d = static_cast<int>(Arm::d);
  const auto a = static_cast<int>(InputMode::a);
  const auto b = static_cast<int>(InputMode::b);
  const Complex reference = 0.5;
  const bool split_groups = source.kind() == SourceKind::distinguishable;

  // E_d(t') E_c(t): the photon in c is detected at t.
  FeynmanPath a_in_c;
  a_in_c.shift_a = tau1;
  a_in_c.sign = relative_sign(f.bs1[c][a] * f.bs1[d][b], reference);
  a_in_c.line = 1;

  FeynmanPath a_in_d = a_in_c;
  a_in_d.sign = relative_sign(f.bs1[d][a] * f.bs1[c][b], reference);
  a_in_d.exchange = true;
  a_in_d.line = 2;

  std::vector<FeynmanPath> paths{a_in_c, a_in_d};
  for (auto& p : paths) {
    p.pol_a = source.polarization_a();
    p.pol_b = source.polarization_b();
    p.group = (split_groups && p.exchange) ? 1 : 0;
  }
  return paths;
}

std::vector<FeynmanPath> enumerate_singles_paths(const SourceModel& source,
                                                 const DelayConfig& delays) {
  const FieldTransform f = hom_output_fields(delays);
  std::vector<FeynmanPath> paths;
  for (Arm arm : {Arm::c, Arm::d}) {
    FeynmanPath p;
    p.shift_a = f.delay(InputMode::a, arm);
    p.sign = relative_sign(f.to_e(InputMode::a, arm), Complex(0.5));
    p.group = 0;
    p.line = arm == Arm::c ? 1 : 2;
    paths.push_back(p);
  }
  for (Arm arm : {Arm::c, Arm::d}) {
    FeynmanPath p;
    p.shift_a = delays.tau1;
    p.shift_b = f.delay(InputMode::b, arm);
    p.sign = relative_sign(f.to_e(InputMode::b, arm), kI * 0.5);
    p.exchange = true;
    p.group = 1;
    p.line = arm == Arm::c ? 1 : 2;
    paths.push_back(p);
  }
  for (auto& p : paths) {
    p.pol_a = source.polarization_a();
    p.pol_b = source.polarization_b();
  }
  return paths;
}

OverlapClass path_overlap_class(const DelayConfig& delays, double coherence_time) {
  if (!(coherence_time > 0.0)) {
    throw DomainError("coherence time must be positive");
  }
  if (std::abs(delays.tau2) < 0.1 * coherence_time) {
    return OverlapClass::all_indistinguishable;
  }
  const double t1 = delays.tau1;
  const double t2 = delays.tau2;
  const std::array<std::array<double, 2>, 4> shifts{{
      {t1 + t2, t2},
      {t1, 0.0},
      {t1, t2},
      {t1 + t2, 0.0},
  }};
  double closest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    for (std::size_t j = i + 1; j < shifts.size(); ++j) {
      const double gap = std::max(std::abs(shifts[i][0] - shifts[j][0]),
                                  std::abs(shifts[i][1] - shifts[j][1]));
      closest = std::min(closest, gap);
    }
  }
  return closest > 5.0 * coherence_time ? OverlapClass::fully_distinguishable
                                        : OverlapClass::partially;
}

}  // namespace debroglie
