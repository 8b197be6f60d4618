#pragma once

#include <array>
#include <complex>
#include <vector>

#include "debroglie/sources.hpp"

namespace debroglie {

/// The two controllable delays. Positive tau1 delays the mode-a photon before
/// BS1; positive tau2 delays arm d relative to arm c before BS2.
struct DelayConfig {
  double tau1 = 0.0;
  double tau2 = 0.0;

  /// From path-length offsets x1, x2 (meters). Throws DomainError if non-finite.
  static DelayConfig from_lengths(double x1, double x2);

  double x1() const;
  double x2() const;
};

/// One two-photon detection amplitude at the output.
///
/// Non-exchange terms detect the mode-a photon at t and the mode-b photon at
/// t'; exchange terms swap the detection times. The term contributes
/// sign * K(t_a - shift_a, t_b - shift_b) where K is the source's two-time
/// amplitude. Terms with different `group` never interfere: their squared
/// sums are added.
struct FeynmanPath {
  double shift_a = 0.0;
  double shift_b = 0.0;
  int sign = 1;
  bool exchange = false;
  Polarization pol_a = Polarization::H;
  Polarization pol_b = Polarization::H;
  int group = 0;
  /// 1-based line of the four BS2-output routes (d/d, c/c, c/d, d/c).
  int line = 0;

  double phase_delay() const { return shift_a + shift_b; }
};

/// The eight amplitudes behind the D3 x D4 coincidence: four routes through
/// the MZI, each with its time-exchanged partner. Signs are derived from the
/// beam-splitter matrices and come out as (+, -, -, +) per route. For the
/// distinguishable source the non-exchange and exchange terms form two
/// incoherent groups (HV and VH detection orderings).
std::vector<FeynmanPath> enumerate_paths(const SourceModel& source, const DelayConfig& delays);

/// The two amplitudes behind the D1 x D2 (modes c, d) coincidence.
std::vector<FeynmanPath> enumerate_hom_paths(const SourceModel& source, double tau1);

/// First-order amplitudes for one photon reaching mode e, the partner photon
/// left undetected. Group 0: the mode-a photon is in e (routes via c and d);
/// group 1: the mode-b photon is. Each term has modulus 1/2 relative to the
/// returned signs.
std::vector<FeynmanPath> enumerate_singles_paths(const SourceModel& source,
                                                 const DelayConfig& delays);

enum class OverlapClass { all_indistinguishable, partially, fully_distinguishable };

/// Temporal distinguishability of the four MZI routes. All routes coincide
/// when |tau2| < 0.1 * coherence_time; they are fully distinguishable when
/// every pairwise shift difference exceeds 5 * coherence_time.
OverlapClass path_overlap_class(const DelayConfig& delays, double coherence_time);

using Complex = std::complex<double>;
using Matrix2 = std::array<std::array<Complex, 2>, 2>;

enum class InputMode { a = 0, b = 1 };
enum class Arm { c = 0, d = 1 };

/// Field transformation of the MZI: 50:50 splitters with an i on reflection.
///   E_c(t) = (i E_a(t - tau1) + E_b(t)) / sqrt2,  E_d(t) = (E_a(t - tau1) + i E_b(t)) / sqrt2
///   E_e(t) = (i E_c(t) + E_d(t - tau2)) / sqrt2,  E_f(t) = (E_c(t) + i E_d(t - tau2)) / sqrt2
struct FieldTransform {
  Matrix2 bs1;  ///< rows (c, d), columns (a, b)
  Matrix2 bs2;  ///< rows (e, f), columns (c, d)
  double tau1 = 0.0;
  double tau2 = 0.0;

  /// Amplitude for an input photon to reach mode e through the given arm.
  Complex to_e(InputMode input, Arm arm) const;
  /// Total delay along that route.
  double delay(InputMode input, Arm arm) const;
};

FieldTransform hom_output_fields(const DelayConfig& delays);

bool is_unitary(const Matrix2& m, double tolerance = 1e-14);

}  // namespace debroglie
