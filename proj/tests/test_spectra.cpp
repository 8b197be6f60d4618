#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "common.hpp"
#include "debroglie/errors.hpp"
#include "debroglie/spectra.hpp"

using namespace debroglie;

namespace {

template <class F>
double trapezoid(F f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  double sum = 0.5 * (f(lo) + f(hi));
  for (int i = 1; i < n; ++i) sum += f(lo + i * h);
  return sum * h;
}

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("intensity fwhm to gaussian width") {
  // 2 pi c dl / (l^2 * 2 sqrt(ln 2)), evaluated once and frozen.
  CHECK(fwhm_to_gaussian_width(5e-9, 810e-9) == doctest::Approx(8621003306814.4385).epsilon(1e-14));
  CHECK(fwhm_to_gaussian_width(0.0, 810e-9) == 0.0);
  CHECK_THROWS_AS(fwhm_to_gaussian_width(5e-9, 0.0), DomainError);
  CHECK_THROWS_AS(fwhm_to_gaussian_width(5e-9, -810e-9), DomainError);
  CHECK_THROWS_AS(fwhm_to_gaussian_width(-1e-9, 810e-9), DomainError);
  CHECK(gaussian_width_to_fwhm(fwhm_to_gaussian_width(2e-9, 405e-9), 405e-9) ==
        doctest::Approx(2e-9).epsilon(1e-14));
}

TEST_CASE("profile accessors") {
  const auto p = fixtures::photon();
  CHECK(p.center_frequency() == doctest::Approx(2.0 * std::numbers::pi * 299792458.0 / 810e-9));
  CHECK(p.coherence_time() == doctest::Approx(std::numbers::sqrt2 / p.gaussian_width()));
  CHECK_FALSE(p.is_monochromatic());
  const auto mono = SpectralProfile::from_wavelength(405e-9, 0.0);
  CHECK(mono.is_monochromatic());
  CHECK_THROWS_AS(mono.coherence_time(), DomainError);
  CHECK_THROWS_AS(SpectralProfile::from_wavelength(std::numeric_limits<double>::infinity(), 1e-9),
                  DomainError);
}

TEST_CASE("spectral amplitude") {
  const auto p = fixtures::photon();
  const double w0 = p.center_frequency();
  const double dw = p.gaussian_width();
  const double peak = 1.0 / std::sqrt(dw * std::sqrt(std::numbers::pi));
  CHECK(amplitude(p, w0) == doctest::Approx(peak).epsilon(1e-14));
  CHECK(amplitude(p, w0 + dw) == doctest::Approx(std::exp(-0.5) * peak).epsilon(1e-14));
  const double norm = trapezoid([&](double w) { return std::pow(amplitude(p, w), 2); },
                                w0 - 8 * dw, w0 + 8 * dw, 4000);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(amplitude(SpectralProfile::from_wavelength(810e-9, 0.0), w0), DomainError);
}

TEST_CASE("pump density") {
  const auto pump = SpectralProfile::from_wavelength(405e-9, 0.67e-9);
  const double wp = pump.center_frequency();
  const double dwp = pump.gaussian_width();
  CHECK(pump_density(pump, wp) ==
        doctest::Approx(1.0 / (dwp * std::sqrt(2.0 * std::numbers::pi))).epsilon(1e-14));
  const double total =
      trapezoid([&](double w) { return pump_density(pump, w); }, wp - 8 * dwp, wp + 8 * dwp, 4000);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(pump_density(SpectralProfile::from_wavelength(405e-9, 0.0), wp), DomainError);
}

TEST_CASE("effective bandwidth") {
  const double dw = 8.6e12;
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(effective_bandwidth(inf, dw).value == doctest::Approx(dw).epsilon(1e-15));
  CHECK(effective_bandwidth(dw, dw).value == doctest::Approx(dw / std::numbers::sqrt2).epsilon(1e-15));
  CHECK(effective_bandwidth(0.0, dw).value == 0.0);
  CHECK_THROWS_AS(effective_bandwidth(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(effective_bandwidth(dw, 0.0), DomainError);
  CHECK_THROWS_AS(effective_bandwidth(-1.0, dw), DomainError);
  // Never wider than either contribution.
  for (double dwp : {1e11, 1e12, 1e13, 1e14}) {
    const double dwe = effective_bandwidth(dwp, dw).value;
    CHECK(dwe < dw);
    CHECK(dwe < dwp);
  }
}

}
