#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "common.hpp"
#include "debroglie/errors.hpp"
#include "debroglie/sources.hpp"

using namespace debroglie;

TEST_SUITE("sources") {

TEST_CASE("source construction") {
  const auto s = fixtures::spdc();
  CHECK(s.kind() == SourceKind::spdc);
  CHECK(s.pump().has_value());
  CHECK(s.two_photon_frequency() == doctest::Approx(s.pump()->center_frequency()));
  // Pump must sit at half the photon wavelength.
  CHECK_THROWS_AS(SourceModel::spdc(SpectralProfile::from_wavelength(420e-9, 1e-9), fixtures::photon()),
                  DomainError);
  CHECK_NOTHROW(SourceModel::spdc(SpectralProfile::from_wavelength(407e-9, 1e-9), fixtures::photon()));
  CHECK_THROWS_AS(SourceModel::separable(SpectralProfile::from_wavelength(810e-9, 0.0)), DomainError);

  const auto d = fixtures::distinguishable();
  CHECK(d.polarization_a() == Polarization::H);
  CHECK(d.polarization_b() == Polarization::V);
  CHECK(fixtures::separable().polarization_b() == Polarization::H);
  CHECK(fixtures::separable().two_photon_frequency() ==
        doctest::Approx(2.0 * fixtures::photon().center_frequency()));

  CHECK(parse_source_kind("separable") == SourceKind::separable);
  CHECK(to_string(SourceKind::distinguishable) == "distinguishable");
  CHECK_THROWS_AS(parse_source_kind("laser"), DomainError);
}

TEST_CASE("fringe bandwidth") {
  const auto s = fixtures::spdc();
  const double dw = s.photon().gaussian_width();
  const double dwp = s.pump()->gaussian_width();
  CHECK(s.fringe_bandwidth() == doctest::Approx(1.0 / std::sqrt(1.0 / (dwp * dwp) + 1.0 / (dw * dw))));
  CHECK(fixtures::separable().fringe_bandwidth() == dw);
  CHECK(std::isinf(fixtures::spdc(0.0).coherence_time()));
}

TEST_CASE("single photon kernel") {
  const auto p = fixtures::photon();
  const auto g = single_photon_kernel(p);
  const double dw = p.gaussian_width();
  const double tc = std::numbers::sqrt2 / dw;

  CHECK(std::abs(g(0.0)) == doctest::Approx(g.envelope(0.0)));
  for (double t : {-2 * tc, -0.3 * tc, 0.1 * tc, tc}) CHECK(std::abs(g(t)) < std::abs(g(0.0)));
  CHECK(std::abs(g(tc)) / std::abs(g(0.0)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  // int |g|^2 dt = 1
  const int n = 20000;
  const double lo = -10 * tc;
  const double h = 20 * tc / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    sum += w * std::norm(g(lo + i * h));
  }
  CHECK(sum * h == doctest::Approx(1.0).epsilon(1e-6));

  // Carrier at w0 and shift bookkeeping.
  const double t = 0.37 * tc;
  CHECK(std::arg(g(t) / g.envelope(t)) ==
        doctest::Approx(std::remainder(-p.center_frequency() * t, 2 * std::numbers::pi)).epsilon(1e-9));
  CHECK(std::abs(g(t, t) - g(0.0)) < 1e-9 * std::abs(g(0.0)));
}

TEST_CASE("spdc pair kernel") {
  const auto filter = fixtures::photon();
  const double w0 = filter.center_frequency();
  const double dw = filter.gaussian_width();
  const double tc = std::numbers::sqrt2 / dw;
  const auto a = spdc_pair_kernel(filter, 2.0 * w0);

  SUBCASE("exchange symmetric for a centered pump") {
    for (auto [ts, ti] : {std::pair{0.3 * tc, -0.8 * tc}, {1.7 * tc, 0.2 * tc}}) {
      CHECK(std::abs(a(ts, ti) - a(ti, ts)) < 1e-12 * std::abs(a(ts, ti)));
    }
  }
  SUBCASE("common time shift is a global phase exp(-i wp T)") {
    const double ts = 0.4 * tc;
    const double ti = -0.5 * tc;
    const double shift = 2.345 * tc;
    const auto ratio = a(ts + shift, ti + shift) / a(ts, ti);
    CHECK(std::abs(ratio) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::arg(ratio) ==
          doctest::Approx(std::remainder(-2.0 * w0 * shift, 2 * std::numbers::pi)).epsilon(1e-6));
  }
  SUBCASE("quadrature matches the Gaussian closed form") {
    const auto off = spdc_pair_kernel(filter, 2.0 * w0 + 0.6 * dw);
    for (auto [ts, ti] : {std::pair{0.0, 0.0}, {0.5 * tc, -0.2 * tc}, {1.1 * tc, 0.9 * tc}}) {
      const auto exact = off(ts, ti);
      const auto numeric = off.quadrature(ts, ti);
      CHECK(std::abs(numeric - exact) <= 1e-6 * std::abs(exact));
    }
  }
  SUBCASE("envelope depends on the time difference only and not on the pump") {
    const auto b = spdc_pair_kernel(filter, 2.0 * w0 - 1.3 * dw);
    CHECK(a.envelope(0.2 * tc, 0.9 * tc) == b.envelope(0.2 * tc, 0.9 * tc));
    CHECK(a.envelope(0.2 * tc, 0.9 * tc) == doctest::Approx(a.envelope(1.2 * tc, 1.9 * tc)));
    CHECK(b.spectral_weight() == doctest::Approx(std::exp(-0.65 * 0.65)));
    CHECK(a.spectral_weight() == 1.0);
  }
  CHECK_THROWS_AS(spdc_pair_kernel(SpectralProfile::from_wavelength(810e-9, 0.0), 2 * w0), DomainError);
}

}
