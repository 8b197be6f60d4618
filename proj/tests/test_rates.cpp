#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "common.hpp"
#include "debroglie/errors.hpp"
#include "debroglie/rates.hpp"
#include "debroglie/units.hpp"

using namespace debroglie;

namespace {

const double w0 = fixtures::photon().center_frequency();
const double dw = fixtures::photon().gaussian_width();

}  // namespace

TEST_SUITE("rates") {

TEST_CASE("hom dip") {
  CHECK(hom_rate(dw, 0.0) == 0.0);
  CHECK(hom_rate(dw, std::numbers::sqrt2 / dw) == doctest::Approx(0.63212055882855767).epsilon(1e-15));
  CHECK(hom_rate(dw, 1e-9) == 1.0);
  double prev = 0.0;
  for (int i = 1; i < 50; ++i) {
    const double r = hom_rate(dw, i * 0.1 / dw);
    CHECK(r > prev);
    CHECK(r <= 1.0);
    CHECK(hom_rate(dw, -i * 0.1 / dw) == r);
    prev = r;
  }
  CHECK_THROWS_AS(hom_rate(0.0, 1.0), DomainError);
}

TEST_CASE("spdc rate special points") {
  const double dwe = 0.8 * dw;
  CHECK(spdc_debroglie_rate(w0, dw, dwe, 0.0, 0.0) == 0.0);
  CHECK(spdc_debroglie_rate(w0, dw, dwe, 0.0, 1e-9) == doctest::Approx(1.0).epsilon(1e-15));
  const double far = 100.0 / dw;
  CHECK(spdc_debroglie_rate(w0, dw, dwe, far, far) == doctest::Approx(1.25).epsilon(1e-12));
  for (double tau2 : {0.1 / dw, 0.77 / dw, 2.3 / dw}) {
    const double simplified = 1.0 - std::cos(2 * w0 * tau2) * std::exp(-tau2 * tau2 * dwe * dwe / 2);
    CHECK(spdc_debroglie_rate(w0, dw, dwe, 0.0, tau2) == doctest::Approx(simplified).epsilon(1e-13));
  }
  CHECK_THROWS_AS(spdc_debroglie_rate(w0, dw, -1.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(spdc_debroglie_rate(w0, dw, dwe, 0.0, 0.0, 1.5), DomainError);
}

TEST_CASE("parity in both delays") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  const double dwe = 0.7 * dw;
  for (int i = 0; i < 200; ++i) {
    const double t1 = u(rng) / dw;
    const double t2 = u(rng) / dw;
    const double r = spdc_debroglie_rate(w0, dw, dwe, t1, t2);
    CHECK(spdc_debroglie_rate(w0, dw, dwe, t1, -t2) == doctest::Approx(r).epsilon(1e-12));
    CHECK(spdc_debroglie_rate(w0, dw, dwe, -t1, t2) == doctest::Approx(r).epsilon(1e-12));
    CHECK(r >= -1e-15);
    CHECK(r <= 2.5);
  }
}

TEST_CASE("separable equals spdc with dwe = dw") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double t1 = u(rng) / dw;
    const double t2 = u(rng) / dw;
    CHECK(separable_rate(w0, dw, t1, t2) == spdc_debroglie_rate(w0, dw, dw, t1, t2));
  }
  CHECK(separable_rate(w0, dw, 0.0, 0.0) == 0.0);
  CHECK(separable_rate(w0, dw, 0.0, 1e-9) == doctest::Approx(1.0));
}

TEST_CASE("distinguishable rate") {
  CHECK(distinguishable_rate(w0, dw, 0.0) == 0.0);
  CHECK(distinguishable_rate(w0, dw, 1e-9) == doctest::Approx(1.0));
  const double t1 = 20.0 / dw;
  for (double t2 : {0.0, 0.3 / dw, 1.1 / dw, 3.0 / dw}) {
    CHECK(std::abs(distinguishable_rate(w0, dw, t2) - separable_rate(w0, dw, t1, t2)) < 1e-6);
  }
  // Values above 1 only where the fringe is negative, inside the packet.
  const double tc = std::numbers::sqrt2 / dw;
  for (int i = -2000; i <= 2000; ++i) {
    const double t2 = i * 3.0 * tc / 2000.0;
    const double r = distinguishable_rate(w0, dw, t2);
    CHECK(r >= -1e-15);
    CHECK(r < 1.5);
    if (r > 1.0 + 1e-12) {
      CHECK(std::cos(2 * w0 * t2) < 0.0);
      CHECK(std::abs(t2) < 2.5 * tc);
    }
  }
}

TEST_CASE("unit fringe visibility for any tau1") {
  const double dwe = 0.85 * dw;
  const double half_period = std::numbers::pi / w0;
  for (double t1 : {0.0, 5.0 / dw, 50.0 / dw}) {
    double hi = -1.0;
    double lo = 10.0;
    for (int i = -4000; i <= 4000; ++i) {
      const double r = spdc_debroglie_rate(w0, dw, dwe, t1, i * half_period / 4000.0);
      hi = std::max(hi, r);
      lo = std::min(lo, r);
    }
    CHECK((hi - lo) / (hi + lo) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("dispatch, singles and fringe period") {
  const auto s = fixtures::spdc();
  const DelayConfig d{0.3 / dw, 0.7 / dw};
  CHECK(coincidence_rate(s, d) ==
        spdc_debroglie_rate(w0, dw, s.fringe_bandwidth(), d.tau1, d.tau2));
  CHECK(coincidence_rate(fixtures::separable(), d) == separable_rate(w0, dw, d.tau1, d.tau2));
  CHECK(coincidence_rate(fixtures::distinguishable(), d) == distinguishable_rate(w0, dw, d.tau2));
  CHECK(coincidence_rate(s, d, 0.98) != coincidence_rate(s, d));
  for (const auto& src : {fixtures::spdc(), fixtures::separable(), fixtures::distinguishable()}) {
    CHECK(singles_rate(src, {0.0, 0.0}) == 0.5);
    CHECK(singles_rate(src, d) == 0.5);
  }
  CHECK(fringe_period_length(units::angular_frequency(810e-9)) == doctest::Approx(405e-9).epsilon(1e-14));
  CHECK(fringe_period_length(units::angular_frequency(1550e-9)) == doctest::Approx(775e-9).epsilon(1e-14));
  CHECK_THROWS_AS(fringe_period_length(0.0), DomainError);
}

}
