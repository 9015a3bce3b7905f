#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "stirap/errors.hpp"
#include "stirap/pulses.hpp"

using namespace stirap;
using std::numbers::pi;

namespace {

ProtocolConfig gaussian(double omega0 = 5.0, double tau = 0.75) {
  ProtocolConfig cfg;
  cfg.family = PulseFamily::Gaussian;
  cfg.omega0 = omega0;
  cfg.tau = tau;
  return cfg;
}

ProtocolConfig sincos(double omega0 = 5.0) {
  ProtocolConfig cfg;
  cfg.family = PulseFamily::SinCos;
  cfg.omega0 = omega0;
  return cfg;
}

}  // namespace

TEST_CASE("Gaussian samples") {
  const ProtocolConfig cfg = gaussian();
  CHECK(sample_gaussian(cfg.tau, cfg).omega_p == doctest::Approx(cfg.omega0));
  const PulseSample mid = sample_gaussian(0.0, cfg);
  CHECK(mid.omega_p == mid.omega_s);
  CHECK(mid.omega_d == doctest::Approx(4.0 * cfg.tau));
  // sech(9), frozen from an arbitrary-precision evaluation.
  for (double t : {-3.0, 3.0}) {
    CHECK(sample_gaussian(t, cfg).omega_d / mid.omega_d ==
          doctest::Approx(2.46819604414301523e-4).epsilon(1e-12));
  }
}

TEST_CASE("Gaussian pump and Stokes mirror each other") {
  const ProtocolConfig cfg = gaussian(7.0, 0.4);
  for (int i = 0; i <= 120; ++i) {
    const double t = -3.0 + 6.0 * i / 120.0;
    CHECK(sample_gaussian(t, cfg).omega_p == doctest::Approx(sample_gaussian(-t, cfg).omega_s).epsilon(1e-14));
    CHECK(sample_gaussian(t, cfg).omega_d > 0.0);
  }
}

TEST_CASE("sin-cos samples") {
  const ProtocolConfig cfg = sincos(4.0);
  PulseSample s = sample_sincos(0.0, cfg);
  CHECK(s.omega_p == 0.0);
  CHECK(s.omega_s == 4.0);
  CHECK(s.omega_d == doctest::Approx(pi));
  s = sample_sincos(1.0, cfg);
  CHECK(s.omega_p == doctest::Approx(4.0));
  CHECK(std::abs(s.omega_s) < 1e-14);
  s = sample_sincos(0.5, cfg);
  CHECK(s.omega_p == doctest::Approx(4.0 / std::sqrt(2.0)));
  CHECK(s.omega_s == doctest::Approx(4.0 / std::sqrt(2.0)));
  for (int i = 0; i <= 100; ++i) {
    const PulseSample x = sample_sincos(i / 100.0, cfg);
    CHECK(x.omega_p * x.omega_p + x.omega_s * x.omega_s == doctest::Approx(16.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(sample_sincos(-1e-9, cfg), DomainError);
  CHECK_THROWS_AS(sample_sincos(1.0 + 1e-9, cfg), DomainError);
}

TEST_CASE("protocol validation") {
  CHECK_THROWS_AS(gaussian(-1.0).validate(), DomainError);
  CHECK_THROWS_AS(gaussian(1.0, 0.0).validate(), DomainError);
  ProtocolConfig s = sincos();
  s.tau = -1.0;  // ignored by sin-cos
  CHECK_NOTHROW(s.validate());
  s.width_T = 0.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("Gaussian mixing angle") {
  CHECK(theta_gaussian(0.0, 0.5, 1.0) == doctest::Approx(pi / 4));
  CHECK(theta_gaussian(-50.0, 0.5, 1.0) < 1e-20);
  CHECK(theta_gaussian(50.0, 0.5, 1.0) == doctest::Approx(pi / 2));
  const double h = 1e-5;
  const double tau = 0.75;
  const double fd = (theta_gaussian(h, tau, 1.0) - theta_gaussian(-h, tau, 1.0)) / (2 * h);
  CHECK(2.0 * fd == doctest::Approx(4.0 * tau).epsilon(1e-9));

  // Counterdiabatic drive equals twice the angle's derivative along the window.
  for (double tau_i : {0.25, 1.0 / 3.0, 0.5, 0.75}) {
    const ProtocolConfig cfg = gaussian(5.0, tau_i);
    for (int i = 0; i < 100; ++i) {
      const double t = -3.0 + 6.0 * (i + 0.5) / 100.0;
      const double d = (theta_gaussian(t + h, tau_i, 1.0) - theta_gaussian(t - h, tau_i, 1.0)) / (2 * h);
      CHECK(2.0 * d == doctest::Approx(sample_gaussian(t, cfg).omega_d).epsilon(1e-6));
    }
  }
}

TEST_CASE("pulse areas") {
  const ProtocolConfig cfg = gaussian();
  const TimeWindow w = simulation_window(cfg);
  CHECK(w.start == -3.0);
  CHECK(w.end == 3.0);
  const double pump = pulse_area([&](double t) { return sample_gaussian(t, cfg).omega_p; }, w);
  CHECK(pump == doctest::Approx(8.8558).epsilon(0.001 / 8.8558));
  // Closed form 5 sqrt(pi)/2 (erf(3.75) + erf(2.25)).
  CHECK(std::abs(pump - 8.85578725646967954) < 1e-6);

  const double cd = pulse_area([&](double t) { return sample_gaussian(t, cfg).omega_d; }, w);
  CHECK(std::abs(cd - 2.0 * oracle::gudermannian(9.0)) < 1e-9);
  CHECK(pi - cd <= 5e-4);
  CHECK(pi - cd > 0.0);

  const ProtocolConfig sc = sincos();
  const double sc_area =
      pulse_area([&](double t) { return sample_sincos(t, sc).omega_d; }, simulation_window(sc));
  CHECK(sc_area == doctest::Approx(pi).epsilon(1e-14));

  // The sech area approaches pi as the delay grows and is truncated at small delays.
  double previous = 0.0;
  for (double tau : {0.25, 1.0 / 3.0, 0.5, 0.75, 1.0}) {
    const ProtocolConfig g = gaussian(5.0, tau);
    const double a = pulse_area([&](double t) { return sample_gaussian(t, g).omega_d; }, w);
    CHECK(a == doctest::Approx(2.0 * oracle::gudermannian(12.0 * tau)).epsilon(1e-9));
    CHECK(a > previous);
    previous = a;
  }

  CHECK_THROWS_AS(pulse_area([](double) { return 1.0; }, {0.0, 1.0}, 0.0), DomainError);
  CHECK_THROWS_AS(pulse_area([](double) { return 1.0; }, {1.0, 0.0}), DomainError);
}

TEST_CASE("sech Fourier transform") {
  CHECK(cd_fourier_analytic(0.0, 0.5, 1.0) == doctest::Approx(pi));
  const double tau = 0.75;
  // pi sech(1), frozen from an arbitrary-precision evaluation.
  CHECK(cd_fourier_analytic(8.0 * tau / pi, tau, 1.0) == doctest::Approx(2.03592254526993179).epsilon(1e-13));

  double previous = 0.0;
  for (double t : {0.25, 1.0 / 3.0, 0.5, 0.75}) {
    const double v = cd_fourier_analytic(3.0, t, 1.0);
    CHECK(v > previous);
    previous = v;
  }

  // Numerical transform of the sampled, truncated pulse over |omega| <= 8 tau.
  // For tau >= T/2 the window captures the pulse and 2% holds outright; for
  // shorter delays the error is bounded by the sech area outside the window.
  for (double t : {0.25, 1.0 / 3.0, 0.5, 0.75}) {
    const ProtocolConfig cfg = gaussian(5.0, t);
    const double tail = pi - 2.0 * oracle::gudermannian(12.0 * t);
    for (int i = 0; i <= 40; ++i) {
      const double w = 8.0 * t * i / 40.0;
      const double numeric = oracle::fourier_magnitude(
          [&](double s) { return sample_gaussian(s, cfg).omega_d; }, -3.0, 3.0, 1e-3, w);
      const double analytic = cd_fourier_analytic(w, t, 1.0);
      INFO("tau = " << t << ", omega = " << w);
      if (t >= 0.5) {
        CHECK(std::abs(numeric - analytic) <= 0.02 * analytic);
      } else {
        CHECK(std::abs(numeric - analytic) <= tail + 1e-6);
      }
    }
  }
}
