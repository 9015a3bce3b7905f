#include "stirap/pulses.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "stirap/errors.hpp"

namespace stirap {

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace

std::string_view to_string(PulseFamily family) {
  switch (family) {
    case PulseFamily::Gaussian:
      return "gaussian";
    case PulseFamily::SinCos:
      return "sincos";
  }
  return "unknown";
}

std::optional<PulseFamily> parse_family(std::string_view text) {
  if (text == "gaussian") return PulseFamily::Gaussian;
  if (text == "sincos" || text == "sin-cos") return PulseFamily::SinCos;
  return std::nullopt;
}

void ProtocolConfig::validate() const {
  if (!(omega0 >= 0.0)) throw DomainError("omega0 must be non-negative");
  if (!(width_T > 0.0)) throw DomainError("pulse width must be positive");
  if (family == PulseFamily::Gaussian && !(tau > 0.0)) {
    throw DomainError("Gaussian delay parameter tau must be positive");
  }
}

PulseSample sample_gaussian(double t, const ProtocolConfig& cfg) {
  const double w = cfg.width_T;
  const double xp = (t - cfg.tau) / w;
  const double xs = (t + cfg.tau) / w;
  const double rate = 4.0 * cfg.tau / (w * w);
  return {cfg.omega0 * std::exp(-xp * xp), cfg.omega0 * std::exp(-xs * xs),
          rate * sech(rate * t)};
}

PulseSample sample_sincos(double t, const ProtocolConfig& cfg) {
  const double w = cfg.width_T;
  if (t < 0.0 || t > w) {
    throw DomainError("sin-cos pulses are defined on [0, T] only, got t = " + std::to_string(t));
  }
  const double phase = std::numbers::pi * t / (2.0 * w);
  return {cfg.omega0 * std::sin(phase), cfg.omega0 * std::cos(phase), std::numbers::pi / w};
}

PulseSample sample_pulses(double t, const ProtocolConfig& cfg) {
  return cfg.family == PulseFamily::Gaussian ? sample_gaussian(t, cfg) : sample_sincos(t, cfg);
}

double theta_gaussian(double t, double tau, double width_T) {
  if (!(tau > 0.0)) throw DomainError("tau must be positive");
  return std::atan(std::exp(4.0 * tau * t / (width_T * width_T)));
}

double theta_sincos(double t, double width_T) { return std::numbers::pi * t / (2.0 * width_T); }

TimeWindow simulation_window(const ProtocolConfig& cfg) {
  if (cfg.family == PulseFamily::Gaussian) return {-3.0 * cfg.width_T, 3.0 * cfg.width_T};
  return {0.0, cfg.width_T};
}

double peak_cd_amplitude(const ProtocolConfig& cfg) {
  if (cfg.family == PulseFamily::Gaussian) return 4.0 * cfg.tau / (cfg.width_T * cfg.width_T);
  return std::numbers::pi / cfg.width_T;
}

double pulse_area(const std::function<double(double)>& pulse, TimeWindow window, double dt) {
  if (!(dt > 0.0)) throw DomainError("quadrature step must be positive");
  if (!(window.end > window.start)) throw DomainError("empty integration window");
  auto panels = static_cast<long>(std::ceil(window.span() / dt));
  if (panels % 2 != 0) ++panels;
  const double h = window.span() / static_cast<double>(panels);

  double odd = 0.0;
  double even = 0.0;
  for (long k = 1; k < panels; ++k) {
    const double value = pulse(window.start + static_cast<double>(k) * h);
    (k % 2 != 0 ? odd : even) += value;
  }
  return h / 3.0 * (pulse(window.start) + 4.0 * odd + 2.0 * even + pulse(window.end));
}

double cd_fourier_analytic(double omega, double tau, double width_T) {
  if (!(tau > 0.0)) throw DomainError("tau must be positive");
  return std::numbers::pi *
         sech(std::numbers::pi * width_T * width_T * omega / (8.0 * tau));
}

}  // namespace stirap
