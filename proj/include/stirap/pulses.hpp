#pragma once

// Pump, Stokes and counterdiabatic drives for the Gaussian and sin-cos
// protocols, plus area and spectral helpers. Times in units of T, rates in 1/T.

#include <functional>
#include <optional>
#include <string_view>

namespace stirap {

enum class PulseFamily { Gaussian, SinCos };

std::string_view to_string(PulseFamily family);
std::optional<PulseFamily> parse_family(std::string_view text);

struct ProtocolConfig {
  PulseFamily family = PulseFamily::Gaussian;
  double omega0 = 5.0;    // peak pump/Stokes amplitude
  double tau = 0.75;      // half-delay; ignored by SinCos
  double width_T = 1.0;   // pulse width
  bool cd_enabled = true; // adds the counterdiabatic drive (SA-STIRAP)

  // Throws DomainError on omega0 < 0, width_T <= 0 or (Gaussian) tau <= 0.
  void validate() const;
};

struct PulseSample {
  double omega_p = 0.0;
  double omega_s = 0.0;
  double omega_d = 0.0;
};

struct TimeWindow {
  double start = 0.0;
  double end = 0.0;

  double span() const { return end - start; }
};

PulseSample sample_gaussian(double t, const ProtocolConfig& cfg);

/// Throws DomainError for t outside [0, width_T].
PulseSample sample_sincos(double t, const ProtocolConfig& cfg);

/// Dispatches on cfg.family. The counterdiabatic entry is always filled in;
/// callers decide whether to apply it.
PulseSample sample_pulses(double t, const ProtocolConfig& cfg);

/// arctan(exp(4 tau t / T^2)), the closed-form mixing angle of the Gaussian pair.
double theta_gaussian(double t, double tau, double width_T);

/// pi t / (2T).
double theta_sincos(double t, double width_T);

/// [-3T, 3T] for Gaussian pulses, [0, T] for sin-cos.
TimeWindow simulation_window(const ProtocolConfig& cfg);

/// Largest counterdiabatic amplitude over the simulation window.
double peak_cd_amplitude(const ProtocolConfig& cfg);

/// Composite Simpson integral of `pulse` over `window`; the step is shrunk
/// so that an even number of panels tiles the window exactly.
double pulse_area(const std::function<double(double)>& pulse, TimeWindow window,
                  double dt = 1e-3);

/// Fourier transform of the sech counterdiabatic pulse, pi * sech(pi T^2 omega / (8 tau)).
double cd_fourier_analytic(double omega, double tau, double width_T);

}  // namespace stirap
