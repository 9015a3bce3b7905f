#pragma once

// Line-oriented `key = value` experiment description shared by every CLI
// subcommand, and its canonical rendering (used for manifests).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stirap/ensemble.hpp"
#include "stirap/noise.hpp"
#include "stirap/pulses.hpp"

namespace stirap {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  // 0 when the problem is not tied to a single line (e.g. a missing key).
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct ExperimentSpec {
  PulseFamily family = PulseFamily::Gaussian;
  double omega0 = 5.0;
  double tau_over_T = 0.75;
  bool cd = true;
  double gamma = 0.0;
  double sigma = 5.0;
  std::optional<double> tau_c; // noise off when empty
  std::size_t n_runs = 200;
  std::uint64_t seed = 0;
  std::optional<double> dt;    // automatic step when empty
  StepRulePolicy step_rule = StepRulePolicy::Warn;
  std::string time_unit = "T"; // axis label only
  std::string out_dir;         // empty: --out flag, environment or default
  bool plots = true;

  // sweep
  std::vector<double> omega0_values = default_omega0_grid();
  std::vector<double> gammas{0.0, 1.0, 4.0, 10.0};
  std::vector<std::optional<double>> tau_cs{std::nullopt, 0.008, 0.08, 0.8};
  std::vector<double> delays{0.25, 1.0 / 3.0, 0.5, 0.75};
  std::vector<bool> cd_modes{false, true};

  // noise-validate
  std::size_t n_samples = 1'000'000;
  std::size_t iterations = 10;
  std::size_t hist_bins = 101;
  double max_lag_over_tau_c = 5.0;

  // spectrum
  std::vector<double> spectrum_tau_cs{0.008, 0.08, 0.8};
  double omega_max = 40.0;
  std::size_t omega_points = 801;

  bool operator==(const ExperimentSpec&) const = default;

  /// RunConfig for a single trajectory of this experiment.
  RunConfig run_config() const;
};

/// Parses `key = value` lines ('#' starts a comment). Only `family` is
/// required. Unknown or repeated keys, unparsable numbers and out-of-range
/// values throw ParseError carrying the line number. Keys that the chosen
/// family ignores are accepted and reported through `warnings`.
ExperimentSpec parse_spec(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Canonical text form; parse_spec(render_spec(s)) == s.
std::string render_spec(const ExperimentSpec& spec);

/// Accepts decimal numbers and simple fractions such as "1/3".
std::optional<double> parse_number(std::string_view text);

}  // namespace stirap
