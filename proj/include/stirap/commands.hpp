#pragma once

// The experiments behind each CLI subcommand. Every command writes its data
// files plus a manifest.txt that re-creates them when fed back via --config.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stirap/experiment.hpp"

namespace stirap {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr const char* kOutDirEnv = "STIRAP_OUT_DIR";

struct RuntimeOptions {
  std::filesystem::path out_dir; // already resolved, see resolve_out_dir
  unsigned workers = 0;
  bool plots = true;             // ANDed with the spec's `plots`
};

struct OutputBundle {
  std::filesystem::path out_dir;
  std::vector<std::filesystem::path> data_files;
  std::vector<std::filesystem::path> plot_files;
  std::filesystem::path manifest;
};

/// --out flag, then the spec's out_dir, then $STIRAP_OUT_DIR, then "stirap-out".
std::filesystem::path resolve_out_dir(const ExperimentSpec& spec,
                                      const std::optional<std::filesystem::path>& flag);

/// Single trajectory (stochastic when tau_c is set) with its full time series.
OutputBundle cmd_run(const ExperimentSpec& spec, const RuntimeOptions& opts);

/// Fidelity-vs-omega0 panels over cd_modes x delays x gammas, one column block per tau_c.
OutputBundle cmd_sweep(const ExperimentSpec& spec, const RuntimeOptions& opts);

/// Histogram and autocorrelation of generated OU noise against the analytic forms.
OutputBundle cmd_noise_validate(const ExperimentSpec& spec, const RuntimeOptions& opts);

/// Lorentzian noise spectra per correlation time and sech transforms per delay.
OutputBundle cmd_spectrum(const ExperimentSpec& spec, const RuntimeOptions& opts);

struct AreaReport {
  PulseFamily family = PulseFamily::Gaussian;
  TimeWindow window;
  double pump = 0.0;
  double stokes = 0.0;
  double counterdiabatic = 0.0;
};

AreaReport cmd_area(const ExperimentSpec& spec);
std::string format_area_report(const AreaReport& report);

/// Simulation grid for `run`: spec.dt if given, otherwise default_grid. Applies
/// the spec's step-rule policy when noise is on.
SimGrid grid_for(const ExperimentSpec& spec, const RunConfig& run);

}  // namespace stirap
