#pragma once

// Seeded Monte Carlo over stochastic runs and the amplitude / parameter-grid
// sweeps built on it. Results are bit-identical for any worker count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stirap/integrator.hpp"

namespace stirap {

struct EnsembleConfig {
  std::size_t n_runs = 200;
  std::uint64_t master_seed = 0;
  RunConfig run;
  std::optional<SimGrid> grid; // default_grid(run) when empty
  unsigned workers = 0;        // 0: hardware concurrency
};

struct EnsembleResult {
  double mean_fidelity = 0.0;
  double ci_low = 0.0;  // 1% quantile of the samples
  double ci_high = 0.0; // 99% quantile
  double mean_total_population = 0.0;
  std::vector<double> samples;
  std::vector<double> total_samples;
};

struct SweepMetadata {
  PulseFamily family = PulseFamily::Gaussian;
  bool cd_enabled = true;
  double gamma = 0.0;
  double tau = 0.0;
  bool noise_enabled = false;
  double sigma = 0.0;
  double tau_c = 0.0;
  std::size_t n_runs = 0;
  std::uint64_t master_seed = 0;
};

struct SweepResult {
  std::vector<double> omega0_values;
  std::vector<EnsembleResult> points;
  SweepMetadata meta;
};

// One figure panel: fixed (cd mode, gamma, delay), one sweep per tau_c column.
struct SweepPanel {
  bool cd_enabled = true;
  double gamma = 0.0;
  double tau = 0.0;
  std::vector<std::optional<double>> tau_cs; // nullopt: noise off
  std::vector<SweepResult> columns;
};

/// Linearly interpolated order statistic at rank q (n - 1). Throws DomainError
/// on empty input or q outside [0, 1].
double empirical_quantile(std::span<const double> samples, double q);

/// Neumaier-compensated sum in the given order.
double compensated_sum(std::span<const double> values);

/// n_runs runs with seeds derive_seed(master_seed, run_index). Throws
/// EnsembleError listing every diverged run.
EnsembleResult run_ensemble(const EnsembleConfig& cfg);

/// One ensemble per omega0 value; point i uses master seed derive_seed(base.master_seed, i).
/// Grids are recomputed per point unless base.grid is set.
SweepResult sweep_amplitude(const EnsembleConfig& base, std::span<const double> omega0_values);

/// Cartesian product over gammas x delays, each panel holding one sweep per
/// tau_c (an empty tau_c list means a single noise-free column). The cd mode,
/// family and sigma come from base.run. SinCos ignores the delay list.
std::vector<SweepPanel> sweep_matrix(const EnsembleConfig& base,
                                     std::span<const double> omega0_values,
                                     std::span<const double> gammas,
                                     std::span<const std::optional<double>> tau_cs,
                                     std::span<const double> delays);

/// 0, 1, ..., 60 (61 points).
std::vector<double> default_omega0_grid();

}  // namespace stirap
