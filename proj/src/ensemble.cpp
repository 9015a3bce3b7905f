#include "stirap/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "stirap/errors.hpp"

namespace stirap {

namespace {

unsigned resolve_workers(unsigned requested, std::size_t jobs) {
  unsigned w = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(jobs, 1)));
}

}  // namespace

double empirical_quantile(std::span<const double> samples, double q) {
  if (samples.empty()) throw DomainError("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double rank = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double c = 0.0;
  for (double v : values) {
    const double t = sum + v;
    c += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + c;
}

EnsembleResult run_ensemble(const EnsembleConfig& cfg) {
  if (cfg.n_runs == 0) throw DomainError("ensemble needs at least one run");
  cfg.run.validate();
  const SimGrid grid = cfg.grid ? *cfg.grid : default_grid(cfg.run);

  EnsembleResult out;
  out.samples.assign(cfg.n_runs, 0.0);
  out.total_samples.assign(cfg.n_runs, 0.0);

  if (!cfg.run.noise_enabled) {
    // Without noise every run is the same deterministic trajectory.
    RunConfig run = cfg.run;
    run.record_trajectory = false;
    RunResult r;
    try {
      r = simulate_run(run, grid);
    } catch (const IntegrationDiverged& e) {
      std::vector<std::size_t> all(cfg.n_runs);
      for (std::size_t i = 0; i < cfg.n_runs; ++i) all[i] = i;
      throw EnsembleError(std::move(all), std::string("all runs diverged: ") + e.what());
    }
    std::fill(out.samples.begin(), out.samples.end(), r.fidelity);
    std::fill(out.total_samples.begin(), out.total_samples.end(), r.total_population);
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::vector<std::size_t> failed;
    std::exception_ptr unexpected;

    const auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < cfg.n_runs; i = next.fetch_add(1)) {
        RunConfig run = cfg.run;
        run.seed = derive_seed(cfg.master_seed, i);
        run.record_trajectory = false;
        try {
          const RunResult r = simulate_run(run, grid);
          out.samples[i] = r.fidelity;
          out.total_samples[i] = r.total_population;
        } catch (const IntegrationDiverged&) {
          std::lock_guard lock(failure_mutex);
          failed.push_back(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!unexpected) unexpected = std::current_exception();
        }
      }
    };

    const unsigned n_workers = resolve_workers(cfg.workers, cfg.n_runs);
    if (n_workers == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(n_workers);
      for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    }
    if (unexpected) std::rethrow_exception(unexpected);
    if (!failed.empty()) {
      std::sort(failed.begin(), failed.end());
      std::string list;
      for (std::size_t i : failed) list += (list.empty() ? "" : ",") + std::to_string(i);
      throw EnsembleError(std::move(failed), "diverged runs: " + list);
    }
  }

  const double n = static_cast<double>(cfg.n_runs);
  out.mean_fidelity = compensated_sum(out.samples) / n;
  out.mean_total_population = compensated_sum(out.total_samples) / n;
  out.ci_low = empirical_quantile(out.samples, 0.01);
  out.ci_high = empirical_quantile(out.samples, 0.99);
  // Guard the ordering against the last-ulp disagreement between the mean and
  // interpolated quantiles of identical samples.
  out.ci_low = std::min(out.ci_low, out.mean_fidelity);
  out.ci_high = std::max(out.ci_high, out.mean_fidelity);
  return out;
}

SweepResult sweep_amplitude(const EnsembleConfig& base, std::span<const double> omega0_values) {
  if (omega0_values.empty()) throw DomainError("amplitude sweep needs at least one value");
  SweepResult sweep;
  sweep.omega0_values.assign(omega0_values.begin(), omega0_values.end());
  sweep.meta = {base.run.protocol.family, base.run.protocol.cd_enabled, base.run.gamma,
                base.run.protocol.tau,    base.run.noise_enabled,       base.run.noise.sigma,
                base.run.noise.tau_c,     base.n_runs,                  base.master_seed};
  sweep.points.reserve(omega0_values.size());
  for (std::size_t i = 0; i < omega0_values.size(); ++i) {
    if (!(omega0_values[i] >= 0.0)) throw DomainError("omega0 values must be non-negative");
    EnsembleConfig point = base;
    point.run.protocol.omega0 = omega0_values[i];
    point.master_seed = derive_seed(base.master_seed, i);
    sweep.points.push_back(run_ensemble(point));
  }
  return sweep;
}

std::vector<SweepPanel> sweep_matrix(const EnsembleConfig& base,
                                     std::span<const double> omega0_values,
                                     std::span<const double> gammas,
                                     std::span<const std::optional<double>> tau_cs,
                                     std::span<const double> delays) {
  if (gammas.empty()) throw DomainError("sweep matrix needs at least one gamma");
  std::vector<std::optional<double>> columns(tau_cs.begin(), tau_cs.end());
  if (columns.empty()) columns.push_back(std::nullopt);
  std::vector<double> taus(delays.begin(), delays.end());
  if (base.run.protocol.family == PulseFamily::SinCos || taus.empty()) {
    taus.assign(1, base.run.protocol.tau);
  }

  std::vector<SweepPanel> panels;
  for (double tau : taus) {
    for (double gamma : gammas) {
      SweepPanel panel;
      panel.cd_enabled = base.run.protocol.cd_enabled;
      panel.gamma = gamma;
      panel.tau = tau;
      panel.tau_cs = columns;
      for (const auto& tau_c : columns) {
        EnsembleConfig cfg = base;
        cfg.run.gamma = gamma;
        cfg.run.protocol.tau = tau;
        cfg.run.noise_enabled = tau_c.has_value();
        if (tau_c) cfg.run.noise.tau_c = *tau_c;
        panel.columns.push_back(sweep_amplitude(cfg, omega0_values));
      }
      panels.push_back(std::move(panel));
    }
  }
  return panels;
}

std::vector<double> default_omega0_grid() {
  std::vector<double> grid(61);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = static_cast<double>(i);
  return grid;
}

}  // namespace stirap
