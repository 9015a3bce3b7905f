#include "stirap/noise.hpp"

#include <algorithm>
#include <iostream>
#include <numeric>
#include <string>

#include "stirap/errors.hpp"

namespace stirap {

void OUParams::validate() const {
  if (!(sigma >= 0.0)) throw DomainError("noise sigma must be non-negative");
  if (!(tau_c > 0.0)) throw DomainError("noise correlation time must be positive");
}

double ou_decay_factor(double dt, double tau_c) {
  if (!(tau_c > 0.0)) throw DomainError("noise correlation time must be positive");
  if (!(dt >= 0.0)) throw DomainError("time step must be non-negative");
  return std::exp(-dt / tau_c);
}

bool satisfies_step_rule(double dt, double tau_c) {
  // Small slack so dt computed as tau_c / 10 by division still qualifies.
  return dt <= tau_c / 10.0 * (1.0 + 1e-12);
}

std::vector<double> generate_series(const OUParams& params, std::size_t n_steps, double dt,
                                    std::uint64_t seed, StepRulePolicy policy) {
  params.validate();
  if (!satisfies_step_rule(dt, params.tau_c)) {
    const std::string msg = "noise step dt = " + std::to_string(dt) +
                            " exceeds tau_c/10 = " + std::to_string(params.tau_c / 10.0);
    if (policy == StepRulePolicy::Error) throw StepRuleViolation(msg);
    if (policy == StepRulePolicy::Warn) std::clog << "warning: " << msg << '\n';
  }
  UniformStream rng(seed);
  std::vector<double> out;
  out.reserve(n_steps + 1);
  OUState state{ou_seed_initial(params, rng), ou_decay_factor(dt, params.tau_c)};
  out.push_back(state.eps);
  for (std::size_t k = 0; k < n_steps; ++k) {
    state = ou_advance(state, params, rng);
    out.push_back(state.eps);
  }
  return out;
}

double analytic_spectrum(double omega, const OUParams& params) {
  const double x = omega * params.tau_c;
  return 2.0 * params.sigma * params.sigma * params.tau_c / (1.0 + x * x);
}

double analytic_autocorrelation(double lag, const OUParams& params) {
  return params.sigma * params.sigma * std::exp(-std::abs(lag) / params.tau_c);
}

SeriesStats sample_stats(std::span<const double> series, double dt, std::size_t max_lag) {
  const std::size_t n = series.size();
  if (n < 2) throw DomainError("sample_stats needs at least two samples");
  SeriesStats stats;
  stats.dt = dt;
  stats.mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);

  std::vector<double> centered(series.begin(), series.end());
  for (double& x : centered) x -= stats.mean;
  double ss = 0.0;
  for (double x : centered) ss += x * x;
  stats.variance = ss / static_cast<double>(n - 1);

  const std::size_t lags = std::min(max_lag, n - 1);
  stats.autocorrelation.resize(lags + 1);
  for (std::size_t k = 0; k <= lags; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) acc += centered[i] * centered[i + k];
    stats.autocorrelation[k] = acc / static_cast<double>(n);
  }
  return stats;
}

Histogram density_histogram(std::span<const double> series, std::size_t bins, double lo,
                            double hi) {
  if (bins == 0) throw DomainError("histogram needs at least one bin");
  if (!(hi > lo)) throw DomainError("histogram range is empty");
  Histogram h;
  h.bin_width = (hi - lo) / static_cast<double>(bins);
  h.bin_centers.resize(bins);
  h.density.assign(bins, 0.0);
  for (std::size_t b = 0; b < bins; ++b) {
    h.bin_centers[b] = lo + (static_cast<double>(b) + 0.5) * h.bin_width;
  }
  for (double x : series) {
    if (x < lo || x > hi) continue;
    auto b = static_cast<std::size_t>((x - lo) / h.bin_width);
    h.density[std::min(b, bins - 1)] += 1.0;
  }
  const double norm = 1.0 / (static_cast<double>(series.size()) * h.bin_width);
  for (double& d : h.density) d *= norm;
  return h;
}

double ks_statistic_normal(std::span<const double> samples, double sigma) {
  if (samples.empty()) throw DomainError("KS statistic needs samples");
  if (!(sigma > 0.0)) throw DomainError("KS reference sigma must be positive");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = 0.5 * std::erfc(-sorted[i] / (sigma * std::numbers::sqrt2));
    const double below = static_cast<double>(i) / n;
    const double above = static_cast<double>(i + 1) / n;
    d = std::max({d, cdf - below, above - cdf});
  }
  return d;
}

double ks_critical_value(double n, double alpha) {
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(n);
}

NoiseTriple::NoiseTriple(const OUParams& params, double dt, std::uint64_t run_seed)
    : params_(params),
      streams_{UniformStream(derive_seed(run_seed, 0)), UniformStream(derive_seed(run_seed, 1)),
               UniformStream(derive_seed(run_seed, 2))} {
  params_.validate();
  const double decay = ou_decay_factor(dt, params_.tau_c);
  for (std::size_t i = 0; i < 3; ++i) {
    channels_[i] = {ou_seed_initial(params_, streams_[i]), decay};
  }
}

void NoiseTriple::advance() {
  for (std::size_t i = 0; i < 3; ++i) channels_[i] = ou_advance(channels_[i], params_, streams_[i]);
}

}  // namespace stirap
