#pragma once

// Exponentially correlated (Ornstein-Uhlenbeck) level-energy noise, generated
// with the exact one-step update, plus the statistics used to validate it.

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "stirap/random.hpp"

namespace stirap {

struct OUParams {
  double sigma = 5.0;  // stationary standard deviation, 1/T
  double tau_c = 0.08; // correlation time, T

  // Throws DomainError on sigma < 0 or tau_c <= 0.
  void validate() const;
};

struct OUState {
  double eps = 0.0;   // current noise value
  double decay = 0.0; // exp(-dt / tau_c) for the run's fixed step
};

template <class S>
concept UniformSource = requires(S& s) {
  { s.next() } -> std::convertible_to<double>;
};

double ou_decay_factor(double dt, double tau_c);

namespace detail {

// Draws from `rng` until the value is strictly positive so log() stays finite.
template <UniformSource S>
double positive_uniform(S& rng) {
  double u = rng.next();
  while (!(u > 0.0)) u = rng.next();
  return u;
}

}  // namespace detail

/// Stationary initial value: sqrt(-2 sigma^2 log m) cos(2 pi n), drawing n then m.
template <UniformSource S>
double ou_seed_initial(const OUParams& params, S& rng) {
  const double n = rng.next();
  const double m = detail::positive_uniform(rng);
  return std::sqrt(-2.0 * params.sigma * params.sigma * std::log(m)) *
         std::cos(2.0 * std::numbers::pi * n);
}

/// eps <- eps*E + h with h ~ N(0, sigma^2 (1 - E^2)); draws a then b.
template <UniformSource S>
OUState ou_advance(OUState state, const OUParams& params, S& rng) {
  const double a = detail::positive_uniform(rng);
  const double b = rng.next();
  const double e = state.decay;
  const double h = std::sqrt(-2.0 * params.sigma * params.sigma * (1.0 - e * e) * std::log(a)) *
                   std::cos(2.0 * std::numbers::pi * b);
  state.eps = state.eps * e + h;
  return state;
}

// Ignore is for callers that already reported the violation themselves.
enum class StepRulePolicy { Warn, Error, Ignore };

/// dt <= tau_c / 10.
bool satisfies_step_rule(double dt, double tau_c);

/// Series of n_steps + 1 values: the stationary seed followed by n_steps exact
/// updates. A step above tau_c/10 logs a warning, or throws StepRuleViolation
/// under StepRulePolicy::Error.
std::vector<double> generate_series(const OUParams& params, std::size_t n_steps, double dt,
                                    std::uint64_t seed,
                                    StepRulePolicy policy = StepRulePolicy::Warn);

/// Lorentzian 2 sigma^2 tau_c / (1 + (omega tau_c)^2).
double analytic_spectrum(double omega, const OUParams& params);

/// sigma^2 exp(-|lag| / tau_c).
double analytic_autocorrelation(double lag, const OUParams& params);

struct SeriesStats {
  double mean = 0.0;
  double variance = 0.0;              // unbiased
  std::vector<double> autocorrelation; // biased estimator, lags 0..max_lag
  double dt = 0.0;
};

/// Requires at least two samples; max_lag is clipped to size - 1.
SeriesStats sample_stats(std::span<const double> series, double dt, std::size_t max_lag);

struct Histogram {
  std::vector<double> bin_centers;
  std::vector<double> density; // normalized so that sum(density) * width = 1
  double bin_width = 0.0;
};

/// Equal-width bins over [lo, hi]; values outside are dropped from the counts
/// but still counted in the normalization.
Histogram density_histogram(std::span<const double> series, std::size_t bins, double lo,
                            double hi);

/// sup |F_n(x) - Phi(x / sigma)| of the samples against N(0, sigma^2).
double ks_statistic_normal(std::span<const double> samples, double sigma);

/// Asymptotic Kolmogorov critical value c(alpha) / sqrt(n) (alpha = 0.01 -> 1.6276).
double ks_critical_value(double n, double alpha = 0.01);

/// Three mutually independent OU channels, one per level, refreshed together.
class NoiseTriple {
 public:
  NoiseTriple(const OUParams& params, double dt, std::uint64_t run_seed);

  void advance();
  std::array<double, 3> values() const { return {channels_[0].eps, channels_[1].eps, channels_[2].eps}; }

 private:
  OUParams params_;
  std::array<UniformStream, 3> streams_;
  std::array<OUState, 3> channels_;
};

}  // namespace stirap
