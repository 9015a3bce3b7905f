// Acceptance suite: one PASS/FAIL line per criterion with the measured values.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "stirap/ensemble.hpp"
#include "stirap/integrator.hpp"
#include "stirap/model.hpp"
#include "stirap/noise.hpp"
#include "stirap/pulses.hpp"

using namespace stirap;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> body;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

ProtocolConfig gaussian(double omega0, double tau, bool cd) {
  ProtocolConfig p;
  p.family = PulseFamily::Gaussian;
  p.omega0 = omega0;
  p.tau = tau;
  p.cd_enabled = cd;
  return p;
}

ProtocolConfig sincos(double omega0, bool cd) {
  ProtocolConfig p;
  p.family = PulseFamily::SinCos;
  p.omega0 = omega0;
  p.cd_enabled = cd;
  return p;
}

double fidelity(const ProtocolConfig& protocol, double gamma) {
  RunConfig cfg;
  cfg.protocol = protocol;
  cfg.gamma = gamma;
  return simulate_run(cfg, default_grid(cfg)).fidelity;
}

double ensemble_mean(const ProtocolConfig& protocol, double tau_c) {
  EnsembleConfig cfg;
  cfg.n_runs = 200;
  cfg.master_seed = 0;
  cfg.run.protocol = protocol;
  cfg.run.noise_enabled = true;
  cfg.run.noise = {5.0, tau_c};
  return run_ensemble(cfg).mean_fidelity;
}

Outcome pulse_area_reproduction() {
  const ProtocolConfig p = gaussian(5.0, 0.75, true);
  const double area = pulse_area([&](double t) { return sample_pulses(t, p).omega_p; }, simulation_window(p));
  return {std::abs(area - 8.8558) <= 0.001, fmt("pump area %.6f (target 8.8558 +- 0.001)", area)};
}

Outcome pi_pulse_property() {
  const ProtocolConfig sc = sincos(5.0, true);
  const ProtocolConfig g = gaussian(5.0, 0.75, true);
  const double a_sc = pulse_area([&](double t) { return sample_pulses(t, sc).omega_d; }, simulation_window(sc));
  const double a_g = pulse_area([&](double t) { return sample_pulses(t, g).omega_d; }, simulation_window(g));
  const double deficit = std::numbers::pi - a_g;
  const double oracle_deficit = std::numbers::pi - 2.0 * oracle::gudermannian(9.0);
  const bool pass = std::abs(a_sc - std::numbers::pi) <= 1e-12 && std::abs(deficit - 4.9e-4) <= 0.5e-4 &&
                    std::abs(deficit - oracle_deficit) <= 1e-9;
  return {pass, fmt("sin-cos cd area - pi = %.2e; gaussian deficit %.4e (oracle %.4e)", a_sc - std::numbers::pi,
                    deficit, oracle_deficit)};
}

Outcome perfect_noise_free_transfer() {
  double worst = 1.0;
  std::string where;
  for (double w : {1.0, 5.0, 10.0, 20.0, 40.0, 60.0}) {
    for (const ProtocolConfig& p : {gaussian(w, 0.75, true), sincos(w, true)}) {
      const double f = fidelity(p, 0.0);
      if (f < worst) worst = f, where = fmt("%s omega0=%g", std::string(to_string(p.family)).c_str(), w);
    }
  }
  return {worst >= 0.999, fmt("min fidelity %.7f at %s (need >= 0.999)", worst, where.c_str())};
}

Outcome dissipation_robustness() {
  const double sa0 = fidelity(gaussian(5.0, 0.75, true), 0.0);
  const double sa10 = fidelity(gaussian(5.0, 0.75, true), 10.0);
  const double st0 = fidelity(gaussian(20.0, 0.75, false), 0.0);
  const double st10 = fidelity(gaussian(20.0, 0.75, false), 10.0);
  const bool sa_ok = std::abs(sa10 - sa0) <= 0.05;
  const bool st_ok = st0 - st10 >= 0.3;
  return {sa_ok && st_ok,
          fmt("SA-STIRAP |dF| = %.2e (need <= 0.05) [%s]; STIRAP omega0=20 loss %.4f (F %.6f -> %.6f, need >= 0.3) [%s]",
              std::abs(sa10 - sa0), sa_ok ? "ok" : "miss", st0 - st10, st0, st10, st_ok ? "ok" : "miss")};
}

Outcome noise_statistics() {
  const OUParams params{5.0, 0.08};
  const double dt = params.tau_c / 10.0;
  const auto series = generate_series(params, 999'999, dt, 0);
  const SeriesStats s = sample_stats(series, dt, 10);
  const double s2 = params.sigma * params.sigma;
  const double e = ou_decay_factor(dt, params.tau_c);
  const double n_eff = static_cast<double>(series.size()) * (1.0 - e) / (1.0 + e);
  const double ks = ks_statistic_normal(series, params.sigma);
  const double crit = ks_critical_value(n_eff);
  const double r_tc = s.autocorrelation[10];
  const bool pass = std::abs(s.mean) <= 0.05 * params.sigma && std::abs(s.variance - s2) <= 0.02 * s2 &&
                    std::abs(r_tc - s2 * std::exp(-1.0)) <= 0.05 * s2 * std::exp(-1.0) && ks < crit;
  return {pass, fmt("mean %.4f, variance %.4f, R(tau_c) %.4f vs %.4f, KS %.2e < %.2e (n_eff %.0f)", s.mean,
                    s.variance, r_tc, s2 * std::exp(-1.0), ks, crit, n_eff)};
}

Outcome small_amplitude_ordering() {
  const double f1 = ensemble_mean(sincos(2.0, true), 0.008);
  const double f2 = ensemble_mean(sincos(2.0, true), 0.08);
  const double f3 = ensemble_mean(sincos(2.0, true), 0.8);
  return {f1 - f2 >= 0.02 && f2 - f3 >= 0.02,
          fmt("F(0.008) %.4f, F(0.08) %.4f, F(0.8) %.4f; gaps %.4f, %.4f (need >= 0.02)", f1, f2, f3, f1 - f2, f2 - f3)};
}

Outcome intermediate_dip() {
  const ProtocolConfig p = gaussian(60.0, 0.5, false);
  const double f1 = ensemble_mean(p, 0.008);
  const double f2 = ensemble_mean(p, 0.08);
  const double f3 = ensemble_mean(p, 0.8);
  return {f1 - f2 >= 0.02 && f3 - f2 >= 0.02,
          fmt("F(0.008) %.4f, F(0.08) %.4f, F(0.8) %.4f; dips %.4f, %.4f (need >= 0.02)", f1, f2, f3, f1 - f2, f3 - f2)};
}

Outcome delay_benefit() {
  std::vector<double> f;
  for (double tau : {0.25, 1.0 / 3.0, 0.5, 0.75}) f.push_back(ensemble_mean(gaussian(2.0, tau, true), 0.08));
  bool pass = true;
  for (std::size_t i = 1; i < f.size(); ++i) pass = pass && f[i] >= f[i - 1] - 0.01;
  return {pass, fmt("F(tau=1/4..3/4) = %.4f, %.4f, %.4f, %.4f (non-decreasing, slack 0.01)", f[0], f[1], f[2], f[3])};
}

Outcome numerical_integrity() {
  std::vector<std::string> misses;

  double norm_err = 0.0;
  for (double w : {1.0, 5.0, 20.0, 60.0}) {
    for (bool cd : {false, true}) {
      for (const ProtocolConfig& p : {gaussian(w, 0.25, cd), gaussian(w, 0.75, cd), sincos(w, cd)}) {
        RunConfig cfg;
        cfg.protocol = p;
        norm_err = std::max(norm_err, std::abs(simulate_run(cfg, default_grid(cfg)).total_population - 1.0));
      }
    }
  }
  if (norm_err > 1e-6) misses.push_back("norm");

  double rise = -1.0;
  for (bool cd : {false, true}) {
    RunConfig cfg;
    cfg.protocol = gaussian(20.0, 0.5, cd);
    cfg.gamma = 4.0;
    cfg.noise_enabled = true;
    cfg.noise = {5.0, 0.08};
    cfg.record_trajectory = true;
    const Trajectory tr = *simulate_run(cfg, default_grid(cfg)).trajectory;
    for (std::size_t k = 1; k < tr.total.size(); ++k) rise = std::max(rise, tr.total[k] - tr.total[k - 1]);
  }
  if (rise > 1e-9) misses.push_back("monotone P");

  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double order = 10.0;
  for (int trial = 0; trial < 10; ++trial) {
    HamiltonianMatrix m;
    for (int i = 0; i < 3; ++i) {
      m(i, i) = u(gen);
      for (int j = i + 1; j < 3; ++j) m(i, j) = Complex(u(gen), u(gen)), m(j, i) = std::conj(m(i, j));
    }
    const auto err = [&](double dt) {
      return (rk4_step(0.0, initial_state(), dt, [&](double) { return m; }) -
              oracle::exact_step(m, initial_state(), dt)).norm();
    };
    order = std::min(order, std::log2(err(0.04) / err(0.02)) - 1.0);
  }
  if (order < 3.9) misses.push_back("rk4 order");

  double cd_err = 0.0;
  for (const ProtocolConfig& p : {gaussian(5.0, 0.75, true), sincos(5.0, true)}) {
    const TimeWindow w = simulation_window(p);
    const auto theta = [&](double t) { return p.family == PulseFamily::Gaussian ? theta_gaussian(t, p.tau, p.width_T) : theta_sincos(t, p.width_T); };
    for (int i = 1; i < 100; ++i) {
      const double t = w.start + w.span() * i / 100.0;
      cd_err = std::max(cd_err, (numeric_hcd_oracle(theta, t, 1e-4) - build_hcd(sample_pulses(t, p).omega_d)).cwiseAbs().maxCoeff());
    }
  }
  if (cd_err > 1e-6) misses.push_back("cd oracle");

  double gauge = 0.0;
  {
    RunConfig a;
    a.protocol = gaussian(20.0, 0.5, false);
    a.gamma = 1.0;
    a.noise_enabled = true;
    a.noise = {5.0, 0.08};
    a.seed = 3;
    a.record_trajectory = true;
    RunConfig b = a;
    b.energy_shift = 11.0;
    const SimGrid grid = default_grid(a);
    const Trajectory ta = *simulate_run(a, grid).trajectory;
    const Trajectory tb = *simulate_run(b, grid).trajectory;
    for (std::size_t k = 0; k < ta.times.size(); ++k) {
      gauge = std::max({gauge, std::abs(ta.p1[k] - tb.p1[k]), std::abs(ta.p2[k] - tb.p2[k]), std::abs(ta.p3[k] - tb.p3[k])});
    }
  }
  if (gauge > 1e-10) misses.push_back("gauge");

  EnsembleConfig ens;
  ens.n_runs = 40;
  ens.master_seed = 0;
  ens.run.protocol = sincos(2.0, true);
  ens.run.noise_enabled = true;
  ens.run.noise = {5.0, 0.08};
  ens.workers = 1;
  const EnsembleResult r1 = run_ensemble(ens);
  ens.workers = 4;
  const EnsembleResult r4 = run_ensemble(ens);
  const EnsembleResult r4b = run_ensemble(ens);
  const bool identical = r1.samples == r4.samples && r4.samples == r4b.samples && r1.mean_fidelity == r4.mean_fidelity &&
                         r1.ci_low == r4.ci_low && r1.ci_high == r4.ci_high;
  if (!identical) misses.push_back("determinism");

  std::string missed;
  for (const auto& m : misses) missed += " " + m;
  return {misses.empty(), fmt("norm %.1e, max dP %.1e, rk4 order %.3f, cd oracle %.1e, gauge %.1e, reruns %s%s%s",
                              norm_err, rise, order, cd_err, gauge, identical ? "identical" : "differ",
                              misses.empty() ? "" : "; missed:", missed.c_str())};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "pulse-area reproduction", 1.0, pulse_area_reproduction},
      {2, "pi-pulse property", 1.0, pi_pulse_property},
      {3, "perfect noise-free SA-STIRAP", 10.0, perfect_noise_free_transfer},
      {4, "dissipation robustness", 10.0, dissipation_robustness},
      {5, "OU noise statistics", 5.0, noise_statistics},
      {6, "small-amplitude tau_c ordering", 120.0, small_amplitude_ordering},
      {7, "large-amplitude intermediate-tau_c dip", 120.0, intermediate_dip},
      {8, "delay benefit under noise", 120.0, delay_benefit},
      {9, "numerical integrity", 60.0, numerical_integrity},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.body();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed < c.budget_s;
    const bool pass = out.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("criterion %d %s: %s | %s | %.2f s (budget %.0f s%s)\n", c.id, c.name, pass ? "PASS" : "FAIL",
                out.detail.c_str(), elapsed, c.budget_s, in_time ? "" : ", exceeded");
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %zu passed, %d failed\n", criteria.size(), criteria.size() - static_cast<std::size_t>(failed), failed);
  return failed == 0 ? 0 : 1;
}
