#include "stirap/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stirap/errors.hpp"

namespace stirap {

namespace {

constexpr double kNormTolerance = 1e-6;

void record(Trajectory& traj, double t, const ThreeLevelState& psi) {
  const Populations p = populations(psi);
  traj.times.push_back(t);
  traj.p1.push_back(p.p1);
  traj.p2.push_back(p.p2);
  traj.p3.push_back(p.p3);
  traj.total.push_back(p.total);
}

}  // namespace

SimGrid SimGrid::over(TimeWindow window, double dt_target) {
  if (!(dt_target > 0.0)) throw DomainError("time step must be positive");
  if (!(window.end > window.start)) throw DomainError("simulation window is empty");
  SimGrid grid;
  grid.t_start = window.start;
  grid.t_end = window.end;
  grid.n_steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(window.span() / dt_target)));
  grid.dt = window.span() / static_cast<double>(grid.n_steps);
  return grid;
}

void RunConfig::validate() const {
  protocol.validate();
  if (!(gamma >= 0.0)) throw DomainError("dissipation rate gamma must be non-negative");
  if (noise_enabled) noise.validate();
}

ThreeLevelState rhs(const ThreeLevelState& state, const HamiltonianMatrix& m) {
  return Complex(0.0, -0.5) * (m * state);
}

HamiltonianMatrix total_hamiltonian(const RunConfig& cfg, double t,
                                    const std::array<double, 3>& eps) {
  const PulseSample s = sample_pulses(t, cfg.protocol);
  HamiltonianMatrix m = build_h0(s.omega_p, s.omega_s, cfg.gamma);
  if (cfg.protocol.cd_enabled) {
    m(0, 2) += Complex(0.0, s.omega_d);
    m(2, 0) -= Complex(0.0, s.omega_d);
  }
  for (int i = 0; i < 3; ++i) m(i, i) += eps[static_cast<std::size_t>(i)] + cfg.energy_shift;
  return m;
}

double default_time_step(const RunConfig& cfg) {
  const double cd = cfg.protocol.cd_enabled ? peak_cd_amplitude(cfg.protocol) : 0.0;
  const double omega_max = std::hypot(cfg.protocol.omega0, cd);
  double dt = cfg.protocol.width_T / 1000.0;
  if (omega_max > 0.0) dt = std::min(dt, 2.0 * std::numbers::pi / (40.0 * omega_max));
  if (cfg.noise_enabled) dt = std::min(dt, cfg.noise.tau_c / 10.0);
  return dt;
}

SimGrid default_grid(const RunConfig& cfg) {
  return SimGrid::over(simulation_window(cfg.protocol), default_time_step(cfg));
}

RunResult simulate_run(const RunConfig& cfg, const SimGrid& grid) {
  cfg.validate();
  if (grid.n_steps == 0 || !(grid.dt > 0.0)) throw DomainError("simulation grid has no steps");

  std::optional<NoiseTriple> noise;
  if (cfg.noise_enabled) noise.emplace(cfg.noise, grid.dt, cfg.seed);
  std::array<double, 3> eps{0.0, 0.0, 0.0};

  ThreeLevelState psi = initial_state();
  RunResult result;
  if (cfg.record_trajectory) {
    result.trajectory.emplace();
    record(*result.trajectory, grid.t_start, psi);
  }

  // The mean real diagonal only contributes a global phase; removing it keeps
  // populations exactly invariant under a uniform level shift.
  const auto hamiltonian_at = [&](double t) {
    HamiltonianMatrix m = total_hamiltonian(cfg, t, eps);
    const double common = m.diagonal().real().mean();
    m.diagonal().array() -= common;
    return m;
  };
  for (std::size_t k = 0; k < grid.n_steps; ++k) {
    if (noise) {
      noise->advance();
      eps = noise->values();
    }
    const double t = grid.time_at(k);
    // The last stage lands exactly on t_end so bounded pulse families stay in range.
    const double h = grid.time_at(k + 1) - t;
    psi = rk4_step(t, psi, h, hamiltonian_at);

    const double norm = psi.squaredNorm();
    if (!std::isfinite(norm)) {
      throw IntegrationDiverged(k, "state became non-finite at step " + std::to_string(k));
    }
    if (norm > 1.0 + kNormTolerance) {
      throw IntegrationDiverged(k, "norm grew to " + std::to_string(norm) + " at step " +
                                       std::to_string(k) + "; reduce dt (currently " +
                                       std::to_string(grid.dt) + ")");
    }
    if (result.trajectory) record(*result.trajectory, grid.time_at(k + 1), psi);
  }

  const Populations p = populations(psi);
  result.fidelity = p.p3;
  result.total_population = p.total;
  return result;
}

}  // namespace stirap
