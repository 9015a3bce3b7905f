#pragma once

// Fixed-step RK4 propagation of the non-Hermitian Schrodinger equation
// d psi/dt = -(i/2) M(t) psi, with OU noise held constant across each step.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "stirap/model.hpp"
#include "stirap/noise.hpp"
#include "stirap/pulses.hpp"

namespace stirap {

struct SimGrid {
  double t_start = 0.0;
  double t_end = 0.0;
  double dt = 0.0;
  std::size_t n_steps = 0;

  /// n_steps = round(span / dt_target) (at least 1); dt is then span / n_steps
  /// so the grid ends exactly on t_end.
  static SimGrid over(TimeWindow window, double dt_target);

  double time_at(std::size_t k) const {
    return k == n_steps ? t_end : t_start + static_cast<double>(k) * dt;
  }
};

struct RunConfig {
  ProtocolConfig protocol;
  double gamma = 0.0;
  OUParams noise;
  bool noise_enabled = false;
  std::uint64_t seed = 0;
  bool record_trajectory = false;
  // Uniform offset added to all three level energies. Only changes a global phase.
  double energy_shift = 0.0;

  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> p1;
  std::vector<double> p2;
  std::vector<double> p3;
  std::vector<double> total;
};

struct RunResult {
  double fidelity = 0.0;
  double total_population = 0.0;
  std::optional<Trajectory> trajectory;
};

/// -(i/2) M psi.
ThreeLevelState rhs(const ThreeLevelState& state, const HamiltonianMatrix& m);

/// Classical fourth-order Runge-Kutta step; `hamiltonian_at(t)` is evaluated at
/// t, t + dt/2 (once, shared by the two midpoint stages) and t + dt.
template <class HamiltonianAt>
ThreeLevelState rk4_step(double t, const ThreeLevelState& state, double dt,
                         HamiltonianAt&& hamiltonian_at) {
  const HamiltonianMatrix m0 = hamiltonian_at(t);
  const HamiltonianMatrix mh = hamiltonian_at(t + 0.5 * dt);
  const HamiltonianMatrix m1 = hamiltonian_at(t + dt);
  const ThreeLevelState k1 = rhs(state, m0);
  const ThreeLevelState k2 = rhs(state + (0.5 * dt) * k1, mh);
  const ThreeLevelState k3 = rhs(state + (0.5 * dt) * k2, mh);
  const ThreeLevelState k4 = rhs(state + dt * k3, m1);
  return state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// M(t) = H0 + [Hcd] + diag(eps + energy_shift) for the configured protocol.
HamiltonianMatrix total_hamiltonian(const RunConfig& cfg, double t,
                                    const std::array<double, 3>& eps);

/// min(tau_c/10 if noisy, 2 pi / (40 Omega_max), T/1000), with
/// Omega_max = sqrt(omega0^2 + max Omega_d^2).
double default_time_step(const RunConfig& cfg);

SimGrid default_grid(const RunConfig& cfg);

/// Propagates |1> across `grid`. Throws IntegrationDiverged (with the step
/// index) when the state turns non-finite or its norm exceeds 1 + 1e-6.
RunResult simulate_run(const RunConfig& cfg, const SimGrid& grid);

}  // namespace stirap
