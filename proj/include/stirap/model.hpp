#pragma once

// Three-level Lambda system: Hamiltonian blocks, adiabatic frame and observables.
//
// Units: hbar = 1 and the pulse width T = 1. Every matrix returned here is the
// dimensionless "M" of H = (hbar/2) M, expressed in units of 1/T.

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace stirap {

using Complex = std::complex<double>;
using ThreeLevelState = Eigen::Vector3cd;
using HamiltonianMatrix = Eigen::Matrix3cd;

struct Populations {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  double total = 0.0;
};

// rms Rabi amplitude and mixing angle of a (pump, Stokes) pair.
struct AngleFrame {
  double omega = 0.0;
  double theta = 0.0;
};

// Instantaneous eigenvectors of the lossless reference Hamiltonian, with
// energies in units of hbar/T (E0 = 0, E+- = +-omega/2).
struct EigenSystem {
  Eigen::Vector3d phi0;
  Eigen::Vector3d phi_plus;
  Eigen::Vector3d phi_minus;
  double e0 = 0.0;
  double e_plus = 0.0;
  double e_minus = 0.0;
};

/// Reference Hamiltonian: pump couples |1>-|2>, Stokes couples |2>-|3>, and
/// level |2> decays through the -i*gamma diagonal entry.
/// Throws DomainError if any argument is negative.
HamiltonianMatrix build_h0(double omega_p, double omega_s, double gamma);

/// Counterdiabatic block: M[0][2] = i*omega_d, M[2][0] = -i*omega_d.
HamiltonianMatrix build_hcd(double omega_d);

/// Diagonal level-energy fluctuations.
HamiltonianMatrix build_heps(double eps1, double eps2, double eps3);

/// atan2(omega_p, omega_s). Throws DomainError when both are zero.
double mixing_angle(double omega_p, double omega_s);

AngleFrame angle_frame(double omega_p, double omega_s);

/// Dark state (cos, 0, -sin) and bright states (sin, +-1, cos)/sqrt2.
EigenSystem eigensystem(double theta, double omega);

/// Counterdiabatic matrix rebuilt from central finite differences of the
/// adiabatic eigenvectors, i * sum_n (|d phi_n><phi_n| - <phi_n|d phi_n> |phi_n><phi_n|),
/// scaled to the M convention. Independent check on build_hcd(2 dtheta/dt).
HamiltonianMatrix numeric_hcd_oracle(const std::function<double(double)>& theta_of_t, double t,
                                     double dt_fd);

Populations populations(const ThreeLevelState& state);

/// Every run starts in |1>.
ThreeLevelState initial_state();

}  // namespace stirap
