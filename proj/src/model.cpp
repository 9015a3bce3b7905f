#include "stirap/model.hpp"

#include <cmath>
#include <string>

#include "stirap/errors.hpp"

namespace stirap {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_nonnegative(double value, const char* name) {
  if (!(value >= 0.0)) {
    throw DomainError(std::string(name) + " must be non-negative, got " + std::to_string(value));
  }
}

}  // namespace

HamiltonianMatrix build_h0(double omega_p, double omega_s, double gamma) {
  require_nonnegative(omega_p, "omega_p");
  require_nonnegative(omega_s, "omega_s");
  require_nonnegative(gamma, "gamma");
  HamiltonianMatrix m = HamiltonianMatrix::Zero();
  m(0, 1) = m(1, 0) = omega_p;
  m(1, 2) = m(2, 1) = omega_s;
  m(1, 1) = -kI * gamma;
  return m;
}

HamiltonianMatrix build_hcd(double omega_d) {
  HamiltonianMatrix m = HamiltonianMatrix::Zero();
  m(0, 2) = kI * omega_d;
  m(2, 0) = -kI * omega_d;
  return m;
}

HamiltonianMatrix build_heps(double eps1, double eps2, double eps3) {
  HamiltonianMatrix m = HamiltonianMatrix::Zero();
  m(0, 0) = eps1;
  m(1, 1) = eps2;
  m(2, 2) = eps3;
  return m;
}

double mixing_angle(double omega_p, double omega_s) {
  if (omega_p == 0.0 && omega_s == 0.0) {
    throw DomainError("mixing angle undefined when both pump and Stokes vanish");
  }
  return std::atan2(omega_p, omega_s);
}

AngleFrame angle_frame(double omega_p, double omega_s) {
  return {std::hypot(omega_p, omega_s), mixing_angle(omega_p, omega_s)};
}

EigenSystem eigensystem(double theta, double omega) {
  require_nonnegative(omega, "omega");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double r = 1.0 / std::sqrt(2.0);
  EigenSystem es;
  es.phi0 = {c, 0.0, -s};
  es.phi_plus = {r * s, r, r * c};
  es.phi_minus = {r * s, -r, r * c};
  es.e0 = 0.0;
  es.e_plus = 0.5 * omega;
  es.e_minus = -0.5 * omega;
  return es;
}

HamiltonianMatrix numeric_hcd_oracle(const std::function<double(double)>& theta_of_t, double t,
                                     double dt_fd) {
  if (!(dt_fd > 0.0)) {
    throw DomainError("finite-difference step must be positive");
  }
  // The frame vectors do not depend on omega; any value works.
  const EigenSystem before = eigensystem(theta_of_t(t - dt_fd), 0.0);
  const EigenSystem now = eigensystem(theta_of_t(t), 0.0);
  const EigenSystem after = eigensystem(theta_of_t(t + dt_fd), 0.0);

  Eigen::Matrix3d sum = Eigen::Matrix3d::Zero();
  const auto accumulate = [&](const Eigen::Vector3d& minus, const Eigen::Vector3d& phi,
                              const Eigen::Vector3d& plus) {
    const Eigen::Vector3d dphi = (plus - minus) / (2.0 * dt_fd);
    sum += dphi * phi.transpose() - phi.dot(dphi) * (phi * phi.transpose());
  };
  accumulate(before.phi0, now.phi0, after.phi0);
  accumulate(before.phi_plus, now.phi_plus, after.phi_plus);
  accumulate(before.phi_minus, now.phi_minus, after.phi_minus);

  // H_cd = i*hbar*sum and H = (hbar/2) M, so M = 2i*sum.
  return 2.0 * kI * sum.cast<Complex>();
}

Populations populations(const ThreeLevelState& state) {
  Populations p;
  p.p1 = std::norm(state(0));
  p.p2 = std::norm(state(1));
  p.p3 = std::norm(state(2));
  p.total = p.p1 + p.p2 + p.p3;
  return p;
}

ThreeLevelState initial_state() { return ThreeLevelState(1.0, 0.0, 0.0); }

}  // namespace stirap
