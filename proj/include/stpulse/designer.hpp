#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "stpulse/core_model.hpp"

namespace stpulse {

// Transfer direction: drive an arbitrary initial state into |2>, or drive
// |1> into an arbitrary final state.
enum class TransferMode { to_target, from_initial };

// Sign of cos u(t_f): Plus pins u(t_f) = 2k*pi, Minus pins u(t_f) = (2k-1)*pi.
enum class BranchSign { plus, minus };

// A complete statement of the transfer task. boundary holds the physical
// Bloch angles at t = 0 (to_target) or at t = t_f (from_initial); theta_a0
// is the free initial polar angle of the invariant eigenvector.
struct DesignSpec {
  TransferMode mode = TransferMode::to_target;
  BlochAngles boundary{};
  double theta_a0 = 0.0;
  BranchSign branch = BranchSign::plus;
  int winding_k = 1;
};

// Range checks: boundary.theta in [0, pi] and theta_a0 strictly inside
// (0, pi) throw ConfigError; |boundary.phi| >= pi/2 cannot be anchored on
// the principal branch and throws InfeasibleError.
void validate_spec(const DesignSpec& spec);

// The pinned winding target: 2k*pi (plus) or (2k-1)*pi (minus).
double branch_u_target(const DesignSpec& spec);

// Final polar angle of the invariant eigenvector:
//   to_target/plus     theta_a0 - theta_p + pi
//   to_target/minus   -theta_a0 + theta_p + pi
//   from_initial/plus  theta_p + theta_a0
// from_initial/minus is rejected as an unsupported branch (InfeasibleError).
double target_theta_af(const DesignSpec& spec);

// theta_a(t) = a0 + a1 t + a2 t^2 with theta_a(0) = theta_a0,
// dtheta_a(0) = 0, theta_a(t_f) = theta_a_tf.
std::array<double, 3> solve_theta_coeffs(double theta_a0, double theta_a_tf,
                                         double t_f_ns);

// g(t) = b0 + b1 t + b2 t^2 where tan phi_a(t) = g(t) sin theta_a(t).
// Conditions: azimuth anchor (at t = 0 for to_target, at t = t_f for
// from_initial), dphi_a(0) = (J+Delta)/hbar, and the closed-form winding
// u(t_f) = -2 a2 (b0 t_f^2/2 + b1 t_f^3/3 + b2 t_f^4/4) = u_target.
// For from_initial the anchor sits at t_f, which couples the conditions;
// they reduce exactly to one quadratic in b0 (see solve notes in the .cpp).
// Throws InfeasibleError when no real solution exists.
std::array<double, 3> solve_phi_coeffs(const std::array<double, 3>& a,
                                       const DesignSpec& spec,
                                       const DeviceParams& params);

// Solved polynomial ansatz for one protocol.
struct AnsatzSolution {
  std::array<double, 3> a{};  // theta_a coefficients (rad, rad/ns, rad/ns^2)
  std::array<double, 3> b{};  // g coefficients (1/ns^j)
  double u_target = 0.0;      // rad
  DesignSpec spec;
  DeviceParams params;
};

// Full pipeline: validate, solve both polynomials, and verify the solution
// (u(t_f) within 1e-12 of u_target, dphi_a(0) within 1e-10 of (J+Delta)/hbar).
AnsatzSolution design_protocol(const DesignSpec& spec,
                               const DeviceParams& params);

struct AngleSample {
  double theta_a = 0.0;
  double phi_a = 0.0;    // principal branch (-pi/2, pi/2)
  double dtheta_a = 0.0;
  double dphi_a = 0.0;
};

// Analytic angles and rates at time t.
AngleSample eval_angles(const AnsatzSolution& ansatz, double t_ns);

// u(t) = -int_0^t dtheta_a(tau) g(tau) dtau, evaluated in closed form
// (the integrand is a cubic polynomial).
double u_of_t(const AnsatzSolution& ansatz, double t_ns);

// Instantaneous phase rates, evaluated in the regularized form
//   d(gamma+)/dt = 3J/(4 hbar) + dtheta_a g sin^2(theta_a/2) - dphi_a
//   d(gamma-)/dt = 3J/(4 hbar) - dtheta_a g cos^2(theta_a/2)
// which is exactly the tan/cot form with tan phi_a = g sin theta_a
// substituted, and stays finite where theta_a crosses multiples of pi.
std::pair<double, double> lr_phase_rates(const AnsatzSolution& ansatz,
                                         double t_ns);

inline constexpr int kDefaultGridSteps = 4000;

// Accumulated phases (gamma+, gamma-) at time t, gamma(0) = 0, by composite
// per-cell Simpson quadrature on a uniform grid of grid_steps cells over
// [0, t_f] (plus a partial cell up to t).
std::pair<double, double> lr_phases(const AnsatzSolution& ansatz, double t_ns,
                                    int grid_steps = kDefaultGridSteps);

// (gamma+, gamma-) at every node of the uniform (grid_steps + 1)-point grid.
std::vector<std::pair<double, double>> lr_phase_profile(
    const AnsatzSolution& ansatz, int grid_steps);

// Scaled gauge pair (a~_L, a~_R) in meV at time t:
//   a~_{L,R} = hbar [ (J+Delta)/hbar - dphi_a - dtheta_a g cos(theta_a)
//                     +- dtheta_a sqrt(1 + g^2 sin^2 theta_a) / (sqrt(2) alpha/beta) ]
// (the cot(theta_a) tan(phi_a) term is evaluated as g cos(theta_a), exact
// under the ansatz and finite at theta_a = multiples of pi; the sec term is
// positive on the principal branch).
std::pair<double, double> gauge_at(const AnsatzSolution& ansatz, double t_ns);

// Electric fields (E_L, E_R) in mV/cm at time t, from the analytic time
// derivative of the gauge bracket: E = -(hbar / (2 hbar_beta)) d(a~)/dt.
std::pair<double, double> field_at(const AnsatzSolution& ansatz, double t_ns);

// One synthesized protocol sampled on a uniform grid of n+1 points.
struct Pulse {
  std::vector<double> times;  // ns
  std::vector<double> a_l;    // meV
  std::vector<double> a_r;    // meV
  std::vector<double> e_l;    // mV/cm
  std::vector<double> e_r;    // mV/cm
  AnsatzSolution ansatz;

  double t_f() const { return ansatz.params.t_f_ns; }
  std::size_t steps() const { return times.empty() ? 0 : times.size() - 1; }
  std::pair<double, double> gauge(double t_ns) const {
    return gauge_at(ansatz, t_ns);
  }
  std::pair<double, double> field(double t_ns) const {
    return field_at(ansatz, t_ns);
  }
};

// Samples gauge and field arrays on n = round(t_f / grid_step_ns) uniform
// intervals; requires n >= 1000 (ConfigError) and |a~_{L,R}(0)| <= 1e-8 meV
// (ToleranceError: the design constraints guarantee a soft start).
Pulse synthesize_pulse(const AnsatzSolution& ansatz, double grid_step_ns);

// Same with the interval count given directly.
Pulse synthesize_pulse_steps(const AnsatzSolution& ansatz, int steps);

}  // namespace stpulse
