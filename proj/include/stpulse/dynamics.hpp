#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "stpulse/designer.hpp"

namespace stpulse {

// A time-gridded state history. states holds normalized samples; norm_drift
// records max | ||psi|| - 1 | of the raw integration before renormalizing
// (zero for exactly-normalized reconstructions). populations holds the raw
// integrator probabilities |c|^2 before renormalizing, which is what a
// convergence study of the integrator must look at (they differ from the
// normalized ones by at most ~2 norm_drift).
struct Trajectory {
  std::vector<double> times;
  std::vector<SpinState> states;
  std::vector<std::pair<double, double>> populations;  // raw (P1, P2)
  double norm_drift = 0.0;
};

// Fixed-step 4th-order Runge-Kutta integration of i hbar dpsi/dt = H(t) psi
// on the pulse grid, with the Hamiltonian sampled analytically at sub-step
// times. Throws ToleranceError when the norm drift exceeds norm_tol.
Trajectory evolve(const DeviceParams& params, const Pulse& pulse,
                  const SpinState& psi0, double norm_tol = 1e-6);

// Same integrator on an explicit interval count (no pulse object needed);
// used for convergence studies at coarse grids.
Trajectory evolve_on_grid(const DeviceParams& params,
                          const AnsatzSolution& ansatz, int steps,
                          const SpinState& psi0, double norm_tol = 1e-6);

// Constant mode weights of the invariant-eigenstate superposition.
struct ModeCoefficients {
  std::complex<double> c_plus;
  std::complex<double> c_minus;
};

// c+- = <chi+-(0) | Psi(0)> for an initial state with Bloch angles
// (theta_p0, phi_p0) and invariant angles (theta_a0, phi_a0). When
// phi_a0 = phi_p0 these reduce to cos(eta/2) and e^{i phi_p0} sin(eta/2)
// with eta = theta_a0 - theta_p0.
ModeCoefficients coefficients_from_initial(double theta_a0, double phi_a0,
                                           double theta_p0, double phi_p0);

// Mode coefficients for a designed protocol. to_target anchors at t = 0;
// from_initial anchors at t = t_f via c+- = e^{-i gamma+-(t_f)}
// <chi+-(t_f) | Psi(t_f)>.
ModeCoefficients mode_coefficients(const AnsatzSolution& ansatz,
                                   int grid_steps = kDefaultGridSteps);

// Psi(t) = c+ e^{i gamma+} |chi+(t)> + c- e^{i gamma-} |chi-(t)>; the
// quadrature-only reference solution, independent of the RK4 integrator.
SpinState reconstruct_lr(const AnsatzSolution& ansatz,
                         const ModeCoefficients& coeffs, double t_ns,
                         int grid_steps = kDefaultGridSteps);

// Full reconstructed history on a uniform grid (one quadrature pass).
Trajectory reconstruct_trajectory(const AnsatzSolution& ansatz, int steps);

// Left-hand side of the transfer condition
// 1 + cos(theta_a(t_f)) cos(eta) + sin(theta_a(t_f)) sin(eta) cos(u(t_f));
// zero for a correctly designed to-target protocol.
double transfer_condition_residual(double theta_a_tf, double eta, double u_tf);

// The state the protocol starts from / is steered toward.
SpinState initial_state(const DesignSpec& spec);
SpinState target_state(const DesignSpec& spec);

// |<target | psi(t_f)>|^2 for the trajectory's final state.
double protocol_fidelity(const DesignSpec& spec, const Trajectory& traj);

// Evolves |1> and |2> under one shared pulse and returns
// (|<(|1>+|2>)/sqrt2 | Psi>|^2, |<(|1>-|2>)/sqrt2 | Psi'>|^2).
std::pair<double, double> gate_check_hadamard(const DeviceParams& params,
                                              const Pulse& pulse,
                                              double norm_tol = 1e-6);

}  // namespace stpulse
