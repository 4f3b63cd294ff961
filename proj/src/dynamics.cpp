#include "stpulse/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace stpulse {

using std::complex;
using namespace constants;

namespace {

struct Amp {
  complex<double> c1, c2;
};

Amp hamiltonian_action(const DeviceParams& params, const AnsatzSolution& ansatz,
                       double t, const Amp& y) {
  const auto [al, ar] = gauge_at(ansatz, t);
  const HamiltonianSample h = hamiltonian_at(params, al, ar);
  const complex<double> mi(0.0, -0.5);
  return {mi * h.z1 * y.c1 + 0.5 * h.y * y.c2,
          -0.5 * h.y * y.c1 + mi * h.z2 * y.c2};
}

void check_coefficients(const ModeCoefficients& coeffs) {
  const double total = std::norm(coeffs.c_plus) + std::norm(coeffs.c_minus);
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "mode weights sum to " << total << " instead of 1";
    throw ToleranceError(msg.str());
  }
}

}  // namespace

Trajectory evolve_on_grid(const DeviceParams& params,
                          const AnsatzSolution& ansatz, int steps,
                          const SpinState& psi0, double norm_tol) {
  if (steps < 1) throw ConfigError("evolution grid needs at least 1 step");
  if (!(norm_tol > 0.0)) throw ConfigError("norm_tol must be > 0");
  const double tf = ansatz.params.t_f_ns;
  const double h = tf / steps;

  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.populations.reserve(steps + 1);

  Amp y{psi0.c1(), psi0.c2()};
  traj.times.push_back(0.0);
  traj.states.push_back(psi0);
  traj.populations.emplace_back(psi0.p1(), psi0.p2());

  double drift = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double t = i * h;
    const Amp k1 = hamiltonian_action(params, ansatz, t, y);
    const Amp y2{y.c1 + 0.5 * h * k1.c1, y.c2 + 0.5 * h * k1.c2};
    const Amp k2 = hamiltonian_action(params, ansatz, t + 0.5 * h, y2);
    const Amp y3{y.c1 + 0.5 * h * k2.c1, y.c2 + 0.5 * h * k2.c2};
    const Amp k3 = hamiltonian_action(params, ansatz, t + 0.5 * h, y3);
    const double t1 = (i + 1 == steps) ? tf : (i + 1) * h;
    const Amp y4{y.c1 + h * k3.c1, y.c2 + h * k3.c2};
    const Amp k4 = hamiltonian_action(params, ansatz, t1, y4);
    y.c1 += h / 6.0 * (k1.c1 + 2.0 * k2.c1 + 2.0 * k3.c1 + k4.c1);
    y.c2 += h / 6.0 * (k1.c2 + 2.0 * k2.c2 + 2.0 * k3.c2 + k4.c2);

    const double norm = std::sqrt(std::norm(y.c1) + std::norm(y.c2));
    drift = std::max(drift, std::abs(norm - 1.0));
    if (drift > norm_tol) {
      std::ostringstream msg;
      msg << "norm drift " << drift << " exceeds tolerance " << norm_tol
          << " at step " << i + 1 << " of " << steps
          << "; the grid is too coarse";
      throw ToleranceError(msg.str());
    }
    const SpinState state = SpinState::normalized(y.c1, y.c2);
    traj.times.push_back(t1);
    traj.states.push_back(state);
    traj.populations.emplace_back(std::norm(y.c1), std::norm(y.c2));
  }
  traj.norm_drift = drift;
  return traj;
}

Trajectory evolve(const DeviceParams& params, const Pulse& pulse,
                  const SpinState& psi0, double norm_tol) {
  return evolve_on_grid(params, pulse.ansatz,
                        static_cast<int>(pulse.steps()), psi0, norm_tol);
}

ModeCoefficients coefficients_from_initial(double theta_a0, double phi_a0,
                                           double theta_p0, double phi_p0) {
  const auto [chi_plus, chi_minus] = invariant_eigenstates(theta_a0, phi_a0);
  const SpinState psi0 = SpinState::from_bloch({theta_p0, phi_p0});
  ModeCoefficients coeffs{inner(chi_plus, psi0), inner(chi_minus, psi0)};
  check_coefficients(coeffs);
  return coeffs;
}

ModeCoefficients mode_coefficients(const AnsatzSolution& ansatz,
                                   int grid_steps) {
  const DesignSpec& spec = ansatz.spec;
  if (spec.mode == TransferMode::to_target) {
    const AngleSample start = eval_angles(ansatz, 0.0);
    return coefficients_from_initial(start.theta_a, start.phi_a,
                                     spec.boundary.theta, spec.boundary.phi);
  }
  const double tf = ansatz.params.t_f_ns;
  const AngleSample end = eval_angles(ansatz, tf);
  const auto [gp, gm] = lr_phases(ansatz, tf, grid_steps);
  const auto [chi_plus, chi_minus] =
      invariant_eigenstates(end.theta_a, end.phi_a);
  const SpinState target = SpinState::from_bloch(spec.boundary);
  ModeCoefficients coeffs{std::polar(1.0, -gp) * inner(chi_plus, target),
                          std::polar(1.0, -gm) * inner(chi_minus, target)};
  check_coefficients(coeffs);
  // The target's Bloch form fixes only the relative weight; rotate the
  // global phase so the reconstruction starts exactly at |1>.
  const AngleSample start = eval_angles(ansatz, 0.0);
  const auto [chi0_plus, chi0_minus] =
      invariant_eigenstates(start.theta_a, start.phi_a);
  const complex<double> amp1 =
      coeffs.c_plus * chi0_plus.c1() + coeffs.c_minus * chi0_minus.c1();
  const complex<double> rephase = std::polar(1.0, -std::arg(amp1));
  coeffs.c_plus *= rephase;
  coeffs.c_minus *= rephase;
  return coeffs;
}

SpinState reconstruct_lr(const AnsatzSolution& ansatz,
                         const ModeCoefficients& coeffs, double t_ns,
                         int grid_steps) {
  const AngleSample ang = eval_angles(ansatz, t_ns);
  const auto [gp, gm] = lr_phases(ansatz, t_ns, grid_steps);
  const auto [chi_plus, chi_minus] =
      invariant_eigenstates(ang.theta_a, ang.phi_a);
  const complex<double> wp = coeffs.c_plus * std::polar(1.0, gp);
  const complex<double> wm = coeffs.c_minus * std::polar(1.0, gm);
  return SpinState::normalized(wp * chi_plus.c1() + wm * chi_minus.c1(),
                               wp * chi_plus.c2() + wm * chi_minus.c2());
}

Trajectory reconstruct_trajectory(const AnsatzSolution& ansatz, int steps) {
  if (steps < 1) throw ConfigError("reconstruction grid needs at least 1 step");
  const ModeCoefficients coeffs = mode_coefficients(ansatz, steps);
  const auto profile = lr_phase_profile(ansatz, steps);
  const double tf = ansatz.params.t_f_ns;
  const double h = tf / steps;

  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.populations.reserve(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    const double t = (i == steps) ? tf : i * h;
    const AngleSample ang = eval_angles(ansatz, t);
    const auto [chi_plus, chi_minus] =
        invariant_eigenstates(ang.theta_a, ang.phi_a);
    const complex<double> wp = coeffs.c_plus * std::polar(1.0, profile[i].first);
    const complex<double> wm =
        coeffs.c_minus * std::polar(1.0, profile[i].second);
    const SpinState state =
        SpinState::normalized(wp * chi_plus.c1() + wm * chi_minus.c1(),
                              wp * chi_plus.c2() + wm * chi_minus.c2());
    traj.times.push_back(t);
    traj.states.push_back(state);
    traj.populations.emplace_back(state.p1(), state.p2());
  }
  traj.norm_drift = 0.0;
  return traj;
}

double transfer_condition_residual(double theta_a_tf, double eta,
                                   double u_tf) {
  return 1.0 + std::cos(theta_a_tf) * std::cos(eta) +
         std::sin(theta_a_tf) * std::sin(eta) * std::cos(u_tf);
}

SpinState initial_state(const DesignSpec& spec) {
  if (spec.mode == TransferMode::to_target)
    return SpinState::from_bloch(spec.boundary);
  return SpinState(1.0, 0.0);
}

SpinState target_state(const DesignSpec& spec) {
  if (spec.mode == TransferMode::to_target) return SpinState(0.0, 1.0);
  return SpinState::from_bloch(spec.boundary);
}

double protocol_fidelity(const DesignSpec& spec, const Trajectory& traj) {
  if (traj.states.empty()) throw ConfigError("empty trajectory");
  const double overlap = std::abs(inner(target_state(spec), traj.states.back()));
  return overlap * overlap;
}

std::pair<double, double> gate_check_hadamard(const DeviceParams& params,
                                              const Pulse& pulse,
                                              double norm_tol) {
  const Trajectory t1 = evolve(params, pulse, SpinState(1.0, 0.0), norm_tol);
  const Trajectory t2 = evolve(params, pulse, SpinState(0.0, 1.0), norm_tol);
  const SpinState plus = SpinState::normalized(1.0, 1.0);
  const SpinState minus = SpinState::normalized(1.0, -1.0);
  const double f1 = std::abs(inner(plus, t1.states.back()));
  const double f2 = std::abs(inner(minus, t2.states.back()));
  return {f1 * f1, f2 * f2};
}

}  // namespace stpulse
