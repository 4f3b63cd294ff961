#include "stpulse/core_model.hpp"

#include <cmath>
#include <sstream>

namespace stpulse {

using std::complex;
using namespace constants;

double delta_from_zeeman(double g_factor, double b_tesla) {
  return g_factor * mu_bohr * b_tesla;
}

DeviceParams DeviceParams::make(double j_mev, double g_factor, double b_tesla,
                                double hbar_beta_mev_cm, double alpha_over_beta,
                                double t_f_ns) {
  if (!(j_mev > 0.0)) throw ConfigError("J_meV must be > 0");
  if (!(t_f_ns > 0.0)) throw ConfigError("t_f_ns must be > 0");
  if (hbar_beta_mev_cm == 0.0 || !std::isfinite(hbar_beta_mev_cm))
    throw ConfigError("hbar_beta_meV_cm must be nonzero and finite");
  if (!(alpha_over_beta > 0.0))
    throw ConfigError("alpha_over_beta must be > 0");
  DeviceParams p{j_mev, g_factor, b_tesla, hbar_beta_mev_cm, alpha_over_beta,
                 t_f_ns};
  const double gap = std::abs(j_mev + p.delta_mev());
  if (!(gap < j_mev)) {
    std::ostringstream msg;
    msg << "parameters leave the near-degeneracy regime: |J + Delta| = " << gap
        << " meV is not below J = " << j_mev << " meV";
    throw ConfigError(msg.str());
  }
  return p;
}

SpinState::SpinState(complex<double> c1, complex<double> c2) : c1_(c1), c2_(c2) {
  const double norm2 = std::norm(c1) + std::norm(c2);
  if (std::abs(norm2 - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "state norm^2 = " << norm2 << " is not 1 within 1e-12";
    throw ToleranceError(msg.str());
  }
}

SpinState SpinState::normalized(complex<double> c1, complex<double> c2) {
  const double n = std::sqrt(std::norm(c1) + std::norm(c2));
  if (!(n > 0.0) || !std::isfinite(n))
    throw ToleranceError("cannot normalize a zero or non-finite state");
  return SpinState(c1 / n, c2 / n);
}

SpinState SpinState::from_bloch(const BlochAngles& angles) {
  const double half = 0.5 * angles.theta;
  return SpinState(std::polar(std::cos(half), angles.phi), std::sin(half));
}

BlochAngles SpinState::to_bloch() const {
  BlochAngles out;
  out.theta = 2.0 * std::atan2(std::abs(c2_), std::abs(c1_));
  const complex<double> cross = c1_ * std::conj(c2_);
  out.phi = (cross == 0.0) ? 0.0 : std::arg(cross);
  return out;
}

Eigen::Vector2cd SpinState::vec() const {
  return Eigen::Vector2cd(c1_, c2_);
}

complex<double> inner(const SpinState& a, const SpinState& b) {
  return std::conj(a.c1()) * b.c1() + std::conj(a.c2()) * b.c2();
}

double distance_up_to_phase(const SpinState& a, const SpinState& b) {
  const double overlap = std::abs(inner(a, b));
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap));
}

Eigen::Matrix2cd hamiltonian_matrix(const HamiltonianSample& h) {
  Eigen::Matrix2cd m;
  const complex<double> off(h.x, h.y);
  m << complex<double>(h.z1, 0.0), off, std::conj(off),
      complex<double>(h.z2, 0.0);
  return 0.5 * hbar * m;
}

HamiltonianSample hamiltonian_at(const DeviceParams& params, double a_l_mev,
                                 double a_r_mev) {
  HamiltonianSample h;
  h.x = 0.0;
  h.y = -params.alpha_over_beta * (a_l_mev - a_r_mev) / (sqrt2 * hbar);
  h.z1 = -1.5 * params.j_mev / hbar;
  h.z2 = (0.5 * params.j_mev + 2.0 * params.delta_mev() - (a_l_mev + a_r_mev)) /
         hbar;
  return h;
}

double off_diagonal_rate_raw_gauge(const DeviceParams& params, double a_l_mev,
                                   double a_r_mev) {
  const double beta = params.hbar_beta_mev_cm / hbar;  // cm/ns
  const double alpha = params.alpha_over_beta * beta;  // cm/ns
  const double ax_l = a_l_mev / (2.0 * beta);          // (e/c) A^x_L, meV ns/cm
  const double ax_r = a_r_mev / (2.0 * beta);
  return -sqrt2 * alpha / hbar * (ax_l - ax_r);
}

HamiltonianSample hamiltonian_from_angles(double theta_a, double phi_a,
                                          double dtheta_a, double dphi_a,
                                          double rate_plus, double rate_minus) {
  const double w = rate_minus - rate_plus - dphi_a;
  const double s = std::sin(theta_a), c = std::cos(theta_a);
  const double sp = std::sin(phi_a), cp = std::cos(phi_a);
  HamiltonianSample h;
  h.x = w * s * cp + dtheta_a * sp;
  h.y = w * s * sp - dtheta_a * cp;
  h.z1 = -(rate_minus + rate_plus) - dphi_a + w * c;
  h.z2 = -(rate_minus + rate_plus) + dphi_a - w * c;
  return h;
}

Eigen::Matrix2cd invariant_matrix(const InvariantSample& inv) {
  const double scale = 0.5 * inv.g_factor * mu_bohr * inv.b_c_tesla;
  const double s = std::sin(inv.theta_a), c = std::cos(inv.theta_a);
  const complex<double> off = s * std::polar(1.0, inv.phi_a);
  Eigen::Matrix2cd m;
  m << complex<double>(c, 0.0), off, std::conj(off), complex<double>(-c, 0.0);
  return scale * m;
}

std::pair<SpinState, SpinState> invariant_eigenstates(double theta_a,
                                                      double phi_a) {
  const double half = 0.5 * theta_a;
  const double ch = std::cos(half), sh = std::sin(half);
  SpinState plus(std::polar(ch, phi_a), sh);
  SpinState minus(sh, -std::polar(ch, -phi_a));
  return {plus, minus};
}

double invariance_defect(const HamiltonianSample& h, const InvariantSample& inv,
                         double dtheta_a, double dphi_a) {
  const double scale = 0.5 * inv.g_factor * mu_bohr * inv.b_c_tesla;
  const double s = std::sin(inv.theta_a), c = std::cos(inv.theta_a);
  const complex<double> phase = std::polar(1.0, inv.phi_a);
  const complex<double> doff = (c * dtheta_a + complex<double>(0.0, s * dphi_a)) * phase;
  Eigen::Matrix2cd di;
  di << complex<double>(-s * dtheta_a, 0.0), doff, std::conj(doff),
      complex<double>(s * dtheta_a, 0.0);
  di *= scale;

  const Eigen::Matrix2cd hm = hamiltonian_matrix(h);
  const Eigen::Matrix2cd im = invariant_matrix(inv);
  const Eigen::Matrix2cd defect =
      di + complex<double>(0.0, 1.0 / hbar) * (hm * im - im * hm);
  return defect.cwiseAbs().maxCoeff();
}

}  // namespace stpulse
