#include "stpulse/designer.hpp"

#include <cmath>
#include <sstream>

namespace stpulse {

using namespace constants;

void validate_spec(const DesignSpec& spec) {
  if (!(spec.boundary.theta >= 0.0 && spec.boundary.theta <= pi))
    throw ConfigError("theta_p must lie in [0, pi]");
  if (!(spec.theta_a0 > 0.0 && spec.theta_a0 < pi))
    throw ConfigError("theta_a0 must lie strictly between 0 and pi");
  if (!(std::abs(spec.boundary.phi) < 0.5 * pi)) {
    std::ostringstream msg;
    msg << "cannot anchor the auxiliary azimuth to phi_p = " << spec.boundary.phi
        << ": the principal-branch ansatz only reaches azimuths in (-pi/2, pi/2)";
    throw InfeasibleError(msg.str());
  }
}

double branch_u_target(const DesignSpec& spec) {
  const double k = static_cast<double>(spec.winding_k);
  return spec.branch == BranchSign::plus ? 2.0 * k * pi : (2.0 * k - 1.0) * pi;
}

double target_theta_af(const DesignSpec& spec) {
  if (spec.mode == TransferMode::to_target) {
    return spec.branch == BranchSign::plus
               ? spec.theta_a0 - spec.boundary.theta + pi
               : -spec.theta_a0 + spec.boundary.theta + pi;
  }
  if (spec.branch == BranchSign::minus)
    throw InfeasibleError(
        "unsupported branch: the from-initial transfer is only derived for "
        "cos u(t_f) = +1; use branch=plus");
  return spec.boundary.theta + spec.theta_a0;
}

std::array<double, 3> solve_theta_coeffs(double theta_a0, double theta_a_tf,
                                         double t_f_ns) {
  if (!(t_f_ns > 0.0)) throw ConfigError("t_f_ns must be > 0");
  return {theta_a0, 0.0, (theta_a_tf - theta_a0) / (t_f_ns * t_f_ns)};
}

namespace {

// Smaller-magnitude real root of A2 x^2 + B1 x + C0 = 0 with A2 != 0, ties
// resolved toward the non-negative root; evaluated in the cancellation-free
// form. Throws InfeasibleError when the discriminant is negative.
double smaller_root(double a2c, double b1c, double c0c) {
  const double disc = b1c * b1c - 4.0 * a2c * c0c;
  if (disc < 0.0)
    throw InfeasibleError(
        "unsolvable ansatz: the azimuth constraints admit no real solution; "
        "try a different theta_a0 or winding k");
  const double sq = std::sqrt(disc);
  double r1, r2;
  if (b1c == 0.0) {
    r1 = sq / (2.0 * a2c);
    r2 = -r1;
  } else {
    const double qq = -0.5 * (b1c + std::copysign(sq, b1c));
    r1 = qq / a2c;
    r2 = c0c / qq;
  }
  if (std::abs(r1) < std::abs(r2)) return r1;
  if (std::abs(r2) < std::abs(r1)) return r2;
  return std::max(r1, r2);
}

}  // namespace

std::array<double, 3> solve_phi_coeffs(const std::array<double, 3>& a,
                                       const DesignSpec& spec,
                                       const DeviceParams& params) {
  const double tf = params.t_f_ns;
  const double kappa = params.detuning_rate();
  const double s0 = std::sin(spec.theta_a0);
  if (std::abs(s0) < 1e-12)
    throw ConfigError("sin(theta_a0) vanishes; theta_a0 must avoid multiples of pi");
  const double u_target = branch_u_target(spec);
  const double a2 = a[2];

  if (spec.mode == TransferMode::to_target) {
    const double b0 = std::tan(spec.boundary.phi) / s0;
    const double phi_a0 = std::atan(b0 * s0);
    const double cp = std::cos(phi_a0);
    const double b1 = kappa / (cp * cp * s0);
    if (a2 == 0.0) {
      if (u_target != 0.0)
        throw InfeasibleError(
            "unsolvable ansatz: a static theta_a cannot wind u(t_f) to a "
            "nonzero target; pick the k that makes the winding target zero");
      return {b0, b1, 0.0};
    }
    const double b2 = (-u_target / (2.0 * a2) - b0 * tf * tf / 2.0 -
                       b1 * tf * tf * tf / 3.0) *
                      4.0 / (tf * tf * tf * tf);
    return {b0, b1, b2};
  }

  // from_initial: the azimuth anchor sits at t_f,
  //   R1:  b0 + b1 t_f + b2 t_f^2 = A      with A = tan(phi_p)/sin(theta_af)
  //   R2:  dphi_a(0) = b1 s0 / (1 + b0^2 s0^2) = kappa
  //   R3:  b0 t_f^2/2 + b1 t_f^3/3 + b2 t_f^4/4 = C  with C = -u_target/(2 a2).
  // Eliminating b2 between R1 and R3 gives b1 = p + q b0; substituting into
  // R2 yields the quadratic kappa s0^2 b0^2 - q s0 b0 + (kappa - p s0) = 0.
  const double theta_af = target_theta_af(spec);
  const double sf = std::sin(theta_af);
  if (std::abs(sf) < 1e-12)
    throw InfeasibleError(
        "unsolvable ansatz: sin(theta_a(t_f)) = 0 degenerates the "
        "final-azimuth anchor; try a different theta_a0");
  const double anchor = std::tan(spec.boundary.phi) / sf;

  double p, q;
  bool solve_b2 = true;
  if (a2 != 0.0) {
    const double c_row = -u_target / (2.0 * a2);
    q = -3.0 / tf;
    p = 12.0 * c_row / (tf * tf * tf) - 3.0 * anchor / tf;
  } else {
    if (u_target != 0.0)
      throw InfeasibleError(
          "unsolvable ansatz: a static theta_a cannot wind u(t_f) to a "
          "nonzero target; pick the k that makes the winding target zero");
    q = -1.0 / tf;
    p = anchor / tf;
    solve_b2 = false;
  }

  double b0;
  if (kappa == 0.0) {
    b0 = -p / q;
  } else {
    b0 = smaller_root(kappa * s0 * s0, -q * s0, kappa - p * s0);
  }
  const double b1 = p + q * b0;
  const double b2 = solve_b2 ? (anchor - b0 - b1 * tf) / (tf * tf) : 0.0;
  return {b0, b1, b2};
}

AnsatzSolution design_protocol(const DesignSpec& spec,
                               const DeviceParams& params) {
  validate_spec(spec);
  const double theta_af = target_theta_af(spec);
  const auto a = solve_theta_coeffs(spec.theta_a0, theta_af, params.t_f_ns);
  const auto b = solve_phi_coeffs(a, spec, params);
  AnsatzSolution ansatz{a, b, branch_u_target(spec), spec, params};

  const double u_tf = u_of_t(ansatz, params.t_f_ns);
  const double u_err = std::abs(u_tf - ansatz.u_target);
  if (u_err > 1e-12 * std::max(1.0, std::abs(ansatz.u_target))) {
    std::ostringstream msg;
    msg << "solved ansatz misses the winding target: |u(t_f) - u_target| = "
        << u_err;
    throw ToleranceError(msg.str());
  }
  const AngleSample start = eval_angles(ansatz, 0.0);
  const double rate_err = std::abs(start.dphi_a - params.detuning_rate());
  if (rate_err > 1e-10) {
    std::ostringstream msg;
    msg << "solved ansatz misses the initial azimuth rate by " << rate_err
        << " rad/ns";
    throw ToleranceError(msg.str());
  }
  return ansatz;
}

namespace {

// Shared polynomial/trig evaluation for one time point.
struct Eval {
  double th, dth, ddth;
  double g, dg, ddg;
  double s, c;
  double big_g, dbig_g, d2big_g;  // G = g sin(theta_a) and derivatives
  double phi, dphi, d2phi;
  double sec;  // sqrt(1 + G^2) = sec(phi_a) on the principal branch
};

Eval eval_at(const AnsatzSolution& z, double t) {
  Eval e;
  e.th = z.a[0] + t * (z.a[1] + t * z.a[2]);
  e.dth = z.a[1] + 2.0 * z.a[2] * t;
  e.ddth = 2.0 * z.a[2];
  e.g = z.b[0] + t * (z.b[1] + t * z.b[2]);
  e.dg = z.b[1] + 2.0 * z.b[2] * t;
  e.ddg = 2.0 * z.b[2];
  e.s = std::sin(e.th);
  e.c = std::cos(e.th);
  e.big_g = e.g * e.s;
  e.dbig_g = e.dg * e.s + e.g * e.dth * e.c;
  e.d2big_g = e.ddg * e.s + 2.0 * e.dg * e.dth * e.c + e.g * e.ddth * e.c -
              e.g * e.dth * e.dth * e.s;
  const double one = 1.0 + e.big_g * e.big_g;
  e.phi = std::atan(e.big_g);
  e.dphi = e.dbig_g / one;
  e.d2phi = e.d2big_g / one -
            2.0 * e.big_g * e.dbig_g * e.dbig_g / (one * one);
  e.sec = std::sqrt(one);
  return e;
}

}  // namespace

AngleSample eval_angles(const AnsatzSolution& ansatz, double t_ns) {
  const Eval e = eval_at(ansatz, t_ns);
  return {e.th, e.phi, e.dth, e.dphi};
}

double u_of_t(const AnsatzSolution& ansatz, double t_ns) {
  // dtheta_a(t) g(t) is a cubic; integrate term by term.
  const auto& a = ansatz.a;
  const auto& b = ansatz.b;
  const double c0 = a[1] * b[0];
  const double c1 = a[1] * b[1] + 2.0 * a[2] * b[0];
  const double c2 = a[1] * b[2] + 2.0 * a[2] * b[1];
  const double c3 = 2.0 * a[2] * b[2];
  const double t = t_ns;
  return -(c0 * t + c1 * t * t / 2.0 + c2 * t * t * t / 3.0 +
           c3 * t * t * t * t / 4.0);
}

std::pair<double, double> lr_phase_rates(const AnsatzSolution& ansatz,
                                         double t_ns) {
  const Eval e = eval_at(ansatz, t_ns);
  const double base = 0.75 * ansatz.params.j_mev / hbar;
  const double half = 0.5 * e.th;
  const double sh = std::sin(half), ch = std::cos(half);
  const double plus = base + e.dth * e.g * sh * sh - e.dphi;
  const double minus = base - e.dth * e.g * ch * ch;
  return {plus, minus};
}

namespace {

// One Simpson cell of both phase rates over [t0, t1].
std::pair<double, double> phase_cell(const AnsatzSolution& z, double t0,
                                     double t1) {
  const auto f0 = lr_phase_rates(z, t0);
  const auto fm = lr_phase_rates(z, 0.5 * (t0 + t1));
  const auto f1 = lr_phase_rates(z, t1);
  const double w = (t1 - t0) / 6.0;
  return {w * (f0.first + 4.0 * fm.first + f1.first),
          w * (f0.second + 4.0 * fm.second + f1.second)};
}

}  // namespace

std::pair<double, double> lr_phases(const AnsatzSolution& ansatz, double t_ns,
                                    int grid_steps) {
  if (grid_steps < 1) throw ConfigError("phase grid needs at least 1 cell");
  const double tf = ansatz.params.t_f_ns;
  const double h = tf / grid_steps;
  int full = static_cast<int>(std::floor(t_ns / h));
  if (full > grid_steps) full = grid_steps;
  if (full < 0) full = 0;
  double gp = 0.0, gm = 0.0;
  for (int i = 0; i < full; ++i) {
    const auto cell = phase_cell(ansatz, i * h, (i + 1) * h);
    gp += cell.first;
    gm += cell.second;
  }
  const double t0 = full * h;
  if (t_ns - t0 > 1e-15 * std::max(1.0, tf)) {
    const auto cell = phase_cell(ansatz, t0, t_ns);
    gp += cell.first;
    gm += cell.second;
  }
  return {gp, gm};
}

std::vector<std::pair<double, double>> lr_phase_profile(
    const AnsatzSolution& ansatz, int grid_steps) {
  if (grid_steps < 1) throw ConfigError("phase grid needs at least 1 cell");
  const double tf = ansatz.params.t_f_ns;
  const double h = tf / grid_steps;
  std::vector<std::pair<double, double>> out;
  out.reserve(grid_steps + 1);
  out.emplace_back(0.0, 0.0);
  double gp = 0.0, gm = 0.0;
  for (int i = 0; i < grid_steps; ++i) {
    const double t0 = i * h;
    const double t1 = (i + 1 == grid_steps) ? tf : (i + 1) * h;
    const auto cell = phase_cell(ansatz, t0, t1);
    gp += cell.first;
    gm += cell.second;
    out.emplace_back(gp, gm);
  }
  return out;
}

std::pair<double, double> gauge_at(const AnsatzSolution& ansatz, double t_ns) {
  const Eval e = eval_at(ansatz, t_ns);
  const double kappa = ansatz.params.detuning_rate();
  const double common = kappa - e.dphi - e.dth * e.g * e.c;
  const double diff =
      e.dth * e.sec / (sqrt2 * ansatz.params.alpha_over_beta);
  return {hbar * (common + diff), hbar * (common - diff)};
}

std::pair<double, double> field_at(const AnsatzSolution& ansatz, double t_ns) {
  const Eval e = eval_at(ansatz, t_ns);
  const double d_common =
      -e.d2phi -
      (e.ddth * e.g * e.c + e.dth * e.dg * e.c - e.dth * e.dth * e.g * e.s);
  const double d_diff = (e.ddth * e.sec + e.dth * e.big_g * e.dbig_g / e.sec) /
                        (sqrt2 * ansatz.params.alpha_over_beta);
  const double da_l = hbar * (d_common + d_diff);
  const double da_r = hbar * (d_common - d_diff);
  // E = -(hbar / (2 hbar_beta)) d(a~)/dt, in meV/cm == mV/cm numerically.
  const double scale = -hbar / (2.0 * ansatz.params.hbar_beta_mev_cm);
  return {scale * da_l, scale * da_r};
}

Pulse synthesize_pulse_steps(const AnsatzSolution& ansatz, int steps) {
  if (steps < 1000)
    throw ConfigError("pulse grid must divide t_f into at least 1000 intervals");
  const double tf = ansatz.params.t_f_ns;
  const double h = tf / steps;
  Pulse pulse;
  pulse.ansatz = ansatz;
  pulse.times.reserve(steps + 1);
  pulse.a_l.reserve(steps + 1);
  pulse.a_r.reserve(steps + 1);
  pulse.e_l.reserve(steps + 1);
  pulse.e_r.reserve(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    const double t = (i == steps) ? tf : i * h;
    const auto [al, ar] = gauge_at(ansatz, t);
    const auto [el, er] = field_at(ansatz, t);
    pulse.times.push_back(t);
    pulse.a_l.push_back(al);
    pulse.a_r.push_back(ar);
    pulse.e_l.push_back(el);
    pulse.e_r.push_back(er);
  }
  const double start = std::max(std::abs(pulse.a_l.front()),
                                std::abs(pulse.a_r.front()));
  if (start > 1e-8) {
    std::ostringstream msg;
    msg << "gauge does not start at zero: |a~(0)| = " << start
        << " meV signals an inconsistent design";
    throw ToleranceError(msg.str());
  }
  return pulse;
}

Pulse synthesize_pulse(const AnsatzSolution& ansatz, double grid_step_ns) {
  if (!(grid_step_ns > 0.0)) throw ConfigError("grid step must be > 0");
  const double tf = ansatz.params.t_f_ns;
  const long long n = std::llround(tf / grid_step_ns);
  if (n < 1000)
    throw ConfigError("pulse grid must divide t_f into at least 1000 intervals");
  return synthesize_pulse_steps(ansatz, static_cast<int>(n));
}

}  // namespace stpulse
