#include "stpulse/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "stpulse/errors.hpp"

namespace stpulse {

using namespace constants;

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

namespace {

// Shift an angle by whole turns so it lands as close as possible to `prev`.
double unwrap_towards(double prev, double raw) {
  return raw + 2.0 * pi * std::round((prev - raw) / (2.0 * pi));
}

void check_shared_grid(const Trajectory& traj, const Pulse& pulse) {
  if (traj.times.size() != pulse.times.size())
    throw ConfigError("trajectory and pulse grids differ in length");
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    if (traj.times[i] != pulse.times[i])
      throw ConfigError("trajectory and pulse grids differ");
}

std::string build_trajectory_csv(const Trajectory& traj, const Pulse& pulse,
                                 const AnsatzSolution& ansatz) {
  check_shared_grid(traj, pulse);
  std::ostringstream out;
  out << "t_ns,theta_a_rad,phi_a_rad,theta_p_rad,phi_p_rad,a_L_meV,a_R_meV,"
         "E_L_mV_per_cm,E_R_mV_per_cm,re_psi1,im_psi1,re_psi2,im_psi2,P1,P2\n";
  double prev_phi_p = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    const AngleSample ang = eval_angles(ansatz, t);
    const SpinState& psi = traj.states[i];
    BlochAngles bloch = psi.to_bloch();
    bloch.phi = i == 0 ? bloch.phi : unwrap_towards(prev_phi_p, bloch.phi);
    prev_phi_p = bloch.phi;
    out << format_double(t) << ',' << format_double(ang.theta_a) << ','
        << format_double(ang.phi_a) << ',' << format_double(bloch.theta) << ','
        << format_double(bloch.phi) << ',' << format_double(pulse.a_l[i])
        << ',' << format_double(pulse.a_r[i]) << ','
        << format_double(pulse.e_l[i]) << ',' << format_double(pulse.e_r[i])
        << ',' << format_double(psi.c1().real())
        << ',' << format_double(psi.c1().imag()) << ','
        << format_double(psi.c2().real()) << ','
        << format_double(psi.c2().imag()) << ',' << format_double(psi.p1())
        << ',' << format_double(psi.p2()) << '\n';
  }
  return out.str();
}

}  // namespace

std::string trajectory_csv(const Trajectory& traj, const Pulse& pulse) {
  return build_trajectory_csv(traj, pulse, pulse.ansatz);
}

void emit_csv(const Trajectory& traj, const Pulse& pulse,
              const AnsatzSolution& ansatz, const std::string& path) {
  write_text_file(path, build_trajectory_csv(traj, pulse, ansatz));
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "theta_a0_rad,e_max_mV_per_cm,feasible\n";
  for (const SweepPoint& pt : result.grid)
    out << format_double(pt.theta_a0) << ','
        << format_double(pt.e_max_mv_cm) << ',' << (pt.feasible ? 1 : 0)
        << '\n';
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

}  // namespace stpulse
