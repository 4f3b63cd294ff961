#pragma once

#include <string>
#include <string_view>

#include "stpulse/designer.hpp"

namespace stpulse {

// Flat key=value run configuration. Defaults reproduce the first worked
// transfer (|1> to |2> at t_f = 0.4 ns, B = 3.67 T, g = -0.44, J = 0.1 meV,
// theta_a0 = pi/3, u(t_f) = 2 pi).
struct RunConfig {
  // device (keys: J_meV, g_factor, B_T, hbar_beta_meV_cm, alpha_over_beta, t_f_ns)
  double j_mev = 0.1;
  double g_factor = -0.44;
  double b_tesla = 3.67;
  double hbar_beta_mev_cm = 2.5e-7;
  double alpha_over_beta = 0.5;
  double t_f_ns = 0.4;

  // task (keys: mode, theta_p, phi_p, theta_a0, branch, k)
  TransferMode mode = TransferMode::to_target;
  double theta_p = 0.0;
  double phi_p = 0.0;
  double theta_a0 = constants::pi / 3.0;
  BranchSign branch = BranchSign::plus;
  int winding_k = 1;

  // numerics (keys: steps, fidelity_gate, norm_tol)
  int steps = kDefaultGridSteps;
  double fidelity_gate = 0.999;
  double norm_tol = 1e-6;

  // output (keys: out_dir, emit_pulse, emit_trajectory)
  std::string out_dir = ".";
  bool emit_pulse = true;
  bool emit_trajectory = true;

  bool operator==(const RunConfig&) const = default;

  DeviceParams device() const;  // validated
  DesignSpec task() const;
};

// Strict parser for the documented format: one `key = value` per line,
// '#' comments, unknown/duplicate keys rejected, unit-suffix mismatches
// diagnosed, all errors carry a line number. An empty document yields the
// defaults. Throws ConfigError.
RunConfig parse_config(std::string_view text);

RunConfig load_config_file(const std::string& path);

// Canonical serialization; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& cfg);

std::string to_string(TransferMode mode);
std::string to_string(BranchSign branch);

}  // namespace stpulse
