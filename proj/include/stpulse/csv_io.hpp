#pragma once

#include <string>

#include "stpulse/designer.hpp"
#include "stpulse/dynamics.hpp"
#include "stpulse/sweep_opt.hpp"

namespace stpulse {

// Shortest decimal string that round-trips through a double. Same input,
// same bytes, so repeated runs produce identical files.
std::string format_double(double x);

// 15-column trajectory table. The trajectory and pulse must share one grid.
// Bloch azimuths are unwrapped along the time axis so the column is
// continuous rather than jumping at branch cuts.
std::string trajectory_csv(const Trajectory& traj, const Pulse& pulse);

std::string sweep_csv(const SweepResult& result);

void write_text_file(const std::string& path, const std::string& text);

// Writes the trajectory table for an explicit ansatz (angle columns come
// from `ansatz`, gauge/field columns from `pulse`).
void emit_csv(const Trajectory& traj, const Pulse& pulse,
              const AnsatzSolution& ansatz, const std::string& path);

}  // namespace stpulse
