#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "stpulse/dynamics.hpp"

namespace stpulse {

// Peak absolute field over both electrodes and the whole grid, refined by
// sampling the analytic field at 10x density around the discrete argmax.
double e_max(const Pulse& pulse);

struct SweepPoint {
  double theta_a0 = 0.0;
  double e_max_mv_cm = 0.0;  // NaN when the design could not be evaluated
  bool feasible = false;
};

struct SweepOptions {
  int pulse_steps = kDefaultGridSteps;
  double fidelity_gate = 0.999;
  double norm_tol = 1e-6;
};

struct SweepResult {
  std::vector<SweepPoint> grid;
  std::size_t best_index = 0;  // argmin of e_max over feasible points
  DesignSpec spec_template;
  DeviceParams params{};
  SweepOptions options;

  const SweepPoint& best() const { return grid.at(best_index); }
};

// Designs, synthesizes and verifies the protocol at n uniformly spaced
// theta_a0 values in [theta_lo, theta_hi] (strictly inside (0, pi), n >= 3).
// Infeasible points (unsolvable ansatz or failed fidelity gate) are flagged
// and kept. Throws InfeasibleError when no point is feasible.
SweepResult sweep_theta0(const DesignSpec& spec_template,
                         const DeviceParams& params, double theta_lo,
                         double theta_hi, int n,
                         const SweepOptions& options = {});

struct RefinedMin {
  double theta_a0 = 0.0;
  double e_max_mv_cm = 0.0;
  bool refined = false;  // false: returned the discrete grid minimum
};

// Golden-section refinement of e_max(theta_a0) between the feasible
// neighbors of the discrete argmin, down to a bracket of width tol_rad.
// Falls back to the discrete best (refined = false) when no valid bracket
// exists, when tol_rad already covers the bracket, or when refinement fails
// to improve on the grid value.
RefinedMin refine_min(const SweepResult& result, double tol_rad);

// Deterministic golden-section minimizer on [lo, hi]; shrinks the bracket
// below tol_x and returns its midpoint (ties shrink both sides, so a flat
// objective converges to the midpoint). Optionally reports f at the result.
double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, double tol_x, double* min_value = nullptr);

}  // namespace stpulse
