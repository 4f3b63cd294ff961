#include "stpulse/sweep_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stpulse {

using namespace constants;

double e_max(const Pulse& pulse) {
  if (pulse.times.empty()) return 0.0;
  double peak = 0.0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < pulse.times.size(); ++i) {
    const double m = std::max(std::abs(pulse.e_l[i]), std::abs(pulse.e_r[i]));
    if (m > peak) {
      peak = m;
      at = i;
    }
  }
  // Refine around the discrete argmax at 10x grid density.
  const std::size_t last = pulse.times.size() - 1;
  const double lo = pulse.times[at == 0 ? 0 : at - 1];
  const double hi = pulse.times[std::min(at + 1, last)];
  for (int j = 0; j <= 20; ++j) {
    const double t = lo + (hi - lo) * j / 20.0;
    const auto [el, er] = pulse.field(t);
    peak = std::max({peak, std::abs(el), std::abs(er)});
  }
  return peak;
}

namespace {

struct PointEval {
  double e_max_mv_cm = std::numeric_limits<double>::quiet_NaN();
  bool feasible = false;
};

PointEval evaluate_point(const DesignSpec& spec, const DeviceParams& params,
                         const SweepOptions& options) {
  PointEval out;
  try {
    const AnsatzSolution ansatz = design_protocol(spec, params);
    const Pulse pulse = synthesize_pulse_steps(ansatz, options.pulse_steps);
    const Trajectory traj =
        evolve(params, pulse, initial_state(spec), options.norm_tol);
    const double fid = protocol_fidelity(spec, traj);
    out.e_max_mv_cm = e_max(pulse);
    out.feasible =
        fid >= options.fidelity_gate && std::isfinite(out.e_max_mv_cm);
  } catch (const InfeasibleError&) {
  } catch (const ToleranceError&) {
  }
  return out;
}

}  // namespace

SweepResult sweep_theta0(const DesignSpec& spec_template,
                         const DeviceParams& params, double theta_lo,
                         double theta_hi, int n, const SweepOptions& options) {
  if (n < 3) throw ConfigError("sweep grid needs at least 3 points");
  if (!(theta_lo < theta_hi))
    throw ConfigError("sweep range must satisfy theta0-min < theta0-max");
  if (!(theta_lo > 0.0 && theta_hi < pi))
    throw ConfigError("sweep range must stay strictly inside (0, pi)");

  SweepResult result;
  result.spec_template = spec_template;
  result.params = params;
  result.options = options;
  result.grid.reserve(n);

  double best = std::numeric_limits<double>::infinity();
  bool any = false;
  for (int i = 0; i < n; ++i) {
    const double theta = theta_lo + (theta_hi - theta_lo) * i / (n - 1);
    DesignSpec spec = spec_template;
    spec.theta_a0 = theta;
    const PointEval ev = evaluate_point(spec, params, options);
    result.grid.push_back({theta, ev.e_max_mv_cm, ev.feasible});
    if (ev.feasible && ev.e_max_mv_cm < best) {
      best = ev.e_max_mv_cm;
      result.best_index = result.grid.size() - 1;
      any = true;
    }
  }
  if (!any)
    throw InfeasibleError("no feasible design in the sweep range");
  return result;
}

double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, double tol_x, double* min_value) {
  if (!(hi > lo)) throw ConfigError("golden section needs lo < hi");
  if (!(tol_x > 0.0)) throw ConfigError("golden section needs tol > 0");
  const double gr = 0.5 * (std::sqrt(5.0) + 1.0);
  double c = hi - (hi - lo) / gr;
  double d = lo + (hi - lo) / gr;
  double fc = f(c), fd = f(d);
  while (hi - lo > tol_x) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - (hi - lo) / gr;
      fc = f(c);
    } else if (fd < fc) {
      lo = c;
      c = d;
      fc = fd;
      d = lo + (hi - lo) / gr;
      fd = f(d);
    } else {
      // Tie: the minimum of a unimodal function lies within [c, d].
      lo = c;
      hi = d;
      c = hi - (hi - lo) / gr;
      d = lo + (hi - lo) / gr;
      fc = f(c);
      fd = f(d);
    }
  }
  const double x = 0.5 * (lo + hi);
  if (min_value) *min_value = f(x);
  return x;
}

RefinedMin refine_min(const SweepResult& result, double tol_rad) {
  if (result.grid.empty()) throw ConfigError("refine_min needs a sweep result");
  if (!(tol_rad > 0.0)) throw ConfigError("refine tolerance must be > 0");
  const std::size_t i = result.best_index;
  const SweepPoint& discrete = result.grid.at(i);
  if (!discrete.feasible)
    throw ConfigError("refine_min needs a feasible discrete minimum");
  const RefinedMin fallback{discrete.theta_a0, discrete.e_max_mv_cm, false};

  if (i == 0 || i + 1 >= result.grid.size()) return fallback;
  const SweepPoint& left = result.grid[i - 1];
  const SweepPoint& right = result.grid[i + 1];
  if (!left.feasible || !right.feasible) return fallback;
  if (right.theta_a0 - left.theta_a0 <= tol_rad) return fallback;

  const auto objective = [&](double theta) -> double {
    DesignSpec spec = result.spec_template;
    spec.theta_a0 = theta;
    const PointEval ev = evaluate_point(spec, result.params, result.options);
    return ev.feasible ? ev.e_max_mv_cm
                       : std::numeric_limits<double>::infinity();
  };
  double value = 0.0;
  const double theta = golden_section_min(objective, left.theta_a0,
                                          right.theta_a0, tol_rad, &value);
  if (std::isfinite(value) && value <= discrete.e_max_mv_cm)
    return {theta, value, true};
  return fallback;
}

}  // namespace stpulse
