#include "stpulse/run_command.hpp"

#include <algorithm>
#include <filesystem>
#include <limits>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "stpulse/config.hpp"
#include "stpulse/csv_io.hpp"
#include "stpulse/designer.hpp"
#include "stpulse/dynamics.hpp"
#include "stpulse/errors.hpp"
#include "stpulse/sweep_opt.hpp"

namespace stpulse {

using namespace constants;

namespace {

constexpr int kUnsetSteps = -1;
constexpr int kUnsetK = std::numeric_limits<int>::min();

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  int steps = kUnsetSteps;
  int winding_k = kUnsetK;
  std::string branch;
};

void add_common_flags(CLI::App* sub, CommonFlags* flags) {
  sub->add_option("--config", flags->config_path, "config file (key = value)");
  sub->add_option("--out", flags->out_dir, "output directory");
  sub->add_option("--steps", flags->steps, "time grid intervals (>= 1000)");
  sub->add_option("--k", flags->winding_k, "winding integer k");
  sub->add_option("--branch", flags->branch, "branch sign")
      ->check(CLI::IsMember({"plus", "minus"}));
}

RunConfig make_config(const CommonFlags& flags) {
  RunConfig cfg = flags.config_path.empty()
                      ? RunConfig{}
                      : load_config_file(flags.config_path);
  if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
  if (flags.steps != kUnsetSteps) {
    if (flags.steps < 1000) throw ConfigError("steps must be at least 1000");
    cfg.steps = flags.steps;
  }
  if (flags.winding_k != kUnsetK) cfg.winding_k = flags.winding_k;
  if (flags.branch == "plus") cfg.branch = BranchSign::plus;
  else if (flags.branch == "minus") cfg.branch = BranchSign::minus;
  return cfg;
}

std::filesystem::path ensure_out_dir(const RunConfig& cfg) {
  const std::filesystem::path dir(cfg.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw ConfigError("cannot create output directory '" + cfg.out_dir +
                      "': " + ec.message());
  return dir;
}

void print_design_summary(std::ostream& out, const AnsatzSolution& ansatz,
                          double peak_field) {
  const DesignSpec& spec = ansatz.spec;
  out << "mode=" << to_string(spec.mode) << '\n'
      << "branch=" << to_string(spec.branch) << '\n'
      << "k=" << spec.winding_k << '\n'
      << "theta_a0_rad=" << format_double(spec.theta_a0) << '\n'
      << "theta_a_tf_rad=" << format_double(target_theta_af(spec)) << '\n'
      << "a_coeffs=" << format_double(ansatz.a[0]) << ','
      << format_double(ansatz.a[1]) << ',' << format_double(ansatz.a[2])
      << '\n'
      << "b_coeffs=" << format_double(ansatz.b[0]) << ','
      << format_double(ansatz.b[1]) << ',' << format_double(ansatz.b[2])
      << '\n'
      << "u_target_rad=" << format_double(ansatz.u_target) << '\n'
      << "e_max_mV_per_cm=" << format_double(peak_field) << '\n';
}

// design: solve the ansatz, synthesize the pulse, emit the pulse table with
// the invariant-mode reconstruction in the state columns.
int run_design(const RunConfig& cfg, std::ostream& out) {
  const AnsatzSolution ansatz = design_protocol(cfg.task(), cfg.device());
  const Pulse pulse = synthesize_pulse_steps(ansatz, cfg.steps);
  print_design_summary(out, ansatz, e_max(pulse));
  if (cfg.emit_pulse) {
    const auto dir = ensure_out_dir(cfg);
    const Trajectory recon = reconstruct_trajectory(ansatz, cfg.steps);
    emit_csv(recon, pulse, ansatz, (dir / "pulse.csv").string());
  }
  return 0;
}

// simulate: design + integrate the Schrodinger equation + fidelity line.
// The fidelity is printed before the gate is applied so a failed gate still
// reports the measured value.
int run_simulate(const RunConfig& cfg, std::ostream& out) {
  const AnsatzSolution ansatz = design_protocol(cfg.task(), cfg.device());
  const Pulse pulse = synthesize_pulse_steps(ansatz, cfg.steps);
  print_design_summary(out, ansatz, e_max(pulse));
  const Trajectory traj =
      evolve(cfg.device(), pulse, initial_state(cfg.task()), cfg.norm_tol);
  const double fidelity = protocol_fidelity(cfg.task(), traj);
  const auto dir = ensure_out_dir(cfg);
  if (cfg.emit_pulse) {
    const Trajectory recon = reconstruct_trajectory(ansatz, cfg.steps);
    emit_csv(recon, pulse, ansatz, (dir / "pulse.csv").string());
  }
  if (cfg.emit_trajectory)
    emit_csv(traj, pulse, ansatz, (dir / "trajectory.csv").string());
  out << "fidelity=" << format_double(fidelity) << '\n';
  if (fidelity < cfg.fidelity_gate)
    throw ToleranceError("fidelity " + format_double(fidelity) +
                         " below gate " + format_double(cfg.fidelity_gate));
  return 0;
}

int run_sweep(const RunConfig& cfg, double theta0_min, double theta0_max,
              int grid_n, std::ostream& out) {
  SweepOptions options;
  options.pulse_steps = cfg.steps;
  options.fidelity_gate = cfg.fidelity_gate;
  options.norm_tol = cfg.norm_tol;
  const SweepResult result = sweep_theta0(cfg.task(), cfg.device(), theta0_min,
                                          theta0_max, grid_n, options);
  const auto dir = ensure_out_dir(cfg);
  write_text_file((dir / "sweep.csv").string(), sweep_csv(result));
  const SweepPoint& best = result.best();
  out << "best theta_a0_rad=" << format_double(best.theta_a0)
      << " e_max_mV_per_cm=" << format_double(best.e_max_mv_cm) << '\n';
  return 0;
}

// gate-check: one shared pulse, both basis states evolved, both Hadamard
// fidelities printed, then gated.
int run_gate_check(const RunConfig& cfg, std::ostream& out) {
  const AnsatzSolution ansatz = design_protocol(cfg.task(), cfg.device());
  const Pulse pulse = synthesize_pulse_steps(ansatz, cfg.steps);
  const auto [f1, f2] = gate_check_hadamard(cfg.device(), pulse, cfg.norm_tol);
  out << "fidelity_1=" << format_double(f1) << '\n'
      << "fidelity_2=" << format_double(f2) << '\n';
  if (std::min(f1, f2) < cfg.fidelity_gate)
    throw ToleranceError("gate fidelity " + format_double(std::min(f1, f2)) +
                         " below gate " + format_double(cfg.fidelity_gate));
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"singlet-triplet pulse designer"};
  app.require_subcommand(1);

  CommonFlags flags;
  double theta0_min = 0.1 * pi;
  double theta0_max = 0.9 * pi;
  int grid_n = 33;

  CLI::App* design = app.add_subcommand("design", "solve the pulse ansatz");
  CLI::App* simulate =
      app.add_subcommand("simulate", "design + integrate + fidelity");
  CLI::App* sweep =
      app.add_subcommand("sweep", "peak field versus initial polar angle");
  CLI::App* gate_check =
      app.add_subcommand("gate-check", "Hadamard fidelities for both inputs");
  for (CLI::App* sub : {design, simulate, sweep, gate_check})
    add_common_flags(sub, &flags);
  sweep->add_option("--theta0-min", theta0_min, "sweep lower bound (rad)");
  sweep->add_option("--theta0-max", theta0_max, "sweep upper bound (rad)");
  sweep->add_option("--grid", grid_n, "sweep grid points (>= 3)");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("stpulse");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_store.size());
  for (const std::string& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    const RunConfig cfg = make_config(flags);
    if (design->parsed()) return run_design(cfg, out);
    if (simulate->parsed()) return run_simulate(cfg, out);
    if (sweep->parsed())
      return run_sweep(cfg, theta0_min, theta0_max, grid_n, out);
    return run_gate_check(cfg, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const ToleranceError& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace stpulse
