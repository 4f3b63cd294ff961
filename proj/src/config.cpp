#include "stpulse/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "stpulse/csv_io.hpp"

namespace stpulse {

using namespace constants;

DeviceParams RunConfig::device() const {
  return DeviceParams::make(j_mev, g_factor, b_tesla, hbar_beta_mev_cm,
                            alpha_over_beta, t_f_ns);
}

DesignSpec RunConfig::task() const {
  return DesignSpec{mode, BlochAngles{theta_p, phi_p}, theta_a0, branch,
                    winding_k};
}

std::string to_string(TransferMode mode) {
  return mode == TransferMode::to_target ? "to-target" : "from-initial";
}

std::string to_string(BranchSign branch) {
  return branch == BranchSign::plus ? "plus" : "minus";
}

namespace {

constexpr std::array kKnownKeys = {
    "J_meV",     "g_factor",      "B_T",      "hbar_beta_meV_cm",
    "alpha_over_beta", "t_f_ns",  "mode",     "theta_p",
    "phi_p",     "theta_a0",      "branch",   "k",
    "steps",     "fidelity_gate", "norm_tol", "out_dir",
    "emit_pulse", "emit_trajectory"};

[[noreturn]] void fail(int line, const std::string& what) {
  std::ostringstream msg;
  msg << "line " << line << ": " << what;
  throw ConfigError(msg.str());
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(int line, std::string_view key, std::string_view value) {
  double out = 0.0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto res = std::from_chars(begin, end, out);
  if (res.ec != std::errc{} || res.ptr != end)
    fail(line, "value for '" + std::string(key) + "' is not a number");
  return out;
}

int parse_int(int line, std::string_view key, std::string_view value) {
  int out = 0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto res = std::from_chars(begin, end, out);
  if (res.ec != std::errc{} || res.ptr != end)
    fail(line, "value for '" + std::string(key) + "' is not an integer");
  return out;
}

bool parse_bool(int line, std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  fail(line, "value for '" + std::string(key) + "' must be true or false");
}

TransferMode parse_mode(int line, std::string_view value) {
  if (value == "to-target") return TransferMode::to_target;
  if (value == "from-initial") return TransferMode::from_initial;
  fail(line, "mode must be 'to-target' or 'from-initial'");
}

BranchSign parse_branch_value(int line, std::string_view value) {
  if (value == "plus") return BranchSign::plus;
  if (value == "minus") return BranchSign::minus;
  fail(line, "branch must be 'plus' or 'minus'");
}

[[noreturn]] void unknown_key(int line, std::string_view key) {
  // A key that extends or truncates a known key at an underscore is almost
  // always a wrong unit suffix (e.g. `J` or `J_eV` for `J_meV`).
  for (const char* known : kKnownKeys) {
    const std::string_view kv(known);
    const bool extends =
        key.size() > kv.size() && key.substr(0, kv.size()) == kv &&
        key[kv.size()] == '_';
    const bool truncates =
        kv.size() > key.size() && kv.substr(0, key.size()) == key &&
        kv[key.size()] == '_';
    if (extends || truncates)
      fail(line, "unit-suffix mismatch: key '" + std::string(key) +
                     "' should be '" + std::string(kv) + "'");
  }
  fail(line, "unknown key '" + std::string(key) + "'");
}

void validate_ranges(const RunConfig& cfg) {
  cfg.device();  // DeviceParams::make performs the device checks
  if (!(cfg.theta_p >= 0.0 && cfg.theta_p <= pi))
    throw ConfigError("theta_p must lie in [0, pi]");
  if (!(cfg.theta_a0 > 0.0 && cfg.theta_a0 < pi))
    throw ConfigError("theta_a0 must lie strictly between 0 and pi; its sine "
                      "must not vanish");
  if (cfg.steps < 1000) throw ConfigError("steps must be at least 1000");
  if (!(cfg.fidelity_gate >= 0.0 && cfg.fidelity_gate <= 1.0))
    throw ConfigError("fidelity_gate must lie in [0, 1]");
  if (!(cfg.norm_tol > 0.0)) throw ConfigError("norm_tol must be > 0");
  if (cfg.out_dir.empty()) throw ConfigError("out_dir must not be empty");
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(line_no, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "missing key before '='");
    if (value.empty())
      fail(line_no, "missing value for '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second)
      fail(line_no, "duplicate key '" + std::string(key) + "'");

    if (key == "J_meV") cfg.j_mev = parse_double(line_no, key, value);
    else if (key == "g_factor") cfg.g_factor = parse_double(line_no, key, value);
    else if (key == "B_T") cfg.b_tesla = parse_double(line_no, key, value);
    else if (key == "hbar_beta_meV_cm")
      cfg.hbar_beta_mev_cm = parse_double(line_no, key, value);
    else if (key == "alpha_over_beta")
      cfg.alpha_over_beta = parse_double(line_no, key, value);
    else if (key == "t_f_ns") cfg.t_f_ns = parse_double(line_no, key, value);
    else if (key == "mode") cfg.mode = parse_mode(line_no, value);
    else if (key == "theta_p") cfg.theta_p = parse_double(line_no, key, value);
    else if (key == "phi_p") cfg.phi_p = parse_double(line_no, key, value);
    else if (key == "theta_a0") cfg.theta_a0 = parse_double(line_no, key, value);
    else if (key == "branch") cfg.branch = parse_branch_value(line_no, value);
    else if (key == "k") cfg.winding_k = parse_int(line_no, key, value);
    else if (key == "steps") cfg.steps = parse_int(line_no, key, value);
    else if (key == "fidelity_gate")
      cfg.fidelity_gate = parse_double(line_no, key, value);
    else if (key == "norm_tol") cfg.norm_tol = parse_double(line_no, key, value);
    else if (key == "out_dir") cfg.out_dir = std::string(value);
    else if (key == "emit_pulse") cfg.emit_pulse = parse_bool(line_no, key, value);
    else if (key == "emit_trajectory")
      cfg.emit_trajectory = parse_bool(line_no, key, value);
    else unknown_key(line_no, key);
  }
  validate_ranges(cfg);
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string emit_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "J_meV = " << format_double(cfg.j_mev) << '\n'
      << "g_factor = " << format_double(cfg.g_factor) << '\n'
      << "B_T = " << format_double(cfg.b_tesla) << '\n'
      << "hbar_beta_meV_cm = " << format_double(cfg.hbar_beta_mev_cm) << '\n'
      << "alpha_over_beta = " << format_double(cfg.alpha_over_beta) << '\n'
      << "t_f_ns = " << format_double(cfg.t_f_ns) << '\n'
      << "mode = " << to_string(cfg.mode) << '\n'
      << "theta_p = " << format_double(cfg.theta_p) << '\n'
      << "phi_p = " << format_double(cfg.phi_p) << '\n'
      << "theta_a0 = " << format_double(cfg.theta_a0) << '\n'
      << "branch = " << to_string(cfg.branch) << '\n'
      << "k = " << cfg.winding_k << '\n'
      << "steps = " << cfg.steps << '\n'
      << "fidelity_gate = " << format_double(cfg.fidelity_gate) << '\n'
      << "norm_tol = " << format_double(cfg.norm_tol) << '\n'
      << "out_dir = " << cfg.out_dir << '\n'
      << "emit_pulse = " << (cfg.emit_pulse ? "true" : "false") << '\n'
      << "emit_trajectory = " << (cfg.emit_trajectory ? "true" : "false")
      << '\n';
  return out.str();
}

}  // namespace stpulse
