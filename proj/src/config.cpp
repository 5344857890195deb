#include "strsim/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace strsim {

namespace {

[[noreturn]] void bad_key(std::string_view key, const std::string& why) {
  throw ConfigError("config key '" + std::string(key) + "': " + why);
}

double parse_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    bad_key(key, "expected a number, got '" + std::string(value) + "'");
  return out;
}

int parse_int(std::string_view key, std::string_view value) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    bad_key(key, "expected an integer, got '" + std::string(value) + "'");
  return out;
}

uint64_t parse_u64(std::string_view key, std::string_view value) {
  uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    bad_key(key, "expected an unsigned integer, got '" + std::string(value) + "'");
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  bad_key(key, "expected on/off, got '" + std::string(value) + "'");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

struct LambdaPairState {
  bool eca_given = false, ca_given = false;
  bool fd_given = false, hd_given = false;
};

thread_local LambdaPairState* lambda_state = nullptr;

}  // namespace

void apply_config_key(SimConfig& cfg, std::string_view key, std::string_view value) {
  auto fraction = [&](std::string_view k, std::string_view v) {
    double x = parse_double(k, v);
    if (x < 0.0 || x > 1.0) bad_key(k, "value must lie in [0,1]");
    return x;
  };

  if (key == "rings") cfg.rings = parse_int(key, value);
  else if (key == "cell_radius") cfg.cell_radius_m = parse_double(key, value);
  else if (key == "n_per_cell") cfg.n_per_cell = parse_int(key, value);
  else if (key == "ap_spacing") cfg.ap_spacing_m = parse_double(key, value);
  else if (key == "tx_power_dbm") cfg.channel.tx_power_dbm = parse_double(key, value);
  else if (key == "pathloss_ref_db") cfg.channel.pathloss_ref_db = parse_double(key, value);
  else if (key == "pathloss_exp") cfg.channel.pathloss_exp = parse_double(key, value);
  else if (key == "pathloss_near_exp") cfg.channel.pathloss_near_exp = parse_double(key, value);
  else if (key == "pathloss_break_m") cfg.channel.pathloss_break_m = parse_double(key, value);
  else if (key == "sta_obstruction_db") cfg.channel.sta_obstruction_db = parse_double(key, value);
  else if (key == "intercell_wall_db") cfg.channel.intercell_wall_db = parse_double(key, value);
  else if (key == "noise_floor_dbm") cfg.channel.noise_floor_dbm = parse_double(key, value);
  else if (key == "beta_db") cfg.channel.sinr_threshold_db = parse_double(key, value);
  else if (key == "sic_capability_db") cfg.channel.sic_capability_db = parse_double(key, value);
  else if (key == "rho") cfg.channel.rho = parse_double(key, value);
  else if (key == "default_cst_dbm") cfg.default_cst_dbm = parse_double(key, value);
  else if (key == "tolerance_db") cfg.tolerance_db = parse_double(key, value);
  else if (key == "cw_min") cfg.mac.cw_min = parse_int(key, value);
  else if (key == "max_backoff_stage") cfg.mac.max_backoff_stage = parse_int(key, value);
  else if (key == "slot_time_us") cfg.mac.slot_time_s = parse_double(key, value) * 1e-6;
  else if (key == "sifs_us") cfg.mac.sifs_s = parse_double(key, value) * 1e-6;
  else if (key == "difs_us") cfg.mac.difs_s = parse_double(key, value) * 1e-6;
  else if (key == "phy_header_bits") cfg.mac.phy_header_bits = parse_int(key, value);
  else if (key == "mac_header_bits") cfg.mac.mac_header_bits = parse_int(key, value);
  else if (key == "ack_bits") cfg.mac.ack_bits = parse_int(key, value);
  else if (key == "payload_bytes") cfg.mac.payload_bytes = parse_int(key, value);
  else if (key == "data_rate_bps") cfg.mac.data_rate_bps = parse_double(key, value);
  else if (key == "basic_rate_bps") cfg.mac.basic_rate_bps = parse_double(key, value);
  else if (key == "lambda_eca") {
    cfg.lambda_eca = fraction(key, value);
    if (!lambda_state || !lambda_state->ca_given) cfg.lambda_ca = 1.0 - cfg.lambda_eca;
    if (lambda_state) lambda_state->eca_given = true;
  } else if (key == "lambda_ca") {
    cfg.lambda_ca = fraction(key, value);
    if (!lambda_state || !lambda_state->eca_given) cfg.lambda_eca = 1.0 - cfg.lambda_ca;
    if (lambda_state) lambda_state->ca_given = true;
  } else if (key == "lambda_fd") {
    cfg.lambda_fd = fraction(key, value);
    if (!lambda_state || !lambda_state->hd_given) cfg.lambda_hd = 1.0 - cfg.lambda_fd;
    if (lambda_state) lambda_state->fd_given = true;
  } else if (key == "lambda_hd") {
    cfg.lambda_hd = fraction(key, value);
    if (!lambda_state || !lambda_state->fd_given) cfg.lambda_fd = 1.0 - cfg.lambda_hd;
    if (lambda_state) lambda_state->hd_given = true;
  } else if (key == "mode") {
    if (value == "legacy") cfg.mode = SimMode::Legacy;
    else if (value == "str") cfg.mode = SimMode::Str;
    else bad_key(key, "expected legacy or str");
  } else if (key == "adaptation") cfg.cst_adaptation = parse_bool(key, value);
  else if (key == "ufd_margin_guard_db") cfg.ufd_margin_guard_db = parse_double(key, value);
  else if (key == "sim_duration_s") cfg.sim_duration_s = parse_double(key, value);
  else if (key == "sim_slots") cfg.sim_slots = parse_u64(key, value);
  else if (key == "seed") cfg.seed = parse_u64(key, value);
  else if (key == "ideal_channel") cfg.ideal_channel = parse_bool(key, value);
  else if (key == "ap_saturated") cfg.ap_saturated = parse_bool(key, value);
  else if (key == "variable_payload") cfg.variable_payload = parse_bool(key, value);
  else if (key == "payload_min_bytes") cfg.payload_min_bytes = parse_int(key, value);
  else if (key == "payload_max_bytes") cfg.payload_max_bytes = parse_int(key, value);
  else throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

SimConfig parse_config(std::string_view text) {
  SimConfig cfg;
  LambdaPairState given;
  lambda_state = &given;

  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      lambda_state = nullptr;
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value, got '" + std::string(line) + "'");
    }
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    try {
      apply_config_key(cfg, key, value);
    } catch (...) {
      lambda_state = nullptr;
      throw;
    }
  }
  lambda_state = nullptr;

  // Explicitly given pairs must be consistent; single-sided ones were
  // complemented as they were applied.
  if (given.eca_given && given.ca_given &&
      std::fabs(cfg.lambda_eca + cfg.lambda_ca - 1.0) > 1e-9)
    throw ConfigError("config keys 'lambda_eca' and 'lambda_ca' must sum to 1");
  if (given.fd_given && given.hd_given &&
      std::fabs(cfg.lambda_fd + cfg.lambda_hd - 1.0) > 1e-9)
    throw ConfigError("config keys 'lambda_fd' and 'lambda_hd' must sum to 1");

  validate_config(cfg);
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace strsim
