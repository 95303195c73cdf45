#include "swnoon/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace swnoon::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::array<double, 3> parse_triple(const std::string& text, const std::string& what) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw UsageError(what + ": expected x,y,z, got '" + text + "'");
  return {parse_double(parts[0], what), parse_double(parts[1], what), parse_double(parts[2], what)};
}

}  // namespace

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw UsageError(what + ": not a finite number: '" + text + "'");
  }
  return v;
}

std::int64_t parse_int(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw UsageError(what + ": not an integer: '" + text + "'");
  }
  return v;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_double(p, what));
  if (out.empty()) throw UsageError(what + ": empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (const auto& p : split(text, ',')) out.push_back(static_cast<int>(parse_int(p, what)));
  if (out.empty()) throw UsageError(what + ": empty list");
  return out;
}

WaveVector parse_wave_vector(const std::string& text, const std::string& what) {
  const auto t = parse_triple(text, what);
  return {t[0], t[1], t[2]};
}

Displacement parse_displacement(const std::string& text, const std::string& what) {
  const auto t = parse_triple(text, what);
  return {t[0], t[1], t[2]};
}

std::map<std::string, std::string> parse_config_text(const std::string& text, const std::string& origin) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw UsageError(origin + ":" + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "order") cfg.order = static_cast<int>(parse_int(value, key));
  else if (key == "atom_count") cfg.atom_count = parse_double(value, key);
  else if (key == "energy_shift_mhz") cfg.energy_shift_mhz = parse_double(value, key);
  else if (key == "lifetime_us") cfg.lifetime_us = parse_double(value, key);
  else if (key == "k_gr_a") cfg.beams[Beam::g_ra] = parse_wave_vector(value, key);
  else if (key == "k_ra_sa") cfg.beams[Beam::ra_sa] = parse_wave_vector(value, key);
  else if (key == "k_gr_b") cfg.beams[Beam::g_rb] = parse_wave_vector(value, key);
  else if (key == "k_rb_sb") cfg.beams[Beam::rb_sb] = parse_wave_vector(value, key);
  else if (key == "displacement") cfg.displacement = parse_displacement(value, key);
  else if (key == "shots") cfg.shots = parse_int(value, key);
  else if (key == "seed") {
    const auto s = parse_int(value, key);
    if (s < 0) throw UsageError("seed must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(s);
  } else if (key == "out") cfg.out = value;
  else throw UsageError("unknown configuration key '" + key + "'");
}

void RunConfig::validate() const {
  if (order < 1) throw UsageError("order must be >= 1, got " + std::to_string(order));
  if (!(atom_count >= 1.0)) throw UsageError("atom_count must be >= 1");
  if (!(energy_shift_mhz > 0.0)) throw UsageError("energy_shift_mhz must be > 0");
  if (!(lifetime_us > 0.0)) throw UsageError("lifetime_us must be > 0");
  if (shots < 0) throw UsageError("shots must be >= 0");
  for (const auto& k : beams.beams) {
    if (!k.finite()) throw UsageError("beam wave vectors must be finite");
  }
}

}  // namespace swnoon::cli
