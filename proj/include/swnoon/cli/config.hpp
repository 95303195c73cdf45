#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "swnoon/wave_vector.hpp"

namespace swnoon::cli {

/// Bad invocation or configuration; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int order = 20;
  double atom_count = 400.0;
  double energy_shift_mhz = 300.0;
  double lifetime_us = 300.0;
  BeamGeometry beams = BeamGeometry::counter_propagating();
  Displacement displacement{};
  std::int64_t shots = 0;
  std::uint64_t seed = 1;
  std::string out;  // empty: stdout

  void validate() const;
};

/// Parses flat `key = value` text with `#` comments. Keys are the RunConfig
/// field names; vectors are written `x,y,z`.
std::map<std::string, std::string> parse_config_text(const std::string& text, const std::string& origin);
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Applies one key/value pair; throws UsageError for unknown keys or bad values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

double parse_double(const std::string& text, const std::string& what);
std::int64_t parse_int(const std::string& text, const std::string& what);
std::vector<double> parse_double_list(const std::string& text, const std::string& what);
std::vector<int> parse_int_list(const std::string& text, const std::string& what);
WaveVector parse_wave_vector(const std::string& text, const std::string& what);
Displacement parse_displacement(const std::string& text, const std::string& what);

}  // namespace swnoon::cli
