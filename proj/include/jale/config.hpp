#ifndef JALE_CONFIG_HPP
#define JALE_CONFIG_HPP

#include <string>
#include <vector>

#include "jale/types.hpp"

namespace jale {

inline constexpr const char* kConfigFormatVersion = "jale-config/1";

// Full planner configuration. Immutable after construction; share freely.
struct JaleConfig {
  std::vector<Representation> ladder;  // bitrate strictly increasing
  std::vector<int> preset_set;         // ordered slowest (highest quality) -> fastest
  std::vector<int> thread_set;         // ascending
  int total_threads = 0;               // N, per-segment thread budget
  double target_speed_fps = 0.0;       // s_T
  double jnd_vmaf = 0.0;               // v_J
  double vmaf_cap = 0.0;               // v_T, defaults to 100 - v_J
  bool vmaf_cap_overridden = false;    // set when the document pins v_T != 100 - v_J

  friend bool operator==(const JaleConfig&, const JaleConfig&) = default;
};

// Throws Error naming the offending field when an invariant is violated.
void validate_config(const JaleConfig& config);

// Parses and validates a "jale-config/1" JSON document.
JaleConfig load_config(const std::string& json_text);
JaleConfig load_config_file(const std::string& path);

std::string save_config(const JaleConfig& config);

// The HLS authoring-spec ladder with the default planner parameters:
// 12 rungs from (360, 0.145 Mbps) to (2160, 16.8 Mbps), presets 5..0
// (medium..ultrafast), C = {4,8,12,16,20,24}, N = 96, s_T = 30, v_J = 6.
JaleConfig default_hls_ladder();

}  // namespace jale

#endif
