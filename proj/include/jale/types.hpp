#ifndef JALE_TYPES_HPP
#define JALE_TYPES_HPP

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jale {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// One rung of the bitrate ladder.
struct Representation {
  int height = 0;             // luma height in pixels
  double bitrate_mbps = 0.0;  // target bitrate
  int index = 0;              // 1-based position in the ladder

  friend bool operator==(const Representation&, const Representation&) = default;
};

// One (thread count, preset) encoder configuration. Preset ids are small
// integers with 0 = fastest; display names are an encoder-specific mapping.
struct ThreadPresetPair {
  int threads = 0;
  int preset = 0;

  friend bool operator==(const ThreadPresetPair&, const ThreadPresetPair&) = default;
  friend auto operator<=>(const ThreadPresetPair&, const ThreadPresetPair&) = default;
};

// DCT-energy complexity features of one segment.
struct SegmentFeatures {
  double texture_energy = 0.0;     // E_Y
  double temporal_gradient = 0.0;  // h
  double luminescence = 0.0;       // L_Y
  int frame_count = 0;
  int block_size = 0;

  friend bool operator==(const SegmentFeatures&, const SegmentFeatures&) = default;
};

struct PlanEntry {
  Representation rep;
  ThreadPresetPair pair;
  double predicted_speed = 0.0;  // fps
  double predicted_vmaf = 0.0;
  bool feasible = true;
  bool retained = true;
};

struct LadderPlan {
  std::vector<PlanEntry> entries;
  int total_threads_used = 0;  // sum of threads over retained entries
  bool budget_exceeded = false;

  // Re-derives total_threads_used from the retained flags.
  void recompute_thread_total();
};

struct EncodeRecord {
  std::string segment_id;
  Representation rep;
  ThreadPresetPair pair;
  double achieved_bitrate_mbps = 0.0;
  double achieved_speed_fps = 0.0;
  std::optional<double> psnr_db;  // absent when no quality tool ran
  std::optional<double> vmaf;
  double wall_time_s = 0.0;
  std::optional<double> energy_joules;
};

}  // namespace jale

#endif
