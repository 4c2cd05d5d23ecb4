#ifndef JALE_SELECTION_HPP
#define JALE_SELECTION_HPP

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "jale/config.hpp"
#include "jale/forest.hpp"
#include "jale/types.hpp"

namespace jale {

using PriorityTable = std::vector<ThreadPresetPair>;

// Boustrophedon anti-diagonal walk of the grid indexed by (i = thread index
// ascending, j = preset index ascending from slowest). Pairs are grouped by
// d = i + j ascending; within even d the thread index ascends, within odd d
// it descends. Covers thread_set x preset_set exactly once, starting at
// (min threads, slowest preset) and ending at (max threads, fastest preset).
PriorityTable build_priority_table(const std::vector<int>& thread_set,
                                   const std::vector<int>& preset_set);

using SpeedPredictor = std::function<double(const ThreadPresetPair&)>;

struct PairSelection {
  ThreadPresetPair pair;
  double predicted_speed = 0.0;
  bool feasible = false;
  size_t table_index = 0;
};

// First pair in priority order whose predicted speed meets the target;
// falls back to the last table entry with feasible = false when none does.
PairSelection select_pair(const PriorityTable& table, const SpeedPredictor& speed_of,
                          double target_speed_fps);

// The trained model grid: one speed model per (threads, preset) cell and one
// quality model per preset.
struct ModelSet {
  std::map<std::pair<int, int>, ForestModel> speed;
  std::map<int, ForestModel> quality;

  const ForestModel& speed_for(int threads, int preset) const;
  const ForestModel& quality_for(int preset) const;
};

// Model input vector (E_Y, h, L_Y, r, b).
std::vector<double> model_inputs(const SegmentFeatures& features, const Representation& rep);

inline const std::vector<std::string> kModelFeatureNames = {"E_Y", "h", "L_Y", "r", "b"};

// Per representation: evaluates speed predictions along the priority order,
// applies select_pair, and attaches the selected preset's quality
// prediction (clamped to [0, 100]). budget_exceeded is set when the
// retained thread sum exceeds the configured total.
LadderPlan plan_ladder(const JaleConfig& config, const SegmentFeatures& features,
                       const ModelSet& models);

}  // namespace jale

#endif
