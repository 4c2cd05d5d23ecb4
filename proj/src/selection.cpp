#include "jale/selection.hpp"

#include <algorithm>

namespace jale {

PriorityTable build_priority_table(const std::vector<int>& thread_set,
                                   const std::vector<int>& preset_set) {
  if (thread_set.empty()) throw Error("priority table: empty thread set");
  if (preset_set.empty()) throw Error("priority table: empty preset set");

  const int rows = static_cast<int>(thread_set.size());   // i: thread index
  const int cols = static_cast<int>(preset_set.size());   // j: preset index, slowest first
  PriorityTable table;
  table.reserve(static_cast<size_t>(rows) * cols);

  for (int d = 0; d <= rows + cols - 2; ++d) {
    const int i_lo = std::max(0, d - (cols - 1));
    const int i_hi = std::min(rows - 1, d);
    if (d % 2 == 0) {
      for (int i = i_lo; i <= i_hi; ++i)
        table.push_back({thread_set[i], preset_set[d - i]});
    } else {
      for (int i = i_hi; i >= i_lo; --i)
        table.push_back({thread_set[i], preset_set[d - i]});
    }
  }
  return table;
}

PairSelection select_pair(const PriorityTable& table, const SpeedPredictor& speed_of,
                          double target_speed_fps) {
  for (size_t k = 0; k < table.size(); ++k) {
    double speed = speed_of(table[k]);
    if (speed >= target_speed_fps) return {table[k], speed, true, k};
  }
  const size_t last = table.size() - 1;
  return {table[last], speed_of(table[last]), false, last};
}

const ForestModel& ModelSet::speed_for(int threads, int preset) const {
  auto it = speed.find({threads, preset});
  if (it == speed.end())
    throw Error("models: missing speed model for (n=" + std::to_string(threads) +
                ", p=" + std::to_string(preset) + ")");
  return it->second;
}

const ForestModel& ModelSet::quality_for(int preset) const {
  auto it = quality.find(preset);
  if (it == quality.end())
    throw Error("models: missing quality model for preset " + std::to_string(preset));
  return it->second;
}

std::vector<double> model_inputs(const SegmentFeatures& features, const Representation& rep) {
  return {features.texture_energy, features.temporal_gradient, features.luminescence,
          static_cast<double>(rep.height), rep.bitrate_mbps};
}

LadderPlan plan_ladder(const JaleConfig& config, const SegmentFeatures& features,
                       const ModelSet& models) {
  const PriorityTable table = build_priority_table(config.thread_set, config.preset_set);

  // every grid cell must be backed by a model before any prediction runs
  for (const ThreadPresetPair& pair : table) models.speed_for(pair.threads, pair.preset);
  for (int preset : config.preset_set) models.quality_for(preset);

  LadderPlan plan;
  for (const Representation& rep : config.ladder) {
    const std::vector<double> inputs = model_inputs(features, rep);
    PairSelection sel = select_pair(
        table,
        [&](const ThreadPresetPair& pair) {
          return models.speed_for(pair.threads, pair.preset).predict(inputs);
        },
        config.target_speed_fps);

    PlanEntry entry;
    entry.rep = rep;
    entry.pair = sel.pair;
    entry.predicted_speed = sel.predicted_speed;
    entry.predicted_vmaf =
        std::clamp(models.quality_for(sel.pair.preset).predict(inputs), 0.0, 100.0);
    entry.feasible = sel.feasible;
    entry.retained = true;
    plan.entries.push_back(entry);
  }
  plan.recompute_thread_total();
  plan.budget_exceeded = plan.total_threads_used > config.total_threads;
  return plan;
}

}  // namespace jale
