#include <algorithm>
#include <condition_variable>
#include <mutex>
#include <optional>
#include <thread>

#include "jale/harness.hpp"

namespace jale {

RunPlanResult run_plan(EncoderBackend& backend, const SegmentRef& segment,
                       const LadderPlan& plan, int total_threads) {
  if (total_threads <= 0) throw Error("run_plan: total_threads must be positive");

  std::vector<size_t> order;
  for (size_t i = 0; i < plan.entries.size(); ++i)
    if (plan.entries[i].retained) order.push_back(i);

  RunPlanResult result;
  std::vector<std::optional<EncodeRecord>> slots(plan.entries.size());
  std::vector<std::pair<size_t, std::string>> failures;

  std::mutex mutex;
  std::condition_variable budget_freed;
  int in_flight = 0;
  std::vector<std::thread> workers;
  workers.reserve(order.size());

  for (size_t index : order) {
    const PlanEntry& entry = plan.entries[index];
    const int weight = entry.pair.threads;
    {
      // admission strictly in ladder order; an oversized entry runs alone
      std::unique_lock lock(mutex);
      budget_freed.wait(lock,
                        [&] { return in_flight == 0 || in_flight + weight <= total_threads; });
      in_flight += weight;
      result.trace.events.push_back({index, weight, in_flight});
      result.trace.max_in_flight = std::max(result.trace.max_in_flight, in_flight);
    }
    workers.emplace_back([&, index, weight] {
      const PlanEntry& e = plan.entries[index];
      std::optional<EncodeRecord> record;
      std::string error;
      try {
        record = backend.encode(segment, e.rep, e.pair);
      } catch (const std::exception& ex) {
        error = ex.what();
      }
      std::lock_guard lock(mutex);
      if (record)
        slots[index] = std::move(*record);
      else
        failures.emplace_back(index, "entry " + std::to_string(index + 1) + " (" +
                                         std::to_string(e.rep.height) + "p): " + error);
      in_flight -= weight;
      result.trace.events.push_back({index, -weight, in_flight});
      budget_freed.notify_all();
    });
  }
  for (std::thread& worker : workers) worker.join();

  for (std::optional<EncodeRecord>& slot : slots)
    if (slot) result.records.push_back(std::move(*slot));
  std::sort(failures.begin(), failures.end());
  for (auto& [index, message] : failures) result.errors.push_back(std::move(message));
  return result;
}

}  // namespace jale
