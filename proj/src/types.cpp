#include "jale/types.hpp"

namespace jale {

void LadderPlan::recompute_thread_total() {
  int total = 0;
  for (const PlanEntry& e : entries) {
    if (e.retained) total += e.pair.threads;
  }
  total_threads_used = total;
}

}  // namespace jale
