#include "jale/jnd.hpp"

namespace jale {

LadderPlan eliminate(LadderPlan plan, double jnd_vmaf, double vmaf_cap) {
  const size_t q = plan.entries.size();
  if (q == 0) throw Error("eliminate: empty plan");

  for (PlanEntry& e : plan.entries) e.retained = false;

  plan.entries[0].retained = true;
  size_t u = 0;
  if (!(plan.entries[0].predicted_vmaf >= vmaf_cap)) {
    for (size_t t = 1; t < q; ++t) {
      if (plan.entries[t].predicted_vmaf - plan.entries[u].predicted_vmaf >= jnd_vmaf) {
        plan.entries[t].retained = true;
        u = t;
        if (plan.entries[t].predicted_vmaf >= vmaf_cap) break;
      }
    }
  }

  plan.recompute_thread_total();
  return plan;
}

}  // namespace jale
