#ifndef JALE_JND_HPP
#define JALE_JND_HPP

#include "jale/types.hpp"

namespace jale {

// JND-based representation elimination over a plan ordered by ascending
// bitrate. Entry 1 is always retained; entry t is retained iff its predicted
// VMAF exceeds the last retained entry's by at least jnd_vmaf; the scan stops
// once a retained entry reaches vmaf_cap, dropping everything after it.
// Returns the plan with retained flags and thread totals updated.
LadderPlan eliminate(LadderPlan plan, double jnd_vmaf, double vmaf_cap);

}  // namespace jale

#endif
