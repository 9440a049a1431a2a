#pragma once

#include "dayroute/human.hpp"
#include "dayroute/random.hpp"
#include "dayroute/routegen.hpp"

namespace dayroute {

/// All-or-nothing: always the route with minimal free-flow time, ties to
/// the lowest index. Route sets are sorted by free-flow time, so this is
/// always index 0; the scan stays as a guard on that invariant.
int aon_act(const RouteSet& routeset);

/// Uniform route choice.
int random_act(int k, RandomStream& rng);

/// A vehicle that keeps driving like the human it replaced: same decision
/// rule over the memory trained before the switchover, which learns
/// nothing further.
int human_stand_in_act(HumanMemory& frozen_memory, const HumanParams& params,
                       RandomStream& rng);

}  // namespace dayroute
