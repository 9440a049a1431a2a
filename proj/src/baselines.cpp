#include "dayroute/baselines.hpp"

#include "dayroute/errors.hpp"

namespace dayroute {

int aon_act(const RouteSet& routeset) {
  if (routeset.routes.empty()) {
    throw EmptyRouteSet("route set for " + routeset.origin + " -> " +
                        routeset.destination + " is empty");
  }
  int best = 0;
  for (int i = 1; i < routeset.size(); ++i) {
    if (routeset.routes[i].free_flow_time_s <
        routeset.routes[best].free_flow_time_s) {
      best = i;
    }
  }
  return best;
}

int random_act(int k, RandomStream& rng) {
  return static_cast<int>(rng.uniform_int(k));
}

int human_stand_in_act(HumanMemory& frozen_memory, const HumanParams& params,
                       RandomStream& rng) {
  return human_act(frozen_memory, params, rng);
}

}  // namespace dayroute
