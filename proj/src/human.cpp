#include "dayroute/human.hpp"

#include <algorithm>
#include <cmath>

#include "dayroute/errors.hpp"

namespace dayroute {

void HumanParams::validate() const {
  double sum = alpha_zero;
  for (double w : history_weights) {
    if (w < 0.0) throw ConfigError("history weight must be >= 0");
    sum += w;
  }
  if (alpha_zero < 0.0 || alpha_zero > 1.0) {
    throw ConfigError("alpha_zero must lie in [0,1]");
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ConfigError("alpha_zero plus history weights must sum to 1");
  }
  if (gamma_c < 0.0 || gamma_u < 0.0) {
    throw ConfigError("thresholds must be >= 0");
  }
  if (delta < 0.0 || delta > 1.0) {
    throw ConfigError("delta must lie in [0,1]");
  }
  if (noise_agent < 0.0 || noise_route < 0.0 || noise_daily < 0.0) {
    throw ConfigError("noise weights must be >= 0");
  }
}

HumanMemory init_memory(const RouteSet& routeset) {
  if (routeset.routes.empty()) {
    throw EmptyRouteSet("route set for " + routeset.origin + " -> " +
                        routeset.destination + " is empty");
  }
  HumanMemory m;
  m.expected_cost_s.reserve(routeset.routes.size());
  for (const Route& r : routeset.routes) {
    m.expected_cost_s.push_back(r.free_flow_time_s);
  }
  m.history_s.resize(routeset.routes.size());
  m.eps_route.resize(routeset.routes.size());
  return m;
}

int human_act(HumanMemory& memory, const HumanParams& params, RandomStream& rng) {
  const int k = static_cast<int>(memory.expected_cost_s.size());
  const double best =
      *std::min_element(memory.expected_cost_s.begin(), memory.expected_cost_s.end());

  int action = -1;
  if (memory.last_action &&
      std::abs(memory.expected_cost_s[*memory.last_action] - best) <=
          params.gamma_u) {
    action = *memory.last_action;
  } else if (params.delta > 0.0 && rng.uniform() < params.delta) {
    action = static_cast<int>(rng.uniform_int(k));
  } else {
    // Persistent taste draws happen the first day they can matter, and
    // stay in the memory from then on.
    if (params.noise_agent > 0.0 && !memory.eps_agent) {
      memory.eps_agent = rng.normal();
    }
    if (params.noise_route > 0.0) {
      for (int a = 0; a < k; ++a) {
        if (!memory.eps_route[a]) memory.eps_route[a] = rng.normal();
      }
    }
    double best_utility = 0.0;
    for (int a = 0; a < k; ++a) {
      double u = params.beta_util * memory.expected_cost_s[a];
      if (params.noise_agent > 0.0) u += params.noise_agent * *memory.eps_agent;
      if (params.noise_route > 0.0) u += params.noise_route * *memory.eps_route[a];
      if (params.noise_daily > 0.0) u += params.noise_daily * rng.normal();
      if (action < 0 || u > best_utility) {
        best_utility = u;
        action = a;
      }
    }
  }
  memory.last_action = action;
  return action;
}

void human_learn(HumanMemory& memory, int chosen, double experienced_s,
                 const HumanParams& params) {
  const int k = static_cast<int>(memory.expected_cost_s.size());
  if (chosen < 0 || chosen >= k) {
    throw InvalidRoute("learned route index " + std::to_string(chosen) +
                       " is out of range");
  }

  const std::size_t depth = params.history_weights.size();
  auto& hist = memory.history_s[chosen];
  if (depth > 0) {
    hist.push_front(experienced_s);
    while (hist.size() > depth) hist.pop_back();
  }

  if (std::abs(memory.expected_cost_s[chosen] - experienced_s) <= params.gamma_c) {
    return;
  }

  // Convex blend of the old estimate with stored experiences, newest
  // first. Early on the history is shorter than the weight list; the
  // weights in use are renormalized so the blend stays convex.
  double value = params.alpha_zero * memory.expected_cost_s[chosen];
  double weight = params.alpha_zero;
  for (std::size_t j = 0; j < hist.size(); ++j) {
    value += params.history_weights[j] * hist[j];
    weight += params.history_weights[j];
  }
  memory.expected_cost_s[chosen] = value / weight;
}

}  // namespace dayroute
