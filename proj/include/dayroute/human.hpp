#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "dayroute/random.hpp"
#include "dayroute/routegen.hpp"

namespace dayroute {

/// Knobs of the bounded-rational day-to-day driver model. The defaults
/// reduce it to a deterministic greedy rule: keep an exponentially
/// smoothed cost estimate per route, always take the cheapest.
struct HumanParams {
  double alpha_zero = 0.8;                  // weight kept on the old estimate
  std::vector<double> history_weights = {0.2};  // newest experience first
  double gamma_c = 0.0;    // cost gap below which no learning happens, seconds
  double gamma_u = 0.0;    // gap to the best route below which no switch, seconds
  double delta = 0.0;      // probability of a uniformly random choice
  double beta_util = -1.0; // cost multiplier inside the utility
  double noise_agent = 0.0;       // weight of the per-agent taste draw
  double noise_route = 0.0;       // weight of the per-(agent,route) draw
  double noise_daily = 0.0;       // weight of the fresh per-day draw

  /// Checks the convexity constraint alpha_zero + sum(history_weights) = 1
  /// and non-negativity of everything that must be non-negative.
  void validate() const;
};

/// Everything one driver carries from day to day.
struct HumanMemory {
  std::vector<double> expected_cost_s;           // one estimate per route
  std::vector<std::deque<double>> history_s;     // newest first, bounded
  std::optional<int> last_action;
  // Persistent taste noise, drawn lazily on the first day it is needed.
  std::optional<double> eps_agent;
  std::vector<std::optional<double>> eps_route;
};

/// Fresh memory: cost estimates start at each route's free-flow time.
HumanMemory init_memory(const RouteSet& routeset);

/// Picks today's route. In order: stick with yesterday's choice while it
/// is within gamma_u of the best estimate; otherwise explore uniformly
/// with probability delta; otherwise maximize beta_util * cost plus taste
/// noise, ties to the lowest index. Updates last_action.
int human_act(HumanMemory& memory, const HumanParams& params, RandomStream& rng);

/// Folds today's experienced time on the chosen route into the memory.
/// Estimates of other routes never move, and the chosen one only moves
/// when the surprise exceeds gamma_c.
void human_learn(HumanMemory& memory, int chosen, double experienced_s,
                 const HumanParams& params);

}  // namespace dayroute
