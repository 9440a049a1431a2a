#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dayroute/behavior.hpp"
#include "dayroute/random.hpp"

namespace dayroute {

enum class AgentKind { human, cav };

/// One traveller: a fixed trip (OD and departure second) plus the kind of
/// decision maker currently controlling it. `behavior` is set while the
/// agent is a CAV and ignored otherwise.
struct AgentSpec {
  long long id = 0;
  std::string origin;
  std::string destination;
  long long departure_time_s = 0;
  AgentKind kind = AgentKind::human;
  std::optional<RewardSpec> behavior;
};

enum class MutationSelection { uniform_random, earliest_departures, latest_departures };

struct MutationPolicy {
  double share = 0.0;  // fraction of the population converted to CAVs
  MutationSelection selection = MutationSelection::uniform_random;
};

/// Parses `agents.csv` (header id,origin,destination,start_time). Every
/// loaded agent is human; order follows the file.
std::vector<AgentSpec> load_agents(const std::filesystem::path& file);

/// Converts round(share * n) agents to CAVs with the given behavior,
/// half away from zero. Only `kind` and `behavior` change; list order and
/// trips stay as they were.
std::vector<AgentSpec> mutate(const std::vector<AgentSpec>& agents,
                              const MutationPolicy& policy,
                              const RewardSpec& behavior, RandomStream& rng);

}  // namespace dayroute
