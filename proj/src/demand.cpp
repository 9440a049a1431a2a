#include "dayroute/demand.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "dayroute/csv.hpp"
#include "dayroute/errors.hpp"

namespace dayroute {

std::vector<AgentSpec> load_agents(const std::filesystem::path& file) {
  CsvReader reader(file, "id,origin,destination,start_time");
  std::vector<AgentSpec> agents;
  std::unordered_set<long long> ids;
  std::vector<std::string> f;
  while (reader.next(f)) {
    AgentSpec a;
    a.id = reader.to_int(f[0]);
    a.origin = f[1];
    a.destination = f[2];
    a.departure_time_s = reader.to_int(f[3]);
    if (a.id < 0) {
      throw ParseError(reader.file_name(), reader.line(), "negative agent id");
    }
    if (!ids.insert(a.id).second) throw DuplicateId(std::to_string(a.id));
    if (a.departure_time_s < 0) throw NegativeDeparture(a.id);
    agents.push_back(std::move(a));
  }
  return agents;
}

std::vector<AgentSpec> mutate(const std::vector<AgentSpec>& agents,
                              const MutationPolicy& policy,
                              const RewardSpec& behavior, RandomStream& rng) {
  const std::size_t n = agents.size();
  const auto n_cav = static_cast<std::size_t>(
      std::llround(policy.share * static_cast<double>(n)));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  switch (policy.selection) {
    case MutationSelection::uniform_random:
      // Partial Fisher-Yates: the first n_cav slots end up holding a
      // uniform draw without replacement.
      for (std::size_t i = 0; i < n_cav; ++i) {
        const std::size_t j = i + rng.uniform_int(n - i);
        std::swap(order[i], order[j]);
      }
      break;
    case MutationSelection::earliest_departures:
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::pair(agents[a].departure_time_s, agents[a].id) <
               std::pair(agents[b].departure_time_s, agents[b].id);
      });
      break;
    case MutationSelection::latest_departures:
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::pair(agents[a].departure_time_s, agents[a].id) >
               std::pair(agents[b].departure_time_s, agents[b].id);
      });
      break;
  }

  std::vector<char> to_cav(n, 0);
  for (std::size_t i = 0; i < n_cav; ++i) to_cav[order[i]] = 1;

  std::vector<AgentSpec> out = agents;
  for (std::size_t i = 0; i < n; ++i) {
    if (to_cav[i]) {
      out[i].kind = AgentKind::cav;
      out[i].behavior = behavior;
    }
  }
  return out;
}

}  // namespace dayroute
