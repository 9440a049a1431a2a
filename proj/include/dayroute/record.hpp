#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dayroute/demand.hpp"

namespace dayroute {

enum class Phase { human, train, test };

const char* phase_name(Phase p);

/// One agent's outcome in one episode. Rows appear in acting order within
/// an episode (ascending departure time, ties by agent id).
struct RunRow {
  long long episode;
  Phase phase;
  long long agent;
  AgentKind kind;
  int action;
  double travel_time_s;
  double distance_m;
};

/// The full episode-by-episode history of a run.
struct RunRecord {
  std::vector<RunRow> rows;
  std::vector<double> episode_mean_speed_mps;  // indexed by episode
  std::vector<Phase> episode_phase;
};

void write_episodes_csv(const RunRecord& record,
                        const std::filesystem::path& path);

}  // namespace dayroute
