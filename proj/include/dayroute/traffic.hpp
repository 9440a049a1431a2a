#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dayroute/demand.hpp"
#include "dayroute/network.hpp"
#include "dayroute/routegen.hpp"

namespace dayroute {

/// Outcome of one simulated day.
struct EpisodeResult {
  std::map<long long, double> travel_time_s;
  std::map<long long, double> distance_m;
  std::map<long long, bool> arrived;
  double mean_speed_mps = 0.0;  // total distance over total travel time
};

struct TraceRow {
  std::int64_t time_us;
  long long agent;
  std::string edge;
  const char* event_type;  // "enter" or "exit"
};

struct SimOptions {
  double horizon_s = 21600.0;  // vehicles still en route past this are an error
  std::vector<TraceRow>* trace = nullptr;
};

/// Runs one day under deterministic point-queue dynamics. A vehicle
/// entering an edge may leave it free_flow_time later at the earliest;
/// departures from the edge are FIFO and consecutive ones are spaced at
/// least 1/capacity seconds apart. Waiting happens at the downstream end
/// with unlimited storage, so congestion never spills upstream.
///
/// All bookkeeping is in integer microseconds and events are ordered by
/// (time, agent id, edge id), which makes results identical across
/// platforms, run after run.
EpisodeResult simulate_episode(const RoadNetwork& net,
                               const RouteCatalog& catalog,
                               const std::map<long long, int>& choices,
                               const std::vector<AgentSpec>& agents,
                               const SimOptions& options = {});

void write_event_trace(const std::vector<TraceRow>& trace,
                       const std::filesystem::path& path);

}  // namespace dayroute
