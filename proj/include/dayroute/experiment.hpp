#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "dayroute/config.hpp"
#include "dayroute/demand.hpp"
#include "dayroute/human.hpp"
#include "dayroute/metrics.hpp"
#include "dayroute/network.hpp"
#include "dayroute/record.hpp"

namespace dayroute {

/// In-memory outcome of a full run.
struct RunOutput {
  RunRecord record;
  KpiReport kpis;
  std::vector<AgentSpec> agents;  // post-mutation kinds
  std::vector<HumanMemory> final_memories;  // aligned with `agents`
};

/// Executes the four phases on an already-loaded network and population:
/// day-to-day human learning, fleet mutation, fleet training (or a
/// baseline fleet policy), test rollouts. Agents act in ascending
/// (departure time, id) order everywhere; all randomness is drawn from
/// sub-streams of the two seeds, so identical inputs give identical
/// output down to the last bit.
RunOutput run_experiment(const RoadNetwork& net,
                         const std::vector<AgentSpec>& agents,
                         const TaskConfig& task, const EnvConfig& env,
                         const AlgoConfig& algo, std::uint64_t env_seed,
                         std::uint64_t train_seed,
                         CavModel model = CavModel::rl);

/// Loads everything named by `config`, runs the experiment, and writes
/// the artifact directory `results_root`/<id> (exp_config.json,
/// episodes.csv, kpis.json, kpis.csv, series/, chart.svg, plus optional
/// route and event dumps). Refuses to touch an existing directory.
KpiReport execute_run(const ExperimentConfig& config,
                      const std::filesystem::path& results_root);

}  // namespace dayroute
