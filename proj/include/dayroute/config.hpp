#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "dayroute/behavior.hpp"
#include "dayroute/human.hpp"
#include "dayroute/routegen.hpp"

namespace dayroute {

/// Environment knobs: route generation, simulation horizon, debug dumps.
struct EnvConfig {
  int number_of_paths = 4;
  double logit_beta = 0.06;      // 1/seconds, see docs/config.md
  int max_samples_factor = 50;   // sampling budget = factor * number_of_paths
  double sim_horizon_s = 21600.0;
  bool write_routes = false;
  bool debug_events = false;

  RouteGenParams routegen_params() const {
    return RouteGenParams{number_of_paths, logit_beta,
                          max_samples_factor * number_of_paths};
  }
  void validate() const;
};

/// Scenario shape: phase lengths, fleet share and objective, human model.
struct TaskConfig {
  long long human_days = 0;
  long long training_episodes = 0;
  long long test_episodes = 0;
  double cav_share = 0.0;
  std::string behavior_name = "selfish";
  RewardSpec reward = behavior_preset("selfish");
  HumanParams human_params;
  bool humans_adapt_after_mutation = false;
  long long t_pre_window = 50;

  void validate() const;
};

struct AlgoConfig {
  std::string algorithm = "iql";  // "iql" or "pg"
  double learning_rate = 0.1;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  double epsilon_decay_fraction = 0.8;  // of the training episodes
  int obs_bins = 5;

  void validate() const;
};

/// Who controls the fleet after mutation.
enum class CavModel { rl, aon, random, human };

const char* cav_model_name(CavModel m);
CavModel cav_model_from_name(const std::string& name);

/// A fully resolved run description: everything needed to execute and
/// everything recorded into exp_config.json.
struct ExperimentConfig {
  std::string id;
  std::string net;
  CavModel model = CavModel::rl;
  AlgoConfig algo;
  EnvConfig env;
  TaskConfig task;
  std::uint64_t env_seed = 42;
  std::uint64_t train_seed = 42;

  std::string algo_id;  // empty for baseline runs
  std::string env_id;
  std::string task_id;
  std::filesystem::path network_dir;
  long long n_agents = 0;
  long long n_unique_od = 0;
};

/// What the command line (or a batch manifest entry) asked for.
struct CliInvocation {
  bool baseline_mode = false;
  std::string id;
  std::string alg_conf;
  std::string env_conf = "config1";  // the stock environment config
  std::string task_conf;
  std::string net;
  std::string model;  // baseline mode: aon | random | human
  std::uint64_t env_seed = 42;
  std::uint64_t train_seed = 42;
};

/// Looks the three config ids up under `root`/config, the network under
/// `root`/networks, validates everything, and fills defaults. The result
/// is what exp_config.json records.
ExperimentConfig resolve_configs(const CliInvocation& invocation,
                                 const std::filesystem::path& root);

/// Serializes the resolved configuration as pretty-printed JSON.
std::string resolved_config_json(const ExperimentConfig& config);

}  // namespace dayroute
