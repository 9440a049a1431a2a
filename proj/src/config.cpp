#include "dayroute/config.hpp"

#include <fstream>
#include <set>
#include <utility>

#include <json.hpp>

#include "dayroute/demand.hpp"
#include "dayroute/errors.hpp"

namespace dayroute {

using nlohmann::json;

void EnvConfig::validate() const {
  if (number_of_paths < 1) throw ConfigError("number_of_paths must be >= 1");
  if (logit_beta < 0.0) throw ConfigError("logit_beta must be >= 0");
  if (max_samples_factor < 1) throw ConfigError("max_samples_factor must be >= 1");
  if (!(sim_horizon_s > 0.0)) throw ConfigError("sim_horizon_s must be > 0");
}

void TaskConfig::validate() const {
  if (human_days < 0 || training_episodes < 0 || test_episodes < 0) {
    throw ConfigError("phase lengths must be >= 0");
  }
  if (cav_share < 0.0 || cav_share > 1.0) {
    throw ConfigError("cav_share must lie in [0,1]");
  }
  if (t_pre_window < 0 || t_pre_window > human_days) {
    throw ConfigError("t_pre_window must lie in [0, human_days]");
  }
  human_params.validate();
}

void AlgoConfig::validate() const {
  if (algorithm != "iql" && algorithm != "pg") {
    throw ConfigError("algorithm must be 'iql' or 'pg'");
  }
  if (!(learning_rate > 0.0) || learning_rate > 1.0) {
    throw ConfigError("learning_rate must lie in (0,1]");
  }
  if (epsilon_start < 0.0 || epsilon_start > 1.0 || epsilon_end < 0.0 ||
      epsilon_end > 1.0) {
    throw ConfigError("epsilon bounds must lie in [0,1]");
  }
  if (epsilon_decay_fraction < 0.0 || epsilon_decay_fraction > 1.0) {
    throw ConfigError("epsilon_decay_fraction must lie in [0,1]");
  }
  if (obs_bins < 1) throw ConfigError("obs_bins must be >= 1");
}

const char* cav_model_name(CavModel m) {
  switch (m) {
    case CavModel::rl: return "rl";
    case CavModel::aon: return "aon";
    case CavModel::random: return "random";
    case CavModel::human: return "human";
  }
  return "?";
}

CavModel cav_model_from_name(const std::string& name) {
  if (name == "aon") return CavModel::aon;
  if (name == "random") return CavModel::random;
  if (name == "human") return CavModel::human;
  throw ConfigError("unknown baseline model '" + name +
                    "', expected aon, random or human");
}

namespace {

json load_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw MissingFile(file.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SchemaError(file.string(), e.what());
  }
  if (!j.is_object()) throw SchemaError(file.string(), "top level must be an object");
  return j;
}

/// Pulls known keys out of a JSON object and rejects the rest, so typos
/// in config files fail loudly instead of silently keeping a default.
class ObjectReader {
public:
  ObjectReader(const json& j, std::string file) : j_(j), file_(std::move(file)) {}

  template <typename T>
  void read(const char* key, T& out) {
    known_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->get<T>();
    } catch (const json::exception&) {
      throw SchemaError(file_, std::string("bad value for '") + key + "'");
    }
  }

  bool has(const char* key) {
    known_.insert(key);
    return j_.contains(key);
  }

  const json& raw(const char* key) {
    known_.insert(key);
    return j_.at(key);
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      (void)value;
      if (!known_.count(key)) {
        throw SchemaError(file_, "unknown key '" + key + "'");
      }
    }
  }

private:
  const json& j_;
  std::string file_;
  std::set<std::string> known_;
};

std::filesystem::path config_file(const std::filesystem::path& root,
                                  const std::string& kind,
                                  const std::string& id) {
  return root / "config" / kind / (id + ".json");
}

EnvConfig parse_env_config(const std::filesystem::path& file) {
  const json j = load_json(file);
  ObjectReader r(j, file.string());
  EnvConfig cfg;
  r.read("number_of_paths", cfg.number_of_paths);
  r.read("logit_beta", cfg.logit_beta);
  r.read("max_samples_factor", cfg.max_samples_factor);
  r.read("sim_horizon_s", cfg.sim_horizon_s);
  r.read("write_routes", cfg.write_routes);
  r.read("debug_events", cfg.debug_events);
  r.finish();
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw SchemaError(file.string(), e.what());
  }
  return cfg;
}

HumanParams parse_human_params(const json& j, const std::string& file) {
  ObjectReader r(j, file);
  HumanParams p;
  r.read("alpha_zero", p.alpha_zero);
  r.read("history_weights", p.history_weights);
  r.read("gamma_c", p.gamma_c);
  r.read("gamma_u", p.gamma_u);
  r.read("delta", p.delta);
  r.read("beta", p.beta_util);
  if (r.has("noise_weights")) {
    const json& nw = r.raw("noise_weights");
    if (!nw.is_array() || nw.size() != 3) {
      throw SchemaError(file, "noise_weights must be a 3-element array");
    }
    try {
      p.noise_agent = nw[0].get<double>();
      p.noise_route = nw[1].get<double>();
      p.noise_daily = nw[2].get<double>();
    } catch (const json::exception&) {
      throw SchemaError(file, "bad value inside noise_weights");
    }
  }
  r.finish();
  return p;
}

TaskConfig parse_task_config(const std::filesystem::path& file) {
  const json j = load_json(file);
  ObjectReader r(j, file.string());
  TaskConfig cfg;
  r.read("human_days", cfg.human_days);
  r.read("training_episodes", cfg.training_episodes);
  r.read("test_episodes", cfg.test_episodes);
  r.read("cav_share", cfg.cav_share);
  r.read("behavior", cfg.behavior_name);
  r.read("humans_adapt_after_mutation", cfg.humans_adapt_after_mutation);
  r.read("t_pre_window", cfg.t_pre_window);
  if (r.has("human")) {
    const json& h = r.raw("human");
    if (!h.is_object()) throw SchemaError(file.string(), "'human' must be an object");
    cfg.human_params = parse_human_params(h, file.string());
  }
  r.finish();
  try {
    cfg.reward = behavior_preset(cfg.behavior_name);
    cfg.validate();
  } catch (const ConfigError& e) {
    throw SchemaError(file.string(), e.what());
  }
  return cfg;
}

AlgoConfig parse_algo_config(const std::filesystem::path& file) {
  const json j = load_json(file);
  ObjectReader r(j, file.string());
  AlgoConfig cfg;
  r.read("algorithm", cfg.algorithm);
  r.read("learning_rate", cfg.learning_rate);
  r.read("epsilon_start", cfg.epsilon_start);
  r.read("epsilon_end", cfg.epsilon_end);
  r.read("epsilon_decay_fraction", cfg.epsilon_decay_fraction);
  r.read("obs_bins", cfg.obs_bins);
  r.finish();
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw SchemaError(file.string(), e.what());
  }
  return cfg;
}

}  // namespace

ExperimentConfig resolve_configs(const CliInvocation& invocation,
                                 const std::filesystem::path& root) {
  if (invocation.id.empty()) throw ConfigError("experiment id must be nonempty");

  ExperimentConfig cfg;
  cfg.id = invocation.id;
  cfg.net = invocation.net;
  cfg.env_seed = invocation.env_seed;
  cfg.train_seed = invocation.train_seed;

  cfg.env_id = invocation.env_conf;
  const auto env_file = config_file(root, "env_config", cfg.env_id);
  if (!std::filesystem::exists(env_file)) {
    throw UnknownConfigId("env config", cfg.env_id);
  }
  cfg.env = parse_env_config(env_file);

  cfg.task_id = invocation.task_conf;
  const auto task_file = config_file(root, "task_config", cfg.task_id);
  if (!std::filesystem::exists(task_file)) {
    throw UnknownConfigId("task config", cfg.task_id);
  }
  cfg.task = parse_task_config(task_file);

  if (invocation.baseline_mode) {
    cfg.model = cav_model_from_name(invocation.model);
  } else {
    cfg.model = CavModel::rl;
    cfg.algo_id = invocation.alg_conf;
    const auto algo_file = config_file(root, "algo_config", cfg.algo_id);
    if (!std::filesystem::exists(algo_file)) {
      throw UnknownConfigId("algo config", cfg.algo_id);
    }
    cfg.algo = parse_algo_config(algo_file);
  }

  cfg.network_dir = root / "networks" / cfg.net;
  if (cfg.net.empty() || !std::filesystem::is_directory(cfg.network_dir)) {
    throw UnknownNetwork(cfg.net);
  }

  const std::vector<AgentSpec> agents = load_agents(cfg.network_dir / "agents.csv");
  cfg.n_agents = static_cast<long long>(agents.size());
  std::set<std::pair<std::string, std::string>> ods;
  for (const AgentSpec& a : agents) ods.emplace(a.origin, a.destination);
  cfg.n_unique_od = static_cast<long long>(ods.size());

  return cfg;
}

std::string resolved_config_json(const ExperimentConfig& config) {
  json j;
  j["id"] = config.id;
  j["mode"] = config.model == CavModel::rl ? "run" : "baseline";
  j["model"] = cav_model_name(config.model);
  j["net"] = config.net;
  j["network_dir"] = config.network_dir.generic_string();
  j["n_agents"] = config.n_agents;
  j["n_unique_od"] = config.n_unique_od;
  j["env_seed"] = config.env_seed;
  j["train_seed"] = config.train_seed;

  j["env_config_id"] = config.env_id;
  j["env"] = {
      {"number_of_paths", config.env.number_of_paths},
      {"logit_beta", config.env.logit_beta},
      {"max_samples_factor", config.env.max_samples_factor},
      {"sim_horizon_s", config.env.sim_horizon_s},
      {"write_routes", config.env.write_routes},
      {"debug_events", config.env.debug_events},
  };

  j["task_config_id"] = config.task_id;
  j["task"] = {
      {"human_days", config.task.human_days},
      {"training_episodes", config.task.training_episodes},
      {"test_episodes", config.task.test_episodes},
      {"cav_share", config.task.cav_share},
      {"behavior", config.task.behavior_name},
      {"humans_adapt_after_mutation", config.task.humans_adapt_after_mutation},
      {"t_pre_window", config.task.t_pre_window},
      {"human",
       {
           {"alpha_zero", config.task.human_params.alpha_zero},
           {"history_weights", config.task.human_params.history_weights},
           {"gamma_c", config.task.human_params.gamma_c},
           {"gamma_u", config.task.human_params.gamma_u},
           {"delta", config.task.human_params.delta},
           {"beta", config.task.human_params.beta_util},
           {"noise_weights",
            {config.task.human_params.noise_agent,
             config.task.human_params.noise_route,
             config.task.human_params.noise_daily}},
       }},
  };

  if (config.model == CavModel::rl) {
    j["algo_config_id"] = config.algo_id;
    j["algo"] = {
        {"algorithm", config.algo.algorithm},
        {"learning_rate", config.algo.learning_rate},
        {"epsilon_start", config.algo.epsilon_start},
        {"epsilon_end", config.algo.epsilon_end},
        {"epsilon_decay_fraction", config.algo.epsilon_decay_fraction},
        {"obs_bins", config.algo.obs_bins},
    };
  }

  return j.dump(2) + "\n";
}

}  // namespace dayroute
