#include <doctest.h>

#include <json.hpp>
#include <string>

#include "dayroute/behavior.hpp"
#include "dayroute/config.hpp"
#include "dayroute/errors.hpp"
#include "test_util.hpp"

using dayroute::AlgoConfig;
using dayroute::CavModel;
using dayroute::CliInvocation;
using dayroute::ConfigError;
using dayroute::EnvConfig;
using dayroute::RewardSpec;
using dayroute::SchemaError;
using dayroute::TaskConfig;
using dayroute::UnknownConfigId;
using dayroute::UnknownNetwork;
using dayroute::behavior_preset;
using dayroute::resolve_configs;
using testutil::TempDir;

namespace {

CliInvocation stock_invocation() {
  CliInvocation inv;
  inv.id = "probe";
  inv.alg_conf = "iql_default";
  inv.task_conf = "scenario1";
  inv.net = "saint_arnoult";
  return inv;
}

/// A minimal config tree in a temp dir, for schema failure cases.
struct ConfigTree {
  TempDir root;

  void env(const std::string& body) {
    testutil::write_file(root / "config" / "env_config" / "e.json", body);
  }
  void task(const std::string& body) {
    testutil::write_file(root / "config" / "task_config" / "t.json", body);
  }
  void algo(const std::string& body) {
    testutil::write_file(root / "config" / "algo_config" / "a.json", body);
  }
  void network() {
    std::filesystem::create_directories(root / "networks");
    const auto src = testutil::fixture_network("two_route");
    std::filesystem::copy(src, root / "networks" / "two_route",
                          std::filesystem::copy_options::recursive);
  }

  dayroute::ExperimentConfig resolve() {
    CliInvocation inv;
    inv.id = "x";
    inv.alg_conf = "a";
    inv.env_conf = "e";
    inv.task_conf = "t";
    inv.net = "two_route";
    return resolve_configs(inv, root.path());
  }
};

const char* kPlainTask =
    R"({"human_days": 4, "training_episodes": 2, "test_episodes": 1,
        "cav_share": 0.5, "t_pre_window": 2})";
const char* kPlainAlgo = R"({"algorithm": "iql"})";
const char* kPlainEnv = R"({"number_of_paths": 2})";

}  // namespace

TEST_CASE("the stock configs resolve with population counts filled in") {
  auto cfg = resolve_configs(stock_invocation(), testutil::source_root());
  CHECK(cfg.id == "probe");
  CHECK(cfg.model == CavModel::rl);
  CHECK(cfg.env_id == "config1");
  CHECK(cfg.algo_id == "iql_default");
  CHECK(cfg.task_id == "scenario1");
  CHECK(cfg.env_seed == 42);
  CHECK(cfg.train_seed == 42);
  CHECK(cfg.n_agents == 222);
  CHECK(cfg.n_unique_od == 215);
  CHECK(cfg.env.write_routes);
  CHECK(cfg.task.training_episodes == 6000);
  CHECK(cfg.task.reward == RewardSpec{1.0, 0.0, 0.0, 0.0});
  CHECK(cfg.algo.algorithm == "iql");
  CHECK(std::filesystem::is_directory(cfg.network_dir));
}

TEST_CASE("each missing config id names its kind") {
  auto inv = stock_invocation();
  inv.env_conf = "nope";
  try {
    resolve_configs(inv, testutil::source_root());
    FAIL("expected a config lookup failure");
  } catch (const UnknownConfigId& e) {
    CHECK(e.kind == "env config");
    CHECK(e.id == "nope");
  }

  inv = stock_invocation();
  inv.task_conf = "nope";
  try {
    resolve_configs(inv, testutil::source_root());
    FAIL("expected a config lookup failure");
  } catch (const UnknownConfigId& e) {
    CHECK(e.kind == "task config");
  }

  inv = stock_invocation();
  inv.alg_conf = "nope";
  try {
    resolve_configs(inv, testutil::source_root());
    FAIL("expected a config lookup failure");
  } catch (const UnknownConfigId& e) {
    CHECK(e.kind == "algo config");
  }
}

TEST_CASE("an unknown network and an empty id are rejected") {
  auto inv = stock_invocation();
  inv.net = "atlantis";
  try {
    resolve_configs(inv, testutil::source_root());
    FAIL("expected a network lookup failure");
  } catch (const UnknownNetwork& e) {
    CHECK(e.name == "atlantis");
  }

  inv = stock_invocation();
  inv.id = "";
  CHECK_THROWS_AS(resolve_configs(inv, testutil::source_root()), ConfigError);
}

TEST_CASE("baseline invocations skip the algorithm config entirely") {
  CliInvocation inv;
  inv.baseline_mode = true;
  inv.id = "base";
  inv.task_conf = "scenario1";
  inv.net = "saint_arnoult";
  inv.model = "random";
  // deliberately no alg_conf: baselines must not need one
  auto cfg = resolve_configs(inv, testutil::source_root());
  CHECK(cfg.model == CavModel::random);
  CHECK(cfg.algo_id.empty());

  auto j = nlohmann::json::parse(dayroute::resolved_config_json(cfg));
  CHECK(j.at("mode") == "baseline");
  CHECK(j.at("model") == "random");
  CHECK_FALSE(j.contains("algo"));
  CHECK_FALSE(j.contains("algo_config_id"));
}

TEST_CASE("the resolved snapshot round-trips through JSON") {
  auto cfg = resolve_configs(stock_invocation(), testutil::source_root());
  const std::string text = dayroute::resolved_config_json(cfg);
  CHECK(text.back() == '\n');
  auto j = nlohmann::json::parse(text);
  CHECK(j.at("mode") == "run");
  CHECK(j.at("model") == "rl");
  CHECK(j.at("n_agents") == 222);
  CHECK(j.at("n_unique_od") == 215);
  CHECK(j.at("env").at("number_of_paths") == 4);
  CHECK(j.at("task").at("cav_share") == 0.4);
  CHECK(j.at("task").at("human").at("alpha_zero") == 0.8);
  CHECK(j.at("algo").at("epsilon_end") == 0.05);
}

TEST_CASE("unknown keys in a config file fail loudly") {
  ConfigTree tree;
  tree.network();
  tree.algo(kPlainAlgo);
  tree.task(kPlainTask);
  tree.env(R"({"number_of_paths": 2, "numbre_of_paths": 3})");
  try {
    tree.resolve();
    FAIL("expected a schema failure");
  } catch (const SchemaError& e) {
    CHECK(e.file.find("e.json") != std::string::npos);
    CHECK(std::string(e.what()).find("numbre_of_paths") != std::string::npos);
  }
}

TEST_CASE("malformed JSON and wrong shapes become schema failures") {
  ConfigTree tree;
  tree.network();
  tree.algo(kPlainAlgo);
  tree.task(kPlainTask);

  tree.env("{ not json");
  CHECK_THROWS_AS(tree.resolve(), SchemaError);

  tree.env(R"([1, 2, 3])");
  CHECK_THROWS_AS(tree.resolve(), SchemaError);

  tree.env(R"({"number_of_paths": "four"})");
  CHECK_THROWS_AS(tree.resolve(), SchemaError);
}

TEST_CASE("semantic config mistakes carry the offending file name") {
  ConfigTree tree;
  tree.network();
  tree.algo(kPlainAlgo);
  tree.env(kPlainEnv);

  // t_pre averages over days that would not exist
  tree.task(R"({"human_days": 4, "t_pre_window": 9})");
  CHECK_THROWS_AS(tree.resolve(), SchemaError);

  // learning-rate blend weights above one
  tree.task(R"({"human_days": 4, "t_pre_window": 2,
                "human": {"alpha_zero": 0.9, "history_weights": [0.3]}})");
  try {
    tree.resolve();
    FAIL("expected a schema failure");
  } catch (const SchemaError& e) {
    CHECK(e.file.find("t.json") != std::string::npos);
  }

  // noise weights must come as a triple
  tree.task(R"({"human_days": 4, "t_pre_window": 2,
                "human": {"noise_weights": [0.2, 0.2]}})");
  CHECK_THROWS_AS(tree.resolve(), SchemaError);

  tree.task(kPlainTask);
  tree.algo(R"({"algorithm": "dqn"})");
  CHECK_THROWS_AS(tree.resolve(), SchemaError);

  tree.algo(R"({"learning_rate": 0.0})");
  CHECK_THROWS_AS(tree.resolve(), SchemaError);
}

TEST_CASE("a well-formed tree in a scratch root resolves") {
  ConfigTree tree;
  tree.network();
  tree.algo(kPlainAlgo);
  tree.env(kPlainEnv);
  tree.task(R"({"human_days": 4, "t_pre_window": 2,
                "behavior": "malicious",
                "human": {"delta": 0.1, "noise_weights": [0.1, 0.2, 0.3]}})");
  auto cfg = tree.resolve();
  CHECK(cfg.n_agents == 40);
  CHECK(cfg.n_unique_od == 1);
  CHECK(cfg.task.reward == RewardSpec{0.0, 0.0, -1.0, 0.0});
  CHECK(cfg.task.human_params.delta == 0.1);
  CHECK(cfg.task.human_params.noise_agent == 0.1);
  CHECK(cfg.task.human_params.noise_route == 0.2);
  CHECK(cfg.task.human_params.noise_daily == 0.3);
  // unspecified knobs keep their defaults
  CHECK(cfg.task.human_params.alpha_zero == 0.8);
  CHECK(cfg.env.logit_beta == 0.06);
}

TEST_CASE("validation rejects out-of-range knobs directly") {
  EnvConfig env;
  env.number_of_paths = 0;
  CHECK_THROWS_AS(env.validate(), ConfigError);

  TaskConfig task;
  task.human_days = -1;
  CHECK_THROWS_AS(task.validate(), ConfigError);
  task = TaskConfig{};
  task.cav_share = 1.5;
  CHECK_THROWS_AS(task.validate(), ConfigError);

  AlgoConfig algo;
  algo.learning_rate = 1.5;
  CHECK_THROWS_AS(algo.validate(), ConfigError);
  algo = AlgoConfig{};
  algo.epsilon_start = -0.1;
  CHECK_THROWS_AS(algo.validate(), ConfigError);
  CHECK_NOTHROW(AlgoConfig{}.validate());
  CHECK_NOTHROW(EnvConfig{}.validate());
  // a default task has a 50-day averaging window but zero days to fill it
  CHECK_THROWS_AS(TaskConfig{}.validate(), ConfigError);
  task = TaskConfig{};
  task.t_pre_window = 0;
  CHECK_NOTHROW(task.validate());
}

TEST_CASE("fleet objectives come in exactly four presets") {
  CHECK(behavior_preset("selfish") == RewardSpec{1.0, 0.0, 0.0, 0.0});
  CHECK(behavior_preset("cooperative") == RewardSpec{0.0, 1.0, 0.0, 0.0});
  CHECK(behavior_preset("altruistic") == RewardSpec{0.0, 0.0, 0.0, 1.0});
  CHECK(behavior_preset("malicious") == RewardSpec{0.0, 0.0, -1.0, 0.0});
  CHECK_THROWS_AS(behavior_preset("vengeful"), ConfigError);
}

TEST_CASE("baseline model names round-trip and reject strangers") {
  using dayroute::cav_model_from_name;
  using dayroute::cav_model_name;
  for (const char* name : {"aon", "random", "human"}) {
    CHECK(cav_model_name(cav_model_from_name(name)) == std::string(name));
  }
  CHECK(cav_model_name(CavModel::rl) == std::string("rl"));
  // "rl" is not a baseline name; it is selected by not being in baseline mode
  CHECK_THROWS_AS(cav_model_from_name("rl"), ConfigError);
  CHECK_THROWS_AS(cav_model_from_name("ppo"), ConfigError);
}
