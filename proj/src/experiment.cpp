#include "dayroute/experiment.hpp"

#include <algorithm>
#include <cmath>

#include "dayroute/baselines.hpp"
#include "dayroute/csv.hpp"
#include "dayroute/errors.hpp"
#include "dayroute/marl.hpp"
#include "dayroute/series.hpp"
#include "dayroute/traffic.hpp"

namespace dayroute {

namespace {

/// Either learner behind one CAV.
struct Policy {
  std::optional<IqlPolicy> iql;
  std::optional<PgPolicy> pg;

  int select(const Observation& obs, RandomStream& rng, ActMode mode) {
    return iql ? iql->select_action(obs, rng, mode)
               : pg->select_action(obs, rng, mode);
  }
  void update(const Observation& obs, int action, double reward) {
    if (iql) {
      iql->update(obs, action, reward);
    } else {
      pg->update(obs, action, reward);
    }
  }
};

struct PendingUpdate {
  std::size_t slot;
  Observation obs;
  int action;
};

}  // namespace

RunOutput run_experiment(const RoadNetwork& net,
                         const std::vector<AgentSpec>& initial_agents,
                         const TaskConfig& task, const EnvConfig& env,
                         const AlgoConfig& algo, std::uint64_t env_seed,
                         std::uint64_t train_seed, CavModel model) {
  task.validate();
  env.validate();
  if (model == CavModel::rl) algo.validate();

  std::vector<OdPair> ods;
  ods.reserve(initial_agents.size());
  for (const AgentSpec& a : initial_agents) {
    ods.emplace_back(a.origin, a.destination);
  }
  const RouteCatalog catalog =
      build_route_catalog(net, ods, env.routegen_params(), env_seed);

  std::vector<AgentSpec> agents = initial_agents;
  const std::size_t n = agents.size();

  // Acting order: ascending departure time, ties by agent id.
  std::vector<std::size_t> upsilon(n);
  for (std::size_t i = 0; i < n; ++i) upsilon[i] = i;
  std::sort(upsilon.begin(), upsilon.end(), [&](std::size_t a, std::size_t b) {
    return std::pair(agents[a].departure_time_s, agents[a].id) <
           std::pair(agents[b].departure_time_s, agents[b].id);
  });

  auto routeset_of = [&](const AgentSpec& a) -> const RouteSet& {
    return catalog.at({a.origin, a.destination});
  };

  std::vector<HumanMemory> memories;
  memories.reserve(n);
  for (const AgentSpec& a : agents) memories.push_back(init_memory(routeset_of(a)));

  RunOutput out;
  const long long total_episodes =
      task.human_days + task.training_episodes + task.test_episodes;
  out.record.rows.reserve(static_cast<std::size_t>(total_episodes) * n);

  SimOptions sim_options;
  sim_options.horizon_s = env.sim_horizon_s;

  long long episode = 0;
  std::map<long long, int> choices;

  auto record_episode = [&](Phase phase, const EpisodeResult& result) {
    for (std::size_t idx : upsilon) {
      const AgentSpec& a = agents[idx];
      out.record.rows.push_back({episode, phase, a.id, a.kind,
                                 choices.at(a.id),
                                 result.travel_time_s.at(a.id),
                                 result.distance_m.at(a.id)});
    }
    out.record.episode_mean_speed_mps.push_back(result.mean_speed_mps);
    out.record.episode_phase.push_back(phase);
  };

  // Phase 1: everybody is human, acting and learning day by day.
  for (long long day = 0; day < task.human_days; ++day, ++episode) {
    choices.clear();
    for (std::size_t idx : upsilon) {
      RandomStream rng =
          derive_stream(env_seed, {"human_act", agents[idx].id, episode});
      choices[agents[idx].id] = human_act(memories[idx], task.human_params, rng);
    }
    const EpisodeResult result =
        simulate_episode(net, catalog, choices, agents, sim_options);
    record_episode(Phase::human, result);
    for (std::size_t idx : upsilon) {
      human_learn(memories[idx], choices.at(agents[idx].id),
                  result.travel_time_s.at(agents[idx].id), task.human_params);
    }
  }

  // Phase 2: mutation. The fleet forgets its human past unless it is the
  // stand-in baseline, which exists precisely to keep using it.
  {
    RandomStream rng = derive_stream(env_seed, {"mutation"});
    agents = mutate(agents,
                    {task.cav_share, MutationSelection::uniform_random},
                    task.reward, rng);
  }
  std::vector<long long> fleet_ids, human_ids;
  for (const AgentSpec& a : agents) {
    (a.kind == AgentKind::cav ? fleet_ids : human_ids).push_back(a.id);
  }
  if (model != CavModel::human) {
    for (std::size_t i = 0; i < n; ++i) {
      if (agents[i].kind == AgentKind::cav) {
        memories[i] = init_memory(routeset_of(agents[i]));
      }
    }
  }

  std::vector<Policy> policies(n);
  if (model == CavModel::rl) {
    const long long decay_steps = std::llround(
        algo.epsilon_decay_fraction * static_cast<double>(task.training_episodes));
    for (std::size_t i = 0; i < n; ++i) {
      if (agents[i].kind != AgentKind::cav) continue;
      const int k = routeset_of(agents[i]).size();
      if (algo.algorithm == "iql") {
        policies[i].iql.emplace(
            k, algo.obs_bins, algo.learning_rate,
            EpsilonSchedule{algo.epsilon_start, algo.epsilon_end, decay_steps});
      } else {
        policies[i].pg.emplace(k, algo.obs_bins, algo.learning_rate);
      }
    }
  }

  std::vector<ActedChoice> prefix;
  std::vector<PendingUpdate> pending;

  auto fleet_episode = [&](Phase phase, long long phase_episode) {
    const ActMode mode = phase == Phase::train ? ActMode::train : ActMode::test;
    choices.clear();
    prefix.clear();
    pending.clear();
    for (std::size_t idx : upsilon) {
      const AgentSpec& a = agents[idx];
      const RouteSet& rs = routeset_of(a);
      int action = 0;
      if (a.kind == AgentKind::human) {
        RandomStream rng = derive_stream(env_seed, {"human_act", a.id, episode});
        action = human_act(memories[idx], task.human_params, rng);
      } else {
        switch (model) {
          case CavModel::rl: {
            Observation obs = observe(prefix, rs);
            RandomStream rng =
                derive_stream(train_seed, {"explore", a.id, phase_episode});
            action = policies[idx].select(obs, rng, mode);
            if (mode == ActMode::train) {
              pending.push_back({idx, std::move(obs), action});
            }
            break;
          }
          case CavModel::aon:
            action = aon_act(rs);
            break;
          case CavModel::random: {
            RandomStream rng = derive_stream(env_seed, {"baseline", a.id, episode});
            action = random_act(rs.size(), rng);
            break;
          }
          case CavModel::human: {
            RandomStream rng = derive_stream(env_seed, {"human_act", a.id, episode});
            action = human_stand_in_act(memories[idx], task.human_params, rng);
            break;
          }
        }
      }
      choices[a.id] = action;
      prefix.push_back({a.id, &rs.routes[action], a.departure_time_s});
    }

    const EpisodeResult result =
        simulate_episode(net, catalog, choices, agents, sim_options);
    record_episode(phase, result);

    if (phase == Phase::train) {
      for (const PendingUpdate& p : pending) {
        const double r = compute_reward(*agents[p.slot].behavior, result,
                                        agents[p.slot].id, fleet_ids, human_ids);
        policies[p.slot].update(p.obs, p.action, r);
      }
      if (task.humans_adapt_after_mutation) {
        for (std::size_t idx : upsilon) {
          if (agents[idx].kind != AgentKind::human) continue;
          human_learn(memories[idx], choices.at(agents[idx].id),
                      result.travel_time_s.at(agents[idx].id),
                      task.human_params);
        }
      }
    }
  };

  for (long long ep = 0; ep < task.training_episodes; ++ep, ++episode) {
    fleet_episode(Phase::train, ep);
  }
  for (long long ep = 0; ep < task.test_episodes; ++ep, ++episode) {
    fleet_episode(Phase::test, ep);
  }

  out.kpis = compute_kpis(out.record, task);
  out.agents = std::move(agents);
  out.final_memories = std::move(memories);
  return out;
}

KpiReport execute_run(const ExperimentConfig& config,
                      const std::filesystem::path& results_root) {
  const std::filesystem::path out_dir = results_root / config.id;
  if (std::filesystem::exists(out_dir)) {
    throw ConfigError("results directory already exists, refusing to overwrite: " +
                      out_dir.string());
  }

  const RoadNetwork net = RoadNetwork::load(config.network_dir);
  const std::vector<AgentSpec> agents =
      load_agents(config.network_dir / "agents.csv");

  RunOutput run = run_experiment(net, agents, config.task, config.env,
                                 config.algo, config.env_seed,
                                 config.train_seed, config.model);

  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out = open_for_write(out_dir / "exp_config.json");
    out << resolved_config_json(config);
  }
  write_episodes_csv(run.record, out_dir / "episodes.csv");
  write_kpis_json(run.kpis, out_dir / "kpis.json");
  write_kpis_csv(run.kpis, out_dir / "kpis.csv");
  emit_series(run.record, run.kpis.t_pre, out_dir);

  if (config.env.write_routes) {
    std::vector<OdPair> ods;
    for (const AgentSpec& a : agents) ods.emplace_back(a.origin, a.destination);
    const RouteCatalog catalog = build_route_catalog(
        net, ods, config.env.routegen_params(), config.env_seed);
    write_route_catalog(catalog, out_dir / "routes.csv");
  }
  if (config.env.debug_events) {
    // Re-simulates the final episode with tracing on; the run itself is
    // deterministic, so this is the trace of what actually happened.
    std::map<long long, int> last_choices;
    const long long last_episode =
        static_cast<long long>(run.record.episode_phase.size()) - 1;
    if (last_episode >= 0) {
      std::vector<TraceRow> trace;
      for (const RunRow& row : run.record.rows) {
        if (row.episode == last_episode) last_choices[row.agent] = row.action;
      }
      std::vector<OdPair> ods;
      for (const AgentSpec& a : run.agents) {
        ods.emplace_back(a.origin, a.destination);
      }
      const RouteCatalog catalog = build_route_catalog(
          net, ods, config.env.routegen_params(), config.env_seed);
      SimOptions options;
      options.horizon_s = config.env.sim_horizon_s;
      options.trace = &trace;
      simulate_episode(net, catalog, last_choices, run.agents, options);
      write_event_trace(trace, out_dir / "events.csv");
    }
  }

  return run.kpis;
}

}  // namespace dayroute
