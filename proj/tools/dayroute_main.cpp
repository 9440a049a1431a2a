#include <atomic>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dayroute/csv.hpp"
#include "dayroute/errors.hpp"
#include "dayroute/experiment.hpp"
#include "dayroute/metrics.hpp"

namespace {

using dayroute::CliInvocation;
using dayroute::KpiReport;

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string show(const std::optional<double>& v) {
  return v ? dayroute::format_fixed(*v, 4) : "NA";
}

void print_kpis(const std::string& id, const KpiReport& k,
                const std::filesystem::path& dir) {
  std::cout << "run " << id << " finished\n"
            << "  t_pre   " << show(k.t_pre) << " min\n"
            << "  t_train " << show(k.t_train) << " min\n"
            << "  t_test  " << show(k.t_test) << " min\n"
            << "  t_cav   " << show(k.t_cav) << " min\n"
            << "  t_hdv   " << show(k.t_hdv) << " min\n"
            << "  c_all   " << show(k.c_all) << " min\n"
            << "  delta_v " << show(k.delta_v) << " m/s\n"
            << "  delta_l " << show(k.delta_l) << "\n"
            << "  artifacts: " << dir.generic_string() << "\n";
}

struct BatchEntry {
  CliInvocation invocation;
  dayroute::ExperimentConfig config;
  std::optional<KpiReport> kpis;
  std::string error;
};

CliInvocation invocation_from_json(const nlohmann::json& j, std::size_t index) {
  if (!j.is_object()) {
    throw dayroute::ConfigError("batch entry " + std::to_string(index) +
                                " must be an object");
  }
  CliInvocation inv;
  const std::string mode = j.value("mode", "run");
  if (mode == "baseline") {
    inv.baseline_mode = true;
  } else if (mode != "run") {
    throw dayroute::ConfigError("batch entry " + std::to_string(index) +
                                ": mode must be 'run' or 'baseline'");
  }
  inv.id = j.value("id", "");
  inv.alg_conf = j.value("alg_conf", "");
  inv.env_conf = j.value("env_conf", inv.env_conf);
  inv.task_conf = j.value("task_conf", "");
  inv.net = j.value("net", "");
  inv.model = j.value("model", "");
  inv.env_seed = j.value("env_seed", inv.env_seed);
  inv.train_seed = j.value("train_seed", inv.train_seed);
  return inv;
}

int run_batch(const std::filesystem::path& manifest,
              const std::filesystem::path& root, unsigned jobs) {
  std::ifstream in(manifest);
  if (!in) throw dayroute::MissingFile(manifest.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw dayroute::SchemaError(manifest.string(), e.what());
  }
  if (!j.is_array() || j.empty()) {
    throw dayroute::SchemaError(manifest.string(),
                                "manifest must be a nonempty array");
  }

  // All configuration problems surface before any run starts.
  std::vector<BatchEntry> entries;
  for (std::size_t i = 0; i < j.size(); ++i) {
    BatchEntry e;
    e.invocation = invocation_from_json(j[i], i);
    e.config = dayroute::resolve_configs(e.invocation, root);
    entries.push_back(std::move(e));
  }

  const std::filesystem::path results_root = root / "results";
  std::filesystem::create_directories(results_root);

  if (jobs == 0) jobs = 1;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= entries.size()) return;
      try {
        entries[i].kpis = dayroute::execute_run(entries[i].config, results_root);
      } catch (const std::exception& e) {
        entries[i].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, entries.size()); ++t) {
    pool.emplace_back(worker);
  }
  for (std::thread& t : pool) t.join();

  bool any_failed = false;
  std::vector<KpiReport> reports;
  for (const BatchEntry& e : entries) {
    if (e.kpis) {
      const KpiReport& k = *e.kpis;
      const bool win = k.t_cav && k.t_pre && *k.t_cav < *k.t_pre;
      std::cout << e.config.id << ": t_pre " << show(k.t_pre) << " t_cav "
                << show(k.t_cav) << (win ? "  (win)" : "") << "\n";
      reports.push_back(k);
    } else {
      any_failed = true;
      std::cout << e.config.id << ": FAILED (" << e.error << ")\n";
    }
  }
  if (!reports.empty()) {
    std::cout << "win rate over " << reports.size()
              << " completed runs: " << dayroute::format_fixed(
                     dayroute::win_rate(reports), 4)
              << "\n";
  }
  return any_failed ? kExitRuntime : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Day-to-day route choice benchmark runner"};
  app.require_subcommand(1);

  std::string root = ".";
  app.add_option("--root", root,
                 "Directory holding config/, networks/ and results/");

  CliInvocation inv;
  unsigned long long torch_seed = 0;

  auto add_common = [&](CLI::App* cmd, bool baseline) {
    cmd->fallthrough();  // lets --root appear after the subcommand too
    cmd->add_option("--id", inv.id, "Experiment id (results directory name)")
        ->required();
    if (!baseline) {
      cmd->add_option("--alg-conf", inv.alg_conf, "Algorithm config id")
          ->required();
    }
    cmd->add_option("--env-conf", inv.env_conf,
                    "Environment config id (default: config1)");
    cmd->add_option("--task-conf", inv.task_conf, "Task config id")->required();
    cmd->add_option("--net", inv.net, "Network name under networks/")
        ->required();
    cmd->add_option("--env-seed", inv.env_seed,
                    "Environment seed (default: 42)");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "Train a CAV fleet");
  add_common(run_cmd, false);
  auto* train_seed_opt = run_cmd->add_option(
      "--train-seed", inv.train_seed, "Training seed (default: 42)");
  auto* torch_seed_opt = run_cmd->add_option(
      "--torch-seed", torch_seed, "Deprecated alias of --train-seed");
  torch_seed_opt->excludes(train_seed_opt);

  CLI::App* baseline_cmd =
      app.add_subcommand("baseline", "Run a non-learning fleet policy");
  add_common(baseline_cmd, true);
  baseline_cmd
      ->add_option("--model", inv.model, "Fleet policy: aon, random or human")
      ->required();

  CLI::App* batch_cmd =
      app.add_subcommand("batch", "Run a manifest of independent experiments");
  batch_cmd->fallthrough();
  std::string manifest;
  unsigned jobs = std::thread::hardware_concurrency();
  batch_cmd->add_option("--manifest", manifest, "JSON array of invocations")
      ->required();
  batch_cmd->add_option("--jobs", jobs, "Concurrent runs (default: cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (batch_cmd->parsed()) {
      return run_batch(manifest, root, jobs);
    }
    inv.baseline_mode = baseline_cmd->parsed();
    if (torch_seed_opt->count() > 0) {
      std::cerr << "note: --torch-seed is deprecated, use --train-seed\n";
      inv.train_seed = torch_seed;
    }
    const dayroute::ExperimentConfig config =
        dayroute::resolve_configs(inv, root);
    const std::filesystem::path results_root =
        std::filesystem::path(root) / "results";
    const KpiReport kpis = dayroute::execute_run(config, results_root);
    print_kpis(config.id, kpis, results_root / config.id);
    return 0;
  } catch (const dayroute::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
