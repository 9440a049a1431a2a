#include "dayroute/metrics.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "dayroute/csv.hpp"
#include "dayroute/errors.hpp"

namespace dayroute {

namespace {

struct AgentTally {
  double pre_sum_s = 0.0;
  long long pre_rows = 0;
  double train_sum_s = 0.0;
  long long train_rows = 0;
  double test_sum_s = 0.0;
  long long test_rows = 0;
  bool is_cav = false;
};

}  // namespace

KpiReport compute_kpis(const RunRecord& record, const TaskConfig& task) {
  KpiReport out;

  std::vector<long long> human_episodes, train_episodes, test_episodes;
  for (std::size_t ep = 0; ep < record.episode_phase.size(); ++ep) {
    switch (record.episode_phase[ep]) {
      case Phase::human: human_episodes.push_back(ep); break;
      case Phase::train: train_episodes.push_back(ep); break;
      case Phase::test: test_episodes.push_back(ep); break;
    }
  }
  out.episodes_human = static_cast<long long>(human_episodes.size());
  out.episodes_train = static_cast<long long>(train_episodes.size());
  out.episodes_test = static_cast<long long>(test_episodes.size());

  if (out.episodes_human != task.human_days) throw PhaseMissing("human");
  if (out.episodes_train != task.training_episodes) throw PhaseMissing("train");
  if (out.episodes_test != task.test_episodes) throw PhaseMissing("test");

  // The pre-mutation reference covers the last t_pre_window human days.
  const long long window = task.t_pre_window;
  const long long pre_start =
      window > 0 ? human_episodes[human_episodes.size() - window] : -1;

  std::map<long long, AgentTally> tally;
  double pre_speed_sum = 0.0, test_speed_sum = 0.0;
  double pre_mileage_sum = 0.0, test_mileage_sum = 0.0;

  for (const RunRow& row : record.rows) {
    AgentTally& t = tally[row.agent];
    switch (row.phase) {
      case Phase::human:
        if (window > 0 && row.episode >= pre_start) {
          t.pre_sum_s += row.travel_time_s;
          ++t.pre_rows;
          pre_mileage_sum += row.distance_m;
        }
        break;
      case Phase::train:
        t.train_sum_s += row.travel_time_s;
        ++t.train_rows;
        if (row.kind == AgentKind::cav) t.is_cav = true;
        break;
      case Phase::test:
        t.test_sum_s += row.travel_time_s;
        ++t.test_rows;
        if (row.kind == AgentKind::cav) t.is_cav = true;
        test_mileage_sum += row.distance_m;
        break;
    }
  }

  for (long long ep : human_episodes) {
    if (window > 0 && ep >= pre_start) {
      pre_speed_sum += record.episode_mean_speed_mps[ep];
    }
  }
  for (long long ep : test_episodes) {
    test_speed_sum += record.episode_mean_speed_mps[ep];
  }

  const long long n_agents = static_cast<long long>(tally.size());
  const long long n_train = out.episodes_train;
  const long long n_test = out.episodes_test;

  // Per-agent pre-mutation means, then per-group aggregates.
  double t_pre_total = 0.0;
  double train_total_s = 0.0, test_total_s = 0.0;
  double test_cav_s = 0.0, test_hdv_s = 0.0;
  long long test_cav_rows = 0, test_hdv_rows = 0;
  double excess_all = 0.0, excess_cav = 0.0, excess_hdv = 0.0;
  long long n_cav = 0, n_hdv = 0;

  for (const auto& [agent, t] : tally) {
    (void)agent;
    train_total_s += t.train_sum_s;
    test_total_s += t.test_sum_s;
    if (t.is_cav) {
      ++n_cav;
      test_cav_s += t.test_sum_s;
      test_cav_rows += t.test_rows;
    } else {
      ++n_hdv;
      test_hdv_s += t.test_sum_s;
      test_hdv_rows += t.test_rows;
    }
    if (window > 0) {
      const double t_pre_i = t.pre_sum_s / static_cast<double>(t.pre_rows);
      t_pre_total += t_pre_i;
      const double excess =
          t.train_sum_s - static_cast<double>(n_train) * t_pre_i;
      excess_all += excess;
      (t.is_cav ? excess_cav : excess_hdv) += excess;
    }
  }

  const auto minutes = [](double seconds) { return seconds / 60.0; };

  if (window > 0 && n_agents > 0) {
    out.t_pre = minutes(t_pre_total / static_cast<double>(n_agents));
  }
  if (n_train > 0 && n_agents > 0) {
    out.t_train = minutes(train_total_s / static_cast<double>(n_train * n_agents));
  }
  if (n_test > 0 && n_agents > 0) {
    out.t_test = minutes(test_total_s / static_cast<double>(n_test * n_agents));
    if (test_cav_rows > 0) out.t_cav = minutes(test_cav_s / test_cav_rows);
    if (test_hdv_rows > 0) out.t_hdv = minutes(test_hdv_s / test_hdv_rows);
  }
  if (window > 0 && n_train > 0 && n_agents > 0) {
    out.c_all = minutes(excess_all / static_cast<double>(n_agents * n_train));
    if (n_cav > 0) out.c_cav = minutes(excess_cav / static_cast<double>(n_cav * n_train));
    if (n_hdv > 0) out.c_hdv = minutes(excess_hdv / static_cast<double>(n_hdv * n_train));
  }
  if (window > 0 && n_test > 0) {
    const double pre_speed = pre_speed_sum / static_cast<double>(window);
    const double test_speed = test_speed_sum / static_cast<double>(n_test);
    out.delta_v = test_speed - pre_speed;
    const double pre_mileage = pre_mileage_sum / static_cast<double>(window);
    const double test_mileage = test_mileage_sum / static_cast<double>(n_test);
    if (pre_mileage > 0.0) {
      out.delta_l = (test_mileage - pre_mileage) / pre_mileage;
    }
  }

  return out;
}

double win_rate(const std::vector<KpiReport>& reports) {
  if (reports.empty()) throw Error("win rate needs at least one run");
  long long wins = 0;
  for (const KpiReport& r : reports) {
    if (r.t_cav && r.t_pre && *r.t_cav < *r.t_pre) ++wins;
  }
  return static_cast<double>(wins) / static_cast<double>(reports.size());
}

namespace {

struct NamedMetric {
  const char* name;
  const std::optional<double>& value;
  const char* units;
};

std::vector<NamedMetric> metric_table(const KpiReport& r) {
  return {
      {"t_pre", r.t_pre, "min"},       {"t_train", r.t_train, "min"},
      {"t_test", r.t_test, "min"},     {"t_cav", r.t_cav, "min"},
      {"t_hdv", r.t_hdv, "min"},       {"c_all", r.c_all, "min"},
      {"c_hdv", r.c_hdv, "min"},       {"c_cav", r.c_cav, "min"},
      {"delta_v", r.delta_v, "m/s"},   {"delta_l", r.delta_l, "fraction"},
  };
}

}  // namespace

void write_kpis_json(const KpiReport& report, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  for (const NamedMetric& m : metric_table(report)) {
    if (m.value) {
      j[m.name] = *m.value;
    } else {
      j[m.name] = nullptr;
    }
    j[std::string(m.name) + "_units"] = m.units;
  }
  j["episodes_counted"] = {{"human", report.episodes_human},
                           {"train", report.episodes_train},
                           {"test", report.episodes_test}};
  std::ofstream out = open_for_write(path);
  out << j.dump(2) << '\n';
}

void write_kpis_csv(const KpiReport& report, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  bool first = true;
  for (const NamedMetric& m : metric_table(report)) {
    out << (first ? "" : ",") << m.name;
    first = false;
  }
  out << ",episodes_human,episodes_train,episodes_test\n";
  first = true;
  for (const NamedMetric& m : metric_table(report)) {
    out << (first ? "" : ",");
    first = false;
    if (m.value) {
      out << format_fixed(*m.value, 9);
    } else {
      out << "NA";
    }
  }
  out << ',' << report.episodes_human << ',' << report.episodes_train << ','
      << report.episodes_test << '\n';
}

}  // namespace dayroute
