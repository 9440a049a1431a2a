#include <doctest.h>

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <vector>

#include "dayroute/errors.hpp"
#include "dayroute/metrics.hpp"
#include "dayroute/record.hpp"
#include "test_util.hpp"

using dayroute::AgentKind;
using dayroute::KpiReport;
using dayroute::Phase;
using dayroute::RunRecord;
using dayroute::RunRow;
using dayroute::TaskConfig;
using dayroute::compute_kpis;
using dayroute::win_rate;

namespace {

TaskConfig task_shape(long long human, long long train, long long test,
                      long long window) {
  TaskConfig t;
  t.human_days = human;
  t.training_episodes = train;
  t.test_episodes = test;
  t.t_pre_window = window;
  return t;
}

void add_row(RunRecord& r, long long episode, Phase phase, long long agent,
             AgentKind kind, double tt_s, double dist_m = 1000.0) {
  r.rows.push_back(RunRow{episode, phase, agent, kind, 0, tt_s, dist_m});
}

void seal(RunRecord& r, long long human, long long train, long long test) {
  for (long long e = 0; e < human + train + test; ++e) {
    r.episode_phase.push_back(e < human ? Phase::human
                              : e < human + train ? Phase::train
                                                  : Phase::test);
    r.episode_mean_speed_mps.push_back(10.0);
  }
}

/// The worked three-agent example used against hand arithmetic.
RunRecord worked_record() {
  RunRecord r;
  const auto H = AgentKind::human;
  const auto C = AgentKind::cav;
  // episodes 0-1 pre, 2-3 train, 4-5 test
  add_row(r, 0, Phase::human, 0, H, 120.0, 1000.0);
  add_row(r, 0, Phase::human, 1, H, 60.0, 2000.0);
  add_row(r, 0, Phase::human, 2, H, 240.0, 3000.0);
  add_row(r, 1, Phase::human, 0, H, 120.0, 1000.0);
  add_row(r, 1, Phase::human, 1, H, 120.0, 2000.0);
  add_row(r, 1, Phase::human, 2, H, 180.0, 3000.0);
  add_row(r, 2, Phase::train, 0, H, 180.0, 1000.0);
  add_row(r, 2, Phase::train, 1, C, 120.0, 2000.0);
  add_row(r, 2, Phase::train, 2, H, 240.0, 3000.0);
  add_row(r, 3, Phase::train, 0, H, 240.0, 1000.0);
  add_row(r, 3, Phase::train, 1, C, 120.0, 2000.0);
  add_row(r, 3, Phase::train, 2, H, 300.0, 3000.0);
  add_row(r, 4, Phase::test, 0, H, 120.0, 1200.0);
  add_row(r, 4, Phase::test, 1, C, 60.0, 2000.0);
  add_row(r, 4, Phase::test, 2, H, 240.0, 3000.0);
  add_row(r, 5, Phase::test, 0, H, 180.0, 1400.0);
  add_row(r, 5, Phase::test, 1, C, 60.0, 2200.0);
  add_row(r, 5, Phase::test, 2, H, 240.0, 3000.0);
  r.episode_phase = {Phase::human, Phase::human, Phase::train,
                     Phase::train, Phase::test, Phase::test};
  r.episode_mean_speed_mps = {5.0, 6.0, 9.0, 9.0, 7.0, 8.0};
  return r;
}

/// Random complete record with both vehicle kinds present.
RunRecord random_record(dayroute::RandomStream& rng, TaskConfig& task_out) {
  const long long H = 2 + static_cast<long long>(rng.uniform_int(3));
  const long long T = 1 + static_cast<long long>(rng.uniform_int(3));
  const long long E = 1 + static_cast<long long>(rng.uniform_int(2));
  const int n = 3 + static_cast<int>(rng.uniform_int(4));
  std::vector<bool> cav(n, false);
  cav[0] = true;   // at least one of each kind
  for (int i = 2; i < n; ++i) cav[i] = rng.uniform() < 0.5;

  RunRecord r;
  for (long long e = 0; e < H + T + E; ++e) {
    const Phase phase = e < H ? Phase::human : e < H + T ? Phase::train : Phase::test;
    for (int i = 0; i < n; ++i) {
      const AgentKind kind = (phase != Phase::human && cav[i]) ? AgentKind::cav
                                                               : AgentKind::human;
      add_row(r, e, phase, i, kind, 60.0 + rng.uniform() * 540.0,
              500.0 + rng.uniform() * 2000.0);
    }
  }
  seal(r, H, T, E);
  task_out = task_shape(H, T, E, 1 + static_cast<long long>(rng.uniform_int(H)));
  return r;
}

}  // namespace

TEST_CASE("a one-agent toy record reproduces the training-cost formula") {
  RunRecord r;
  add_row(r, 0, Phase::human, 0, AgentKind::human, 120.0);
  add_row(r, 1, Phase::human, 0, AgentKind::human, 120.0);
  add_row(r, 2, Phase::train, 0, AgentKind::human, 180.0);
  add_row(r, 3, Phase::train, 0, AgentKind::human, 180.0);
  seal(r, 2, 2, 0);
  auto k = compute_kpis(r, task_shape(2, 2, 0, 2));
  REQUIRE(k.c_all.has_value());
  CHECK(*k.c_all == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(*k.t_pre == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(*k.t_train == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_FALSE(k.t_test.has_value());
  CHECK_FALSE(k.t_cav.has_value());
  CHECK_FALSE(k.c_cav.has_value());
  CHECK_FALSE(k.delta_v.has_value());
  CHECK_FALSE(k.delta_l.has_value());
}

TEST_CASE("the worked three-agent record matches hand arithmetic") {
  auto k = compute_kpis(worked_record(), task_shape(2, 2, 2, 2));
  REQUIRE(k.t_pre.has_value());
  CHECK(std::abs(*k.t_pre - 7.0 / 3.0) < 1e-9);
  CHECK(std::abs(*k.t_train - 10.0 / 3.0) < 1e-9);
  CHECK(std::abs(*k.t_test - 2.5) < 1e-9);
  CHECK(std::abs(*k.t_cav - 1.0) < 1e-9);
  CHECK(std::abs(*k.t_hdv - 3.25) < 1e-9);
  CHECK(std::abs(*k.c_all - 1.0) < 1e-9);
  CHECK(std::abs(*k.c_hdv - 1.25) < 1e-9);
  CHECK(std::abs(*k.c_cav - 0.5) < 1e-9);
  CHECK(std::abs(*k.delta_v - 2.0) < 1e-9);
  CHECK(std::abs(*k.delta_l - 1.0 / 15.0) < 1e-9);
  CHECK(k.episodes_human == 2);
  CHECK(k.episodes_train == 2);
  CHECK(k.episodes_test == 2);
}

TEST_CASE("training identical to the pre phase costs nothing") {
  RunRecord r;
  add_row(r, 0, Phase::human, 0, AgentKind::human, 150.0);
  add_row(r, 1, Phase::train, 0, AgentKind::human, 150.0);
  seal(r, 1, 1, 0);
  auto k = compute_kpis(r, task_shape(1, 1, 0, 1));
  CHECK(std::abs(*k.c_all) < 1e-12);
}

TEST_CASE("only the trailing pre-mutation window feeds the baseline mean") {
  RunRecord r;
  add_row(r, 0, Phase::human, 0, AgentKind::human, 600.0);
  add_row(r, 1, Phase::human, 0, AgentKind::human, 600.0);
  add_row(r, 2, Phase::human, 0, AgentKind::human, 120.0);
  add_row(r, 3, Phase::human, 0, AgentKind::human, 120.0);
  seal(r, 4, 0, 0);
  auto k = compute_kpis(r, task_shape(4, 0, 0, 2));
  CHECK(*k.t_pre == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("the baseline mean ignores everything after mutation") {
  dayroute::RandomStream rng(31);
  TaskConfig task;
  auto r = random_record(rng, task);
  auto before = compute_kpis(r, task);
  for (auto& row : r.rows)
    if (row.phase != Phase::human) row.travel_time_s *= 3.0;
  auto after = compute_kpis(r, task);
  CHECK(*after.t_pre == *before.t_pre);
}

TEST_CASE("shifting every training time shifts the cost by the same amount") {
  dayroute::RandomStream rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    TaskConfig task;
    auto r = random_record(rng, task);
    auto base = compute_kpis(r, task);
    const double shift_min = 0.5 + rng.uniform() * 3.0;
    for (auto& row : r.rows)
      if (row.phase == Phase::train) row.travel_time_s += shift_min * 60.0;
    auto shifted = compute_kpis(r, task);
    CHECK(*shifted.c_all == doctest::Approx(*base.c_all + shift_min).epsilon(1e-9));
  }
}

TEST_CASE("group costs decompose into the population cost") {
  dayroute::RandomStream rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    TaskConfig task;
    auto r = random_record(rng, task);
    auto k = compute_kpis(r, task);
    REQUIRE(k.c_all.has_value());
    REQUIRE(k.c_hdv.has_value());
    REQUIRE(k.c_cav.has_value());
    long long n_cav = 0, n_all = 0;
    std::vector<long long> seen;
    for (const auto& row : r.rows) {
      if (row.phase != Phase::train) continue;
      if (std::find(seen.begin(), seen.end(), row.agent) != seen.end()) continue;
      seen.push_back(row.agent);
      ++n_all;
      if (row.kind == AgentKind::cav) ++n_cav;
    }
    const double lhs = *k.c_all * static_cast<double>(n_all);
    const double rhs = *k.c_hdv * static_cast<double>(n_all - n_cav) +
                       *k.c_cav * static_cast<double>(n_cav);
    CHECK(std::abs(lhs - rhs) <= 1e-9);
  }
}

TEST_CASE("a record missing a declared phase is rejected") {
  RunRecord r;
  add_row(r, 0, Phase::human, 0, AgentKind::human, 100.0);
  seal(r, 1, 0, 0);
  CHECK_THROWS_AS(compute_kpis(r, task_shape(2, 0, 0, 1)), dayroute::PhaseMissing);
  CHECK_THROWS_AS(compute_kpis(r, task_shape(1, 1, 0, 1)), dayroute::PhaseMissing);
  CHECK_THROWS_AS(compute_kpis(r, task_shape(1, 0, 2, 1)), dayroute::PhaseMissing);
}

TEST_CASE("win counting is strict and tolerates absent fleets") {
  auto report = [](double cav, double pre) {
    KpiReport k;
    k.t_cav = cav;
    k.t_pre = pre;
    return k;
  };
  CHECK(win_rate({report(3.12, 3.15), report(3.49, 3.15), report(3.20, 3.15)}) ==
        doctest::Approx(1.0 / 3.0));
  CHECK(win_rate({report(3.15, 3.15), report(3.15, 3.15)}) == 0.0);
  CHECK(win_rate({report(2.0, 3.0)}) == 1.0);

  KpiReport no_fleet;
  no_fleet.t_pre = 3.0;
  CHECK(win_rate({no_fleet, report(2.0, 3.0)}) == 0.5);
  CHECK_THROWS_AS(win_rate({}), dayroute::Error);
}

TEST_CASE("the summary files carry units and mark absent metrics") {
  testutil::TempDir tmp;
  RunRecord r;
  add_row(r, 0, Phase::human, 0, AgentKind::human, 120.0);
  add_row(r, 1, Phase::train, 0, AgentKind::human, 150.0);
  seal(r, 1, 1, 0);
  auto k = compute_kpis(r, task_shape(1, 1, 0, 1));

  dayroute::write_kpis_json(k, tmp / "kpis.json");
  std::ifstream in(tmp / "kpis.json");
  auto parsed = nlohmann::json::parse(in);
  CHECK(parsed.at("t_pre").get<double>() == doctest::Approx(2.0));
  CHECK(parsed.at("t_pre_units").get<std::string>() == "min");
  CHECK(parsed.at("t_cav").is_null());
  CHECK(parsed.at("episodes_counted").at("human").get<long long>() == 1);

  dayroute::write_kpis_csv(k, tmp / "kpis.csv");
  auto text = testutil::read_file(tmp / "kpis.csv");
  CHECK(text.find("t_pre") != std::string::npos);
  CHECK(text.find("NA") != std::string::npos);
}
