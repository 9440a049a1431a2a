#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "dayroute/config.hpp"
#include "dayroute/record.hpp"

namespace dayroute {

/// Headline numbers of one run. Travel times and training costs are in
/// minutes; delta_v is in meters per second; delta_l is a relative
/// mileage change. A metric whose underlying set is legitimately empty
/// (no CAVs, no test phase, no pre window) is absent rather than zero.
struct KpiReport {
  std::optional<double> t_pre;
  std::optional<double> t_train;
  std::optional<double> t_test;
  std::optional<double> t_cav;
  std::optional<double> t_hdv;
  std::optional<double> c_all;
  std::optional<double> c_hdv;
  std::optional<double> c_cav;
  std::optional<double> delta_v;
  std::optional<double> delta_l;
  long long episodes_human = 0;
  long long episodes_train = 0;
  long long episodes_test = 0;
};

/// Evaluates every metric from the recorded rows. `task` supplies the
/// pre-mutation averaging window and is checked against what the record
/// actually contains.
KpiReport compute_kpis(const RunRecord& record, const TaskConfig& task);

/// Fraction of runs whose trained fleet strictly beat the pre-mutation
/// human mean. Runs without both numbers count as losses.
double win_rate(const std::vector<KpiReport>& reports);

void write_kpis_json(const KpiReport& report, const std::filesystem::path& path);
void write_kpis_csv(const KpiReport& report, const std::filesystem::path& path);

}  // namespace dayroute
