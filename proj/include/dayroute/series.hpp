#pragma once

#include <filesystem>
#include <optional>

#include "dayroute/record.hpp"

namespace dayroute {

/// Writes plot-ready per-episode mean travel times into `out_dir`/series:
/// mean_tt_all.csv always, mean_tt_cav.csv and mean_tt_hdv.csv only when
/// the group ever has members. Also renders chart.svg in `out_dir` with
/// all emitted series and, when given, a dashed pre-mutation reference.
void emit_series(const RunRecord& record, std::optional<double> t_pre_min,
                 const std::filesystem::path& out_dir);

}  // namespace dayroute
