#include "dayroute/record.hpp"

#include "dayroute/csv.hpp"

namespace dayroute {

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::human: return "human";
    case Phase::train: return "train";
    case Phase::test: return "test";
  }
  return "?";
}

void write_episodes_csv(const RunRecord& record,
                        const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "episode,phase,agent_id,kind,action,travel_time_s,distance_m\n";
  for (const RunRow& r : record.rows) {
    out << r.episode << ',' << phase_name(r.phase) << ',' << r.agent << ','
        << (r.kind == AgentKind::cav ? "cav" : "human") << ',' << r.action
        << ',' << format_fixed(r.travel_time_s, 6) << ','
        << format_fixed(r.distance_m, 6) << '\n';
  }
}

}  // namespace dayroute
