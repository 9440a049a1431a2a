#include "dayroute/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "dayroute/csv.hpp"
#include "dayroute/errors.hpp"

namespace dayroute {

namespace {

constexpr std::int64_t kNeverServed = INT64_MIN / 4;

std::int64_t to_us(double seconds) {
  return std::llround(seconds * 1e6);
}

struct Event {
  std::int64_t time_us;
  long long agent;
  std::int32_t edge_idx;
  std::int32_t route_pos;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time_us != b.time_us) return a.time_us > b.time_us;
    if (a.agent != b.agent) return a.agent > b.agent;
    return a.edge_idx > b.edge_idx;
  }
};

}  // namespace

EpisodeResult simulate_episode(const RoadNetwork& net,
                               const RouteCatalog& catalog,
                               const std::map<long long, int>& choices,
                               const std::vector<AgentSpec>& agents,
                               const SimOptions& options) {
  const std::int64_t horizon_us = to_us(options.horizon_s);

  // Free-flow and service intervals per edge, clamped to one microsecond
  // so event times within one agent's itinerary strictly increase.
  std::vector<std::int64_t> fft_us(net.edges().size());
  std::vector<std::int64_t> service_us(net.edges().size());
  for (std::size_t i = 0; i < net.edges().size(); ++i) {
    fft_us[i] = std::max<std::int64_t>(1, to_us(net.edges()[i].free_flow_time_s()));
    service_us[i] =
        std::max<std::int64_t>(1, to_us(1.0 / net.edges()[i].capacity_vps));
  }

  std::vector<const Route*> route_of(agents.size());
  std::vector<std::int64_t> depart_us(agents.size());
  std::map<long long, std::size_t> slot_of;  // heap events carry agent ids
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const AgentSpec& a = agents[i];
    const auto choice_it = choices.find(a.id);
    if (choice_it == choices.end()) throw InvalidChoice(a.id, -1);
    const RouteSet& rs = catalog.at({a.origin, a.destination});
    if (choice_it->second < 0 || choice_it->second >= rs.size()) {
      throw InvalidChoice(a.id, choice_it->second);
    }
    route_of[i] = &rs.routes[choice_it->second];
    depart_us[i] = a.departure_time_s * 1000000;
    slot_of[a.id] = i;
  }

  std::priority_queue<Event, std::vector<Event>, EventAfter> heap;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    heap.push(Event{depart_us[i], agents[i].id, route_of[i]->edge_indices[0], 0});
  }

  std::vector<std::int64_t> last_exit_us(net.edges().size(), kNeverServed);
  EpisodeResult result;
  double total_distance = 0.0;
  double total_time = 0.0;

  while (!heap.empty()) {
    const Event ev = heap.top();
    heap.pop();
    const std::size_t slot = slot_of[ev.agent];
    const Route& route = *route_of[slot];

    const std::int64_t eligible = ev.time_us + fft_us[ev.edge_idx];
    const std::int64_t exit_us =
        std::max(eligible, last_exit_us[ev.edge_idx] + service_us[ev.edge_idx]);
    last_exit_us[ev.edge_idx] = exit_us;
    if (exit_us > horizon_us) throw SimulationHorizonExceeded(ev.agent);

    if (options.trace) {
      const std::string& edge_id = net.edges()[ev.edge_idx].id;
      options.trace->push_back({ev.time_us, ev.agent, edge_id, "enter"});
      options.trace->push_back({exit_us, ev.agent, edge_id, "exit"});
    }

    if (ev.route_pos + 1 < static_cast<std::int32_t>(route.edge_indices.size())) {
      heap.push(Event{exit_us, ev.agent, route.edge_indices[ev.route_pos + 1],
                      ev.route_pos + 1});
    } else {
      const double tt = static_cast<double>(exit_us - depart_us[slot]) * 1e-6;
      result.travel_time_s[ev.agent] = tt;
      result.distance_m[ev.agent] = route.length_m;
      result.arrived[ev.agent] = true;
      total_distance += route.length_m;
      total_time += tt;
    }
  }

  result.mean_speed_mps = total_time > 0.0 ? total_distance / total_time : 0.0;
  return result;
}

void write_event_trace(const std::vector<TraceRow>& trace,
                       const std::filesystem::path& path) {
  std::vector<TraceRow> rows = trace;
  // Exits land before entries at the same instant: leaving one edge and
  // entering the next happen at the same microsecond.
  auto rank = [](const TraceRow& r) { return r.event_type[1] == 'x' ? 0 : 1; };
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const TraceRow& a, const TraceRow& b) {
                     return std::tuple(a.time_us, a.agent, rank(a), a.edge) <
                            std::tuple(b.time_us, b.agent, rank(b), b.edge);
                   });
  std::ofstream out = open_for_write(path);
  out << "time_us,agent,edge,event_type\n";
  for (const TraceRow& r : rows) {
    out << r.time_us << ',' << r.agent << ',' << r.edge << ',' << r.event_type
        << '\n';
  }
}

}  // namespace dayroute
