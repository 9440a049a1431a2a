#include "dayroute/network.hpp"

#include <deque>

#include "dayroute/csv.hpp"
#include "dayroute/errors.hpp"

namespace dayroute {

RoadNetwork RoadNetwork::load(const std::filesystem::path& dir) {
  RoadNetwork net;

  {
    CsvReader reader(dir / "nodes.csv", "id,x,y");
    std::vector<std::string> f;
    while (reader.next(f)) {
      Node n{f[0], reader.to_double(f[1]), reader.to_double(f[2])};
      if (n.id.empty()) throw ParseError(reader.file_name(), reader.line(), "empty node id");
      auto [it, inserted] =
          net.node_by_id_.emplace(n.id, static_cast<std::int32_t>(net.nodes_.size()));
      (void)it;
      if (!inserted) throw DuplicateId(n.id);
      net.nodes_.push_back(std::move(n));
    }
  }

  {
    CsvReader reader(dir / "edges.csv", "id,from,to,length_m,speed_mps,capacity_vps");
    std::vector<std::string> f;
    while (reader.next(f)) {
      Edge e;
      e.id = f[0];
      e.from = f[1];
      e.to = f[2];
      e.length_m = reader.to_double(f[3]);
      e.speed_mps = reader.to_double(f[4]);
      e.capacity_vps = reader.to_double(f[5]);
      if (e.id.empty()) throw ParseError(reader.file_name(), reader.line(), "empty edge id");
      auto from_it = net.node_by_id_.find(e.from);
      if (from_it == net.node_by_id_.end()) throw DanglingEndpoint(e.id, e.from);
      auto to_it = net.node_by_id_.find(e.to);
      if (to_it == net.node_by_id_.end()) throw DanglingEndpoint(e.id, e.to);
      if (!(e.length_m > 0.0)) throw NonPositiveAttribute(e.id, "length_m");
      if (!(e.speed_mps > 0.0)) throw NonPositiveAttribute(e.id, "speed_mps");
      if (!(e.capacity_vps > 0.0)) throw NonPositiveAttribute(e.id, "capacity_vps");
      e.from_idx = from_it->second;
      e.to_idx = to_it->second;
      auto [it, inserted] =
          net.edge_by_id_.emplace(e.id, static_cast<std::int32_t>(net.edges_.size()));
      (void)it;
      if (!inserted) throw DuplicateId(e.id);
      net.edges_.push_back(std::move(e));
    }
  }

  net.out_edges_.resize(net.nodes_.size());
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(net.edges_.size()); ++i) {
    net.out_edges_[net.edges_[i].from_idx].push_back(i);
  }
  return net;
}

std::int32_t RoadNetwork::node_index(const std::string& id) const {
  auto it = node_by_id_.find(id);
  if (it == node_by_id_.end()) throw UnknownNode(id);
  return it->second;
}

std::int32_t RoadNetwork::edge_index(const std::string& id) const {
  auto it = edge_by_id_.find(id);
  if (it == edge_by_id_.end()) throw UnknownEdge(id);
  return it->second;
}

bool RoadNetwork::reachable(const std::string& origin,
                            const std::string& destination) const {
  const std::int32_t start = node_index(origin);
  const std::int32_t goal = node_index(destination);
  if (start == goal) return true;
  std::vector<char> seen(nodes_.size(), 0);
  std::deque<std::int32_t> frontier{start};
  seen[start] = 1;
  while (!frontier.empty()) {
    const std::int32_t v = frontier.front();
    frontier.pop_front();
    for (std::int32_t e : out_edges_[v]) {
      const std::int32_t w = edges_[e].to_idx;
      if (w == goal) return true;
      if (!seen[w]) {
        seen[w] = 1;
        frontier.push_back(w);
      }
    }
  }
  return false;
}

}  // namespace dayroute
