#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

namespace dayroute {

struct Node {
  std::string id;
  double x = 0.0;
  double y = 0.0;
};

struct Edge {
  std::string id;
  std::string from;
  std::string to;
  double length_m = 0.0;
  double speed_mps = 0.0;
  double capacity_vps = 0.0;  // vehicles per second past the downstream end
  std::int32_t from_idx = -1;
  std::int32_t to_idx = -1;

  double free_flow_time_s() const { return length_m / speed_mps; }
};

/// Directed road graph loaded from a pair of CSV files. Parallel edges
/// (same endpoints, distinct ids) are legal and kept apart by id.
class RoadNetwork {
public:
  /// Reads `nodes.csv` and `edges.csv` from `dir` and validates them:
  /// unique ids, endpoints that exist, strictly positive length, speed
  /// and capacity.
  static RoadNetwork load(const std::filesystem::path& dir);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::int32_t node_index(const std::string& id) const;
  std::int32_t edge_index(const std::string& id) const;
  const Node& node(const std::string& id) const { return nodes_[node_index(id)]; }
  const Edge& edge(const std::string& id) const { return edges_[edge_index(id)]; }

  /// Edge indices leaving a node, in file order.
  const std::vector<std::int32_t>& outgoing(std::int32_t node_idx) const {
    return out_edges_[node_idx];
  }

  /// True when a directed path exists. BFS, intended for validation, not
  /// for hot loops.
  bool reachable(const std::string& origin, const std::string& destination) const;

private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::int32_t>> out_edges_;
  std::unordered_map<std::string, std::int32_t> node_by_id_;
  std::unordered_map<std::string, std::int32_t> edge_by_id_;
};

}  // namespace dayroute
