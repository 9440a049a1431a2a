#include "dayroute/routegen.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

#include "dayroute/csv.hpp"
#include "dayroute/errors.hpp"

namespace dayroute {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Single-sink Dijkstra over free-flow times, walking edges backwards.
/// Also records, per node, the first edge of a shortest path onward to the
/// sink (ties resolved toward the lexicographically smallest edge id, so
/// reconstruction is deterministic).
struct SinkTree {
  std::vector<double> dist;
  std::vector<std::int32_t> next_edge;
};

SinkTree sink_tree(const RoadNetwork& net, std::int32_t sink) {
  const auto& edges = net.edges();
  std::vector<std::vector<std::int32_t>> in_edges(net.nodes().size());
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(edges.size()); ++i) {
    in_edges[edges[i].to_idx].push_back(i);
  }

  SinkTree tree;
  tree.dist.assign(net.nodes().size(), kInf);
  tree.next_edge.assign(net.nodes().size(), -1);
  tree.dist[sink] = 0.0;

  using Item = std::pair<double, std::int32_t>;  // (distance, node)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.emplace(0.0, sink);
  std::vector<char> done(net.nodes().size(), 0);

  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = 1;
    for (std::int32_t ei : in_edges[v]) {
      const Edge& e = edges[ei];
      const std::int32_t u = e.from_idx;
      const double nd = d + e.free_flow_time_s();
      if (nd < tree.dist[u]) {
        tree.dist[u] = nd;
        tree.next_edge[u] = ei;
        heap.emplace(nd, u);
      } else if (nd == tree.dist[u] && tree.next_edge[u] >= 0 &&
                 e.id < edges[tree.next_edge[u]].id) {
        tree.next_edge[u] = ei;
      }
    }
  }
  return tree;
}

Route make_route(const RoadNetwork& net, const std::string& origin,
                 const std::string& destination,
                 std::vector<std::int32_t> edge_indices) {
  Route r;
  r.origin = origin;
  r.destination = destination;
  r.edge_indices = std::move(edge_indices);
  r.edges.reserve(r.edge_indices.size());
  for (std::int32_t ei : r.edge_indices) {
    const Edge& e = net.edges()[ei];
    r.edges.push_back(e.id);
    r.free_flow_time_s += e.free_flow_time_s();
    r.length_m += e.length_m;
  }
  return r;
}

bool route_order(const Route& a, const Route& b) {
  if (a.free_flow_time_s != b.free_flow_time_s) {
    return a.free_flow_time_s < b.free_flow_time_s;
  }
  return a.edges < b.edges;
}

}  // namespace

std::vector<double> time_to_destination(const RoadNetwork& net,
                                        std::int32_t destination_idx) {
  return sink_tree(net, destination_idx).dist;
}

RouteSet generate_routes(const RoadNetwork& net, const std::string& origin,
                         const std::string& destination,
                         const RouteGenParams& params, RandomStream& rng) {
  if (origin == destination) {
    throw InvalidRoute("origin equals destination: " + origin);
  }
  const std::int32_t start = net.node_index(origin);
  const std::int32_t sink = net.node_index(destination);
  const SinkTree tree = sink_tree(net, sink);
  if (tree.dist[start] == kInf) throw Unreachable(origin, destination);

  std::set<std::vector<std::int32_t>> seen;
  std::vector<Route> collected;
  auto insert = [&](std::vector<std::int32_t> path) {
    if (seen.insert(path).second) {
      collected.push_back(make_route(net, origin, destination, std::move(path)));
    }
  };

  // The shortest route costs no draw.
  {
    std::vector<std::int32_t> path;
    for (std::int32_t v = start; v != sink;) {
      const std::int32_t ei = tree.next_edge[v];
      path.push_back(ei);
      v = net.edges()[ei].to_idx;
    }
    insert(std::move(path));
  }

  const std::size_t max_walk = net.nodes().size();
  for (int draw = 0;
       draw < params.max_samples && static_cast<int>(collected.size()) < params.k;
       ++draw) {
    std::vector<std::int32_t> path;
    std::int32_t v = start;
    while (v != sink) {
      // Candidates strictly closer to the destination; the walk cannot
      // revisit a node because the potential drops at every step.
      std::vector<std::int32_t> candidates;
      std::vector<double> weights;
      double total = 0.0;
      for (std::int32_t ei : net.outgoing(v)) {
        const Edge& e = net.edges()[ei];
        if (tree.dist[e.to_idx] < tree.dist[v]) {
          const double slack =
              e.free_flow_time_s() + tree.dist[e.to_idx] - tree.dist[v];
          const double w = std::exp(-params.logit_beta * slack);
          candidates.push_back(ei);
          weights.push_back(w);
          total += w;
        }
      }
      assert(!candidates.empty());
      double r = rng.uniform() * total;
      std::size_t pick = candidates.size() - 1;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        r -= weights[i];
        if (r < 0.0) {
          pick = i;
          break;
        }
      }
      path.push_back(candidates[pick]);
      v = net.edges()[candidates[pick]].to_idx;
      assert(path.size() <= max_walk);
    }
    (void)max_walk;
    insert(std::move(path));
  }

  if (static_cast<int>(collected.size()) < params.k) {
    throw InsufficientRoutes(origin, destination,
                             static_cast<int>(collected.size()), params.k);
  }

  std::sort(collected.begin(), collected.end(), route_order);
  RouteSet rs;
  rs.origin = origin;
  rs.destination = destination;
  rs.routes = std::move(collected);
  return rs;
}

RouteCatalog build_route_catalog(const RoadNetwork& net,
                                 const std::vector<OdPair>& ods,
                                 const RouteGenParams& params,
                                 std::uint64_t env_seed) {
  RouteCatalog catalog;
  for (const OdPair& od : ods) {
    if (catalog.count(od)) continue;
    RandomStream rng =
        derive_stream(env_seed, {"routegen", od.first, od.second});
    catalog.emplace(od,
                    generate_routes(net, od.first, od.second, params, rng));
  }
  return catalog;
}

void write_route_catalog(const RouteCatalog& catalog,
                         const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "origin,destination,route_index,edge_sequence,free_flow_time_s,length_m\n";
  for (const auto& [od, rs] : catalog) {
    for (std::size_t i = 0; i < rs.routes.size(); ++i) {
      const Route& r = rs.routes[i];
      out << od.first << ',' << od.second << ',' << i << ',';
      for (std::size_t j = 0; j < r.edges.size(); ++j) {
        if (j) out << '|';
        out << r.edges[j];
      }
      out << ',' << format_fixed(r.free_flow_time_s, 6) << ','
          << format_fixed(r.length_m, 6) << '\n';
    }
  }
}

}  // namespace dayroute
