#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dayroute/network.hpp"
#include "dayroute/random.hpp"

namespace dayroute {

/// A simple directed path between one origin-destination pair.
struct Route {
  std::vector<std::string> edges;
  std::vector<std::int32_t> edge_indices;  // same edges, resolved against the network
  std::string origin;
  std::string destination;
  double free_flow_time_s = 0.0;
  double length_m = 0.0;
};

/// The action space of every agent travelling between one OD pair:
/// k distinct routes, ascending free-flow time, ties broken by comparing
/// edge-id sequences lexicographically. Index into `routes` is the action.
struct RouteSet {
  std::string origin;
  std::string destination;
  std::vector<Route> routes;

  int size() const { return static_cast<int>(routes.size()); }
};

struct RouteGenParams {
  int k = 4;
  double logit_beta = 0.0;  // 1/seconds; 0 samples efficient edges uniformly
  int max_samples = 200;
};

/// Samples `params.k` distinct simple routes with a Dial-style procedure:
/// only edges that strictly decrease the shortest-time potential toward the
/// destination are eligible, weighted by exp(-beta * detour slack). The
/// shortest route is always included without spending a draw.
RouteSet generate_routes(const RoadNetwork& net, const std::string& origin,
                         const std::string& destination,
                         const RouteGenParams& params, RandomStream& rng);

using OdPair = std::pair<std::string, std::string>;
using RouteCatalog = std::map<OdPair, RouteSet>;

/// One RouteSet per distinct OD pair appearing in `ods`; every traveller
/// sharing an OD shares the entry. Each OD draws from its own sub-stream
/// of `env_seed`, so catalog content does not depend on generation order.
RouteCatalog build_route_catalog(const RoadNetwork& net,
                                 const std::vector<OdPair>& ods,
                                 const RouteGenParams& params,
                                 std::uint64_t env_seed);

/// Dumps a catalog as CSV (edge sequences joined with '|').
void write_route_catalog(const RouteCatalog& catalog,
                         const std::filesystem::path& path);

/// Shortest free-flow travel time from every node to `destination_idx`,
/// +infinity where the destination cannot be reached.
std::vector<double> time_to_destination(const RoadNetwork& net,
                                        std::int32_t destination_idx);

}  // namespace dayroute
