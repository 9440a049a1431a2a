#include "dayroute/marl.hpp"

#include <algorithm>
#include <cmath>

#include "dayroute/errors.hpp"

namespace dayroute {

Observation observe(const std::vector<ActedChoice>& earlier,
                    const RouteSet& own_routes) {
  Observation obs;
  obs.route_counts.assign(own_routes.routes.size(), 0);
  obs.total_earlier = static_cast<int>(earlier.size());

  // Membership masks over the network's edges, one per candidate route.
  std::int32_t max_edge = -1;
  for (const Route& r : own_routes.routes) {
    for (std::int32_t e : r.edge_indices) max_edge = std::max(max_edge, e);
  }
  for (const ActedChoice& c : earlier) {
    for (std::int32_t e : c.route->edge_indices) max_edge = std::max(max_edge, e);
  }
  std::vector<char> mask(static_cast<std::size_t>(max_edge + 1) *
                             own_routes.routes.size(),
                         0);
  const std::size_t stride = max_edge + 1;
  for (std::size_t a = 0; a < own_routes.routes.size(); ++a) {
    for (std::int32_t e : own_routes.routes[a].edge_indices) {
      mask[a * stride + e] = 1;
    }
  }

  for (const ActedChoice& c : earlier) {
    for (std::size_t a = 0; a < own_routes.routes.size(); ++a) {
      for (std::int32_t e : c.route->edge_indices) {
        if (mask[a * stride + e]) {
          ++obs.route_counts[a];
          break;
        }
      }
    }
  }
  return obs;
}

std::uint64_t observation_bucket(const Observation& obs, int bins) {
  std::uint64_t key = 0;
  for (int count : obs.route_counts) {
    int level = 0;
    if (obs.total_earlier > 0) {
      const double ratio =
          static_cast<double>(count) / static_cast<double>(obs.total_earlier);
      level = std::min(bins - 1, static_cast<int>(ratio * bins));
    }
    key = key * static_cast<std::uint64_t>(bins) + static_cast<std::uint64_t>(level);
  }
  return key;
}

namespace {

double group_mean_minutes(const EpisodeResult& result,
                          const std::vector<long long>& group,
                          const char* name) {
  if (group.empty()) throw EmptyGroup(name);
  double sum = 0.0;
  for (long long id : group) sum += result.travel_time_s.at(id);
  return sum / (60.0 * static_cast<double>(group.size()));
}

}  // namespace

double compute_reward(const RewardSpec& spec, const EpisodeResult& result,
                      long long self, const std::vector<long long>& fleet,
                      const std::vector<long long>& humans) {
  double cost = 0.0;
  if (spec.w_own != 0.0) {
    cost += spec.w_own * result.travel_time_s.at(self) / 60.0;
  }
  if (spec.w_fleet != 0.0) {
    cost += spec.w_fleet * group_mean_minutes(result, fleet, "fleet");
  }
  if (spec.w_human != 0.0) {
    cost += spec.w_human * group_mean_minutes(result, humans, "humans");
  }
  if (spec.w_system != 0.0) {
    std::vector<long long> everyone = fleet;
    everyone.insert(everyone.end(), humans.begin(), humans.end());
    cost += spec.w_system * group_mean_minutes(result, everyone, "system");
  }
  return -cost;
}

double EpsilonSchedule::at(long long step) const {
  if (decay_steps <= 0 || step >= decay_steps) return end;
  return start + (end - start) * static_cast<double>(step) /
                     static_cast<double>(decay_steps);
}

namespace {

int argmax_lowest(const std::vector<double>& values) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

}  // namespace

IqlPolicy::IqlPolicy(int n_actions, int obs_bins, double learning_rate,
                     EpsilonSchedule epsilon)
    : n_actions_(n_actions), obs_bins_(obs_bins), lr_(learning_rate),
      schedule_(epsilon) {}

const std::vector<double>& IqlPolicy::q_row(const Observation& obs) {
  auto [it, inserted] = q_.try_emplace(observation_bucket(obs, obs_bins_),
                                       std::vector<double>(n_actions_, 0.0));
  (void)inserted;
  return it->second;
}

int IqlPolicy::select_action(const Observation& obs, RandomStream& rng,
                             ActMode mode) {
  if (mode == ActMode::train && rng.uniform() < schedule_.at(step_)) {
    return static_cast<int>(rng.uniform_int(n_actions_));
  }
  return argmax_lowest(q_row(obs));
}

void IqlPolicy::update(const Observation& obs, int action, double reward) {
  auto& row = q_[observation_bucket(obs, obs_bins_)];
  if (row.empty()) row.assign(n_actions_, 0.0);
  row[action] += lr_ * (reward - row[action]);
  ++step_;
}

std::vector<double> softmax(const std::vector<double>& scores) {
  const double peak = *std::max_element(scores.begin(), scores.end());
  std::vector<double> probs(scores.size());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    probs[i] = std::exp(scores[i] - peak);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

PgPolicy::PgPolicy(int n_actions, int obs_bins, double learning_rate)
    : n_actions_(n_actions), obs_bins_(obs_bins), lr_(learning_rate) {}

std::vector<double>& PgPolicy::prefs(std::uint64_t bucket) {
  auto [it, inserted] =
      theta_.try_emplace(bucket, std::vector<double>(n_actions_, 0.0));
  (void)inserted;
  return it->second;
}

std::vector<double> PgPolicy::action_probabilities(const Observation& obs) {
  return softmax(prefs(observation_bucket(obs, obs_bins_)));
}

int PgPolicy::select_action(const Observation& obs, RandomStream& rng,
                            ActMode mode) {
  auto& theta = prefs(observation_bucket(obs, obs_bins_));
  if (mode == ActMode::test) return argmax_lowest(theta);
  const std::vector<double> probs = softmax(theta);
  double r = rng.uniform();
  for (int a = 0; a < n_actions_; ++a) {
    r -= probs[a];
    if (r < 0.0) return a;
  }
  return n_actions_ - 1;  // guards against accumulated rounding
}

void PgPolicy::update(const Observation& obs, int action, double reward) {
  auto& theta = prefs(observation_bucket(obs, obs_bins_));
  const std::vector<double> probs = softmax(theta);
  const double advantage = reward - baseline_;
  for (int a = 0; a < n_actions_; ++a) {
    const double indicator = a == action ? 1.0 : 0.0;
    theta[a] += lr_ * advantage * (indicator - probs[a]);
  }
  ++n_rewards_;
  baseline_ += (reward - baseline_) / static_cast<double>(n_rewards_);
}

}  // namespace dayroute
