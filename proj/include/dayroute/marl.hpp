#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dayroute/behavior.hpp"
#include "dayroute/random.hpp"
#include "dayroute/routegen.hpp"
#include "dayroute/traffic.hpp"

namespace dayroute {

/// What a vehicle sees before choosing: for each of its candidate routes,
/// how many already-departed travellers picked a route sharing at least
/// one edge with it, plus how many departed at all.
struct Observation {
  std::vector<int> route_counts;
  int total_earlier = 0;
};

/// A route already chosen earlier in the current day.
struct ActedChoice {
  long long agent;
  const Route* route;
  long long departure_time_s;
};

Observation observe(const std::vector<ActedChoice>& earlier,
                    const RouteSet& own_routes);

/// Quantizes per-route load ratios (count / total) into `bins` levels per
/// route and packs them into one table key. Total of zero means an empty
/// road: every ratio quantizes to the lowest level.
std::uint64_t observation_bucket(const Observation& obs, int bins);

/// Scalar feedback, minutes, negated cost. Group terms are means over the
/// fleet (all CAVs), the humans, or everyone; a nonzero weight on an
/// empty group is an error rather than a silent zero.
double compute_reward(const RewardSpec& spec, const EpisodeResult& result,
                      long long self, const std::vector<long long>& fleet,
                      const std::vector<long long>& humans);

enum class ActMode { train, test };

/// Linear exploration decay from `start` to `end` over `decay_steps`
/// updates, constant afterwards.
struct EpsilonSchedule {
  double start = 1.0;
  double end = 0.05;
  long long decay_steps = 1;

  double at(long long step) const;
};

/// Independent tabular Q-learner. One decision per episode means the
/// update target is just the received reward: q += lr * (r - q).
class IqlPolicy {
public:
  IqlPolicy(int n_actions, int obs_bins, double learning_rate,
            EpsilonSchedule epsilon);

  int select_action(const Observation& obs, RandomStream& rng, ActMode mode);
  void update(const Observation& obs, int action, double reward);

  double epsilon() const { return schedule_.at(step_); }
  const std::vector<double>& q_row(const Observation& obs);

private:
  int n_actions_;
  int obs_bins_;
  double lr_;
  EpsilonSchedule schedule_;
  long long step_ = 0;
  std::unordered_map<std::uint64_t, std::vector<double>> q_;
};

/// Softmax policy with per-bucket preferences, trained by REINFORCE
/// against a running-mean baseline.
class PgPolicy {
public:
  PgPolicy(int n_actions, int obs_bins, double learning_rate);

  int select_action(const Observation& obs, RandomStream& rng, ActMode mode);
  void update(const Observation& obs, int action, double reward);

  double baseline() const { return baseline_; }
  std::vector<double> action_probabilities(const Observation& obs);

private:
  std::vector<double>& prefs(std::uint64_t bucket);

  int n_actions_;
  int obs_bins_;
  double lr_;
  double baseline_ = 0.0;
  long long n_rewards_ = 0;
  std::unordered_map<std::uint64_t, std::vector<double>> theta_;
};

std::vector<double> softmax(const std::vector<double>& scores);

}  // namespace dayroute
