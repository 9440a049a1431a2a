#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace dayroute {

/// Deterministic random stream. All draws go through hand-written
/// transformations of the raw engine output, because the distribution
/// adapters in <random> are allowed to differ between standard library
/// implementations and these results must be reproducible bit for bit.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1), 53 bits of randomness.
  double uniform();

  /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
  std::uint64_t uniform_int(std::uint64_t n);

  /// Standard normal via Box-Muller. Two draws per call, no cached spare,
  /// so the number of engine steps per call is fixed.
  double normal();

private:
  std::mt19937_64 engine_;
};

/// One component of a stream label path. Accepts strings and integers so
/// call sites can write derive_stream(seed, {"human_act", agent_id, day}).
struct StreamLabel {
  StreamLabel(const char* s) : text(s), is_text(true) {}
  StreamLabel(std::string_view s) : text(s), is_text(true) {}
  StreamLabel(const std::string& s) : text(s), is_text(true) {}
  StreamLabel(long long v) : number(v), is_text(false) {}
  StreamLabel(int v) : number(v), is_text(false) {}

  std::string_view text;
  long long number = 0;
  bool is_text;
};

/// Maps (root seed, label path) to a sub-seed. Distinct label paths give
/// independent streams; the same path always gives the same stream. Order
/// of the labels matters.
std::uint64_t derive_seed(std::uint64_t root,
                          std::initializer_list<StreamLabel> labels);

RandomStream derive_stream(std::uint64_t root,
                           std::initializer_list<StreamLabel> labels);

}  // namespace dayroute
