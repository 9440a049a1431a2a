#include "dayroute/random.hpp"

#include <cmath>

namespace dayroute {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double RandomStream::uniform() {
  return (next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomStream::uniform_int(std::uint64_t n) {
  // Largest multiple of n that fits in 64 bits; reject draws above it.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t r;
  do {
    r = next_u64();
  } while (r >= limit);
  return r % n;
}

double RandomStream::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  return radius * std::cos(2.0 * 3.14159265358979323846 * u2);
}

std::uint64_t derive_seed(std::uint64_t root,
                          std::initializer_list<StreamLabel> labels) {
  std::uint64_t h = splitmix64(root ^ kFnvOffset);
  for (const StreamLabel& label : labels) {
    std::uint64_t part;
    if (label.is_text) {
      // Length is folded in so "ab"+"c" and "a"+"bc" cannot collide.
      part = fnv1a(kFnvOffset, label.text.data(), label.text.size());
      part = splitmix64(part ^ (0x5445585400000000ULL + label.text.size()));
    } else {
      part = splitmix64(static_cast<std::uint64_t>(label.number) ^
                        0x494e545600000000ULL);
    }
    h = splitmix64(h ^ part);
  }
  return h;
}

RandomStream derive_stream(std::uint64_t root,
                           std::initializer_list<StreamLabel> labels) {
  return RandomStream(derive_seed(root, labels));
}

}  // namespace dayroute
