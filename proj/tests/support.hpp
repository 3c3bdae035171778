#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cachelab/kernel.hpp"
#include "cachelab/rng.hpp"

namespace cachelab::testing {

/// Uniform ids in [1, alphabet].
inline RequestStream random_stream(Rng& rng, std::size_t length, std::uint64_t alphabet) {
  std::vector<std::uint64_t> ids(length);
  for (auto& id : ids) id = 1 + rng.below(alphabet);
  return make_stream(ids);
}

/// Outcome sequence of a policy over a stream.
inline std::vector<AccessOutcome> replay(Policy& policy, const RequestStream& stream) {
  std::vector<AccessOutcome> out;
  out.reserve(stream.size());
  for (const auto& r : stream) out.push_back(policy.access(r));
  return out;
}

inline std::size_t hits(const std::vector<AccessOutcome>& outcomes) {
  std::size_t h = 0;
  for (const auto& o : outcomes) h += o.is_hit();
  return h;
}

inline std::vector<AccessKind> kinds(const std::vector<AccessOutcome>& outcomes) {
  std::vector<AccessKind> k;
  for (const auto& o : outcomes) k.push_back(o.kind);
  return k;
}

constexpr AccessKind H = AccessKind::Hit;
constexpr AccessKind M = AccessKind::Miss;
constexpr AccessKind G = AccessKind::GhostHit;

}  // namespace cachelab::testing
