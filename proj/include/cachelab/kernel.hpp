#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cachelab {

/// Identity of a cacheable chunk. Payload bytes are never modeled.
struct ChunkId {
  std::uint64_t value = 0;

  constexpr ChunkId() = default;
  constexpr explicit ChunkId(std::uint64_t v) : value(v) {}

  friend constexpr auto operator<=>(ChunkId, ChunkId) = default;
};

/// One access. virtual_time is the 0-based index of the request in its stream.
struct Request {
  ChunkId chunk;
  std::uint64_t virtual_time = 0;
  // Size in bytes of the named object; 0 when unknown.
  std::uint64_t size_bytes = 0;

  friend bool operator==(const Request&, const Request&) = default;
};

using RequestStream = std::vector<Request>;

/// Builds a stream from raw ids, assigning virtual_time = position.
RequestStream make_stream(const std::vector<std::uint64_t>& ids);

enum class AccessKind : std::uint8_t { Hit, Miss, GhostHit };

std::string_view to_string(AccessKind kind);

struct AccessOutcome {
  AccessKind kind = AccessKind::Miss;
  std::optional<ChunkId> evicted;
  // Rotations of a CLOCK hand over cached entries during this access.
  std::uint32_t hand_movements = 0;

  bool is_hit() const { return kind == AccessKind::Hit; }

  friend bool operator==(const AccessOutcome&, const AccessOutcome&) = default;
};

}  // namespace cachelab

template <>
struct std::hash<cachelab::ChunkId> {
  std::size_t operator()(cachelab::ChunkId id) const noexcept {
    // splitmix64 finalizer; sequential ids otherwise cluster in buckets
    std::uint64_t z = id.value + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(z ^ (z >> 31));
  }
};

namespace cachelab {

/// Regions of the two-region CLOCK layout. Single-list array policies use T1.
enum class Region : std::uint8_t { T1, T2, B1, B2 };

std::string_view to_string(Region region);

struct Location {
  Region region = Region::T1;
  std::uint32_t slot = 0;

  friend bool operator==(const Location&, const Location&) = default;
};

/// id -> (region, slot) map shared by every array-based policy. Callers update
/// it in the same step as the array mutation it mirrors.
class DirectoryIndex {
 public:
  DirectoryIndex() = default;
  explicit DirectoryIndex(std::size_t expected) { map_.reserve(expected); }

  std::optional<Location> lookup(ChunkId chunk) const {
    auto it = map_.find(chunk);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(ChunkId chunk) const { return map_.contains(chunk); }

  void place(ChunkId chunk, Location loc) { map_[chunk] = loc; }

  void erase(ChunkId chunk) { map_.erase(chunk); }

  std::size_t size() const { return map_.size(); }

  template <typename F>
  void for_each(F&& f) const {
    for (const auto& [chunk, loc] : map_) f(chunk, loc);
  }

 private:
  std::unordered_map<ChunkId, Location> map_;
};

/// Contract every replacement policy implements. An instance is driven by a
/// single thread.
class Policy {
 public:
  virtual ~Policy() = default;

  /// Processes one request. On a miss the chunk is resident afterwards unless
  /// the policy bypasses (offline OPT only).
  virtual AccessOutcome access(const Request& request) = 0;

  virtual std::string_view name() const = 0;
  virtual std::size_t capacity() const = 0;
  /// Number of resident (non-ghost) chunks.
  virtual std::size_t size() const = 0;
  virtual bool contains(ChunkId chunk) const = 0;
  virtual std::vector<ChunkId> residents() const = 0;

  /// p/c for policies with a target-size parameter.
  virtual std::optional<double> target_ratio() const { return std::nullopt; }
};

}  // namespace cachelab
