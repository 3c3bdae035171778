#pragma once

#include <cstddef>
#include <cstdint>
#include <list>
#include <set>
#include <span>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "cachelab/kernel.hpp"

namespace cachelab {

/// FIFO over a ring of c slots. Hits do not reorder anything.
class FifoPolicy final : public Policy {
 public:
  explicit FifoPolicy(std::size_t capacity);

  AccessOutcome access(const Request& request) override;
  std::string_view name() const override { return "fifo"; }
  std::size_t capacity() const override { return slots_.size(); }
  std::size_t size() const override { return size_; }
  bool contains(ChunkId chunk) const override { return directory_.contains(chunk); }
  std::vector<ChunkId> residents() const override;

 private:
  std::vector<ChunkId> slots_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
  DirectoryIndex directory_;
};

/// Classic single-hand CLOCK. The hand clears set bits as it passes and
/// evicts the first entry found with a clear bit.
class ClockPolicy final : public Policy {
 public:
  explicit ClockPolicy(std::size_t capacity);

  AccessOutcome access(const Request& request) override;
  std::string_view name() const override { return "clock"; }
  std::size_t capacity() const override { return slots_.size(); }
  std::size_t size() const override { return size_; }
  bool contains(ChunkId chunk) const override { return directory_.contains(chunk); }
  std::vector<ChunkId> residents() const override;

  std::size_t hand() const { return hand_; }
  std::optional<bool> reference_bit(ChunkId chunk) const;

 private:
  struct Slot {
    ChunkId id;
    bool ref = false;
  };
  std::vector<Slot> slots_;
  std::size_t hand_ = 0;
  std::size_t size_ = 0;
  DirectoryIndex directory_;
};

class LruPolicy final : public Policy {
 public:
  explicit LruPolicy(std::size_t capacity);

  AccessOutcome access(const Request& request) override;
  std::string_view name() const override { return "lru"; }
  std::size_t capacity() const override { return capacity_; }
  std::size_t size() const override { return order_.size(); }
  bool contains(ChunkId chunk) const override { return index_.contains(chunk); }
  /// Most recent first.
  std::vector<ChunkId> residents() const override;

 private:
  std::size_t capacity_;
  std::list<ChunkId> order_;  // front = most recently used
  std::unordered_map<ChunkId, std::list<ChunkId>::iterator> index_;
};

/// LFU with unbounded counters. Among minimum-count residents the one
/// inserted earliest is evicted.
class LfuPolicy final : public Policy {
 public:
  explicit LfuPolicy(std::size_t capacity);

  AccessOutcome access(const Request& request) override;
  std::string_view name() const override { return "lfu"; }
  std::size_t capacity() const override { return capacity_; }
  std::size_t size() const override { return counts_.size(); }
  bool contains(ChunkId chunk) const override { return counts_.contains(chunk); }
  std::vector<ChunkId> residents() const override;

  std::optional<std::uint64_t> count(ChunkId chunk) const;

 private:
  struct Meta {
    std::uint64_t count;
    std::uint64_t inserted;
  };
  using Key = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>;  // count, inserted, id

  std::size_t capacity_;
  std::uint64_t clock_ = 0;
  std::unordered_map<ChunkId, Meta> counts_;
  std::set<Key> heap_;
};

/// Offline optimal replacement (Belady's MIN). Built over the exact stream it
/// will replay; each access must be the next request of that stream.
class OptPolicy final : public Policy {
 public:
  static constexpr std::uint64_t kNever = UINT64_MAX;

  OptPolicy(std::size_t capacity, std::span<const Request> stream, bool bypass = true);

  AccessOutcome access(const Request& request) override;
  std::string_view name() const override { return bypass_ ? "opt" : "opt-nobypass"; }
  std::size_t capacity() const override { return slots_.size(); }
  std::size_t size() const override { return size_; }
  bool contains(ChunkId chunk) const override { return directory_.contains(chunk); }
  std::vector<ChunkId> residents() const override;

  /// Position of the next request for the same chunk after `position`, or kNever.
  std::uint64_t next_use(std::size_t position) const { return next_use_.at(position); }
  std::size_t position() const { return position_; }

 private:
  struct Farther {
    bool operator()(const std::pair<std::uint64_t, std::uint32_t>& a,
                    const std::pair<std::uint64_t, std::uint32_t>& b) const {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    }
  };

  std::vector<ChunkId> stream_;
  std::vector<std::uint64_t> next_use_;
  std::vector<ChunkId> slots_;
  std::vector<std::uint64_t> slot_next_;
  std::set<std::pair<std::uint64_t, std::uint32_t>, Farther> by_next_;
  std::size_t size_ = 0;
  std::size_t position_ = 0;
  bool bypass_;
  DirectoryIndex directory_;
};

}  // namespace cachelab
