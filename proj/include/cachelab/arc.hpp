#pragma once

#include <cstddef>
#include <list>
#include <unordered_map>

#include "cachelab/kernel.hpp"

namespace cachelab {

/// Adaptive Replacement Cache (Megiddo & Modha, FAST'03) over four LRU lists.
/// The target-size step uses integer division, as in CAR and Compact CAR.
class ArcPolicy final : public Policy {
 public:
  explicit ArcPolicy(std::size_t capacity);

  AccessOutcome access(const Request& request) override;
  std::string_view name() const override { return "arc"; }
  std::size_t capacity() const override { return capacity_; }
  std::size_t size() const override { return lists_[0].size() + lists_[1].size(); }
  bool contains(ChunkId chunk) const override;
  std::vector<ChunkId> residents() const override;
  std::optional<double> target_ratio() const override {
    return static_cast<double>(target_) / static_cast<double>(capacity_);
  }

  std::size_t target() const { return target_; }
  std::size_t t1_size() const { return lists_[0].size(); }
  std::size_t t2_size() const { return lists_[1].size(); }
  std::size_t b1_size() const { return lists_[2].size(); }
  std::size_t b2_size() const { return lists_[3].size(); }
  /// List holding `chunk`, if any.
  std::optional<Region> region(ChunkId chunk) const;

 private:
  enum List : std::uint8_t { kT1 = 0, kT2 = 1, kB1 = 2, kB2 = 3 };
  struct Where {
    List list;
    std::list<ChunkId>::iterator it;
  };

  // front = MRU, back = LRU
  void push_mru(List list, ChunkId x);
  void unlink(ChunkId x);
  ChunkId pop_lru(List list);
  std::optional<ChunkId> replace(bool hit_in_b2);

  std::size_t capacity_;
  std::size_t target_ = 0;
  std::list<ChunkId> lists_[4];
  std::unordered_map<ChunkId, Where> where_;
};

}  // namespace cachelab
