#pragma once

#include <cstddef>
#include <list>
#include <unordered_map>

#include "cachelab/kernel.hpp"

namespace cachelab {

/// CLOCK with Adaptive Replacement (Bansal & Modha, FAST'04), linked-list
/// form. T1/T2 are clocks whose head is the hand position; B1/B2 are LRU
/// history lists. This is the comparison point for Compact CAR, not a
/// trace-identical twin: the published algorithm replaces before it adapts.
class CarPolicy final : public Policy {
 public:
  explicit CarPolicy(std::size_t capacity);

  AccessOutcome access(const Request& request) override;
  std::string_view name() const override { return "car"; }
  std::size_t capacity() const override { return capacity_; }
  std::size_t size() const override { return t_[0].size() + t_[1].size(); }
  bool contains(ChunkId chunk) const override;
  std::vector<ChunkId> residents() const override;
  std::optional<double> target_ratio() const override {
    return static_cast<double>(target_) / static_cast<double>(capacity_);
  }

  std::size_t target() const { return target_; }
  std::size_t t1_size() const { return t_[0].size(); }
  std::size_t t2_size() const { return t_[1].size(); }
  std::size_t b1_size() const { return b_[0].size(); }
  std::size_t b2_size() const { return b_[1].size(); }
  /// List holding `chunk`, if any.
  std::optional<Region> region(ChunkId chunk) const;

 private:
  struct Page {
    ChunkId id;
    bool ref;
  };
  enum class Where : std::uint8_t { T1, T2, B1, B2 };
  struct Entry {
    Where where;
    std::list<Page>::iterator page;     // valid in T1/T2
    std::list<ChunkId>::iterator ghost;  // valid in B1/B2
  };

  ChunkId replace(std::uint32_t& hand_movements);
  void drop_lru_ghost(int list);

  std::size_t capacity_;
  std::size_t target_ = 0;
  std::list<Page> t_[2];     // front = head (hand), back = tail
  std::list<ChunkId> b_[2];  // front = LRU, back = MRU
  std::unordered_map<ChunkId, Entry> entries_;
};

}  // namespace cachelab
