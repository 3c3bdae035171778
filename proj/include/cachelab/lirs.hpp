#pragma once

#include <cstddef>
#include <cstdint>
#include <list>
#include <set>
#include <unordered_map>

#include "cachelab/kernel.hpp"

namespace cachelab {

/// LIRS (Jiang & Zhang, SIGMETRICS'02).
///
/// Stack S orders LIR blocks, resident HIR blocks and non-resident HIR
/// ("ghost") blocks by recency; queue Q holds the resident HIR blocks in
/// eviction order. The number of ghosts kept in S is capped at
/// `ghost_budget`; past that the least recent ghost is dropped.
class LirsPolicy final : public Policy {
 public:
  explicit LirsPolicy(std::size_t capacity);
  LirsPolicy(std::size_t capacity, std::size_t ghost_budget);

  AccessOutcome access(const Request& request) override;
  std::string_view name() const override { return "lirs"; }
  std::size_t capacity() const override { return capacity_; }
  std::size_t size() const override { return resident_; }
  bool contains(ChunkId chunk) const override;
  std::vector<ChunkId> residents() const override;

  std::size_t lir_capacity() const { return lir_capacity_; }
  std::size_t ghost_budget() const { return ghost_budget_; }
  std::size_t ghost_count() const { return ghosts_.size(); }
  std::size_t lir_count() const { return lir_count_; }

  /// S from top (most recent) to bottom; Q from front (next victim) to back.
  std::vector<ChunkId> stack() const { return {stack_.begin(), stack_.end()}; }
  std::vector<ChunkId> queue() const { return {queue_.begin(), queue_.end()}; }
  bool is_lir(ChunkId chunk) const;

  /// Ghost entries removed by the most recent stack pruning, and the ghost
  /// count just before it ran.
  std::size_t last_pruned_ghosts() const { return last_pruned_ghosts_; }
  std::size_t ghosts_before_last_prune() const { return ghosts_before_last_prune_; }

 private:
  struct Block {
    bool lir = false;
    bool resident = false;
    bool in_stack = false;
    bool in_queue = false;
    std::uint64_t last_access = 0;
    std::list<ChunkId>::iterator s_pos;
    std::list<ChunkId>::iterator q_pos;
  };

  void push_stack_top(ChunkId x, Block& b);
  void remove_from_stack(Block& b);
  void push_queue_back(ChunkId x, Block& b);
  void remove_from_queue(Block& b);
  void demote_bottom_lir();
  void prune();
  void trim_ghosts();

  std::size_t capacity_;
  std::size_t lir_capacity_;
  std::size_t ghost_budget_;
  std::size_t resident_ = 0;
  std::size_t lir_count_ = 0;
  std::uint64_t clock_ = 0;
  std::list<ChunkId> stack_;  // front = top
  std::list<ChunkId> queue_;  // front = next victim
  std::unordered_map<ChunkId, Block> blocks_;
  std::set<std::pair<std::uint64_t, std::uint64_t>> ghosts_;  // (last access, id)
  std::size_t last_pruned_ghosts_ = 0;
  std::size_t ghosts_before_last_prune_ = 0;
};

}  // namespace cachelab
