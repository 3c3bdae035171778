#include "cachelab/lirs.hpp"

#include <algorithm>
#include <stdexcept>

namespace cachelab {

LirsPolicy::LirsPolicy(std::size_t capacity) : LirsPolicy(capacity, 4 * capacity) {}

LirsPolicy::LirsPolicy(std::size_t capacity, std::size_t ghost_budget)
    : capacity_(capacity), ghost_budget_(ghost_budget) {
  if (capacity == 0) throw std::invalid_argument("lirs: capacity must be >= 1");
  // 1% of the cache for resident HIR blocks, at least one block. A single
  // slot cache has no LIR set at all.
  const std::size_t hir = capacity == 1 ? 1 : std::max<std::size_t>(1, capacity / 100);
  lir_capacity_ = capacity - hir;
  blocks_.reserve(capacity + ghost_budget);
}

bool LirsPolicy::contains(ChunkId chunk) const {
  auto it = blocks_.find(chunk);
  return it != blocks_.end() && it->second.resident;
}

bool LirsPolicy::is_lir(ChunkId chunk) const {
  auto it = blocks_.find(chunk);
  return it != blocks_.end() && it->second.lir;
}

std::vector<ChunkId> LirsPolicy::residents() const {
  std::vector<ChunkId> out;
  for (const auto& [id, b] : blocks_) {
    if (b.resident) out.push_back(id);
  }
  return out;
}

void LirsPolicy::push_stack_top(ChunkId x, Block& b) {
  if (b.in_stack) stack_.erase(b.s_pos);
  stack_.push_front(x);
  b.s_pos = stack_.begin();
  b.in_stack = true;
}

void LirsPolicy::remove_from_stack(Block& b) {
  stack_.erase(b.s_pos);
  b.in_stack = false;
}

void LirsPolicy::push_queue_back(ChunkId x, Block& b) {
  if (b.in_queue) queue_.erase(b.q_pos);
  queue_.push_back(x);
  b.q_pos = std::prev(queue_.end());
  b.in_queue = true;
}

void LirsPolicy::remove_from_queue(Block& b) {
  queue_.erase(b.q_pos);
  b.in_queue = false;
}

void LirsPolicy::demote_bottom_lir() {
  ChunkId bottom = stack_.back();
  Block& b = blocks_.at(bottom);
  b.lir = false;
  --lir_count_;
  remove_from_stack(b);
  push_queue_back(bottom, b);
}

void LirsPolicy::prune() {
  ghosts_before_last_prune_ = ghosts_.size();
  last_pruned_ghosts_ = 0;
  while (!stack_.empty()) {
    ChunkId bottom = stack_.back();
    Block& b = blocks_.at(bottom);
    if (b.lir) break;
    remove_from_stack(b);
    if (!b.resident) {
      ghosts_.erase({b.last_access, bottom.value});
      blocks_.erase(bottom);
      ++last_pruned_ghosts_;
    }
  }
}

void LirsPolicy::trim_ghosts() {
  while (ghosts_.size() > ghost_budget_) {
    ChunkId oldest{ghosts_.begin()->second};
    ghosts_.erase(ghosts_.begin());
    Block& b = blocks_.at(oldest);
    remove_from_stack(b);
    blocks_.erase(oldest);
  }
}

AccessOutcome LirsPolicy::access(const Request& request) {
  AccessOutcome out;
  const ChunkId x = request.chunk;
  const std::uint64_t now = ++clock_;
  auto it = blocks_.find(x);

  if (it != blocks_.end() && it->second.resident) {
    Block& b = it->second;
    out.kind = AccessKind::Hit;
    if (b.lir) {
      const bool was_bottom = stack_.back() == x;
      push_stack_top(x, b);
      if (was_bottom) prune();
    } else if (b.in_stack && lir_capacity_ > 0) {
      b.lir = true;
      ++lir_count_;
      remove_from_queue(b);
      push_stack_top(x, b);
      demote_bottom_lir();
      prune();
    } else {
      push_stack_top(x, b);
      push_queue_back(x, b);
    }
    b.last_access = now;
    return out;
  }

  // Miss: free a slot by evicting the resident HIR block at the front of Q.
  if (resident_ == capacity_) {
    ChunkId victim = queue_.front();
    Block& v = blocks_.at(victim);
    remove_from_queue(v);
    v.resident = false;
    --resident_;
    out.evicted = victim;
    if (v.in_stack) {
      ghosts_.insert({v.last_access, victim.value});
    } else {
      blocks_.erase(victim);
    }
  }

  it = blocks_.find(x);
  const bool ghost = it != blocks_.end();
  if (ghost) {
    ghosts_.erase({it->second.last_access, x.value});
    out.kind = AccessKind::GhostHit;
  }
  Block& b = ghost ? it->second : blocks_[x];
  b.resident = true;
  b.last_access = now;
  ++resident_;

  if (lir_count_ < lir_capacity_) {
    b.lir = true;
    ++lir_count_;
    push_stack_top(x, b);
  } else if (ghost && lir_capacity_ > 0) {
    b.lir = true;
    ++lir_count_;
    push_stack_top(x, b);
    demote_bottom_lir();
    prune();
  } else {
    push_stack_top(x, b);
    push_queue_back(x, b);
  }
  trim_ghosts();
  return out;
}

}  // namespace cachelab
