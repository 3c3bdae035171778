#include "cachelab/arc.hpp"

#include <algorithm>
#include <stdexcept>

namespace cachelab {

ArcPolicy::ArcPolicy(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("arc: capacity must be >= 1");
  where_.reserve(2 * capacity);
}

bool ArcPolicy::contains(ChunkId chunk) const {
  auto it = where_.find(chunk);
  return it != where_.end() && (it->second.list == kT1 || it->second.list == kT2);
}

std::optional<Region> ArcPolicy::region(ChunkId chunk) const {
  auto it = where_.find(chunk);
  if (it == where_.end()) return std::nullopt;
  static constexpr Region kRegion[] = {Region::T1, Region::T2, Region::B1, Region::B2};
  return kRegion[it->second.list];
}

std::vector<ChunkId> ArcPolicy::residents() const {
  std::vector<ChunkId> out(lists_[kT1].begin(), lists_[kT1].end());
  out.insert(out.end(), lists_[kT2].begin(), lists_[kT2].end());
  return out;
}

void ArcPolicy::push_mru(List list, ChunkId x) {
  lists_[list].push_front(x);
  where_[x] = Where{list, lists_[list].begin()};
}

void ArcPolicy::unlink(ChunkId x) {
  auto it = where_.find(x);
  lists_[it->second.list].erase(it->second.it);
  where_.erase(it);
}

ChunkId ArcPolicy::pop_lru(List list) {
  ChunkId x = lists_[list].back();
  unlink(x);
  return x;
}

std::optional<ChunkId> ArcPolicy::replace(bool hit_in_b2) {
  const std::size_t t1 = lists_[kT1].size();
  if (t1 >= 1 && ((hit_in_b2 && t1 == target_) || t1 > target_)) {
    ChunkId v = pop_lru(kT1);
    push_mru(kB1, v);
    return v;
  }
  ChunkId v = pop_lru(kT2);
  push_mru(kB2, v);
  return v;
}

AccessOutcome ArcPolicy::access(const Request& request) {
  AccessOutcome out;
  const ChunkId x = request.chunk;
  const std::size_t c = capacity_;
  auto it = where_.find(x);

  if (it != where_.end() && (it->second.list == kT1 || it->second.list == kT2)) {
    unlink(x);
    push_mru(kT2, x);
    out.kind = AccessKind::Hit;
    return out;
  }

  if (it != where_.end()) {
    out.kind = AccessKind::GhostHit;
    const std::size_t b1 = lists_[kB1].size();
    const std::size_t b2 = lists_[kB2].size();
    const bool in_b2 = it->second.list == kB2;
    if (!in_b2) {
      target_ = std::min(c, target_ + std::max<std::size_t>(1, b2 / b1));
    } else {
      const std::size_t delta = std::max<std::size_t>(1, b1 / b2);
      target_ = target_ > delta ? target_ - delta : 0;
    }
    out.evicted = replace(in_b2);
    unlink(x);
    push_mru(kT2, x);
    return out;
  }

  const std::size_t l1 = lists_[kT1].size() + lists_[kB1].size();
  const std::size_t total = l1 + lists_[kT2].size() + lists_[kB2].size();
  if (l1 == c) {
    if (lists_[kT1].size() < c) {
      pop_lru(kB1);
      out.evicted = replace(false);
    } else {
      out.evicted = pop_lru(kT1);
    }
  } else if (total >= c) {
    if (total == 2 * c) pop_lru(kB2);
    out.evicted = replace(false);
  }
  push_mru(kT1, x);
  return out;
}

}  // namespace cachelab
