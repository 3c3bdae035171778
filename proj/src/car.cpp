#include "cachelab/car.hpp"

#include <algorithm>
#include <stdexcept>

namespace cachelab {

CarPolicy::CarPolicy(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("car: capacity must be >= 1");
  entries_.reserve(2 * capacity);
}

bool CarPolicy::contains(ChunkId chunk) const {
  auto it = entries_.find(chunk);
  return it != entries_.end() && (it->second.where == Where::T1 || it->second.where == Where::T2);
}

std::optional<Region> CarPolicy::region(ChunkId chunk) const {
  auto it = entries_.find(chunk);
  if (it == entries_.end()) return std::nullopt;
  static constexpr Region kRegion[] = {Region::T1, Region::T2, Region::B1, Region::B2};
  return kRegion[static_cast<int>(it->second.where)];
}

std::vector<ChunkId> CarPolicy::residents() const {
  std::vector<ChunkId> out;
  for (const auto& list : t_) {
    for (const auto& page : list) out.push_back(page.id);
  }
  return out;
}

void CarPolicy::drop_lru_ghost(int list) {
  entries_.erase(b_[list].front());
  b_[list].pop_front();
}

ChunkId CarPolicy::replace(std::uint32_t& hand_movements) {
  for (;;) {
    if (t_[0].size() >= std::max<std::size_t>(1, target_)) {
      Page head = t_[0].front();
      t_[0].pop_front();
      ++hand_movements;
      if (!head.ref) {
        b_[0].push_back(head.id);
        entries_[head.id] = Entry{Where::B1, {}, std::prev(b_[0].end())};
        return head.id;
      }
      t_[1].push_back(Page{head.id, false});
      entries_[head.id] = Entry{Where::T2, std::prev(t_[1].end()), {}};
    } else {
      Page& head = t_[1].front();
      ++hand_movements;
      if (!head.ref) {
        ChunkId id = head.id;
        t_[1].pop_front();
        b_[1].push_back(id);
        entries_[id] = Entry{Where::B2, {}, std::prev(b_[1].end())};
        return id;
      }
      head.ref = false;
      t_[1].splice(t_[1].end(), t_[1], t_[1].begin());
    }
  }
}

AccessOutcome CarPolicy::access(const Request& request) {
  AccessOutcome out;
  const ChunkId x = request.chunk;
  const std::size_t c = capacity_;

  auto it = entries_.find(x);
  if (it != entries_.end() && (it->second.where == Where::T1 || it->second.where == Where::T2)) {
    it->second.page->ref = true;
    out.kind = AccessKind::Hit;
    return out;
  }

  const bool in_history = it != entries_.end();
  out.kind = in_history ? AccessKind::GhostHit : AccessKind::Miss;

  if (t_[0].size() + t_[1].size() == c) {
    out.evicted = replace(out.hand_movements);
    if (!in_history) {
      if (t_[0].size() + b_[0].size() == c) {
        drop_lru_ghost(0);
      } else if (t_[0].size() + t_[1].size() + b_[0].size() + b_[1].size() == 2 * c) {
        drop_lru_ghost(1);
      }
    }
  }

  if (!in_history) {
    t_[0].push_back(Page{x, false});
    entries_[x] = Entry{Where::T1, std::prev(t_[0].end()), {}};
    return out;
  }

  // `it` survived replace(): only the evicted page's entry was rewritten.
  Entry& e = entries_.at(x);
  const std::size_t b1 = b_[0].size();
  const std::size_t b2 = b_[1].size();
  if (e.where == Where::B1) {
    target_ = std::min(c, target_ + std::max<std::size_t>(1, b2 / b1));
    b_[0].erase(e.ghost);
  } else {
    const std::size_t delta = std::max<std::size_t>(1, b1 / b2);
    target_ = target_ > delta ? target_ - delta : 0;
    b_[1].erase(e.ghost);
  }
  t_[1].push_back(Page{x, false});
  e = Entry{Where::T2, std::prev(t_[1].end()), {}};
  return out;
}

}  // namespace cachelab
