#include "cachelab/compact_car.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "cachelab/check.hpp"

namespace cachelab {

namespace {

Region top_region(Tier tier) { return tier == Tier::One ? Region::T1 : Region::T2; }
Region bottom_region(Tier tier) { return tier == Tier::One ? Region::B1 : Region::B2; }
bool is_top(Region r) { return r == Region::T1 || r == Region::T2; }
bool grows_right(Region r) { return r == Region::T1 || r == Region::B1; }

}  // namespace

CompactCar::CompactCar(std::size_t capacity) : CompactCar(capacity, Options{}) {}

CompactCar::CompactCar(std::size_t capacity, Options options)
    : capacity_(capacity),
      options_(options),
      top_(capacity),
      bottom_(capacity),
      directory_(2 * capacity) {
  if (capacity == 0) throw std::invalid_argument("compact-car: capacity must be >= 1");
  if (capacity > UINT32_MAX) throw std::invalid_argument("compact-car: capacity too large");
  if (options_.fixed_target > capacity) {
    throw std::invalid_argument("compact-car: fixed target exceeds capacity");
  }
  target_ = options_.adaptive ? 0 : options_.fixed_target;
  hand_t1_ = first_slot(Region::T1);
  hand_t2_ = first_slot(Region::T2);
  hand_b1_ = first_slot(Region::B1);
  hand_b2_ = first_slot(Region::B2);
}

CompactCar CompactCar::fixed_ratio(std::size_t capacity, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("cfr: q must lie in [0, 1]");
  auto p = static_cast<std::size_t>(std::floor(q * static_cast<double>(capacity) + 0.5));
  return CompactCar(capacity, Options{.adaptive = false, .fixed_target = std::min(p, capacity)});
}

CompactCar CompactCar::from_layout(std::size_t capacity, const Layout& layout) {
  return from_layout(capacity, layout, Options{});
}

CompactCar CompactCar::from_layout(std::size_t capacity, const Layout& layout, Options options) {
  CompactCar car(capacity, options);
  if (layout.t1.size() + layout.t2.size() > capacity ||
      layout.b1.size() + layout.b2.size() > capacity || layout.target > capacity) {
    throw std::invalid_argument("compact-car: layout does not fit capacity");
  }
  const auto c = static_cast<std::uint32_t>(capacity);
  for (std::size_t k = 0; k < layout.t1.size(); ++k) {
    car.top_[k] = TopSlot{layout.t1[k].first, layout.t1[k].second};
    car.directory_.place(layout.t1[k].first, {Region::T1, static_cast<std::uint32_t>(k)});
  }
  for (std::size_t k = 0; k < layout.t2.size(); ++k) {
    auto slot = c - 1 - static_cast<std::uint32_t>(k);
    car.top_[slot] = TopSlot{layout.t2[k].first, layout.t2[k].second};
    car.directory_.place(layout.t2[k].first, {Region::T2, slot});
  }
  for (std::size_t k = 0; k < layout.b1.size(); ++k) {
    car.bottom_[k] = layout.b1[k];
    car.directory_.place(layout.b1[k], {Region::B1, static_cast<std::uint32_t>(k)});
  }
  for (std::size_t k = 0; k < layout.b2.size(); ++k) {
    auto slot = c - 1 - static_cast<std::uint32_t>(k);
    car.bottom_[slot] = layout.b2[k];
    car.directory_.place(layout.b2[k], {Region::B2, slot});
  }
  car.t1_len_ = layout.t1.size();
  car.t2_len_ = layout.t2.size();
  car.b1_len_ = layout.b1.size();
  car.b2_len_ = layout.b2.size();
  if (options.adaptive) car.target_ = layout.target;
  auto set_hand = [&](Region r, std::size_t offset) {
    std::size_t len = car.run_length(r);
    if (len == 0 && offset == 0) return;
    if (offset >= len) throw std::invalid_argument("compact-car: hand outside its list");
    car.hand_ref(r) = grows_right(r) ? static_cast<std::uint32_t>(offset)
                                     : c - 1 - static_cast<std::uint32_t>(offset);
  };
  set_hand(Region::T1, layout.hand_t1);
  set_hand(Region::T2, layout.hand_t2);
  set_hand(Region::B1, layout.hand_b1);
  set_hand(Region::B2, layout.hand_b2);
  if (car.directory_.size() != car.t1_len_ + car.t2_len_ + car.b1_len_ + car.b2_len_) {
    throw std::invalid_argument("compact-car: layout repeats a chunk");
  }
  return car;
}

// --- geometry -------------------------------------------------------------

std::size_t CompactCar::run_length(Region region) const {
  switch (region) {
    case Region::T1: return t1_len_;
    case Region::T2: return t2_len_;
    case Region::B1: return b1_len_;
    case Region::B2: return b2_len_;
  }
  return 0;
}

std::uint32_t CompactCar::first_slot(Region region) const {
  return grows_right(region) ? 0 : static_cast<std::uint32_t>(capacity_ - 1);
}

std::uint32_t CompactCar::edge_slot(Region region) const {
  const std::size_t len = run_length(region);
  CACHELAB_EXPECT(len > 0, "edge of an empty list");
  return grows_right(region) ? static_cast<std::uint32_t>(len - 1)
                             : static_cast<std::uint32_t>(capacity_ - len);
}

bool CompactCar::in_run(Region region, std::uint32_t slot) const {
  const std::size_t len = run_length(region);
  if (slot >= capacity_) return false;
  return grows_right(region) ? slot < len : slot >= capacity_ - len;
}

std::uint32_t& CompactCar::hand_ref(Region region) {
  switch (region) {
    case Region::T1: return hand_t1_;
    case Region::T2: return hand_t2_;
    case Region::B1: return hand_b1_;
    case Region::B2: return hand_b2_;
  }
  return hand_t1_;
}

std::uint32_t CompactCar::hand(Region region) const {
  return const_cast<CompactCar*>(this)->hand_ref(region);
}

void CompactCar::rotate(Region region) {
  std::uint32_t& h = hand_ref(region);
  if (grows_right(region)) {
    ++h;
  } else if (h == 0) {
    h = UINT32_MAX;  // forces the wrap below
  } else {
    --h;
  }
  settle_hand(region);
}

void CompactCar::settle_hand(Region region) {
  std::uint32_t& h = hand_ref(region);
  if (!in_run(region, h)) h = first_slot(region);
}

ChunkId CompactCar::id_at(Region region, std::uint32_t slot) const {
  return is_top(region) ? top_[slot].id : bottom_[slot];
}

// --- list primitives ------------------------------------------------------

void CompactCar::edge_swap(Region region, std::uint32_t slot) {
  CACHELAB_EXPECT(in_run(region, slot), "slot outside the list");
  const std::uint32_t edge = edge_slot(region);
  if (slot == edge) return;
  if (is_top(region)) {
    std::swap(top_[slot], top_[edge]);
    directory_.place(top_[slot].id, {region, slot});
    directory_.place(top_[edge].id, {region, edge});
  } else {
    std::swap(bottom_[slot], bottom_[edge]);
    directory_.place(bottom_[slot], {region, slot});
    directory_.place(bottom_[edge], {region, edge});
  }
}

void CompactCar::discard_bottom(Tier tier, ChunkId x) {
  const Region region = bottom_region(tier);
  auto loc = directory_.lookup(x);
  CACHELAB_EXPECT(loc && loc->region == region, "chunk is not a ghost of this list");
  edge_swap(region, loc->slot);
  directory_.erase(x);
  if (tier == Tier::One) --b1_len_; else --b2_len_;
  settle_hand(region);
}

void CompactCar::replace_bottom(Tier tier) {
  const Region region = bottom_region(tier);
  CACHELAB_EXPECT(run_length(region) > 0, "history list is empty");
  const std::uint32_t h = hand_ref(region);
  const ChunkId ghost = bottom_[h];
  edge_swap(region, h);
  directory_.erase(ghost);
  if (tier == Tier::One) --b1_len_; else --b2_len_;
  rotate(region);
}

CompactCar::Victim CompactCar::replace_top(Tier tier, std::uint32_t& hand_movements) {
  CACHELAB_EXPECT(t1_len_ + t2_len_ == capacity_, "cache is not full");
  CACHELAB_EXPECT(t1_len_ + t2_len_ > 0, "both lists empty");
  Region region = top_region(tier);
  if (run_length(region) == 0) {
    tier = tier == Tier::One ? Tier::Two : Tier::One;
    region = top_region(tier);
  }
  for (;;) {
    std::uint32_t h = hand_ref(region);
    if (!top_[h].ref) break;
    top_[h].ref = false;
    if (tier == Tier::One) {
      // Promote to T2: move to T1's edge, then shift the boundary over it.
      edge_swap(Region::T1, h);
      const std::uint32_t edge = edge_slot(Region::T1);
      --t1_len_;
      ++t2_len_;
      directory_.place(top_[edge].id, {Region::T2, edge});
      ++t2_from_promotion_;
    }
    rotate(region);
    ++hand_movements;
    if (tier == Tier::One && t1_len_ == 0) {
      tier = Tier::Two;
      region = Region::T2;
    }
  }

  const std::uint32_t h = hand_ref(region);
  const ChunkId victim = top_[h].id;
  const Region ghosts = bottom_region(tier);
  CACHELAB_EXPECT(b1_len_ + b2_len_ < capacity_, "no free history slot");
  const auto ghost_slot = tier == Tier::One
                              ? static_cast<std::uint32_t>(b1_len_)
                              : static_cast<std::uint32_t>(capacity_ - b2_len_ - 1);
  bottom_[ghost_slot] = victim;
  if (tier == Tier::One) ++b1_len_; else ++b2_len_;

  edge_swap(region, h);
  const std::uint32_t freed = edge_slot(region);
  directory_.place(victim, {ghosts, ghost_slot});
  top_[freed] = TopSlot{};
  if (tier == Tier::One) --t1_len_; else --t2_len_;
  rotate(region);
  ++hand_movements;
  return Victim{freed, victim};
}

void CompactCar::insert_top(Tier tier, std::uint32_t slot, ChunkId x) {
  if (tier == Tier::One) {
    CACHELAB_EXPECT(slot == t1_len_, "slot not adjacent to T1");
    ++t1_len_;
  } else {
    CACHELAB_EXPECT(slot + t2_len_ + 1 == capacity_, "slot not adjacent to T2");
    ++t2_len_;
  }
  top_[slot] = TopSlot{x, false};
  directory_.place(x, {top_region(tier), slot});
}

// --- replacement ----------------------------------------------------------

AccessOutcome CompactCar::access(ChunkId x) {
  AccessOutcome out;
  Tier insert_into = Tier::One;

  if (auto loc = directory_.lookup(x)) {
    if (is_top(loc->region)) {
      top_[loc->slot].ref = true;
      out.kind = AccessKind::Hit;
      return out;
    }
    out.kind = AccessKind::GhostHit;
    insert_into = Tier::Two;
    if (loc->region == Region::B1) {
      if (options_.adaptive) {
        const std::size_t delta = std::max<std::size_t>(1, b2_len_ / b1_len_);
        target_ = std::min(capacity_, target_ + delta);
      }
      discard_bottom(Tier::One, x);
    } else {
      if (options_.adaptive) {
        const std::size_t delta = std::max<std::size_t>(1, b1_len_ / b2_len_);
        target_ = target_ > delta ? target_ - delta : 0;
      }
      discard_bottom(Tier::Two, x);
    }
  } else {
    out.kind = AccessKind::Miss;
    if (t1_len_ + b1_len_ >= capacity_ && b1_len_ > 0) {
      replace_bottom(Tier::One);
    } else if (t1_len_ + t2_len_ + b1_len_ + b2_len_ >= 2 * capacity_ && b2_len_ > 0) {
      replace_bottom(Tier::Two);
    }
  }

  std::uint32_t slot;
  if (t1_len_ + t2_len_ == capacity_) {
    const Tier from = t1_len_ >= std::max<std::size_t>(target_, 1) ? Tier::One : Tier::Two;
    const Victim v = replace_top(from, out.hand_movements);
    slot = v.free_slot;
    out.evicted = v.evicted;
  } else {
    slot = insert_into == Tier::One ? static_cast<std::uint32_t>(t1_len_)
                                    : static_cast<std::uint32_t>(capacity_ - t2_len_ - 1);
  }
  insert_top(insert_into, slot, x);
  if (insert_into == Tier::Two) ++t2_from_ghost_;
  return out;
}

// --- introspection --------------------------------------------------------

bool CompactCar::contains(ChunkId chunk) const {
  auto loc = directory_.lookup(chunk);
  return loc && is_top(loc->region);
}

std::optional<bool> CompactCar::reference_bit(ChunkId chunk) const {
  auto loc = directory_.lookup(chunk);
  if (!loc || !is_top(loc->region)) return std::nullopt;
  return top_[loc->slot].ref;
}

std::vector<ChunkId> CompactCar::residents() const {
  std::vector<ChunkId> out;
  out.reserve(size());
  for (std::size_t k = 0; k < t1_len_; ++k) out.push_back(top_[k].id);
  for (std::size_t k = 0; k < t2_len_; ++k) out.push_back(top_[capacity_ - 1 - k].id);
  return out;
}

CompactCar::Layout CompactCar::layout() const {
  Layout l;
  const std::size_t c = capacity_;
  for (std::size_t k = 0; k < t1_len_; ++k) l.t1.emplace_back(top_[k].id, top_[k].ref);
  for (std::size_t k = 0; k < t2_len_; ++k) l.t2.emplace_back(top_[c - 1 - k].id, top_[c - 1 - k].ref);
  for (std::size_t k = 0; k < b1_len_; ++k) l.b1.push_back(bottom_[k]);
  for (std::size_t k = 0; k < b2_len_; ++k) l.b2.push_back(bottom_[c - 1 - k]);
  l.target = target_;
  auto offset = [&](Region r) -> std::size_t {
    if (run_length(r) == 0) return 0;
    std::uint32_t h = hand(r);
    return grows_right(r) ? h : c - 1 - h;
  };
  l.hand_t1 = offset(Region::T1);
  l.hand_t2 = offset(Region::T2);
  l.hand_b1 = offset(Region::B1);
  l.hand_b2 = offset(Region::B2);
  return l;
}

std::vector<std::string> CompactCar::verify() const {
  std::vector<std::string> bad;
  const std::size_t c = capacity_;
  auto fail = [&](std::string msg) { bad.push_back(std::move(msg)); };

  if (t1_len_ + t2_len_ > c) fail("|T1|+|T2| exceeds c");
  if (b1_len_ + b2_len_ > c) fail("|B1|+|B2| exceeds the history array");
  // One above c: the literal miss path can record a T1 victim in B1 while
  // B1 was empty (T1 held all c chunks), and the next miss restores c+1.
  if (t1_len_ + b1_len_ > c + 1) fail("|T1|+|B1| exceeds c+1");
  if (t1_len_ + t2_len_ + b1_len_ + b2_len_ > 2 * c) fail("directory exceeds 2c");
  if (target_ > c) fail("p outside [0, c]");
  if (!options_.adaptive && target_ != options_.fixed_target) fail("CFR target moved");

  std::unordered_set<ChunkId> seen;
  auto check_run = [&](Region r) {
    const std::size_t len = run_length(r);
    for (std::size_t k = 0; k < len; ++k) {
      auto slot = grows_right(r) ? static_cast<std::uint32_t>(k)
                                 : static_cast<std::uint32_t>(c - 1 - k);
      ChunkId id = id_at(r, slot);
      if (!seen.insert(id).second) fail("chunk " + std::to_string(id.value) + " listed twice");
      auto loc = directory_.lookup(id);
      if (!loc || loc->region != r || loc->slot != slot) {
        fail("directory out of step for chunk " + std::to_string(id.value) + " in " +
             std::string(to_string(r)));
      }
    }
    if (len > 0 && !in_run(r, hand(r))) fail(std::string(to_string(r)) + " hand outside its run");
  };
  check_run(Region::T1);
  check_run(Region::T2);
  check_run(Region::B1);
  check_run(Region::B2);
  if (directory_.size() != seen.size()) fail("directory holds entries outside every run");
  for (std::size_t k = t1_len_; k + t2_len_ < c; ++k) {
    if (top_[k].ref) fail("free top slot carries an R-bit");
  }
  return bad;
}

std::string CompactCar::dump() const {
  std::ostringstream os;
  os << "# " << name() << " c=" << capacity_ << " p=" << target_ << " t1=" << t1_len_
     << " t2=" << t2_len_ << " b1=" << b1_len_ << " b2=" << b2_len_ << '\n';
  auto region_of = [&](bool top, std::size_t slot) -> std::optional<Region> {
    const Region a = top ? Region::T1 : Region::B1;
    const Region b = top ? Region::T2 : Region::B2;
    if (in_run(a, static_cast<std::uint32_t>(slot))) return a;
    if (in_run(b, static_cast<std::uint32_t>(slot))) return b;
    return std::nullopt;
  };
  for (int pass = 0; pass < 2; ++pass) {
    const bool top = pass == 0;
    for (std::size_t slot = 0; slot < capacity_; ++slot) {
      os << (top ? "top " : "bot ") << slot << ' ';
      auto r = region_of(top, slot);
      if (!r) {
        os << "- - -\n";
        continue;
      }
      os << to_string(*r) << ' ' << id_at(*r, static_cast<std::uint32_t>(slot)).value << ' ';
      if (top) os << (top_[slot].ref ? '1' : '0'); else os << '-';
      if (hand(*r) == slot) os << " H";
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace cachelab
