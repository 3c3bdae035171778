#include "cachelab/baseline.hpp"

#include <stdexcept>
#include <unordered_map>

#include "cachelab/check.hpp"

namespace cachelab {

namespace {

void require_capacity(std::size_t capacity, const char* who) {
  if (capacity == 0) throw std::invalid_argument(std::string(who) + ": capacity must be >= 1");
}

}  // namespace

// --- FIFO -----------------------------------------------------------------

FifoPolicy::FifoPolicy(std::size_t capacity) : directory_(capacity) {
  require_capacity(capacity, "fifo");
  slots_.resize(capacity);
}

AccessOutcome FifoPolicy::access(const Request& request) {
  AccessOutcome out;
  if (directory_.contains(request.chunk)) {
    out.kind = AccessKind::Hit;
    return out;
  }
  const std::size_t c = slots_.size();
  std::size_t slot;
  if (size_ < c) {
    slot = (head_ + size_) % c;
    ++size_;
  } else {
    slot = head_;
    out.evicted = slots_[slot];
    directory_.erase(slots_[slot]);
    head_ = (head_ + 1) % c;
  }
  slots_[slot] = request.chunk;
  directory_.place(request.chunk, {Region::T1, static_cast<std::uint32_t>(slot)});
  return out;
}

std::vector<ChunkId> FifoPolicy::residents() const {
  std::vector<ChunkId> out;
  for (std::size_t k = 0; k < size_; ++k) out.push_back(slots_[(head_ + k) % slots_.size()]);
  return out;
}

// --- CLOCK ----------------------------------------------------------------

ClockPolicy::ClockPolicy(std::size_t capacity) : directory_(capacity) {
  require_capacity(capacity, "clock");
  slots_.resize(capacity);
}

AccessOutcome ClockPolicy::access(const Request& request) {
  AccessOutcome out;
  if (auto loc = directory_.lookup(request.chunk)) {
    slots_[loc->slot].ref = true;
    out.kind = AccessKind::Hit;
    return out;
  }
  const std::size_t c = slots_.size();
  std::size_t slot;
  if (size_ < c) {
    slot = size_++;
  } else {
    while (slots_[hand_].ref) {
      slots_[hand_].ref = false;
      hand_ = (hand_ + 1) % c;
      ++out.hand_movements;
    }
    slot = hand_;
    out.evicted = slots_[slot].id;
    directory_.erase(slots_[slot].id);
    hand_ = (hand_ + 1) % c;
    ++out.hand_movements;
  }
  slots_[slot] = Slot{request.chunk, false};
  directory_.place(request.chunk, {Region::T1, static_cast<std::uint32_t>(slot)});
  return out;
}

std::vector<ChunkId> ClockPolicy::residents() const {
  std::vector<ChunkId> out;
  for (std::size_t k = 0; k < size_; ++k) out.push_back(slots_[k].id);
  return out;
}

std::optional<bool> ClockPolicy::reference_bit(ChunkId chunk) const {
  auto loc = directory_.lookup(chunk);
  if (!loc) return std::nullopt;
  return slots_[loc->slot].ref;
}

// --- LRU ------------------------------------------------------------------

LruPolicy::LruPolicy(std::size_t capacity) : capacity_(capacity) {
  require_capacity(capacity, "lru");
  index_.reserve(capacity);
}

AccessOutcome LruPolicy::access(const Request& request) {
  AccessOutcome out;
  if (auto it = index_.find(request.chunk); it != index_.end()) {
    order_.splice(order_.begin(), order_, it->second);
    out.kind = AccessKind::Hit;
    return out;
  }
  if (order_.size() == capacity_) {
    out.evicted = order_.back();
    index_.erase(order_.back());
    order_.pop_back();
  }
  order_.push_front(request.chunk);
  index_[request.chunk] = order_.begin();
  return out;
}

std::vector<ChunkId> LruPolicy::residents() const { return {order_.begin(), order_.end()}; }

// --- LFU ------------------------------------------------------------------

LfuPolicy::LfuPolicy(std::size_t capacity) : capacity_(capacity) {
  require_capacity(capacity, "lfu");
  counts_.reserve(capacity);
}

AccessOutcome LfuPolicy::access(const Request& request) {
  AccessOutcome out;
  const ChunkId x = request.chunk;
  if (auto it = counts_.find(x); it != counts_.end()) {
    Meta& m = it->second;
    heap_.erase(Key{m.count, m.inserted, x.value});
    ++m.count;
    heap_.insert(Key{m.count, m.inserted, x.value});
    out.kind = AccessKind::Hit;
    return out;
  }
  if (counts_.size() == capacity_) {
    auto victim = *heap_.begin();
    heap_.erase(heap_.begin());
    ChunkId id{std::get<2>(victim)};
    counts_.erase(id);
    out.evicted = id;
  }
  Meta m{1, clock_++};
  counts_.emplace(x, m);
  heap_.insert(Key{m.count, m.inserted, x.value});
  return out;
}

std::vector<ChunkId> LfuPolicy::residents() const {
  std::vector<ChunkId> out;
  for (const auto& key : heap_) out.push_back(ChunkId{std::get<2>(key)});
  return out;
}

std::optional<std::uint64_t> LfuPolicy::count(ChunkId chunk) const {
  auto it = counts_.find(chunk);
  if (it == counts_.end()) return std::nullopt;
  return it->second.count;
}

// --- OPT ------------------------------------------------------------------

OptPolicy::OptPolicy(std::size_t capacity, std::span<const Request> stream, bool bypass)
    : bypass_(bypass), directory_(capacity) {
  require_capacity(capacity, "opt");
  slots_.resize(capacity);
  slot_next_.assign(capacity, kNever);
  stream_.reserve(stream.size());
  for (const auto& r : stream) stream_.push_back(r.chunk);

  next_use_.assign(stream_.size(), kNever);
  std::unordered_map<ChunkId, std::uint64_t> upcoming;
  for (std::size_t k = stream_.size(); k-- > 0;) {
    auto it = upcoming.find(stream_[k]);
    if (it != upcoming.end()) {
      next_use_[k] = it->second;
      it->second = k;
    } else {
      upcoming.emplace(stream_[k], k);
    }
  }
}

AccessOutcome OptPolicy::access(const Request& request) {
  CACHELAB_EXPECT(position_ < stream_.size(), "request beyond the prepared stream");
  CACHELAB_EXPECT(stream_[position_] == request.chunk, "request does not match the stream");
  const std::uint64_t next = next_use_[position_];
  ++position_;

  AccessOutcome out;
  if (auto loc = directory_.lookup(request.chunk)) {
    by_next_.erase({slot_next_[loc->slot], loc->slot});
    slot_next_[loc->slot] = next;
    by_next_.insert({next, loc->slot});
    out.kind = AccessKind::Hit;
    return out;
  }

  std::uint32_t slot;
  if (size_ < slots_.size()) {
    slot = static_cast<std::uint32_t>(size_++);
  } else {
    const auto farthest = *by_next_.begin();
    if (bypass_ && next > farthest.first) return out;
    slot = farthest.second;
    by_next_.erase(by_next_.begin());
    out.evicted = slots_[slot];
    directory_.erase(slots_[slot]);
  }
  slots_[slot] = request.chunk;
  slot_next_[slot] = next;
  by_next_.insert({next, slot});
  directory_.place(request.chunk, {Region::T1, slot});
  return out;
}

std::vector<ChunkId> OptPolicy::residents() const {
  return {slots_.begin(), slots_.begin() + static_cast<std::ptrdiff_t>(size_)};
}

}  // namespace cachelab
