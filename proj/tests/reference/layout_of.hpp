#pragma once

#include "cachelab/compact_car.hpp"
#include "reference/literal_compact_car.hpp"

namespace cachelab::reference {

// The transcription's lists in the array layout's terms: vector order is
// slot order from the list's start, and hands are offsets into the list.
inline CompactCar::Layout layout_of(const LiteralCompactCar& ref) {
  CompactCar::Layout l;
  for (const auto& e : ref.t(1)) l.t1.emplace_back(ChunkId{e.id}, e.ref);
  for (const auto& e : ref.t(2)) l.t2.emplace_back(ChunkId{e.id}, e.ref);
  for (auto g : ref.b(1)) l.b1.push_back(ChunkId{g});
  for (auto g : ref.b(2)) l.b2.push_back(ChunkId{g});
  l.target = ref.p();
  l.hand_t1 = ref.t(1).empty() ? 0 : ref.hand_t(1);
  l.hand_t2 = ref.t(2).empty() ? 0 : ref.hand_t(2);
  l.hand_b1 = ref.b(1).empty() ? 0 : ref.hand_b(1);
  l.hand_b2 = ref.b(2).empty() ? 0 : ref.hand_b(2);
  return l;
}

}  // namespace cachelab::reference
