#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "cachelab/arc.hpp"
#include "cachelab/baseline.hpp"
#include "cachelab/car.hpp"
#include "cachelab/lirs.hpp"
#include "support.hpp"

namespace cachelab {
namespace {

using namespace testing;

ChunkId id(std::uint64_t v) { return ChunkId{v}; }

std::set<std::uint64_t> resident_set(const Policy& p) {
  std::set<std::uint64_t> s;
  for (auto x : p.residents()) s.insert(x.value);
  return s;
}

std::size_t misses(Policy&& p, const RequestStream& s) { return s.size() - hits(replay(p, s)); }

// --- FIFO -----------------------------------------------------------------------

TEST(Fifo, EvictsOldestArrival) {
  FifoPolicy f(2);
  auto out = replay(f, make_stream({1, 2, 3}));
  EXPECT_EQ(out[2].evicted, id(1));
}

TEST(Fifo, HitDoesNotRefresh) {
  FifoPolicy f(2);
  auto out = replay(f, make_stream({1, 2, 1, 3}));
  EXPECT_EQ(out[2].kind, AccessKind::Hit);
  EXPECT_EQ(out[3].evicted, id(1));
}

TEST(Fifo, BeladyAnomalyExists) {
  auto s = make_stream({1, 2, 3, 4, 1, 2, 5, 1, 2, 3, 4, 5});
  EXPECT_EQ(misses(FifoPolicy(3), s), 9u);
  EXPECT_EQ(misses(FifoPolicy(4), s), 10u);
}

// --- CLOCK ----------------------------------------------------------------------

TEST(Clock, AllBitsSetTakesOneLapPlusOne) {
  for (std::size_t k = 1; k <= 8; ++k) {
    ClockPolicy clock(k);
    for (std::uint64_t i = 1; i <= k; ++i) clock.access(Request{id(i), 0, 0});
    for (std::uint64_t i = 1; i <= k; ++i) clock.access(Request{id(i), 0, 0});
    auto out = clock.access(Request{id(100), 0, 0});
    EXPECT_EQ(out.hand_movements, k + 1) << "k=" << k;
    EXPECT_EQ(out.evicted, id(1));
  }
}

TEST(Clock, SingleSlotAlternatingAlwaysMisses) {
  ClockPolicy clock(1);
  EXPECT_EQ(hits(replay(clock, make_stream({1, 2, 1, 2, 1, 2}))), 0u);
}

TEST(Clock, SetBitClearedOnFirstLapEvictedOnWrap) {
  ClockPolicy clock(1);
  replay(clock, make_stream({1, 1}));
  EXPECT_EQ(clock.reference_bit(id(1)), true);
  auto out = clock.access(Request{id(2), 2, 0});
  EXPECT_EQ(out.evicted, id(1));
  EXPECT_EQ(out.hand_movements, 2u);
  EXPECT_EQ(clock.reference_bit(id(2)), false);
}

TEST(Clock, HitOnlySetsBit) {
  ClockPolicy clock(3);
  replay(clock, make_stream({1, 2, 3}));
  const auto hand = clock.hand();
  auto out = clock.access(Request{id(2), 3, 0});
  EXPECT_TRUE(out.is_hit());
  EXPECT_EQ(out.hand_movements, 0u);
  EXPECT_EQ(clock.hand(), hand);
  EXPECT_EQ(clock.reference_bit(id(2)), true);
}

// --- LRU ------------------------------------------------------------------------

TEST(Lru, RecencyRefreshOnHit) {
  LruPolicy lru(2);
  auto out = replay(lru, make_stream({1, 2, 1, 3}));
  EXPECT_EQ(out[3].evicted, id(2));
  EXPECT_EQ(lru.residents(), (std::vector<ChunkId>{id(3), id(1)}));
}

TEST(Lru, InclusionAcrossCapacities) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t c = 1 + rng.below(10);
    LruPolicy small(c), large(c + 1);
    for (const auto& r : random_stream(rng, 500, 1 + rng.below(25))) {
      small.access(r);
      large.access(r);
      auto a = resident_set(small), b = resident_set(large);
      ASSERT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
    }
  }
}

// --- LFU ------------------------------------------------------------------------

TEST(Lfu, EvictsUniqueMinimum) {
  LfuPolicy lfu(2);
  auto out = replay(lfu, make_stream({1, 1, 1, 2, 4}));
  EXPECT_EQ(lfu.count(id(1)), 3u);
  EXPECT_EQ(out[4].evicted, id(2));
}

TEST(Lfu, TieGoesToEarliestInserted) {
  LfuPolicy lfu(2);
  auto out = replay(lfu, make_stream({1, 2, 3}));
  EXPECT_EQ(out[2].evicted, id(1));
  LfuPolicy again(2);
  out = replay(again, make_stream({2, 1, 3}));
  EXPECT_EQ(out[2].evicted, id(2));
}

TEST(Lfu, ScanCannotDisplaceFrequentChunks) {
  LfuPolicy lfu(5);
  std::vector<std::uint64_t> ids;
  for (int r = 0; r < 5; ++r) {
    for (std::uint64_t i = 1; i <= 4; ++i) ids.push_back(i);
  }
  for (std::uint64_t i = 100; i < 300; ++i) ids.push_back(i);
  replay(lfu, make_stream(ids));
  auto res = resident_set(lfu);
  for (std::uint64_t i = 1; i <= 4; ++i) EXPECT_TRUE(res.count(i)) << i;
}

// --- ARC ------------------------------------------------------------------------

TEST(Arc, GhostHitInB1RaisesTarget) {
  // c = 3: 1 2 3 fill T1; 1 moves to T2; 4 pushes T1's LRU (2) into B1;
  // 2 is a B1 ghost hit: p += max(1, |B2|/|B1|) = 1, and REPLACE demotes 3.
  ArcPolicy arc(3);
  auto out = replay(arc, make_stream({1, 2, 3, 1, 4, 2}));
  EXPECT_EQ(out[5].kind, AccessKind::GhostHit);
  EXPECT_EQ(out[5].evicted, id(3));
  EXPECT_EQ(arc.target(), 1u);
  EXPECT_EQ(arc.region(id(2)), Region::T2);
  EXPECT_EQ(arc.region(id(3)), Region::B1);
}

TEST(Arc, TargetFollowsPublishedRule) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t c = 1 + rng.below(12);
    ArcPolicy arc(c);
    for (const auto& r : random_stream(rng, 600, 1 + rng.below(4 * c))) {
      const auto where = arc.region(r.chunk);
      const std::size_t p = arc.target(), b1 = arc.b1_size(), b2 = arc.b2_size();
      arc.access(r);
      std::size_t want = p;
      if (where == Region::B1) want = std::min(c, p + std::max<std::size_t>(1, b2 / b1));
      if (where == Region::B2) {
        const std::size_t d = std::max<std::size_t>(1, b1 / b2);
        want = p > d ? p - d : 0;
      }
      ASSERT_EQ(arc.target(), want);
      ASSERT_LE(arc.t1_size() + arc.t2_size(), c);
      ASSERT_LE(arc.t1_size() + arc.b1_size(), c);
      ASSERT_LE(arc.t1_size() + arc.t2_size() + arc.b1_size() + arc.b2_size(), 2 * c);
    }
  }
}

// --- CAR ------------------------------------------------------------------------

TEST(Car, PencilExampleTwoSlots) {
  // a b a c a c, c = 2. On c's miss the clock finds a referenced at the head
  // of T1 and moves it to T2, then demotes b to B1; c joins T1 and both later
  // requests hit.
  CarPolicy car(2);
  auto out = replay(car, make_stream({1, 2, 1, 3, 1, 3}));
  EXPECT_EQ(kinds(out), (std::vector<AccessKind>{M, M, H, M, H, H}));
  EXPECT_EQ(out[3].evicted, id(2));
  EXPECT_EQ(car.region(id(1)), Region::T2);
  EXPECT_EQ(car.region(id(2)), Region::B1);
}

TEST(Car, DirectoryBounds) {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t c = 1 + rng.below(12);
    CarPolicy car(c);
    for (const auto& r : random_stream(rng, 600, 1 + rng.below(4 * c))) {
      car.access(r);
      ASSERT_LE(car.t1_size() + car.t2_size(), c);
      ASSERT_LE(car.t1_size() + car.b1_size(), c);
      ASSERT_LE(car.t1_size() + car.t2_size() + car.b1_size() + car.b2_size(), 2 * c);
      ASSERT_LE(car.target(), c);
    }
  }
}

// --- LIRS -----------------------------------------------------------------------

TEST(Lirs, PruningDropsColdGhostBelowNewBottom) {
  // c = 2: one LIR slot, one resident HIR slot.
  //   a: LIR.  b: resident HIR, S = [b a], Q = [b].
  //   c: evicts b (ghost in S), S = [c b a], Q = [c].
  //   b: ghost in S -> becomes LIR after evicting c; a, the bottom LIR, is
  //      demoted into Q; pruning then removes the ghost c from S's bottom.
  LirsPolicy lirs(2);
  auto out = replay(lirs, make_stream({1, 2, 3, 2}));
  EXPECT_EQ(out[3].kind, AccessKind::GhostHit);
  EXPECT_EQ(out[3].evicted, id(3));
  EXPECT_EQ(lirs.stack(), (std::vector<ChunkId>{id(2)}));
  EXPECT_EQ(lirs.queue(), (std::vector<ChunkId>{id(1)}));
  EXPECT_TRUE(lirs.is_lir(id(2)));
  EXPECT_FALSE(lirs.is_lir(id(1)));
  EXPECT_EQ(resident_set(lirs), (std::set<std::uint64_t>{1, 2}));
  EXPECT_EQ(lirs.last_pruned_ghosts(), 1u);
}

TEST(Lirs, SizesAndPruningBounds) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t c = 1 + rng.below(20);
    LirsPolicy lirs(c);
    for (const auto& r : random_stream(rng, 800, 1 + rng.below(5 * c))) {
      lirs.access(r);
      ASSERT_LE(lirs.stack().size(), c + lirs.ghost_budget());
      ASSERT_LE(lirs.queue().size(), c);
      ASSERT_LE(lirs.ghost_count(), lirs.ghost_budget());
      ASSERT_LE(lirs.lir_count(), lirs.lir_capacity());
      ASSERT_LE(lirs.last_pruned_ghosts(), lirs.ghosts_before_last_prune());
    }
  }
}

TEST(Lirs, DefaultGhostBudgetIsFourTimesCapacity) {
  EXPECT_EQ(LirsPolicy(50).ghost_budget(), 200u);
  EXPECT_EQ(LirsPolicy(50, 7).ghost_budget(), 7u);
  EXPECT_EQ(LirsPolicy(200).lir_capacity(), 198u);
}

}  // namespace
}  // namespace cachelab
