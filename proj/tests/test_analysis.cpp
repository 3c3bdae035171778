#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "cachelab/analysis.hpp"
#include "cachelab/baseline.hpp"
#include "cachelab/overhead.hpp"
#include "cachelab/rng.hpp"
#include "cachelab/workload.hpp"
#include "support.hpp"

namespace cachelab {
namespace {

using namespace testing;

// Scans back to the previous access of each request's chunk.
std::vector<std::uint64_t> naive_rd(const RequestStream& s, RdMode mode) {
  std::vector<std::uint64_t> out(s.size(), kInfiniteRd);
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::set<std::uint64_t> seen;
    for (std::size_t j = i; j-- > 0;) {
      if (s[j].chunk == s[i].chunk) {
        out[i] = mode == RdMode::Raw ? i - j - 1 : seen.size();
        break;
      }
      seen.insert(s[j].chunk.value);
    }
  }
  return out;
}

TEST(ReuseDistance, Examples) {
  auto abca = reuse_distance(make_stream({1, 2, 3, 1}));
  EXPECT_EQ(abca.per_request, (std::vector<std::uint64_t>{kInfiniteRd, kInfiniteRd, kInfiniteRd, 2}));
  EXPECT_EQ(reuse_distance(make_stream({1, 2, 3, 1}), RdMode::Raw).per_request[3], 2u);
  auto abba = make_stream({1, 2, 2, 1});
  EXPECT_EQ(reuse_distance(abba).per_request[3], 1u);
  EXPECT_EQ(reuse_distance(abba, RdMode::Raw).per_request[3], 2u);
  EXPECT_EQ(reuse_distance(abba).per_request[2], 0u);
  EXPECT_EQ(reuse_distance(abba).finite_count(), 2u);
  EXPECT_TRUE(reuse_distance({}).per_request.empty());
}

TEST(ReuseDistance, MatchesNaiveScan) {
  Rng rng(11);
  for (int trial = 0; trial < 4; ++trial) {
    auto s = random_stream(rng, 10000, 10 + 60 * trial);
    for (auto mode : {RdMode::Distinct, RdMode::Raw}) {
      EXPECT_EQ(reuse_distance(s, mode).per_request, naive_rd(s, mode));
    }
  }
}

TEST(ReuseDistance, LruHitsExactlyBelowCapacity) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t c = 1 + rng.below(40);
    auto s = random_stream(rng, 5000, 1 + rng.below(100));
    auto rd = reuse_distance(s).per_request;
    LruPolicy lru(c);
    for (std::size_t i = 0; i < s.size(); ++i) {
      ASSERT_EQ(lru.access(s[i]).is_hit(), rd[i] != kInfiniteRd && rd[i] < c) << "request " << i;
    }
  }
}

TEST(ReuseDistance, CdfShape) {
  Rng rng(13);
  auto prof = reuse_distance(random_stream(rng, 3000, 50));
  auto cdf = prof.cdf();
  ASSERT_FALSE(cdf.empty());
  for (std::size_t i = 1; i < cdf.size(); ++i) {
    EXPECT_LT(cdf[i - 1].first, cdf[i].first);
    EXPECT_LE(cdf[i - 1].second, cdf[i].second);
  }
  EXPECT_DOUBLE_EQ(cdf.back().second, 1.0);
  EXPECT_EQ(cdf_csv(prof).substr(0, 23), "rd,cumulative_fraction\n");
}

TEST(ReuseDistance, ScanHasEmptyCdf) {
  auto prof = reuse_distance(pattern_stream({.kind = PatternKind::Scan, .length = 100}));
  EXPECT_EQ(prof.finite_count(), 0u);
  EXPECT_TRUE(prof.cdf().empty());
  EXPECT_EQ(cdf_csv(prof), "rd,cumulative_fraction\n");
}

TEST(Popularity, LoopAndScan) {
  auto loop = popularity_histogram(pattern_stream({.kind = PatternKind::Loop, .period = 3, .reps = 2}));
  ASSERT_EQ(loop.size(), 3u);
  for (const auto& r : loop) EXPECT_EQ(r.count, 2u);
  EXPECT_EQ(loop[0].chunk, ChunkId{1});
  auto scan = popularity_histogram(pattern_stream({.kind = PatternKind::Scan, .length = 40}));
  ASSERT_EQ(scan.size(), 40u);
  for (const auto& r : scan) EXPECT_EQ(r.count, 1u);
}

TEST(Popularity, SortedAndCsv) {
  auto h = popularity_histogram(make_stream({5, 3, 5, 9, 3, 5}));
  ASSERT_EQ(h.size(), 3u);
  EXPECT_EQ(h[0].chunk, ChunkId{5});
  EXPECT_EQ(h[1].chunk, ChunkId{3});
  EXPECT_EQ(h[2].chunk, ChunkId{9});
  EXPECT_EQ(popularity_csv(h), "rank,chunk,count\n1,5,3\n2,3,2\n3,9,1\n");
}

TEST(Popularity, ZipfSlope) {
  auto s = zipf_stream({.n_contents = 10000, .alpha = 1.0, .n_requests = 1000000, .seed = 5});
  EXPECT_NEAR(loglog_slope(popularity_histogram(s), 100), -1.0, 0.05);
}

TEST(Traffic, TrivialWindows) {
  auto scan = traffic_counts(pattern_stream({.kind = PatternKind::Scan, .length = 100}), 10);
  EXPECT_EQ(scan.windows.size(), 10u);
  EXPECT_EQ(scan.beta, 0.0);
  EXPECT_EQ(scan.gamma, 0.0);
  auto aaa = traffic_counts(make_stream({1, 1, 1}), 3);
  ASSERT_EQ(aaa.windows.size(), 1u);
  EXPECT_EQ(aaa.windows[0].h1, 1u);
  EXPECT_EQ(aaa.windows[0].h2, 1u);
  EXPECT_EQ(aaa.windows[0].h3, 1u);
  EXPECT_EQ(aaa.beta, 1.0);
  EXPECT_EQ(aaa.gamma, 1.0);
}

TEST(Traffic, ShortTailAndWeights) {
  // Windows [1,1,2] and [3]: beta 1/2 over 3 requests and 0 over 1.
  auto t = traffic_counts(make_stream({1, 1, 2, 3}), 3);
  ASSERT_EQ(t.windows.size(), 2u);
  EXPECT_EQ(t.windows[1].length, 1u);
  EXPECT_DOUBLE_EQ(t.beta, 0.5 * 3 / 4);
  EXPECT_EQ(t.gamma, 0.0);
}

TEST(Traffic, Errors) {
  EXPECT_THROW(traffic_counts(make_stream({1, 2}), 0), std::invalid_argument);
  EXPECT_THROW(traffic_counts(make_stream({1, 2}), 3), std::invalid_argument);
}

TEST(Traffic, CountsMatchDirectTally) {
  Rng rng(14);
  auto s = random_stream(rng, 5000, 300);
  auto t = traffic_counts(s, 700);
  for (const auto& w : t.windows) {
    std::map<std::uint64_t, std::uint64_t> n;
    for (std::uint64_t i = w.start; i < w.start + w.length; ++i) ++n[s[i].chunk.value];
    std::uint64_t h[4] = {};
    for (const auto& [id, k] : n) {
      for (std::uint64_t i = 1; i <= 3; ++i) h[i] += k >= i;
    }
    EXPECT_EQ(w.h1, h[1]);
    EXPECT_EQ(w.h2, h[2]);
    EXPECT_EQ(w.h3, h[3]);
    EXPECT_GE(w.h1, w.h2);
    EXPECT_GE(w.h2, w.h3);
    EXPECT_LE(w.gamma(), w.beta());
  }
}

TEST(Traffic, ContentLevelRepeatsMoreThanChunkLevel) {
  ChunkWorkloadSpec spec;
  spec.contents = {.n_contents = 2000, .alpha = 1.0, .n_requests = 3000, .seed = 21};
  spec.sessions.mean_gap_us = 200000;
  spec.chunks = {.chunk_bytes = 15000, .bitrate_bps = 600000};
  auto contents = zipf_stream(spec.contents);
  auto chunks = chunk_workload(spec);
  const std::size_t w = 1000;
  const double content_beta = traffic_counts(contents, w).beta;
  const double chunk_beta = traffic_counts(chunks, w).beta;
  EXPECT_GT(content_beta, chunk_beta);
}

TEST(HandBound, Values) {
  EXPECT_DOUBLE_EQ(hand_bound(0.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(hand_bound(0.2, 0.2), 1.75);
  EXPECT_DOUBLE_EQ(hand_bound(0.625, 0.625), 6.0);
  EXPECT_LT(hand_bound(0.19, 0.19), 2.0);
  EXPECT_THROW(hand_bound(1.0, 0.5), std::invalid_argument);
  EXPECT_THROW(hand_bound(0.3, 0.4), std::invalid_argument);
  EXPECT_THROW(hand_bound(-0.1, 0.0), std::invalid_argument);
  EXPECT_DOUBLE_EQ(clock_hand_bound(0.0), 1.0);
  EXPECT_DOUBLE_EQ(clock_hand_bound(0.5), 3.0);
  EXPECT_THROW(clock_hand_bound(1.0), std::invalid_argument);
}

TEST(Overhead, FeasibilityArithmetic) {
  const OverheadParams big{.n = 20000000, .pointer_bits = 25, .counter_bits = 32, .ghosts = 0};
  EXPECT_EQ(space_overhead("compact-car", big), 20000225u);
  EXPECT_EQ(space_overhead("car", big), 2020000225u);
  EXPECT_EQ(space_overhead("clock", {.n = 1024, .pointer_bits = 10}), 1034u);
}

TEST(Overhead, EveryRow) {
  const OverheadParams p{.n = 100, .pointer_bits = 7, .counter_bits = 16, .ghosts = 50};
  const std::map<std::string, std::uint64_t> want = {
      {"fifo", 7},
      {"lru-dll", 2 * 100 * 7 + 2 * 7},
      {"lru-s", 0},
      {"lru-c", 100 * 16 + 16},
      {"lfu-h", 100 * 16},
      {"arc", 4 * 100 * 7 + 7 * 7},
      {"lirs", 4 * 100 * 7 + 2 * 100 + 2 * 50 * 7 + 4 * 7},
      {"clock", 100 + 7},
      {"car", 4 * 100 * 7 + 100 + 9 * 7},
      {"compact-car", 100 + 9 * 7},
  };
  ASSERT_EQ(overhead_policies().size(), want.size());
  for (const auto& name : overhead_policies()) EXPECT_EQ(space_overhead(name, p), want.at(name)) << name;
}

TEST(Overhead, MonotoneInEveryParameter) {
  for (const auto& name : overhead_policies()) {
    for (std::uint64_t n : {1u, 7u, 64u, 1000u}) {
      const OverheadParams base{n, min_pointer_bits(n) + 1, 8, 10};
      const auto v = space_overhead(name, base);
      auto grow = [&](auto f) {
        auto q = base;
        f(q);
        EXPECT_GE(space_overhead(name, q), v) << name << " n=" << n;
      };
      grow([](OverheadParams& q) { ++q.n; });
      grow([](OverheadParams& q) { ++q.pointer_bits; });
      grow([](OverheadParams& q) { ++q.counter_bits; });
      grow([](OverheadParams& q) { ++q.ghosts; });
    }
  }
}

TEST(Overhead, Errors) {
  EXPECT_EQ(min_pointer_bits(1), 0u);
  EXPECT_EQ(min_pointer_bits(1024), 10u);
  EXPECT_EQ(min_pointer_bits(1025), 11u);
  EXPECT_THROW(space_overhead("clock", {.n = 1025, .pointer_bits = 10}), std::invalid_argument);
  EXPECT_THROW(space_overhead("clock", {.n = 0, .pointer_bits = 10}), std::invalid_argument);
  EXPECT_THROW(space_overhead("mru", {.n = 4, .pointer_bits = 2}), std::invalid_argument);
}

TEST(TimeClassTable, Entries) {
  EXPECT_EQ(time_class("compact-car", AccessCase::Hit, Bound::Worst).text(), "t_w+delta");
  EXPECT_EQ(time_class("clock", AccessCase::Miss, Bound::Average).text(), "O(1/(1-beta))");
  EXPECT_EQ(time_class("lirs", AccessCase::Miss, Bound::Average).text(), "O(1/beta)");
  EXPECT_EQ(time_class("lfu-h", AccessCase::Hit, Bound::Average).text(), "O(log n)");
  EXPECT_EQ(time_class("lru-c", AccessCase::Hit, Bound::Worst).text(), "O(1)");
  EXPECT_EQ(time_class("lru-c", AccessCase::Miss, Bound::Average).text(), "O(n)");
  EXPECT_EQ(time_class("car", AccessCase::Miss, Bound::Worst).kind, TimeClass::Kind::Order);
  for (const auto& name : overhead_policies()) {
    EXPECT_NO_THROW(time_class(name, AccessCase::Hit, Bound::Worst));
  }
  EXPECT_THROW(time_class("mru", AccessCase::Hit, Bound::Worst), std::invalid_argument);
}

}  // namespace
}  // namespace cachelab
