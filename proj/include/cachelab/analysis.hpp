#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cachelab/kernel.hpp"

namespace cachelab {

// --- reuse distance -----------------------------------------------------------

enum class RdMode {
  Distinct,  // distinct chunks between the two accesses (stack distance)
  Raw,       // requests between the two accesses
};

constexpr std::uint64_t kInfiniteRd = std::numeric_limits<std::uint64_t>::max();

struct ReuseDistanceProfile {
  RdMode mode = RdMode::Distinct;
  std::vector<std::uint64_t> per_request;  // kInfiniteRd on first access

  std::size_t finite_count() const;

  /// (x, fraction of finite RDs <= x) at each distinct finite value, ascending.
  std::vector<std::pair<std::uint64_t, double>> cdf() const;
};

ReuseDistanceProfile reuse_distance(std::span<const Request> stream, RdMode mode = RdMode::Distinct);

/// "rd,cumulative_fraction" rows.
std::string cdf_csv(const ReuseDistanceProfile& profile);

// --- popularity ---------------------------------------------------------------

struct RankCount {
  ChunkId chunk;
  std::uint64_t count = 0;
};

/// Request count per chunk, most requested first; equal counts by ascending id.
std::vector<RankCount> popularity_histogram(std::span<const Request> stream);

/// "rank,chunk,count" rows.
std::string popularity_csv(std::span<const RankCount> histogram);

/// Least-squares slope of log(count) against log(rank) over ranks
/// 1..max_rank (all ranks when max_rank is 0).
double loglog_slope(std::span<const RankCount> histogram, std::size_t max_rank = 0);

// --- beta / gamma ---------------------------------------------------------------

struct TrafficWindow {
  std::uint64_t start = 0;   // index of the first request
  std::uint64_t length = 0;  // requests in the window
  std::uint64_t h1 = 0, h2 = 0, h3 = 0;  // chunks accessed at least 1, 2, 3 times

  double beta() const;
  double gamma() const;
};

struct TrafficCounts {
  std::size_t window = 0;
  std::vector<TrafficWindow> windows;  // tumbling; the last one may be short
  double beta = 0.0;   // request-weighted mean over windows
  double gamma = 0.0;
};

TrafficCounts traffic_counts(std::span<const Request> stream, std::size_t window);

/// Average hand movements per miss bound for the CAR family: (1+b+g)/(1-b).
double hand_bound(double beta, double gamma);
/// Same for CLOCK: (1+b)/(1-b).
double clock_hand_bound(double beta);

}  // namespace cachelab
