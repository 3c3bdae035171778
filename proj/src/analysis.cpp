#include "cachelab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "cachelab/sim.hpp"

namespace cachelab {

namespace {

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}

  void add(std::size_t i, int delta) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  // Sum over [0, i).
  std::int64_t prefix(std::size_t i) const {
    std::int64_t s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<std::int64_t> tree_;
};

}  // namespace

std::size_t ReuseDistanceProfile::finite_count() const {
  return static_cast<std::size_t>(
      std::count_if(per_request.begin(), per_request.end(), [](auto d) { return d != kInfiniteRd; }));
}

std::vector<std::pair<std::uint64_t, double>> ReuseDistanceProfile::cdf() const {
  std::vector<std::uint64_t> finite;
  for (auto d : per_request) {
    if (d != kInfiniteRd) finite.push_back(d);
  }
  std::sort(finite.begin(), finite.end());
  std::vector<std::pair<std::uint64_t, double>> out;
  const double n = static_cast<double>(finite.size());
  for (std::size_t i = 0; i < finite.size(); ++i) {
    if (i + 1 == finite.size() || finite[i + 1] != finite[i]) {
      out.emplace_back(finite[i], static_cast<double>(i + 1) / n);
    }
  }
  return out;
}

ReuseDistanceProfile reuse_distance(std::span<const Request> stream, RdMode mode) {
  ReuseDistanceProfile p;
  p.mode = mode;
  p.per_request.assign(stream.size(), kInfiniteRd);
  std::unordered_map<ChunkId, std::size_t> last;
  last.reserve(stream.size());
  // A position is marked while it holds the latest access of its chunk, so
  // marks strictly between two accesses count the distinct chunks in between.
  Fenwick marks(mode == RdMode::Distinct ? stream.size() : 0);
  for (std::size_t i = 0; i < stream.size(); ++i) {
    auto [it, fresh] = last.try_emplace(stream[i].chunk, i);
    if (!fresh) {
      const std::size_t j = it->second;
      if (mode == RdMode::Raw) {
        p.per_request[i] = i - j - 1;
      } else {
        p.per_request[i] = static_cast<std::uint64_t>(marks.prefix(i) - marks.prefix(j + 1));
        marks.add(j, -1);
      }
      it->second = i;
    }
    if (mode == RdMode::Distinct) marks.add(i, 1);
  }
  return p;
}

std::string cdf_csv(const ReuseDistanceProfile& profile) {
  std::ostringstream out;
  out << "rd,cumulative_fraction\n";
  for (const auto& [x, f] : profile.cdf()) out << x << ',' << format_double(f) << '\n';
  return out.str();
}

std::vector<RankCount> popularity_histogram(std::span<const Request> stream) {
  std::unordered_map<ChunkId, std::uint64_t> counts;
  for (const auto& r : stream) ++counts[r.chunk];
  std::vector<RankCount> out;
  out.reserve(counts.size());
  for (const auto& [id, n] : counts) out.push_back({id, n});
  std::sort(out.begin(), out.end(), [](const RankCount& a, const RankCount& b) {
    return a.count != b.count ? a.count > b.count : a.chunk < b.chunk;
  });
  return out;
}

std::string popularity_csv(std::span<const RankCount> histogram) {
  std::ostringstream out;
  out << "rank,chunk,count\n";
  for (std::size_t i = 0; i < histogram.size(); ++i) {
    out << i + 1 << ',' << histogram[i].chunk.value << ',' << histogram[i].count << '\n';
  }
  return out.str();
}

double loglog_slope(std::span<const RankCount> histogram, std::size_t max_rank) {
  const std::size_t n = max_rank ? std::min(max_rank, histogram.size()) : histogram.size();
  if (n < 2) throw std::invalid_argument("slope needs at least two ranks");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(static_cast<double>(i + 1));
    const double y = std::log(static_cast<double>(histogram[i].count));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(n);
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double TrafficWindow::beta() const { return h1 ? static_cast<double>(h2) / static_cast<double>(h1) : 0.0; }
double TrafficWindow::gamma() const { return h1 ? static_cast<double>(h3) / static_cast<double>(h1) : 0.0; }

TrafficCounts traffic_counts(std::span<const Request> stream, std::size_t window) {
  if (window == 0) throw std::invalid_argument("traffic window must be >= 1");
  if (window > stream.size()) {
    throw std::invalid_argument("traffic window (" + std::to_string(window) +
                                ") exceeds stream length (" + std::to_string(stream.size()) + ")");
  }
  TrafficCounts tc;
  tc.window = window;
  std::unordered_map<ChunkId, std::uint32_t> seen;
  double wb = 0, wg = 0;
  for (std::size_t start = 0; start < stream.size(); start += window) {
    const std::size_t end = std::min(stream.size(), start + window);
    seen.clear();
    TrafficWindow w;
    w.start = start;
    w.length = end - start;
    for (std::size_t i = start; i < end; ++i) {
      const auto n = ++seen[stream[i].chunk];
      if (n == 1) ++w.h1;
      if (n == 2) ++w.h2;
      if (n == 3) ++w.h3;
    }
    wb += w.beta() * static_cast<double>(w.length);
    wg += w.gamma() * static_cast<double>(w.length);
    tc.windows.push_back(w);
  }
  tc.beta = wb / static_cast<double>(stream.size());
  tc.gamma = wg / static_cast<double>(stream.size());
  return tc;
}

double hand_bound(double beta, double gamma) {
  if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("hand_bound: beta must lie in [0, 1)");
  if (!(gamma >= 0.0 && gamma <= beta)) throw std::invalid_argument("hand_bound: gamma must lie in [0, beta]");
  return (1.0 + beta + gamma) / (1.0 - beta);
}

double clock_hand_bound(double beta) {
  if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("clock_hand_bound: beta must lie in [0, 1)");
  return (1.0 + beta) / (1.0 - beta);
}

}  // namespace cachelab
