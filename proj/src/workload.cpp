#include "cachelab/workload.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "cachelab/rng.hpp"

namespace cachelab {

// --- Zipf -------------------------------------------------------------------

std::vector<double> zipf_pmf(std::uint64_t n_contents, double alpha) {
  if (n_contents == 0) throw std::invalid_argument("zipf: n_contents must be >= 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("zipf: alpha must be >= 0");
  std::vector<double> pmf(n_contents);
  double norm = 0.0;
  for (std::uint64_t i = 0; i < n_contents; ++i) {
    pmf[i] = std::pow(static_cast<double>(i + 1), -alpha);
    norm += pmf[i];
  }
  for (auto& p : pmf) p /= norm;
  return pmf;
}

ZipfSampler::ZipfSampler(std::uint64_t n_contents, double alpha) {
  auto pmf = zipf_pmf(n_contents, alpha);
  cdf_.resize(pmf.size());
  std::partial_sum(pmf.begin(), pmf.end(), cdf_.begin());
  cdf_.back() = 1.0;
}

std::uint64_t ZipfSampler::rank_for(double u) const {
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return static_cast<std::uint64_t>(it - cdf_.begin()) + 1;
}

RequestStream zipf_stream(const ZipfSpec& spec) {
  ZipfSampler sampler(spec.n_contents, spec.alpha);
  Rng rng(spec.seed);
  RequestStream out;
  out.reserve(spec.n_requests);
  for (std::uint64_t k = 0; k < spec.n_requests; ++k) {
    out.push_back(Request{ChunkId{sampler.rank_for(rng.uniform01())}, k, 0});
  }
  return out;
}

// --- chunk streams ------------------------------------------------------------

namespace {

void check_chunkify(const ChunkifySpec& spec) {
  if (spec.chunk_bytes == 0) throw std::invalid_argument("chunkify: chunk size must be > 0");
  if (spec.bitrate_bps == 0) throw std::invalid_argument("chunkify: bitrate must be > 0");
}

}  // namespace

double chunks_per_second(const ChunkifySpec& spec) {
  check_chunkify(spec);
  return static_cast<double>(spec.bitrate_bps) / (8.0 * static_cast<double>(spec.chunk_bytes));
}

std::uint64_t chunk_interval_us(const ChunkifySpec& spec) {
  check_chunkify(spec);
  // 8 * bytes * 1e6 / bps, rounded to nearest microsecond
  const std::uint64_t num = 8 * spec.chunk_bytes * 1000000ULL;
  return (num + spec.bitrate_bps / 2) / spec.bitrate_bps;
}

ChunkId chunk_id(std::uint64_t content_id, std::uint64_t chunk_index) {
  if (chunk_index >= (1ULL << kChunkIndexBits)) {
    throw std::out_of_range("chunk index exceeds 24 bits");
  }
  if (content_id >= (1ULL << (64 - kChunkIndexBits))) {
    throw std::out_of_range("content id exceeds 40 bits");
  }
  return ChunkId{(content_id << kChunkIndexBits) | chunk_index};
}

std::uint64_t content_of(ChunkId chunk) { return chunk.value >> kChunkIndexBits; }

std::vector<Session> schedule_sessions(const RequestStream& contents, const SessionSpec& spec) {
  Rng rng(spec.seed);
  std::vector<Session> out;
  out.reserve(contents.size());
  std::uint64_t t = 0;
  for (const auto& r : contents) {
    if (!out.empty()) t += rng.below(2 * spec.mean_gap_us + 1);
    const std::uint64_t bytes = r.size_bytes ? r.size_bytes : spec.default_content_bytes;
    out.push_back(Session{t, r.chunk.value, bytes});
  }
  return out;
}

std::vector<std::vector<TimedRequest>> chunkify(std::span<const Session> sessions,
                                                const ChunkifySpec& spec) {
  const std::uint64_t gap = chunk_interval_us(spec);
  std::vector<std::vector<TimedRequest>> out;
  out.reserve(sessions.size());
  for (const auto& s : sessions) {
    if (s.content_bytes == 0) throw std::invalid_argument("chunkify: content size unknown");
    const std::uint64_t n = (s.content_bytes + spec.chunk_bytes - 1) / spec.chunk_bytes;
    std::vector<TimedRequest> chunks;
    chunks.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) {
      chunks.push_back(TimedRequest{s.start_us + k * gap, chunk_id(s.content_id, k), spec.chunk_bytes});
    }
    out.push_back(std::move(chunks));
  }
  return out;
}

std::vector<TimedRequest> merge_timed(std::span<const std::vector<TimedRequest>> streams) {
  struct Key {
    std::uint64_t time;
    std::uint32_t stream;
    std::uint32_t seq;
  };
  std::vector<Key> keys;
  std::size_t total = 0;
  for (const auto& s : streams) total += s.size();
  keys.reserve(total);
  for (std::size_t i = 0; i < streams.size(); ++i) {
    const auto& s = streams[i];
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k > 0 && s[k].time_us < s[k - 1].time_us) {
        throw std::invalid_argument("superimpose: input stream " + std::to_string(i) +
                                    " is not sorted by time");
      }
      keys.push_back(Key{s[k].time_us, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(k)});
    }
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    return std::tie(a.time, a.stream, a.seq) < std::tie(b.time, b.stream, b.seq);
  });
  std::vector<TimedRequest> out;
  out.reserve(total);
  for (const auto& k : keys) out.push_back(streams[k.stream][k.seq]);
  return out;
}

RequestStream superimpose(std::span<const std::vector<TimedRequest>> streams) {
  const auto merged = merge_timed(streams);
  RequestStream out;
  out.reserve(merged.size());
  for (const auto& r : merged) out.push_back(Request{r.chunk, out.size(), r.size_bytes});
  return out;
}

std::vector<TimedRequest> chunk_schedule(const ChunkWorkloadSpec& spec) {
  auto contents = zipf_stream(spec.contents);
  auto sessions = schedule_sessions(contents, spec.sessions);
  return merge_timed(chunkify(sessions, spec.chunks));
}

RequestStream chunk_workload(const ChunkWorkloadSpec& spec) {
  const auto timed = chunk_schedule(spec);
  RequestStream out;
  out.reserve(timed.size());
  for (const auto& r : timed) out.push_back(Request{r.chunk, out.size(), r.size_bytes});
  return out;
}

// --- patterns ---------------------------------------------------------------

std::string to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::Scan: return "scan";
    case PatternKind::Loop: return "loop";
    case PatternKind::Correlated: return "correlated";
    case PatternKind::Fickle: return "fickle";
  }
  return "?";
}

PatternKind parse_pattern_kind(const std::string& text) {
  if (text == "scan") return PatternKind::Scan;
  if (text == "loop") return PatternKind::Loop;
  if (text == "correlated") return PatternKind::Correlated;
  if (text == "fickle") return PatternKind::Fickle;
  throw std::invalid_argument("unknown pattern kind '" + text + "'");
}

RequestStream pattern_stream(const PatternSpec& spec) {
  std::vector<std::uint64_t> ids;
  const std::uint64_t a = spec.first_id;
  switch (spec.kind) {
    case PatternKind::Scan:
      for (std::uint64_t k = 0; k < spec.length; ++k) ids.push_back(a + k);
      break;
    case PatternKind::Loop:
      for (std::uint64_t r = 0; r < spec.reps; ++r) {
        for (std::uint64_t k = 0; k < spec.period; ++k) ids.push_back(a + k);
      }
      break;
    case PatternKind::Correlated:
      if (spec.set_size == 0) throw std::invalid_argument("correlated: set size must be > 0");
      for (std::uint64_t b = 0; b < spec.bursts; ++b) {
        for (std::uint64_t k = 0; k < spec.burst_length; ++k) {
          ids.push_back(a + b * spec.set_size + k % spec.set_size);
        }
      }
      break;
    case PatternKind::Fickle: {
      if (spec.working_set == 0) throw std::invalid_argument("fickle: working set must be > 0");
      Rng rng(spec.seed);
      for (std::uint64_t ph = 0; ph < spec.phases; ++ph) {
        for (std::uint64_t k = 0; k < spec.phase_length; ++k) {
          ids.push_back(a + ph * spec.shift + rng.below(spec.working_set));
        }
      }
      break;
    }
  }
  return make_stream(ids);
}

RequestStream concat(std::span<const RequestStream> parts) {
  RequestStream out;
  for (const auto& p : parts) {
    for (const auto& r : p) {
      out.push_back(Request{r.chunk, out.size(), r.size_bytes});
    }
  }
  return out;
}

// --- trace profile ------------------------------------------------------------

std::span<const TraceProfileRow> trace_profile_rows() {
  static constexpr std::array<TraceProfileRow, 3> rows = {{
      {"P(1.5KB)", 17955409, 5465044, 440254},
      {"P(15KB)", 14557548, 5321617, 552631},
      {"P(60KB)", 16606810, 8006084, 1769759},
  }};
  return rows;
}

ProfileSpec scaled_profile(const TraceProfileRow& row, std::uint64_t divisor, std::uint64_t seed) {
  if (divisor == 0) throw std::invalid_argument("profile: divisor must be > 0");
  auto scale = [&](std::uint64_t v) { return (v + divisor / 2) / divisor; };
  return ProfileSpec{scale(row.total), scale(row.unique), scale(row.repeated), 1.0, seed};
}

RequestStream profile_stream(const ProfileSpec& spec) {
  if (spec.repeated > spec.unique) throw std::invalid_argument("profile: repeated > unique");
  if (spec.total < spec.unique + spec.repeated) {
    throw std::invalid_argument("profile: too few accesses for the repeated chunks");
  }
  if (spec.repeated == 0 && spec.total != spec.unique) {
    throw std::invalid_argument("profile: accesses beyond unique need repeated chunks");
  }
  // Every repeated chunk gets two accesses; the surplus is split by weight
  // with largest-remainder rounding.
  std::vector<std::uint64_t> counts(spec.repeated, 2);
  const std::uint64_t surplus = spec.total - spec.unique - spec.repeated;
  if (spec.repeated > 0 && surplus > 0) {
    auto w = zipf_pmf(spec.repeated, spec.alpha);
    std::vector<std::pair<double, std::uint64_t>> rem;
    std::uint64_t given = 0;
    for (std::uint64_t i = 0; i < spec.repeated; ++i) {
      const double share = w[i] * static_cast<double>(surplus);
      const auto whole = static_cast<std::uint64_t>(std::floor(share));
      counts[i] += whole;
      given += whole;
      rem.emplace_back(share - static_cast<double>(whole), i);
    }
    std::stable_sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::uint64_t k = 0; given < surplus; ++k, ++given) ++counts[rem[k % rem.size()].second];
  }

  std::vector<std::uint64_t> ids;
  ids.reserve(spec.total);
  for (std::uint64_t i = 0; i < spec.repeated; ++i) ids.insert(ids.end(), counts[i], i + 1);
  for (std::uint64_t i = spec.repeated; i < spec.unique; ++i) ids.push_back(i + 1);

  Rng rng(spec.seed);
  for (std::size_t k = ids.size(); k > 1; --k) {
    std::swap(ids[k - 1], ids[rng.below(k)]);
  }
  return make_stream(ids);
}

}  // namespace cachelab
