#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cachelab/kernel.hpp"

namespace cachelab {

// --- Zipf content popularity ------------------------------------------------

struct ZipfSpec {
  std::uint64_t n_contents = 10000;
  double alpha = 1.0;
  std::uint64_t n_requests = 100000;
  std::uint64_t seed = 1;
};

/// p(i) for ranks i = 1..n, proportional to i^-alpha. Index 0 holds rank 1.
std::vector<double> zipf_pmf(std::uint64_t n_contents, double alpha);

/// Inverse-CDF sampler over ranks 1..n.
class ZipfSampler {
 public:
  ZipfSampler(std::uint64_t n_contents, double alpha);

  /// Maps u in [0, 1) to a rank in [1, n].
  std::uint64_t rank_for(double u) const;
  std::uint64_t n_contents() const { return cdf_.size(); }

 private:
  std::vector<double> cdf_;
};

/// i.i.d. Zipf draws; chunk id = content rank. Deterministic in the seed.
RequestStream zipf_stream(const ZipfSpec& spec);

// --- Chunk-level streams ------------------------------------------------------

struct ChunkifySpec {
  std::uint64_t chunk_bytes = 15000;
  std::uint64_t bitrate_bps = 600000;
};

/// bitrate / (8 * chunk size), e.g. 5 chunks/s for 15 KB chunks at 600 kbps.
double chunks_per_second(const ChunkifySpec& spec);

/// Constant spacing between consecutive chunk requests of one session.
std::uint64_t chunk_interval_us(const ChunkifySpec& spec);

/// Chunk identity: content id in the high bits, chunk index in the low 24.
constexpr unsigned kChunkIndexBits = 24;
ChunkId chunk_id(std::uint64_t content_id, std::uint64_t chunk_index);
std::uint64_t content_of(ChunkId chunk);

/// One download of a whole content, starting at start_us (virtual time).
struct Session {
  std::uint64_t start_us = 0;
  std::uint64_t content_id = 0;
  std::uint64_t content_bytes = 0;
};

struct TimedRequest {
  std::uint64_t time_us = 0;
  ChunkId chunk;
  std::uint64_t size_bytes = 0;
};

struct SessionSpec {
  // Session starts are spaced by uniform integer gaps in [0, 2 * mean_gap_us].
  std::uint64_t mean_gap_us = 1000000;
  // Used when a content request carries no size.
  std::uint64_t default_content_bytes = 600000;
  std::uint64_t seed = 1;
};

/// Turns content-level requests into timed sessions, in stream order.
std::vector<Session> schedule_sessions(const RequestStream& contents, const SessionSpec& spec);

/// Expands each session into ceil(content_bytes / chunk_bytes) chunk requests
/// spaced chunk_interval_us(spec) apart. One output stream per session.
std::vector<std::vector<TimedRequest>> chunkify(std::span<const Session> sessions,
                                                const ChunkifySpec& spec);

/// Merges time-sorted streams by time; ties go to the lower stream index, then
/// to the earlier element.
std::vector<TimedRequest> merge_timed(std::span<const std::vector<TimedRequest>> streams);

/// merge_timed re-indexed: virtual_time = position.
RequestStream superimpose(std::span<const std::vector<TimedRequest>> streams);

struct ChunkWorkloadSpec {
  ZipfSpec contents{.n_contents = 1000, .alpha = 1.0, .n_requests = 2000, .seed = 1};
  SessionSpec sessions;
  ChunkifySpec chunks;
};

/// Zipf content requests -> sessions -> chunk streams -> superimposed stream.
RequestStream chunk_workload(const ChunkWorkloadSpec& spec);

/// The same requests in the same order, stamped with their time in microseconds.
std::vector<TimedRequest> chunk_schedule(const ChunkWorkloadSpec& spec);

// --- Access-pattern generators ----------------------------------------------

enum class PatternKind { Scan, Loop, Correlated, Fickle };

std::string to_string(PatternKind kind);
PatternKind parse_pattern_kind(const std::string& text);

struct PatternSpec {
  PatternKind kind = PatternKind::Scan;
  std::uint64_t first_id = 1;
  // scan
  std::uint64_t length = 100;
  // loop: `period` distinct chunks, repeated `reps` times
  std::uint64_t period = 10;
  std::uint64_t reps = 2;
  // correlated: each burst cycles `burst_length` requests over a fresh set
  std::uint64_t set_size = 2;
  std::uint64_t burst_length = 3;
  std::uint64_t bursts = 1;
  // fickle: uniform draws over a working set that slides by `shift` ids
  // every `phase_length` requests
  std::uint64_t working_set = 50;
  std::uint64_t phase_length = 500;
  std::uint64_t phases = 4;
  std::uint64_t shift = 50;
  std::uint64_t seed = 1;
};

RequestStream pattern_stream(const PatternSpec& spec);

/// Concatenation with virtual_time re-indexed.
RequestStream concat(std::span<const RequestStream> parts);

// --- Trace-statistics profile ---------------------------------------------

/// Target counts of a chunk trace: total accesses, distinct chunks, and
/// chunks requested at least twice. Repeated chunks share the surplus
/// accesses in proportion to rank^-alpha.
struct ProfileSpec {
  std::uint64_t total = 17955;
  std::uint64_t unique = 5465;
  std::uint64_t repeated = 440;
  double alpha = 1.0;
  std::uint64_t seed = 1;
};

/// Measured chunk-level statistics of the campus VoD trace.
struct TraceProfileRow {
  const char* workload;
  std::uint64_t total;
  std::uint64_t unique;
  std::uint64_t repeated;
};
std::span<const TraceProfileRow> trace_profile_rows();

/// Row scaled down by `divisor` (counts rounded to nearest).
ProfileSpec scaled_profile(const TraceProfileRow& row, std::uint64_t divisor, std::uint64_t seed);

RequestStream profile_stream(const ProfileSpec& spec);

}  // namespace cachelab
