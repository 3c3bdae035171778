#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cachelab/policy_factory.hpp"
#include "cachelab/sim.hpp"
#include "cachelab/workload.hpp"

namespace cachelab {

/// The experiment description itself is wrong (unknown key, bad value).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WorkloadSource {
  enum class Kind { Trace, Zipf, Chunked, Pattern, Profile };
  Kind kind = Kind::Zipf;
  std::filesystem::path trace;
  ZipfSpec zipf;
  ChunkWorkloadSpec chunked;
  PatternSpec pattern;
  ProfileSpec profile;

  bool needs_seed() const;
  /// Builds the stream; `seed` is ignored for traces and for deterministic
  /// patterns.
  RequestStream build(std::uint64_t seed) const;
};

/// A whole experiment: every (seed, topology, policy, capacity) combination
/// becomes one result cell.
///
///     {
///       "workload":   {"kind": "zipf", "alpha": 1.0, "contents": 10000, "requests": 100000},
///       "seeds":      [1, 2],
///       "policies":   ["fifo", "clock", "compact-car", "cfr:0.3", "opt"],
///       "capacities": [10, 100, 1000],
///       "topology":   "line:10",
///       "dynamics_window": 10000,
///       "output_dir": "out"
///     }
///
/// Workload kinds and their keys:
///   trace    path
///   zipf     alpha contents requests
///   chunked  alpha contents requests chunk_bytes bitrate_bps content_bytes mean_gap_us
///   pattern  pattern first_id length period reps set_size burst_length bursts
///            working_set phase_length phases shift
///   profile  total unique repeated alpha | row divisor
/// Relative paths resolve against the config file's directory.
struct ExperimentConfig {
  WorkloadSource workload;
  std::vector<std::uint64_t> seeds;
  std::vector<PolicySpec> policies;
  std::vector<std::size_t> capacities;
  std::vector<Topology> topologies;
  std::size_t dynamics_window = 0;
  std::filesystem::path output_dir = "results";
};

/// Throws ConfigError on unknown keys, missing keys, or invalid values.
ExperimentConfig parse_experiment(const nlohmann::json& doc, const std::filesystem::path& base_dir);
ExperimentConfig load_experiment(const std::filesystem::path& path);

struct Cell {
  std::optional<std::uint64_t> seed;
  SimConfig sim;

  /// File stem, e.g. "compact-car_c100_line-10_s1".
  std::string stem() const;
};

std::vector<Cell> expand_cells(const ExperimentConfig& config);

/// Runs every cell and writes <stem>.json and <stem>.csv per cell (and
/// <stem>.dynamics.csv when samples were taken) plus summary.csv into
/// config.output_dir. A ".incomplete" marker exists in the
/// directory until every file is written. Returns the reports in cell order.
std::vector<SimulationReport> run_experiment(const ExperimentConfig& config, std::size_t jobs);

}  // namespace cachelab
