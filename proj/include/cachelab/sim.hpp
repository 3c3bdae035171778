#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "cachelab/kernel.hpp"
#include "cachelab/policy_factory.hpp"

namespace cachelab {

struct Topology {
  enum class Kind { Single, Line, IdealCoop };
  Kind kind = Kind::Single;
  std::size_t k = 1;

  /// "single", "line:K" or "ideal-coop:K".
  static Topology parse(const std::string& text);
  std::string label() const;
};

struct SimConfig {
  PolicySpec policy;
  std::size_t capacity = 1;  // per node
  Topology topology;
  // Tumbling window for (t, q, hit rate) samples; 0 disables. Only recorded
  // for policies that expose q.
  std::size_t dynamics_window = 0;
};

struct NodeStats {
  std::uint64_t arrivals = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;  // ghost hits included
  std::uint64_t ghost_hits = 0;
  std::uint64_t hand_movements = 0;

  /// hits / arrivals; 0 for a node nothing reached.
  double hit_rate() const;
};

struct DynamicsSample {
  std::uint64_t t = 0;  // requests processed at the end of the window
  double q = 0.0;
  double hit_rate = 0.0;
};

struct SimulationReport {
  std::string policy;  // PolicySpec::label()
  std::size_t capacity = 0;
  std::string topology;
  std::uint64_t requests = 0;
  std::vector<NodeStats> nodes;
  std::uint64_t server_requests = 0;
  std::vector<DynamicsSample> dynamics;

  /// Fraction of client requests served by any cache.
  double non_coop_total() const;
  double first_node_rate() const;
  std::uint64_t total_hits() const;
};

/// Replays `stream` through one policy instance.
SimulationReport run_single(const SimConfig& config, std::span<const Request> stream);

/// k nodes in a line; a request walks nodes 1..k until the first hit and
/// every node it missed at caches the chunk on the way back.
SimulationReport run_line(const SimConfig& config, std::span<const Request> stream);

/// One node holding k * capacity chunks.
SimulationReport run_ideal_coop(const SimConfig& config, std::span<const Request> stream);

/// Dispatches on config.topology.
SimulationReport run(const SimConfig& config, std::span<const Request> stream);

/// Runs every config over the same stream on up to `jobs` threads. Results
/// come back in input order and do not depend on `jobs`.
std::vector<SimulationReport> run_batch(std::span<const SimConfig> configs,
                                        std::span<const Request> stream, std::size_t jobs = 1);

std::vector<SimulationReport> sweep_capacities(const SimConfig& config,
                                               std::span<const std::size_t> capacities,
                                               std::span<const Request> stream,
                                               std::size_t jobs = 1);

/// (t, q, windowed hit rate) per tumbling window; a trailing partial window
/// is reported too. Throws std::invalid_argument for policies without q.
std::vector<DynamicsSample> log_dynamics(const PolicySpec& policy, std::size_t capacity,
                                         std::span<const Request> stream,
                                         std::size_t window = 10000);

// --- serialization ------------------------------------------------------------

constexpr int kReportSchemaVersion = 1;

nlohmann::json to_json(const SimulationReport& report);

/// Per-node table: node,arrivals,hits,misses,ghost_hits,hit_rate,hand_movements
std::string nodes_csv(const SimulationReport& report);

/// t,q,hit_rate
std::string dynamics_csv(const SimulationReport& report);

/// One row per report: policy,capacity,topology,requests,hits,hit_rate,
/// non_coop_total,server_requests,node1..nodeK (per-node hit rates; K is the
/// largest node count among the reports, blank where a report has fewer).
/// With `cells`, a leading "cell" column names each row.
std::string summary_csv(std::span<const SimulationReport> reports,
                        std::span<const std::string> cells = {});

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

}  // namespace cachelab
