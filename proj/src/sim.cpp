#include "cachelab/sim.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cachelab {

Topology Topology::parse(const std::string& text) {
  Topology t;
  if (text == "single") return t;
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  if (kind == "line") {
    t.kind = Kind::Line;
  } else if (kind == "ideal-coop") {
    t.kind = Kind::IdealCoop;
  } else {
    throw std::invalid_argument("unknown topology '" + text + "'");
  }
  if (colon == std::string::npos) throw std::invalid_argument("topology '" + text + "' needs :K");
  const std::string arg = text.substr(colon + 1);
  auto [end, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), t.k);
  if (ec != std::errc{} || end != arg.data() + arg.size() || t.k == 0) {
    throw std::invalid_argument("topology '" + text + "': K must be a positive integer");
  }
  return t;
}

std::string Topology::label() const {
  switch (kind) {
    case Kind::Single: return "single";
    case Kind::Line: return "line:" + std::to_string(k);
    case Kind::IdealCoop: return "ideal-coop:" + std::to_string(k);
  }
  return "?";
}

double NodeStats::hit_rate() const {
  return arrivals ? static_cast<double>(hits) / static_cast<double>(arrivals) : 0.0;
}

double SimulationReport::non_coop_total() const {
  return requests ? 1.0 - static_cast<double>(server_requests) / static_cast<double>(requests) : 0.0;
}

double SimulationReport::first_node_rate() const { return nodes.empty() ? 0.0 : nodes.front().hit_rate(); }

std::uint64_t SimulationReport::total_hits() const {
  std::uint64_t h = 0;
  for (const auto& n : nodes) h += n.hits;
  return h;
}

namespace {

void check_config(const SimConfig& config) {
  if (config.capacity == 0) throw std::invalid_argument("capacity must be >= 1");
  if (config.topology.k == 0) throw std::invalid_argument("topology needs k >= 1");
}

struct NodeRun {
  NodeStats stats;
  std::vector<DynamicsSample> dynamics;
  RequestStream forwarded;
};

// Drives one policy over `stream`, collecting the misses for the next hop.
NodeRun drive(const PolicySpec& spec, std::size_t capacity, std::span<const Request> stream,
              std::size_t window, bool keep_forwarded) {
  auto policy = make_policy(spec, capacity, stream);
  const bool sample = window > 0 && policy->target_ratio().has_value();
  NodeRun run;
  std::uint64_t window_hits = 0;
  std::uint64_t window_len = 0;
  for (const auto& r : stream) {
    const auto out = policy->access(r);
    ++run.stats.arrivals;
    run.stats.hand_movements += out.hand_movements;
    if (out.is_hit()) {
      ++run.stats.hits;
      ++window_hits;
    } else {
      ++run.stats.misses;
      if (out.kind == AccessKind::GhostHit) ++run.stats.ghost_hits;
      if (keep_forwarded) run.forwarded.push_back(r);
    }
    if (sample && ++window_len == window) {
      run.dynamics.push_back({run.stats.arrivals, *policy->target_ratio(),
                              static_cast<double>(window_hits) / static_cast<double>(window_len)});
      window_hits = window_len = 0;
    }
  }
  if (sample && window_len > 0) {
    run.dynamics.push_back({run.stats.arrivals, *policy->target_ratio(),
                            static_cast<double>(window_hits) / static_cast<double>(window_len)});
  }
  return run;
}

SimulationReport make_report(const SimConfig& config, std::size_t capacity, std::size_t requests) {
  SimulationReport rep;
  rep.policy = config.policy.label();
  rep.capacity = capacity;
  rep.topology = config.topology.label();
  rep.requests = requests;
  return rep;
}

}  // namespace

SimulationReport run_single(const SimConfig& config, std::span<const Request> stream) {
  check_config(config);
  auto rep = make_report(config, config.capacity, stream.size());
  auto node = drive(config.policy, config.capacity, stream, config.dynamics_window, false);
  rep.server_requests = node.stats.misses;
  rep.nodes.push_back(node.stats);
  rep.dynamics = std::move(node.dynamics);
  return rep;
}

SimulationReport run_line(const SimConfig& config, std::span<const Request> stream) {
  check_config(config);
  auto rep = make_report(config, config.capacity, stream.size());
  // Node j's state depends only on the requests node j-1 forwarded, so the
  // line can be run one node at a time over the previous node's misses.
  RequestStream current(stream.begin(), stream.end());
  for (std::size_t j = 0; j < config.topology.k; ++j) {
    const bool last = j + 1 == config.topology.k;
    auto node = drive(config.policy, config.capacity, current, j == 0 ? config.dynamics_window : 0, !last);
    if (j == 0) rep.dynamics = std::move(node.dynamics);
    rep.nodes.push_back(node.stats);
    if (last) {
      rep.server_requests = node.stats.misses;
    } else {
      current = std::move(node.forwarded);
    }
  }
  return rep;
}

SimulationReport run_ideal_coop(const SimConfig& config, std::span<const Request> stream) {
  check_config(config);
  const std::size_t total = config.capacity * config.topology.k;
  auto rep = make_report(config, total, stream.size());
  auto node = drive(config.policy, total, stream, config.dynamics_window, false);
  rep.server_requests = node.stats.misses;
  rep.nodes.push_back(node.stats);
  rep.dynamics = std::move(node.dynamics);
  return rep;
}

SimulationReport run(const SimConfig& config, std::span<const Request> stream) {
  switch (config.topology.kind) {
    case Topology::Kind::Single: return run_single(config, stream);
    case Topology::Kind::Line: return run_line(config, stream);
    case Topology::Kind::IdealCoop: return run_ideal_coop(config, stream);
  }
  throw std::logic_error("bad topology");
}

std::vector<SimulationReport> run_batch(std::span<const SimConfig> configs,
                                        std::span<const Request> stream, std::size_t jobs) {
  std::vector<SimulationReport> out(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < configs.size();) {
      try {
        out[i] = run(configs[i], stream);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(configs.size(), 1));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<SimulationReport> sweep_capacities(const SimConfig& config,
                                               std::span<const std::size_t> capacities,
                                               std::span<const Request> stream, std::size_t jobs) {
  std::vector<SimConfig> cells;
  for (auto c : capacities) {
    cells.push_back(config);
    cells.back().capacity = c;
  }
  return run_batch(cells, stream, jobs);
}

std::vector<DynamicsSample> log_dynamics(const PolicySpec& policy, std::size_t capacity,
                                         std::span<const Request> stream, std::size_t window) {
  if (window == 0) throw std::invalid_argument("dynamics window must be >= 1");
  if (!make_policy(policy, std::max<std::size_t>(capacity, 1), {})->target_ratio()) {
    throw std::invalid_argument("policy '" + policy.label() + "' has no target ratio q");
  }
  SimConfig config{policy, capacity, {}, window};
  return run_single(config, stream).dynamics;
}

// --- serialization ------------------------------------------------------------

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

nlohmann::json to_json(const SimulationReport& r) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t j = 0; j < r.nodes.size(); ++j) {
    const auto& n = r.nodes[j];
    nodes.push_back({{"node", j + 1},
                     {"arrivals", n.arrivals},
                     {"hits", n.hits},
                     {"misses", n.misses},
                     {"ghost_hits", n.ghost_hits},
                     {"hit_rate", n.hit_rate()},
                     {"hand_movements", n.hand_movements}});
  }
  nlohmann::json dyn = nlohmann::json::array();
  for (const auto& s : r.dynamics) dyn.push_back({{"t", s.t}, {"q", s.q}, {"hit_rate", s.hit_rate}});
  return {{"schema_version", kReportSchemaVersion},
          {"policy", r.policy},
          {"capacity", r.capacity},
          {"topology", r.topology},
          {"requests", r.requests},
          {"server_requests", r.server_requests},
          {"non_coop_total", r.non_coop_total()},
          {"first_node_rate", r.first_node_rate()},
          {"nodes", nodes},
          {"dynamics", dyn}};
}

std::string nodes_csv(const SimulationReport& r) {
  std::ostringstream out;
  out << "node,arrivals,hits,misses,ghost_hits,hit_rate,hand_movements\n";
  for (std::size_t j = 0; j < r.nodes.size(); ++j) {
    const auto& n = r.nodes[j];
    out << j + 1 << ',' << n.arrivals << ',' << n.hits << ',' << n.misses << ',' << n.ghost_hits << ','
        << format_double(n.hit_rate()) << ',' << n.hand_movements << '\n';
  }
  return out.str();
}

std::string dynamics_csv(const SimulationReport& r) {
  std::ostringstream out;
  out << "t,q,hit_rate\n";
  for (const auto& s : r.dynamics) {
    out << s.t << ',' << format_double(s.q) << ',' << format_double(s.hit_rate) << '\n';
  }
  return out.str();
}

std::string summary_csv(std::span<const SimulationReport> reports, std::span<const std::string> cells) {
  if (!cells.empty() && cells.size() != reports.size()) {
    throw std::invalid_argument("summary_csv: one cell name per report");
  }
  std::size_t k = 0;
  for (const auto& r : reports) k = std::max(k, r.nodes.size());
  std::ostringstream out;
  if (!cells.empty()) out << "cell,";
  out << "policy,capacity,topology,requests,hits,hit_rate,non_coop_total,server_requests";
  for (std::size_t j = 1; j <= k; ++j) out << ",node" << j;
  out << '\n';
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    if (!cells.empty()) out << cells[i] << ',';
    const double rate = r.requests ? static_cast<double>(r.total_hits()) / static_cast<double>(r.requests) : 0.0;
    out << r.policy << ',' << r.capacity << ',' << r.topology << ',' << r.requests << ',' << r.total_hits()
        << ',' << format_double(rate) << ',' << format_double(r.non_coop_total()) << ','
        << r.server_requests;
    for (std::size_t j = 0; j < k; ++j) {
      out << ',';
      if (j < r.nodes.size()) out << format_double(r.nodes[j].hit_rate());
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace cachelab
