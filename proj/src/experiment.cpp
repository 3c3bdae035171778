#include "cachelab/experiment.hpp"

#include <fstream>
#include <set>

#include "cachelab/rng.hpp"
#include "cachelab/trace_io.hpp"

namespace cachelab {

namespace {

using nlohmann::json;

// Reads keys of one JSON object and rejects any key left unread.
class Fields {
 public:
  Fields(const json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
    if (!obj_.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  template <class T>
  T get(const std::string& key) {
    if (!obj_.contains(key)) throw ConfigError(where_ + ": missing key '" + key + "'");
    return convert<T>(key);
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    return obj_.contains(key) ? convert<T>(key) : fallback;
  }

  void finish() const {
    for (const auto& [key, _] : obj_.items()) {
      if (!used_.count(key)) throw ConfigError(where_ + ": unknown key '" + key + "'");
    }
  }

 private:
  template <class T>
  T convert(const std::string& key) {
    used_.insert(key);
    const json& v = obj_.at(key);
    if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError(where_ + "." + key + ": expected a string");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError(where_ + "." + key + ": expected a number");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_unsigned()) throw ConfigError(where_ + "." + key + ": expected a non-negative integer");
    }
    try {
      return v.get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(where_ + "." + key + ": " + e.what());
    }
  }

  const json& obj_;
  std::string where_;
  std::set<std::string> used_;
};

void positive(std::uint64_t v, const char* what) {
  if (v == 0) throw ConfigError(std::string(what) + " must be >= 1");
}

WorkloadSource parse_workload(const json& doc, const std::filesystem::path& base_dir) {
  Fields f(doc, "workload");
  WorkloadSource w;
  const auto kind = f.get<std::string>("kind");
  if (kind == "trace") {
    w.kind = WorkloadSource::Kind::Trace;
    w.trace = f.get<std::string>("path");
    if (w.trace.is_relative()) w.trace = base_dir / w.trace;
  } else if (kind == "zipf") {
    w.kind = WorkloadSource::Kind::Zipf;
    w.zipf.alpha = f.get<double>("alpha", w.zipf.alpha);
    w.zipf.n_contents = f.get<std::uint64_t>("contents", w.zipf.n_contents);
    w.zipf.n_requests = f.get<std::uint64_t>("requests", w.zipf.n_requests);
    positive(w.zipf.n_contents, "workload.contents");
  } else if (kind == "chunked") {
    w.kind = WorkloadSource::Kind::Chunked;
    auto& c = w.chunked;
    c.contents.alpha = f.get<double>("alpha", c.contents.alpha);
    c.contents.n_contents = f.get<std::uint64_t>("contents", c.contents.n_contents);
    c.contents.n_requests = f.get<std::uint64_t>("requests", c.contents.n_requests);
    c.chunks.chunk_bytes = f.get<std::uint64_t>("chunk_bytes", c.chunks.chunk_bytes);
    c.chunks.bitrate_bps = f.get<std::uint64_t>("bitrate_bps", c.chunks.bitrate_bps);
    c.sessions.default_content_bytes = f.get<std::uint64_t>("content_bytes", c.sessions.default_content_bytes);
    c.sessions.mean_gap_us = f.get<std::uint64_t>("mean_gap_us", c.sessions.mean_gap_us);
    positive(c.contents.n_contents, "workload.contents");
    positive(c.chunks.chunk_bytes, "workload.chunk_bytes");
    positive(c.chunks.bitrate_bps, "workload.bitrate_bps");
    positive(c.sessions.default_content_bytes, "workload.content_bytes");
  } else if (kind == "pattern") {
    w.kind = WorkloadSource::Kind::Pattern;
    auto& p = w.pattern;
    try {
      p.kind = parse_pattern_kind(f.get<std::string>("pattern"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("workload.pattern: ") + e.what());
    }
    p.first_id = f.get<std::uint64_t>("first_id", p.first_id);
    p.length = f.get<std::uint64_t>("length", p.length);
    p.period = f.get<std::uint64_t>("period", p.period);
    p.reps = f.get<std::uint64_t>("reps", p.reps);
    p.set_size = f.get<std::uint64_t>("set_size", p.set_size);
    p.burst_length = f.get<std::uint64_t>("burst_length", p.burst_length);
    p.bursts = f.get<std::uint64_t>("bursts", p.bursts);
    p.working_set = f.get<std::uint64_t>("working_set", p.working_set);
    p.phase_length = f.get<std::uint64_t>("phase_length", p.phase_length);
    p.phases = f.get<std::uint64_t>("phases", p.phases);
    p.shift = f.get<std::uint64_t>("shift", p.shift);
  } else if (kind == "profile") {
    w.kind = WorkloadSource::Kind::Profile;
    if (f.has("row")) {
      const auto row = f.get<std::string>("row");
      const auto divisor = f.get<std::uint64_t>("divisor", 1000);
      positive(divisor, "workload.divisor");
      bool found = false;
      for (const auto& r : trace_profile_rows()) {
        if (row == r.workload) {
          w.profile = scaled_profile(r, divisor, 0);
          found = true;
        }
      }
      if (!found) throw ConfigError("workload.row: unknown profile row '" + row + "'");
    } else {
      w.profile.total = f.get<std::uint64_t>("total");
      w.profile.unique = f.get<std::uint64_t>("unique");
      w.profile.repeated = f.get<std::uint64_t>("repeated");
    }
    w.profile.alpha = f.get<double>("alpha", w.profile.alpha);
  } else {
    throw ConfigError("workload.kind: unknown kind '" + kind + "'");
  }
  f.finish();
  return w;
}

template <class T>
std::vector<T> one_or_many(const json& v, const char* key) {
  std::vector<T> out;
  try {
    auto take = [&](const json& e) {
      if constexpr (std::is_unsigned_v<T>) {
        if (!e.is_number_unsigned()) throw ConfigError(std::string(key) + ": expected non-negative integers");
      }
      out.push_back(e.get<T>());
    };
    if (v.is_array()) {
      for (const auto& e : v) take(e);
    } else {
      take(v);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
  if (out.empty()) throw ConfigError(std::string(key) + ": must not be empty");
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

bool WorkloadSource::needs_seed() const {
  switch (kind) {
    case Kind::Trace: return false;
    case Kind::Pattern: return pattern.kind == PatternKind::Fickle;
    default: return true;
  }
}

RequestStream WorkloadSource::build(std::uint64_t seed) const {
  switch (kind) {
    case Kind::Trace: return load_trace(trace);
    case Kind::Zipf: {
      auto spec = zipf;
      spec.seed = seed;
      return zipf_stream(spec);
    }
    case Kind::Chunked: {
      auto spec = chunked;
      spec.contents.seed = Rng::derive(seed, 0);
      spec.sessions.seed = Rng::derive(seed, 1);
      return chunk_workload(spec);
    }
    case Kind::Pattern: {
      auto spec = pattern;
      spec.seed = seed;
      return pattern_stream(spec);
    }
    case Kind::Profile: {
      auto spec = profile;
      spec.seed = seed;
      return profile_stream(spec);
    }
  }
  throw std::logic_error("bad workload kind");
}

ExperimentConfig parse_experiment(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  Fields f(doc, "config");
  ExperimentConfig cfg;
  if (!f.has("workload")) throw ConfigError("config: missing key 'workload'");
  cfg.workload = parse_workload(f.get<json>("workload"), base_dir);

  if (f.has("seeds")) cfg.seeds = one_or_many<std::uint64_t>(f.get<json>("seeds"), "seeds");
  if (cfg.workload.needs_seed() && cfg.seeds.empty()) {
    throw ConfigError("config: this workload is random; 'seeds' is required");
  }
  if (!cfg.workload.needs_seed() && !cfg.seeds.empty()) {
    throw ConfigError("config: 'seeds' given but the workload is deterministic");
  }

  for (const auto& p : one_or_many<std::string>(f.get<json>("policies"), "policies")) {
    try {
      cfg.policies.push_back(PolicySpec::parse(p));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("policies: ") + e.what());
    }
  }
  cfg.capacities = one_or_many<std::size_t>(f.get<json>("capacities"), "capacities");
  for (auto c : cfg.capacities) positive(c, "capacities");

  for (const auto& t : one_or_many<std::string>(f.get<json>("topology", json("single")), "topology")) {
    try {
      cfg.topologies.push_back(Topology::parse(t));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("topology: ") + e.what());
    }
  }
  cfg.dynamics_window = f.get<std::size_t>("dynamics_window", 0);
  cfg.output_dir = f.get<std::string>("output_dir", cfg.output_dir.string());
  if (cfg.output_dir.is_relative()) cfg.output_dir = base_dir / cfg.output_dir;
  f.finish();
  return cfg;
}

ExperimentConfig load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_experiment(doc, path.parent_path());
}

std::string Cell::stem() const {
  std::string topo = sim.topology.label();
  for (auto& ch : topo) {
    if (ch == ':') ch = '-';
  }
  std::string s = sim.policy.label() + "_c" + std::to_string(sim.capacity) + "_" + topo;
  if (seed) s += "_s" + std::to_string(*seed);
  return s;
}

std::vector<Cell> expand_cells(const ExperimentConfig& config) {
  std::vector<std::optional<std::uint64_t>> seeds;
  if (config.seeds.empty()) {
    seeds.push_back(std::nullopt);
  } else {
    seeds.assign(config.seeds.begin(), config.seeds.end());
  }
  std::vector<Cell> cells;
  for (const auto& seed : seeds) {
    for (const auto& topo : config.topologies) {
      for (const auto& policy : config.policies) {
        for (auto c : config.capacities) {
          cells.push_back(Cell{seed, SimConfig{policy, c, topo, config.dynamics_window}});
        }
      }
    }
  }
  return cells;
}

std::vector<SimulationReport> run_experiment(const ExperimentConfig& config, std::size_t jobs) {
  namespace fs = std::filesystem;
  fs::create_directories(config.output_dir);
  const auto marker = config.output_dir / ".incomplete";
  write_file(marker, "");

  const auto cells = expand_cells(config);
  std::vector<SimulationReport> reports;
  reports.reserve(cells.size());
  // Cells sharing a seed share one stream; the stream is built once per seed.
  std::size_t begin = 0;
  while (begin < cells.size()) {
    std::size_t end = begin;
    while (end < cells.size() && cells[end].seed == cells[begin].seed) ++end;
    const auto stream = config.workload.build(cells[begin].seed.value_or(0));
    std::vector<SimConfig> sims;
    for (std::size_t i = begin; i < end; ++i) sims.push_back(cells[i].sim);
    auto batch = run_batch(sims, stream, jobs);
    for (auto& r : batch) reports.push_back(std::move(r));
    begin = end;
  }

  std::vector<std::string> stems;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    stems.push_back(cells[i].stem());
    auto doc = to_json(reports[i]);
    if (cells[i].seed) doc["seed"] = *cells[i].seed;
    write_file(config.output_dir / (cells[i].stem() + ".json"), doc.dump(2) + "\n");
    write_file(config.output_dir / (cells[i].stem() + ".csv"), nodes_csv(reports[i]));
    if (!reports[i].dynamics.empty()) {
      write_file(config.output_dir / (cells[i].stem() + ".dynamics.csv"), dynamics_csv(reports[i]));
    }
  }
  write_file(config.output_dir / "summary.csv", summary_csv(reports, stems));
  fs::remove(marker);
  return reports;
}

}  // namespace cachelab
