// cachelab: generate workloads, run experiments, analyze traces.
//
// Exit codes: 0 success, 1 usage error, 2 input-data error.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>

#include "CLI11.hpp"

#include "cachelab/analysis.hpp"
#include "cachelab/experiment.hpp"
#include "cachelab/overhead.hpp"
#include "cachelab/rng.hpp"
#include "cachelab/sim.hpp"
#include "cachelab/trace_io.hpp"
#include "cachelab/workload.hpp"

namespace {

using namespace cachelab;

constexpr int kUsage = 1;
constexpr int kInput = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t default_jobs() {
  if (const char* env = std::getenv("ICN_CACHE_LAB_JOBS")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoul(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("ICN_CACHE_LAB_JOBS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  out << text;
  out.flush();
  if (!out) throw InputError("cannot write " + out_path);
}

void write_stream(const RequestStream& stream, const std::string& out_path) {
  std::ostringstream text;
  write_trace(text, stream);
  emit(out_path, text.str());
  std::unordered_set<ChunkId> unique;
  for (const auto& r : stream) unique.insert(r.chunk);
  std::cerr << "requests " << stream.size() << ", unique chunks " << unique.size() << "\n";
}

RequestStream read_input(const std::string& path) {
  try {
    return load_trace(path);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

std::uint64_t kb_to_bytes(double kb, const char* what) {
  if (!(kb > 0.0)) throw UsageError(std::string(what) + " must be > 0");
  return static_cast<std::uint64_t>(std::llround(kb * 1000.0));
}

// --- generate -----------------------------------------------------------------

void add_generate(CLI::App& app, std::function<void()>& action) {
  auto* gen = app.add_subcommand("generate", "write a synthetic trace")->require_subcommand(1);

  static std::string out;
  static ZipfSpec zipf;
  static std::uint64_t seed = 0;

  auto* z = gen->add_subcommand("zipf", "i.i.d. Zipf content requests");
  z->add_option("--alpha", zipf.alpha, "Zipf exponent")->capture_default_str();
  z->add_option("--contents", zipf.n_contents, "number of contents")->capture_default_str();
  z->add_option("--requests", zipf.n_requests, "number of requests")->capture_default_str();
  z->add_option("--seed", seed, "RNG seed")->required();
  z->add_option("-o,--out", out, "output trace (stdout if omitted)");
  z->callback([&action] {
    action = [] {
      auto spec = zipf;
      spec.seed = seed;
      if (spec.n_contents == 0) throw UsageError("--contents must be >= 1");
      write_stream(zipf_stream(spec), out);
    };
  });

  static ChunkWorkloadSpec chunked;
  static double chunk_kb = 15, content_kb = 600, bitrate_kbps = 600, mean_gap_ms = 1000;
  auto* c = gen->add_subcommand("chunked", "Zipf sessions split into paced chunk requests");
  c->add_option("--alpha", chunked.contents.alpha, "Zipf exponent")->capture_default_str();
  c->add_option("--contents", chunked.contents.n_contents, "number of contents")->capture_default_str();
  c->add_option("--requests", chunked.contents.n_requests, "content requests (sessions)")->capture_default_str();
  c->add_option("--chunk-kb", chunk_kb, "chunk size in KB (1 KB = 1000 bytes)")->capture_default_str();
  c->add_option("--content-kb", content_kb, "content size in KB")->capture_default_str();
  c->add_option("--bitrate-kbps", bitrate_kbps, "playback bitrate")->capture_default_str();
  c->add_option("--mean-gap-ms", mean_gap_ms, "mean gap between session starts")->capture_default_str();
  c->add_option("--seed", seed, "RNG seed")->required();
  c->add_option("-o,--out", out, "output trace (stdout if omitted)");
  c->callback([&action] {
    action = [] {
      auto spec = chunked;
      spec.chunks.chunk_bytes = kb_to_bytes(chunk_kb, "--chunk-kb");
      spec.sessions.default_content_bytes = kb_to_bytes(content_kb, "--content-kb");
      spec.chunks.bitrate_bps = kb_to_bytes(bitrate_kbps, "--bitrate-kbps");
      if (!(mean_gap_ms >= 0.0)) throw UsageError("--mean-gap-ms must be >= 0");
      spec.sessions.mean_gap_us = static_cast<std::uint64_t>(std::llround(mean_gap_ms * 1000.0));
      spec.contents.seed = Rng::derive(seed, 0);
      spec.sessions.seed = Rng::derive(seed, 1);
      if (spec.contents.n_contents == 0) throw UsageError("--contents must be >= 1");
      std::cerr << "chunks per second " << chunks_per_second(spec.chunks) << "\n";
      // Trace times are the chunk request times in microseconds.
      RequestStream stream;
      for (const auto& r : chunk_schedule(spec)) stream.push_back(Request{r.chunk, r.time_us, r.size_bytes});
      write_stream(stream, out);
    };
  });

  static PatternSpec pattern;
  static std::string kind;
  static std::optional<std::uint64_t> pattern_seed;
  auto* p = gen->add_subcommand("pattern", "scan, loop, correlated or fickle access pattern");
  p->add_option("--kind", kind, "scan | loop | correlated | fickle")->required();
  p->add_option("--first-id", pattern.first_id)->capture_default_str();
  p->add_option("--length", pattern.length, "scan length")->capture_default_str();
  p->add_option("--period", pattern.period, "loop period")->capture_default_str();
  p->add_option("--reps", pattern.reps, "loop repetitions")->capture_default_str();
  p->add_option("--set-size", pattern.set_size, "correlated set size")->capture_default_str();
  p->add_option("--burst-length", pattern.burst_length, "requests per burst")->capture_default_str();
  p->add_option("--bursts", pattern.bursts, "number of bursts")->capture_default_str();
  p->add_option("--working-set", pattern.working_set, "fickle working set")->capture_default_str();
  p->add_option("--phase-length", pattern.phase_length, "fickle requests per phase")->capture_default_str();
  p->add_option("--phases", pattern.phases, "fickle phases")->capture_default_str();
  p->add_option("--shift", pattern.shift, "fickle working-set shift per phase")->capture_default_str();
  p->add_option("--seed", pattern_seed, "RNG seed (fickle only)");
  p->add_option("-o,--out", out, "output trace (stdout if omitted)");
  p->callback([&action] {
    action = [] {
      auto spec = pattern;
      try {
        spec.kind = parse_pattern_kind(kind);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      if (spec.kind == PatternKind::Fickle) {
        if (!pattern_seed) throw UsageError("--seed is required for --kind fickle");
        spec.seed = *pattern_seed;
      }
      write_stream(pattern_stream(spec), out);
    };
  });

  static ProfileSpec profile;
  static std::string row;
  static std::uint64_t divisor = 1000;
  auto* pr = gen->add_subcommand("profile", "trace matching total/unique/repeated chunk counts");
  pr->add_option("--row", row, "measured row to scale: P(1.5KB), P(15KB) or P(60KB)");
  pr->add_option("--divisor", divisor, "scale-down factor for --row")->capture_default_str();
  pr->add_option("--total", profile.total)->capture_default_str();
  pr->add_option("--unique", profile.unique)->capture_default_str();
  pr->add_option("--repeated", profile.repeated)->capture_default_str();
  pr->add_option("--alpha", profile.alpha, "skew of the repeated chunks")->capture_default_str();
  pr->add_option("--seed", seed, "RNG seed")->required();
  pr->add_option("-o,--out", out, "output trace (stdout if omitted)");
  pr->callback([&action] {
    action = [] {
      auto spec = profile;
      if (!row.empty()) {
        bool found = false;
        for (const auto& r : trace_profile_rows()) {
          if (row == r.workload) {
            if (divisor == 0) throw UsageError("--divisor must be >= 1");
            const double alpha = spec.alpha;
            spec = scaled_profile(r, divisor, 0);
            spec.alpha = alpha;
            found = true;
          }
        }
        if (!found) throw UsageError("unknown --row '" + row + "'");
      }
      spec.seed = seed;
      try {
        write_stream(profile_stream(spec), out);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    };
  });
}

// --- simulate -----------------------------------------------------------------

void add_simulate(CLI::App& app, std::function<void()>& action) {
  static std::string config_path, output_dir;
  static std::optional<std::size_t> jobs;
  auto* s = app.add_subcommand("simulate", "run an experiment config");
  s->add_option("config", config_path, "experiment JSON")->required();
  s->add_option("--jobs", jobs, "worker threads (default: $ICN_CACHE_LAB_JOBS or 1)");
  s->add_option("--output-dir", output_dir, "override the config's output_dir");
  s->callback([&action] {
    action = [] {
      ExperimentConfig cfg;
      try {
        cfg = load_experiment(config_path);
      } catch (const ConfigError& e) {
        throw UsageError(config_path + ": " + e.what());
      } catch (const std::exception& e) {
        throw InputError(e.what());
      }
      if (!output_dir.empty()) cfg.output_dir = output_dir;
      const std::size_t n = jobs ? *jobs : default_jobs();
      if (n == 0) throw UsageError("--jobs must be >= 1");
      std::vector<SimulationReport> reports;
      try {
        reports = run_experiment(cfg, n);
      } catch (const TraceError& e) {
        throw InputError(e.what());
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      } catch (const std::runtime_error& e) {
        throw InputError(e.what());
      }
      std::cerr << reports.size() << " cells written to " << cfg.output_dir.string() << "\n";
    };
  });
}

// --- analyze ------------------------------------------------------------------

void add_analyze(CLI::App& app, std::function<void()>& action) {
  auto* an = app.add_subcommand("analyze", "trace statistics and cost model")->require_subcommand(1);
  static std::string trace, out;

  static std::string mode = "distinct";
  auto* rd = an->add_subcommand("rd-cdf", "CDF of finite reuse distances");
  rd->add_option("--trace", trace)->required();
  rd->add_option("--mode", mode, "distinct | raw")->capture_default_str();
  rd->add_option("-o,--out", out);
  rd->callback([&action] {
    action = [] {
      if (mode != "distinct" && mode != "raw") throw UsageError("--mode must be distinct or raw");
      const auto stream = read_input(trace);
      emit(out, cdf_csv(reuse_distance(stream, mode == "raw" ? RdMode::Raw : RdMode::Distinct)));
    };
  });

  auto* pop = an->add_subcommand("popularity", "rank-frequency table");
  pop->add_option("--trace", trace)->required();
  pop->add_option("-o,--out", out);
  pop->callback([&action] {
    action = [] { emit(out, popularity_csv(popularity_histogram(read_input(trace)))); };
  });

  static std::size_t window = 10000;
  auto* bg = an->add_subcommand("beta-gamma", "h1..h3, beta and gamma per tumbling window");
  bg->add_option("--trace", trace)->required();
  bg->add_option("--window", window, "window length in requests")->capture_default_str();
  bg->add_option("-o,--out", out);
  bg->callback([&action] {
    action = [] {
      const auto stream = read_input(trace);
      TrafficCounts tc;
      try {
        tc = traffic_counts(stream, window);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      std::ostringstream text;
      text << "window,start,length,h1,h2,h3,beta,gamma\n";
      for (std::size_t i = 0; i < tc.windows.size(); ++i) {
        const auto& w = tc.windows[i];
        text << i << ',' << w.start << ',' << w.length << ',' << w.h1 << ',' << w.h2 << ',' << w.h3 << ','
             << format_double(w.beta()) << ',' << format_double(w.gamma()) << '\n';
      }
      text << "pooled,0," << stream.size() << ",,,," << format_double(tc.beta) << ','
           << format_double(tc.gamma) << '\n';
      emit(out, text.str());
    };
  });

  static std::vector<std::string> policies;
  static std::uint64_t entries = 0;
  static std::optional<std::uint64_t> pointer_bits;
  static std::uint64_t counter_bits = 32, ghosts = 0;
  auto* ov = an->add_subcommand("overhead", "bits of replacement state and time classes");
  ov->add_option("--policy", policies, "policy (repeatable) or 'all'")->required();
  ov->add_option("--entries", entries, "n, cache entries")->required();
  ov->add_option("--pointer-bits", pointer_bits, "P (default ceil(log2 n))");
  ov->add_option("--counter-bits", counter_bits, "C")->capture_default_str();
  ov->add_option("--ghosts", ghosts, "m, LIRS ghost entries")->capture_default_str();
  ov->add_option("-o,--out", out);
  ov->callback([&action] {
    action = [] {
      std::vector<std::string> names;
      for (const auto& p : policies) {
        if (p == "all") {
          names.insert(names.end(), overhead_policies().begin(), overhead_policies().end());
        } else {
          names.push_back(p);
        }
      }
      OverheadParams params{entries, pointer_bits.value_or(min_pointer_bits(entries)), counter_bits, ghosts};
      std::ostringstream text;
      text << "policy,entries,pointer_bits,counter_bits,ghosts,bits,"
              "hit_worst,miss_worst,hit_average,miss_average\n";
      for (const auto& name : names) {
        std::uint64_t bits = 0;
        try {
          bits = space_overhead(name, params);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        text << name << ',' << params.n << ',' << params.pointer_bits << ',' << params.counter_bits << ','
             << params.ghosts << ',' << bits;
        for (auto bound : {Bound::Worst, Bound::Average}) {
          for (auto acc : {AccessCase::Hit, AccessCase::Miss}) text << ',' << time_class(name, acc, bound).text();
        }
        text << '\n';
      }
      emit(out, text.str());
    };
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cache replacement lab: workloads, simulation, analysis"};
  app.require_subcommand(1);
  std::function<void()> action;
  add_generate(app, action);
  add_simulate(app, action);
  add_analyze(app, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (action) action();
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
}
