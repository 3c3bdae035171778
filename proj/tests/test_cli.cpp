#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cachelab/trace_io.hpp"

namespace {

namespace fs = std::filesystem;

const fs::path& work_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "cachelab_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Result cli(const std::string& args) {
  const auto out = work_dir() / "stdout.txt";
  const auto err = work_dir() / "stderr.txt";
  const std::string cmd = "cd '" + work_dir().string() + "' && '" CACHELAB_CLI "' " + args + " > '" +
                          out.string() + "' 2> '" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::size_t lines(const std::string& text) { return std::count(text.begin(), text.end(), '\n'); }

void write(const std::string& name, const std::string& text) { std::ofstream(work_dir() / name) << text; }

TEST(Cli, GenerateZipfMillion) {
  auto r = cli("generate zipf --alpha 1.0 --contents 10000 --requests 1000000 --seed 42 -o zipf.csv");
  ASSERT_EQ(r.code, 0) << r.err;
  auto stream = cachelab::load_trace(work_dir() / "zipf.csv");
  EXPECT_EQ(stream.size(), 1000000u);
  EXPECT_NE(r.err.find("requests 1000000"), std::string::npos);
}

TEST(Cli, GenerateLoop) {
  auto r = cli("generate pattern --kind loop --period 3 --reps 2");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  auto stream = cachelab::read_trace(in);
  ASSERT_EQ(stream.size(), 6u);
  EXPECT_EQ(stream[3].chunk, cachelab::ChunkId{1});
}

TEST(Cli, GenerateChunkedAtTableRate) {
  auto r = cli("generate chunked --alpha 1.2 --chunk-kb 15 --bitrate-kbps 600 --contents 50 --requests 1 "
               "--content-kb 150 --seed 3");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  auto stream = cachelab::read_trace(in);
  ASSERT_EQ(stream.size(), 10u);
  // One session of ten 15 KB chunks, 200 ms apart: five per second.
  std::istringstream raw(r.out);
  std::string line;
  std::vector<std::uint64_t> times;
  while (std::getline(raw, line)) {
    if (line.empty() || line[0] == '#') continue;
    times.push_back(std::stoull(line.substr(0, line.find(','))));
  }
  ASSERT_EQ(times.size(), 10u);
  for (std::size_t i = 1; i < times.size(); ++i) EXPECT_EQ(times[i] - times[i - 1], 200000u);
  EXPECT_NE(r.err.find("chunks per second 5"), std::string::npos) << r.err;
  auto timed = cli("generate chunked --alpha 1.2 --chunk-kb 15 --bitrate-kbps 600 --contents 50 --requests 1 "
                   "--content-kb 150 --seed 3 -o chunked.csv");
  ASSERT_EQ(timed.code, 0);
  EXPECT_EQ(slurp(work_dir() / "chunked.csv"), r.out);
}

TEST(Cli, SimulateTwelveCellsAndDeterminism) {
  ASSERT_EQ(cli("generate zipf --contents 500 --requests 20000 --seed 1 -o sim.csv").code, 0);
  write("sim.json", R"({
    "workload": {"kind": "trace", "path": "sim.csv"},
    "policies": ["fifo", "clock", "compact-car", "opt"],
    "capacities": [10, 100, 1000]
  })");
  auto r1 = cli("simulate sim.json --output-dir run1 --jobs 2");
  ASSERT_EQ(r1.code, 0) << r1.err;
  auto r2 = cli("simulate sim.json --output-dir run2");
  ASSERT_EQ(r2.code, 0) << r2.err;
  std::size_t cells = 0;
  for (const auto& e : fs::directory_iterator(work_dir() / "run1")) {
    cells += e.path().extension() == ".json";
    EXPECT_EQ(slurp(e.path()), slurp(work_dir() / "run2" / e.path().filename())) << e.path();
  }
  EXPECT_EQ(cells, 12u);
  EXPECT_EQ(lines(slurp(work_dir() / "run1" / "summary.csv")), 13u);
}

TEST(Cli, SimulateLineColumns) {
  ASSERT_EQ(cli("generate zipf --contents 500 --requests 5000 --seed 2 -o line.csv").code, 0);
  write("line.json", R"({
    "workload": {"kind": "trace", "path": "line.csv"},
    "policies": "clock", "capacities": 10, "topology": "line:10", "output_dir": "line_out"
  })");
  ASSERT_EQ(cli("simulate line.json").code, 0);
  auto summary = slurp(work_dir() / "line_out" / "summary.csv");
  auto header = summary.substr(0, summary.find('\n'));
  EXPECT_NE(header.find(",node1,node2,node3,node4,node5,node6,node7,node8,node9,node10"), std::string::npos);
  EXPECT_EQ(lines(slurp(work_dir() / "line_out" / "clock_c10_line-10.csv")), 11u);
}

TEST(Cli, JobsFromEnvironment) {
  write("env.json", R"({
    "workload": {"kind": "pattern", "pattern": "loop", "period": 5, "reps": 3},
    "policies": ["lru", "fifo"], "capacities": [2, 5], "output_dir": "env_out"
  })");
  EXPECT_EQ(cli("simulate env.json").code, 0);
  EXPECT_EQ(std::system(("ICN_CACHE_LAB_JOBS=zero '" CACHELAB_CLI "' simulate '" +
                         (work_dir() / "env.json").string() + "' > /dev/null 2>&1")
                            .c_str()) >> 8,
            1);
}

TEST(Cli, AnalyzeOverhead) {
  auto r = cli("analyze overhead --policy compact-car --entries 20000000 --pointer-bits 25");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("compact-car,20000000,25,32,0,20000225,"), std::string::npos) << r.out;
  auto all = cli("analyze overhead --policy all --entries 1024");
  ASSERT_EQ(all.code, 0);
  EXPECT_EQ(lines(all.out), 11u);
  EXPECT_NE(all.out.find("clock,1024,10,32,0,1034,t_w+delta,O(n),t_w+delta,O(1/(1-beta))"), std::string::npos);
}

TEST(Cli, AnalyzeTraces) {
  ASSERT_EQ(cli("generate pattern --kind scan --length 50 -o scan.csv").code, 0);
  auto rd = cli("analyze rd-cdf --trace scan.csv");
  ASSERT_EQ(rd.code, 0) << rd.err;
  EXPECT_EQ(rd.out, "rd,cumulative_fraction\n");

  write("aaa.csv", "0,1\n1,1\n2,1\n");
  auto bg = cli("analyze beta-gamma --trace aaa.csv --window 3");
  ASSERT_EQ(bg.code, 0) << bg.err;
  EXPECT_EQ(bg.out, "window,start,length,h1,h2,h3,beta,gamma\n0,0,3,1,1,1,1,1\npooled,0,3,,,,1,1\n");

  ASSERT_EQ(cli("generate pattern --kind loop --period 3 --reps 2 -o loop.csv").code, 0);
  auto pop = cli("analyze popularity --trace loop.csv");
  ASSERT_EQ(pop.code, 0);
  EXPECT_EQ(pop.out, "rank,chunk,count\n1,1,2\n2,2,2\n3,3,2\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("").code, 1);
  EXPECT_EQ(cli("frobnicate").code, 1);
  EXPECT_EQ(cli("generate zipf --requests 10").code, 1);  // no --seed
  EXPECT_EQ(cli("generate pattern --kind fickle").code, 1);
  EXPECT_EQ(cli("analyze overhead --policy mru --entries 10").code, 1);
  EXPECT_EQ(cli("analyze rd-cdf --trace missing.csv").code, 2);
  write("broken.csv", "0,1\nx,2\n");
  auto broken = cli("analyze popularity --trace broken.csv");
  EXPECT_EQ(broken.code, 2);
  EXPECT_NE(broken.err.find("line 2"), std::string::npos) << broken.err;
  write("missing_trace.json", R"({"workload": {"kind": "trace", "path": "nowhere.csv"},
    "policies": "lru", "capacities": 4, "output_dir": "missing_out"})");
  EXPECT_EQ(cli("simulate missing_trace.json").code, 2);
  EXPECT_TRUE(fs::exists(work_dir() / "missing_out" / ".incomplete"));
  write("unknown_key.json", R"({"workload": {"kind": "zipf"}, "seeds": 1, "policies": "lru",
    "capacities": 4, "colour": 1})");
  EXPECT_EQ(cli("simulate unknown_key.json").code, 1);
  write("not_json.json", "{");
  EXPECT_EQ(cli("simulate not_json.json").code, 2);
  EXPECT_EQ(cli("simulate absent.json").code, 2);
}

}  // namespace
