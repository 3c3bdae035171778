#include "cachelab/overhead.hpp"

#include <array>
#include <stdexcept>

namespace cachelab {

const std::vector<std::string>& overhead_policies() {
  static const std::vector<std::string> names = {"fifo", "lru-dll", "lru-s", "lru-c", "lfu-h",
                                                 "arc",  "lirs",    "clock", "car",   "compact-car"};
  return names;
}

std::uint64_t min_pointer_bits(std::uint64_t n) {
  std::uint64_t bits = 0;
  while (bits < 64 && (1ULL << bits) < n) ++bits;
  return bits;
}

std::uint64_t space_overhead(std::string_view policy, const OverheadParams& params) {
  const std::uint64_t n = params.n;
  const std::uint64_t P = params.pointer_bits;
  const std::uint64_t C = params.counter_bits;
  const std::uint64_t m = params.ghosts;
  if (n == 0) throw std::invalid_argument("overhead: n must be >= 1");
  if (P < min_pointer_bits(n)) {
    throw std::invalid_argument("overhead: pointer bits " + std::to_string(P) + " cannot address " +
                                std::to_string(n) + " entries (need " + std::to_string(min_pointer_bits(n)) +
                                ")");
  }
  if (policy == "fifo") return P;
  if (policy == "lru-dll") return 2 * n * P + 2 * P;
  if (policy == "lru-s") return 0;
  if (policy == "lru-c") return n * C + C;
  if (policy == "lfu-h") return n * C;
  if (policy == "arc") return 4 * n * P + 7 * P;
  if (policy == "lirs") return 4 * n * P + 2 * n + 2 * m * P + 4 * P;
  if (policy == "clock") return n + P;
  if (policy == "car") return 4 * n * P + n + 9 * P;
  if (policy == "compact-car") return n + 9 * P;
  throw std::invalid_argument("overhead: unknown policy '" + std::string(policy) + "'");
}

namespace {

struct Row {
  std::string_view policy;
  // worst hit, worst miss, average hit, average miss
  std::array<TimeClass, 4> cells;
};

TimeClass exact(const char* e) { return {TimeClass::Kind::Exact, e}; }
TimeClass order(const char* e) { return {TimeClass::Kind::Order, e}; }

const std::vector<Row>& rows() {
  static const std::vector<Row> table = {
      {"fifo", {exact("delta"), exact("t_r+t_w+delta"), exact("delta"), exact("t_r+t_w+delta")}},
      {"lru-dll",
       {exact("3t_r+6t_w+delta"), exact("3t_r+6t_w+delta"), exact("3t_r+6t_w+delta"),
        exact("3t_r+6t_w+delta")}},
      {"lru-s", {order("n"), order("n"), order("n"), order("n")}},
      {"lru-c", {order("1"), order("n"), order("1"), order("n")}},
      {"lfu-h", {order("log n"), order("log n"), order("log n"), order("log n")}},
      {"arc", {order("1"), order("1"), order("1"), order("1")}},
      {"lirs", {order("m"), order("m"), order("1/beta"), order("1/beta")}},
      {"clock", {exact("t_w+delta"), order("n"), exact("t_w+delta"), order("1/(1-beta)")}},
      {"car", {exact("t_w+delta"), order("n"), exact("t_w+delta"), order("1/(1-beta)")}},
      {"compact-car", {exact("t_w+delta"), order("n"), exact("t_w+delta"), order("1/(1-beta)")}},
  };
  return table;
}

}  // namespace

TimeClass time_class(std::string_view policy, AccessCase access, Bound bound) {
  for (const auto& r : rows()) {
    if (r.policy == policy) {
      const std::size_t col = (bound == Bound::Average ? 2 : 0) + (access == AccessCase::Miss ? 1 : 0);
      return r.cells[col];
    }
  }
  throw std::invalid_argument("time class: unknown policy '" + std::string(policy) + "'");
}

}  // namespace cachelab
