#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cachelab {

/// Inputs of the control-state bit costs. n: entries, P: pointer bits,
/// C: counter bits, m: LIRS ghost entries.
struct OverheadParams {
  std::uint64_t n = 0;
  std::uint64_t pointer_bits = 0;
  std::uint64_t counter_bits = 0;
  std::uint64_t ghosts = 0;
};

/// Policies with a cost row: fifo, lru-dll, lru-s, lru-c, lfu-h, arc, lirs,
/// clock, car, compact-car.
const std::vector<std::string>& overhead_policies();

/// Bits of replacement bookkeeping, ghost lists excluded. Throws
/// std::invalid_argument for an unknown policy, n = 0, or pointer_bits below
/// ceil(log2 n).
std::uint64_t space_overhead(std::string_view policy, const OverheadParams& params);

/// Smallest pointer width able to address n entries.
std::uint64_t min_pointer_bits(std::uint64_t n);

enum class AccessCase { Hit, Miss };
enum class Bound { Worst, Average };

/// A cost either spelled out in memory operations (t_r reads, t_w writes,
/// delta for everything else) or given as an order of growth.
struct TimeClass {
  enum class Kind { Exact, Order };
  Kind kind = Kind::Exact;
  std::string expr;  // "t_w+delta", or the argument of O(): "n", "1/(1-beta)"

  std::string text() const { return kind == Kind::Order ? "O(" + expr + ")" : expr; }
  friend bool operator==(const TimeClass&, const TimeClass&) = default;
};

TimeClass time_class(std::string_view policy, AccessCase access, Bound bound);

}  // namespace cachelab
