#include "cachelab/policy_factory.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <stdexcept>

#include "cachelab/arc.hpp"
#include "cachelab/baseline.hpp"
#include "cachelab/car.hpp"
#include "cachelab/compact_car.hpp"
#include "cachelab/lirs.hpp"

namespace cachelab {

const std::vector<std::string>& policy_names() {
  static const std::vector<std::string> names = {
      "fifo", "clock", "lru", "lfu", "arc", "lirs", "car", "compact-car", "cfr", "opt", "opt-nobypass"};
  return names;
}

std::string PolicySpec::label() const {
  if (name == "cfr") {
    char buf[32];
    std::snprintf(buf, sizeof buf, "cfr-q%g", q);
    return buf;
  }
  if (name == "lirs" && ghost_budget) return "lirs-m" + std::to_string(*ghost_budget);
  if (name == "opt" && !bypass) return "opt-nobypass";
  return name;
}

PolicySpec PolicySpec::parse(const std::string& text) {
  PolicySpec spec;
  const auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  if (std::find(policy_names().begin(), policy_names().end(), spec.name) == policy_names().end()) {
    throw std::invalid_argument("unknown policy '" + spec.name + "'");
  }
  if (spec.name == "opt-nobypass") {
    spec.name = "opt";
    spec.bypass = false;
  }
  if (colon == std::string::npos) return spec;

  const std::string arg = text.substr(colon + 1);
  if (spec.name == "cfr") {
    std::size_t used = 0;
    try {
      spec.q = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != arg.size() || !(spec.q >= 0.0 && spec.q <= 1.0)) {
      throw std::invalid_argument("cfr: q must be a number in [0, 1], got '" + arg + "'");
    }
  } else if (spec.name == "lirs") {
    std::size_t m = 0;
    auto [end, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), m);
    if (ec != std::errc{} || end != arg.data() + arg.size()) {
      throw std::invalid_argument("lirs: ghost budget must be an integer, got '" + arg + "'");
    }
    spec.ghost_budget = m;
  } else {
    throw std::invalid_argument("policy '" + spec.name + "' takes no parameter");
  }
  return spec;
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, std::size_t capacity,
                                    std::span<const Request> future) {
  const std::string& n = spec.name;
  if (n == "fifo") return std::make_unique<FifoPolicy>(capacity);
  if (n == "clock") return std::make_unique<ClockPolicy>(capacity);
  if (n == "lru") return std::make_unique<LruPolicy>(capacity);
  if (n == "lfu") return std::make_unique<LfuPolicy>(capacity);
  if (n == "arc") return std::make_unique<ArcPolicy>(capacity);
  if (n == "lirs") {
    return std::make_unique<LirsPolicy>(capacity, spec.ghost_budget.value_or(4 * capacity));
  }
  if (n == "car") return std::make_unique<CarPolicy>(capacity);
  if (n == "compact-car") return std::make_unique<CompactCar>(capacity);
  if (n == "cfr") return std::make_unique<CompactCar>(CompactCar::fixed_ratio(capacity, spec.q));
  if (n == "opt") return std::make_unique<OptPolicy>(capacity, future, spec.bypass);
  if (n == "opt-nobypass") return std::make_unique<OptPolicy>(capacity, future, false);
  throw std::invalid_argument("unknown policy '" + n + "'");
}

}  // namespace cachelab
