#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cachelab/kernel.hpp"

namespace cachelab {

/// A policy name plus the parameters some policies take.
struct PolicySpec {
  std::string name;
  double q = 0.5;                           // cfr
  std::optional<std::size_t> ghost_budget;  // lirs; defaults to 4c
  bool bypass = true;                       // opt

  /// Short label used in file names and report rows, e.g. "cfr-q0.3".
  std::string label() const;

  /// Parses "fifo", "cfr:0.3", "lirs:200", "opt-nobypass", ...
  static PolicySpec parse(const std::string& text);
};

/// Names accepted by make_policy.
const std::vector<std::string>& policy_names();

/// Builds a fresh policy. `future` is the exact stream the policy will see;
/// only OPT reads it.
std::unique_ptr<Policy> make_policy(const PolicySpec& spec, std::size_t capacity,
                                    std::span<const Request> future = {});

}  // namespace cachelab
