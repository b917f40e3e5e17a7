#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>

#include "qbfmp/formula.hpp"

namespace qbfmp {

using Deadline = std::chrono::steady_clock::time_point;

enum class SatStatus { Sat, Unsat, Unknown };

struct SatResult {
  SatStatus status = SatStatus::Unknown;
  Assignment model;  ///< total over 1..max variable when status is Sat
};

struct SatOptions {
  std::uint64_t seed = 0;
  double random_decision_freq = 0.01;
  std::optional<Deadline> deadline;  ///< Unknown is returned only when this expires
};

/// Complete CDCL solver: two watched literals, first-UIP learning, VSIDS with
/// phase saving, geometric restarts. An empty clause gives Unsat immediately,
/// an empty clause set Sat with an empty model. Models are checked against
/// the input before being returned.
SatResult sat_solve(std::span<const Clause> cnf, const SatOptions& options = {});

}  // namespace qbfmp
