#pragma once

#include <cstdint>
#include <vector>

#include "qbfmp/factor_graph.hpp"

namespace qbfmp {

/// Iteration controls shared by BP and SP.
struct BpParams {
  int t_max = 300;          ///< maximum number of sweeps
  double epsilon = 1e-7;    ///< convergence threshold on the max message change of a sweep
  double damping = 0.0;     ///< weight of the old u message, in [0, 1)
  std::uint64_t seed = 0;   ///< message initialization and sweep order

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

/// Messages are clamped to [kMessageFloor, 1 - kMessageFloor] before they
/// enter a product, so that hard contradictions never produce 0/0.
inline constexpr double kMessageFloor = 1e-12;

/// Belief-propagation messages, indexed by edge of the factor graph.
///   u[e]   for e = (i,a): clause a to variable i, the weight a puts on the
///          value of i that violates a.
///   psi[e] variable i to clause a, probability that i violates a.
struct BpState {
  std::vector<double> u;
  std::vector<double> psi;
  int sweeps = 0;
  double residual = 0.0;
  bool converged = false;
};

/// Runs asynchronous BP from messages drawn uniformly in [0.01, 0.99].
/// Each sweep visits every edge once in a fresh seeded permutation and uses
/// new messages immediately. Stops when a sweep changes no u message by
/// epsilon or more, or after t_max sweeps (converged = false).
BpState bp_run(const FactorGraph& g, const BpParams& p);

/// Same, from caller-supplied u messages (one per edge).
BpState bp_run(const FactorGraph& g, const BpParams& p, std::vector<double> initial_u);

/// psi_i^+ for each variable, indexed by variable (slot 0 unused).
/// Variables without occurrences get 1/2.
std::vector<double> bp_marginals(const FactorGraph& g, const BpState& s);

}  // namespace qbfmp
