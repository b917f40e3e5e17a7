#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qbfmp/bp.hpp"

namespace qbfmp {

/// Survey-propagation messages, indexed by edge.
///
/// u[e] follows the same convention as BP's u: the survey (warning) that
/// clause a sends to i is eta = 1 - u. The trivial fixed point is u == 1.
/// psi[e] = (psi^U, psi^S, psi^*) for i -> a, normalized.
struct SpState {
  std::vector<double> u;
  std::vector<std::array<double, 3>> psi;
  int sweeps = 0;
  double residual = 0.0;
  bool converged = false;
  std::size_t jokers = 0;  ///< all-zero triples replaced by (0, 0, 1)

  /// Largest survey eta = 1 - u over all edges (0 for an edgeless graph).
  double max_eta() const;
};

struct SpMarginal {
  double plus = 0.0;
  double star = 1.0;
  double minus = 0.0;
};

/// Runs asynchronous SP with the same schedule, initialization and stopping
/// rule as bp_run.
SpState sp_run(const FactorGraph& g, const BpParams& p);
SpState sp_run(const FactorGraph& g, const BpParams& p, std::vector<double> initial_u);

/// Per-variable (psi^+, psi^*, psi^-), indexed by variable (slot 0 unused).
/// Variables without occurrences get (0, 1, 0).
std::vector<SpMarginal> sp_marginals(const FactorGraph& g, const SpState& s);

/// True iff some survey exceeds eps_trivial.
bool is_nontrivial(const SpState& s, double eps_trivial = 1e-3);

}  // namespace qbfmp
