#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "qbfmp/bp.hpp"
#include "qbfmp/formula.hpp"
#include "qbfmp/sp.hpp"

namespace qbfmp {

enum class Sign : std::uint8_t { None, Positive, Negative };

struct Bias {
  Var var = 0;
  Sign favored = Sign::None;
  double magnitude = 0.5;  ///< max(psi^+, psi^-), in [1/2, 1]
};

inline constexpr double kDefaultTieEpsilon = 1e-6;

/// Ranking used wherever variables are ordered by bias: descending magnitude,
/// unbiased variables counted as exactly 1/2, ties by ascending variable.
bool more_biased(const Bias& a, const Bias& b);

/// Biases from BP marginals (psi^+ indexed by variable, slot 0 unused).
/// Returns one entry per variable 1..n, in variable order.
std::vector<Bias> compute_bias(std::span<const double> psi_plus, double tie_epsilon = kDefaultTieEpsilon);

/// Biases from SP marginals. psi^* is ignored: the pair (psi^+, psi^-) is
/// renormalized; a variable with psi^+ = psi^- = 0 is unbiased with magnitude 1/2.
std::vector<Bias> compute_bias(std::span<const SpMarginal> marginals, double tie_epsilon = kDefaultTieEpsilon);

/// Value to try first for a variable given its bias: against the bias for
/// universal variables, with it for existential ones, false when unbiased.
bool first_value(const Bias& b, Quantifier q);

struct Decision {
  Var var = 0;
  bool first_value = false;
  double bias = 0.5;

  friend bool operator==(const Decision&, const Decision&) = default;
};

/// Static branching sequence covering every variable of a formula once.
using DecisionOrder = std::vector<Decision>;

/// Ascending variable index, every first value false.
DecisionOrder index_order(const QbfFormula& f);

/// One BP run on the whole matrix, quantifiers ignored; variables sorted by
/// descending bias magnitude (ties by ascending index).
DecisionOrder bph_order(const QbfFormula& f, const BpParams& p);

/// Iterated BP with conditioning. Each step runs BP on the current matrix,
/// takes the most biased unassigned variable of the outermost block that
/// still has unassigned variables, fixes it to its first value and
/// conditions. Once the matrix is empty or has lost a clause entirely, the
/// remaining variables follow block by block in index order, value false.
DecisionOrder bpdh_order(const QbfFormula& f, const BpParams& p);

/// True iff the order names every variable 1..num_vars exactly once.
bool covers_all_variables(const DecisionOrder& order, std::size_t num_vars);

/// CSV `rank,variable,first_sign,bias`, rank starting at 1.
void write_order_csv(std::ostream& out, const DecisionOrder& order);

/// Static literal-occurrence scores with periodic halving. Without clause
/// learning the counts never change between decays, so the ranking is fixed.
class VsidsScores {
 public:
  static constexpr std::uint64_t kDecayInterval = 256;

  explicit VsidsScores(const QbfFormula& f);

  double score(Literal lit) const { return scores_[lit.index()]; }

  /// Highest-scoring literal over the unassigned variables among candidates.
  /// Ties go to the lower variable index, then to the negative literal.
  /// values is indexed by variable.
  Literal pick(std::span<const Var> candidates, std::span<const LBool> values) const;

  /// Call once per conflict; halves every score each kDecayInterval calls.
  void on_conflict();

  std::uint64_t conflicts() const { return conflicts_; }

 private:
  std::vector<double> scores_;
  std::uint64_t conflicts_ = 0;
};

enum class HeuristicKind { Vsids, Bph, Bpdh, Index };

HeuristicKind parse_heuristic(std::string_view name);
std::string_view heuristic_name(HeuristicKind kind);

}  // namespace qbfmp
