#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qbfmp/bp.hpp"
#include "qbfmp/formula.hpp"
#include "qbfmp/heuristics.hpp"
#include "qbfmp/sat.hpp"

namespace qbfmp {

enum class QbfStatus { Sat, Unsat, Unknown };

std::string_view status_name(QbfStatus s);

struct SolverStats {
  std::uint64_t decisions = 0;     ///< branches opened (flips not counted)
  std::uint64_t conflicts = 0;
  std::uint64_t solutions = 0;     ///< solution leaves (see QdpllSolver)
  std::uint64_t propagations = 0;  ///< implied assignments
  double wall_time = 0.0;          ///< seconds
};

struct QdpllResult {
  QbfStatus status = QbfStatus::Unknown;
  SolverStats stats;
};

/// Chooses the next decision literal. The solver only ever offers the
/// unassigned variables of the outermost quantifier block that still has
/// unassigned variables; the returned literal is set true.
class BranchingHeuristic {
 public:
  virtual ~BranchingHeuristic() = default;
  /// block lists the whole block; entries with values[v] != Undef are to be skipped.
  virtual Literal choose(std::span<const Var> block, std::span<const LBool> values) = 0;
  virtual void on_conflict() {}
};

/// Static ranking: the highest-ranked unassigned member of the block, its first value first.
class StaticOrderHeuristic final : public BranchingHeuristic {
 public:
  StaticOrderHeuristic(const DecisionOrder& order, std::size_t num_vars);
  Literal choose(std::span<const Var> block, std::span<const LBool> values) override;

 private:
  std::vector<std::size_t> rank_;
  std::vector<bool> first_value_;
};

class VsidsHeuristic final : public BranchingHeuristic {
 public:
  explicit VsidsHeuristic(const QbfFormula& f) : scores_(f) {}
  Literal choose(std::span<const Var> block, std::span<const LBool> values) override {
    return scores_.pick(block, values);
  }
  void on_conflict() override { scores_.on_conflict(); }

 private:
  VsidsScores scores_;
};

/// Builds the heuristic for a formula. BP-based kinds run their message
/// passing here, once, before search.
std::unique_ptr<BranchingHeuristic> make_heuristic(HeuristicKind kind, const QbfFormula& f, const BpParams& p);

struct QdpllOptions {
  std::optional<Deadline> deadline;  ///< Unknown is returned only when this expires
};

/// Pure DPLL for QBF with chronological backtracking and no learning.
///
/// On a conflict the most recent unflipped existential decision is flipped
/// (none left: Unsat). When every clause is satisfied and every universal
/// variable is assigned, a solution leaf is counted and the most recent
/// unflipped universal decision is flipped (none left: Sat). Existential
/// variables may still be open at a solution leaf; universal ones may not, so
/// a satisfiable forall-X exists-Y formula always has 2^|X| leaves.
class QdpllSolver {
 public:
  explicit QdpllSolver(const QbfFormula& f);

  QdpllResult solve(BranchingHeuristic& heuristic, const QdpllOptions& options = {});

  /// Unit propagation to fixpoint. A clause whose literals are all false is a
  /// conflict. A clause with a single unassigned literal and no true literal
  /// implies that literal if it is existential and is a conflict if it is
  /// universal. Returns the conflicting clause, if any.
  std::optional<std::size_t> propagate();

  /// Makes a decision by hand (for tests and drivers). The variable must be unassigned.
  void decide(Literal lit);

  LBool value(Var v) const { return values_[v]; }
  bool all_satisfied() const { return satisfied_ == f_.num_clauses(); }
  bool at_solution() const { return all_satisfied() && open_universals_ == 0; }
  const SolverStats& stats() const { return stats_; }

 private:
  struct TrailEntry {
    Var var;
    bool decision;
    bool flipped;
  };

  void assign(Literal lit, bool decision, bool flipped);
  void unassign(Var v);
  bool backtrack(Quantifier kind);
  std::optional<std::size_t> open_block() const;

  const QbfFormula& f_;
  std::vector<LBool> values_;
  std::vector<std::vector<std::size_t>> occurs_;  // by literal index
  std::vector<std::uint32_t> true_count_, false_count_;
  std::vector<std::size_t> block_unassigned_;
  std::size_t satisfied_ = 0;
  std::size_t open_universals_ = 0;
  std::vector<TrailEntry> trail_;
  std::vector<std::size_t> decisions_;  // trail positions
  std::vector<std::size_t> queue_;
  std::size_t queue_head_ = 0;
  SolverStats stats_;
};

/// Convenience: build the heuristic (seeded through p) and solve.
QdpllResult qdpll_solve(const QbfFormula& f, HeuristicKind kind, const BpParams& p, const QdpllOptions& options = {});

/// CSV `status,decisions,conflicts,solutions,propagations,wall_time` (header + one row).
void write_stats_csv(std::ostream& out, const QdpllResult& result);

/// Reference evaluation of the game semantics by full recursion over the
/// prefix: universal nodes are conjunctions, existential nodes disjunctions,
/// clauses are evaluated at the leaves only. At most 24 variables.
QbfStatus brute_force_eval(const QbfFormula& f);

}  // namespace qbfmp
