#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qbfmp/formula.hpp"

namespace qbfmp {

using ClauseId = std::size_t;
using EdgeId = std::size_t;

/// Bipartite variable/clause occurrence structure of a CNF.
///
/// Every literal occurrence is an edge. The edges of clause a are contiguous
/// and follow the literal order of the clause. For a variable i, the positive
/// and negative occurrence lists give the clause sets d+i and d-i. For an
/// edge (i,a) the clauses of i other than a split into S_ia (same sign as in
/// a) and U_ia (opposite sign).
class FactorGraph {
 public:
  FactorGraph(std::size_t num_vars, std::span<const Clause> clauses);
  explicit FactorGraph(const QbfFormula& f) : FactorGraph(f.num_vars(), f.matrix()) {}

  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clause_offset_.size() - 1; }
  std::size_t num_edges() const { return edge_var_.size(); }

  std::span<const EdgeId> clause_edges(ClauseId a) const;
  std::span<const EdgeId> positive_edges(Var i) const;
  std::span<const EdgeId> negative_edges(Var i) const;

  Var edge_var(EdgeId e) const { return edge_var_[e]; }
  ClauseId edge_clause(EdgeId e) const { return edge_clause_[e]; }
  bool edge_negated(EdgeId e) const { return edge_negated_[e] != 0; }

  /// d+i and d-i as clause ids.
  std::vector<ClauseId> positive_clauses(Var i) const;
  std::vector<ClauseId> negative_clauses(Var i) const;

  /// S_ia and U_ia for the edge e = (i,a).
  std::vector<ClauseId> same_sign_clauses(EdgeId e) const;
  std::vector<ClauseId> opposite_sign_clauses(EdgeId e) const;

 private:
  std::size_t num_vars_;
  std::vector<std::size_t> clause_offset_;
  std::vector<EdgeId> clause_edge_list_;
  std::vector<Var> edge_var_;
  std::vector<ClauseId> edge_clause_;
  std::vector<unsigned char> edge_negated_;
  std::vector<std::size_t> pos_offset_, neg_offset_;
  std::vector<EdgeId> pos_edges_, neg_edges_;
};

}  // namespace qbfmp
