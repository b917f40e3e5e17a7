#include "qbfmp/factor_graph.hpp"

#include <stdexcept>
#include <string>

namespace qbfmp {

FactorGraph::FactorGraph(std::size_t num_vars, std::span<const Clause> clauses) : num_vars_(num_vars) {
  clause_offset_.reserve(clauses.size() + 1);
  clause_offset_.push_back(0);
  std::vector<std::size_t> pos_count(num_vars + 2, 0), neg_count(num_vars + 2, 0);

  for (ClauseId a = 0; a < clauses.size(); ++a) {
    for (Literal lit : clauses[a]) {
      if (lit.var() == 0 || lit.var() > num_vars)
        throw std::invalid_argument("factor graph: variable " + std::to_string(lit.var()) + " out of range");
      const EdgeId e = edge_var_.size();
      edge_var_.push_back(lit.var());
      edge_clause_.push_back(a);
      edge_negated_.push_back(lit.negative() ? 1 : 0);
      clause_edge_list_.push_back(e);
      ++(lit.negative() ? neg_count : pos_count)[lit.var()];
    }
    clause_offset_.push_back(edge_var_.size());
  }

  // Prefix sums into CSR offsets; slot i holds the start of variable i.
  pos_offset_.assign(num_vars + 2, 0);
  neg_offset_.assign(num_vars + 2, 0);
  for (std::size_t i = 1; i <= num_vars + 1; ++i) {
    pos_offset_[i] = pos_offset_[i - 1] + pos_count[i - 1];
    neg_offset_[i] = neg_offset_[i - 1] + neg_count[i - 1];
  }
  pos_edges_.resize(pos_offset_.back());
  neg_edges_.resize(neg_offset_.back());
  std::vector<std::size_t> pos_fill(pos_offset_.begin(), pos_offset_.end());
  std::vector<std::size_t> neg_fill(neg_offset_.begin(), neg_offset_.end());
  for (EdgeId e = 0; e < edge_var_.size(); ++e) {
    const Var v = edge_var_[e];
    if (edge_negated_[e])
      neg_edges_[neg_fill[v]++] = e;
    else
      pos_edges_[pos_fill[v]++] = e;
  }
}

std::span<const EdgeId> FactorGraph::clause_edges(ClauseId a) const {
  return {clause_edge_list_.data() + clause_offset_[a], clause_offset_[a + 1] - clause_offset_[a]};
}

std::span<const EdgeId> FactorGraph::positive_edges(Var i) const {
  return {pos_edges_.data() + pos_offset_[i], pos_offset_[i + 1] - pos_offset_[i]};
}

std::span<const EdgeId> FactorGraph::negative_edges(Var i) const {
  return {neg_edges_.data() + neg_offset_[i], neg_offset_[i + 1] - neg_offset_[i]};
}

namespace {
std::vector<ClauseId> clauses_of(const FactorGraph& g, std::span<const EdgeId> edges, EdgeId skip) {
  std::vector<ClauseId> out;
  for (EdgeId e : edges)
    if (e != skip) out.push_back(g.edge_clause(e));
  return out;
}
constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);
}  // namespace

std::vector<ClauseId> FactorGraph::positive_clauses(Var i) const { return clauses_of(*this, positive_edges(i), kNoEdge); }
std::vector<ClauseId> FactorGraph::negative_clauses(Var i) const { return clauses_of(*this, negative_edges(i), kNoEdge); }

std::vector<ClauseId> FactorGraph::same_sign_clauses(EdgeId e) const {
  const Var i = edge_var(e);
  return clauses_of(*this, edge_negated(e) ? negative_edges(i) : positive_edges(i), e);
}

std::vector<ClauseId> FactorGraph::opposite_sign_clauses(EdgeId e) const {
  const Var i = edge_var(e);
  return clauses_of(*this, edge_negated(e) ? positive_edges(i) : negative_edges(i), kNoEdge);
}

}  // namespace qbfmp
