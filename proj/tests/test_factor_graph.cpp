#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "qbfmp/factor_graph.hpp"

using namespace qbfmp;

namespace {

Clause cl(std::initializer_list<int> lits) {
  Clause c;
  for (int l : lits) c.push_back(Literal::from_dimacs(l));
  return c;
}

EdgeId edge_of(const FactorGraph& g, Var v, ClauseId a) {
  for (EdgeId e : g.clause_edges(a))
    if (g.edge_var(e) == v) return e;
  FAIL("no such edge");
  return 0;
}

}  // namespace

TEST_CASE("single clause occurrence lists") {
  const Cnf m{cl({1, -2})};
  const FactorGraph g(2, m);
  CHECK(g.positive_clauses(1) == std::vector<ClauseId>{0});
  CHECK(g.negative_clauses(1).empty());
  CHECK(g.positive_clauses(2).empty());
  CHECK(g.negative_clauses(2) == std::vector<ClauseId>{0});
}

TEST_CASE("same-sign and opposite-sign neighbourhoods") {
  const Cnf m{cl({1, 2}), cl({-1, 2})};
  const FactorGraph g(2, m);
  const EdgeId xa = edge_of(g, 1, 0), ya = edge_of(g, 2, 0);
  CHECK(g.same_sign_clauses(xa).empty());
  CHECK(g.opposite_sign_clauses(xa) == std::vector<ClauseId>{1});
  CHECK(g.same_sign_clauses(ya) == std::vector<ClauseId>{1});
  CHECK(g.opposite_sign_clauses(ya).empty());
}

TEST_CASE("isolated variable") {
  const Cnf m{cl({1})};
  const FactorGraph g(3, m);
  CHECK(g.num_vars() == 3);
  CHECK(g.positive_edges(3).empty());
  CHECK(g.negative_edges(3).empty());
}

TEST_CASE("neighbourhood partition invariant on random matrices") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 10;
    const Cnf m = oracle::random_mixed_cnf(rng, n, 25, 4);
    const FactorGraph g(n, m);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Var i = g.edge_var(e);
      const ClauseId a = g.edge_clause(e);
      auto s = g.same_sign_clauses(e), u = g.opposite_sign_clauses(e);
      std::vector<ClauseId> all = s;
      all.insert(all.end(), u.begin(), u.end());
      all.push_back(a);
      std::sort(all.begin(), all.end());
      std::vector<ClauseId> di = g.positive_clauses(i);
      const auto neg = g.negative_clauses(i);
      di.insert(di.end(), neg.begin(), neg.end());
      std::sort(di.begin(), di.end());
      CHECK(all == di);
      CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
      auto expected_s = g.edge_negated(e) ? g.negative_clauses(i) : g.positive_clauses(i);
      expected_s.erase(std::find(expected_s.begin(), expected_s.end(), a));
      CHECK(s == expected_s);
      CHECK(u == (g.edge_negated(e) ? g.positive_clauses(i) : g.negative_clauses(i)));
    }
  }
}
