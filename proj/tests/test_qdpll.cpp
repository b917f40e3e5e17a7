#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "qbfmp/gen.hpp"
#include "qbfmp/qdpll.hpp"

using namespace qbfmp;

namespace {

Clause cl(std::initializer_list<int> lits) {
  Clause c;
  for (int l : lits) c.push_back(Literal::from_dimacs(l));
  return c;
}

constexpr HeuristicKind kAll[] = {HeuristicKind::Vsids, HeuristicKind::Bph, HeuristicKind::Bpdh, HeuristicKind::Index};

QbfFormula random_instance(std::uint64_t seed) {
  switch (seed % 4) {
    case 0: return gen_lk(LkSpec{1, 2, 6, 7, 5 + seed % 20}, seed);
    case 1: return gen_lk(LkSpec{1, 3, 6, 7, 8 + seed % 30}, seed);
    case 2: return gen_lk(LkSpec{2, 3, 6, 7, 4 + seed % 20}, seed);
    default: return gen_model_b(ModelBSpec{4, 3, 1, 3, 6 + seed % 20}, seed);
  }
}

}  // namespace

TEST_CASE("verdict examples") {
  const std::vector<QuantBlock> xy{{Quantifier::Universal, {1}}, {Quantifier::Existential, {2}}};
  const QbfFormula sat(2, xy, {cl({1, 2}), cl({-1, -2})});
  const QbfFormula unsat(2, xy, {cl({1, 2}), cl({1, -2})});
  const QbfFormula swapped(2, {{Quantifier::Existential, {2}}, {Quantifier::Universal, {1}}}, {cl({1, 2}), cl({-1, -2})});
  for (auto k : kAll) {
    const auto r = qdpll_solve(sat, k, BpParams{});
    CHECK(r.status == QbfStatus::Sat);
    CHECK(r.stats.solutions == 2);
    CHECK(qdpll_solve(unsat, k, BpParams{}).status == QbfStatus::Unsat);
    CHECK(qdpll_solve(swapped, k, BpParams{}).status == QbfStatus::Unsat);
  }
  CHECK(brute_force_eval(sat) == QbfStatus::Sat);
  CHECK(brute_force_eval(unsat) == QbfStatus::Unsat);
  CHECK(brute_force_eval(swapped) == QbfStatus::Unsat);
}

TEST_CASE("brute force basics") {
  CHECK(brute_force_eval(QbfFormula(1, {{Quantifier::Existential, {1}}}, {cl({1})})) == QbfStatus::Sat);
  CHECK(brute_force_eval(QbfFormula(1, {{Quantifier::Universal, {1}}}, {cl({1})})) == QbfStatus::Unsat);
  CHECK(brute_force_eval(QbfFormula(0, {}, {})) == QbfStatus::Sat);
}

TEST_CASE("propagation rules") {
  SUBCASE("unit universal literal is a conflict") {
    const QbfFormula f(2, {{Quantifier::Universal, {1}}, {Quantifier::Existential, {2}}}, {cl({-1}), cl({1, 2})});
    QdpllSolver s(f);
    CHECK(s.propagate().has_value());
  }
  SUBCASE("unit existential literal is implied") {
    const QbfFormula f(1, {{Quantifier::Existential, {1}}}, {cl({1})});
    QdpllSolver s(f);
    CHECK_FALSE(s.propagate().has_value());
    CHECK(s.value(1) == LBool::True);
    CHECK(s.all_satisfied());
    CHECK(s.stats().propagations == 1);
  }
  SUBCASE("two-step chain") {
    const QbfFormula f(2, {{Quantifier::Existential, {1, 2}}}, {cl({1, 2}), cl({-1})});
    QdpllSolver s(f);
    CHECK_FALSE(s.propagate().has_value());
    CHECK(s.value(1) == LBool::False);
    CHECK(s.value(2) == LBool::True);
  }
  SUBCASE("decision falsifying a clause") {
    const QbfFormula f(2, {{Quantifier::Universal, {1}}, {Quantifier::Existential, {2}}}, {cl({1, 2}), cl({1, -2})});
    QdpllSolver s(f);
    CHECK_FALSE(s.propagate().has_value());
    s.decide(Literal::from_dimacs(-1));
    CHECK(s.propagate().has_value());
  }
}

TEST_CASE("oracle agreement and heuristic independence") {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const QbfFormula f = random_instance(seed);
    REQUIRE(f.num_vars() <= 14);
    const QbfStatus expected = brute_force_eval(f);
    BpParams p;
    p.seed = seed;
    for (auto k : kAll) {
      const auto r = qdpll_solve(f, k, p);
      CHECK(r.status == expected);
      if (r.status == QbfStatus::Sat && f.is_two_level() && f.num_universal() > 0)
        CHECK(r.stats.solutions == (std::uint64_t{1} << f.num_universal()));
    }
  }
}

TEST_CASE("determinism of stats") {
  const auto f = gen_lk(LkSpec{1, 3, 10, 10, 40}, 5);
  for (auto k : kAll) {
    BpParams p;
    p.seed = 3;
    const auto a = qdpll_solve(f, k, p), b = qdpll_solve(f, k, p);
    CHECK(a.status == b.status);
    CHECK(a.stats.decisions == b.stats.decisions);
    CHECK(a.stats.conflicts == b.stats.conflicts);
    CHECK(a.stats.solutions == b.stats.solutions);
    CHECK(a.stats.propagations == b.stats.propagations);
  }
}

namespace {

// Wraps a heuristic and records whether every choice respected the prefix.
class Auditor final : public BranchingHeuristic {
 public:
  Auditor(const QbfFormula& f, BranchingHeuristic& inner) : f_(f), inner_(inner) {}
  Literal choose(std::span<const Var> block, std::span<const LBool> values) override {
    const Literal lit = inner_.choose(block, values);
    for (std::size_t b = 0; b < f_.block_of(lit.var()); ++b)
      for (Var v : f_.prefix()[b].variables) legal_ = legal_ && values[v] != LBool::Undef;
    return lit;
  }
  void on_conflict() override { inner_.on_conflict(); }
  bool legal() const { return legal_; }

 private:
  const QbfFormula& f_;
  BranchingHeuristic& inner_;
  bool legal_ = true;
};

}  // namespace

TEST_CASE("decisions respect the prefix") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto f = gen_model_b(ModelBSpec{4, 3, 1, 2, 10 + seed % 10}, seed);
    for (auto k : kAll) {
      auto h = make_heuristic(k, f, BpParams{});
      Auditor audit(f, *h);
      QdpllSolver(f).solve(audit);
      CHECK(audit.legal());
    }
  }
}

TEST_CASE("a static order that misses a variable is rejected") {
  CHECK_THROWS_AS(StaticOrderHeuristic({{1, false, 0.5}}, 2), std::invalid_argument);
}

TEST_CASE("expired deadline yields unknown") {
  const auto f = gen_lk(LkSpec{1, 3, 40, 40, 120}, 1);
  QdpllOptions o;
  o.deadline = std::chrono::steady_clock::now();
  CHECK(qdpll_solve(f, HeuristicKind::Index, BpParams{}, o).status == QbfStatus::Unknown);
}

TEST_CASE("stats CSV") {
  QdpllResult r;
  r.status = QbfStatus::Unsat;
  r.stats = {4, 3, 0, 7, 0.25};
  std::ostringstream out;
  write_stats_csv(out, r);
  CHECK(out.str() == "status,decisions,conflicts,solutions,propagations,wall_time\nunsat,4,3,0,7,0.250000\n");
}
