#include <doctest.h>

#include <sstream>

#include "qbfmp/gen.hpp"
#include "qbfmp/heuristics.hpp"

using namespace qbfmp;

namespace {

Clause cl(std::initializer_list<int> lits) {
  Clause c;
  for (int l : lits) c.push_back(Literal::from_dimacs(l));
  return c;
}

QbfFormula forall_x_exists_y(Cnf m) {
  return QbfFormula(2, {{Quantifier::Universal, {1}}, {Quantifier::Existential, {2}}}, std::move(m));
}

}  // namespace

TEST_CASE("bias from BP marginals") {
  const std::vector<double> psi{0.0, 0.8, 0.5, 0.2, 0.5 + 5e-7};
  const auto b = compute_bias(psi);
  REQUIRE(b.size() == 4);
  CHECK(b[0].favored == Sign::Positive);
  CHECK(b[0].magnitude == doctest::Approx(0.8));
  CHECK(b[1].favored == Sign::None);
  CHECK(b[1].magnitude == 0.5);
  CHECK(b[2].favored == Sign::Negative);
  CHECK(b[2].magnitude == doctest::Approx(0.8));
  CHECK(b[3].favored == Sign::None);
}

TEST_CASE("bias from SP marginals renormalizes the pair") {
  const std::vector<SpMarginal> m{{}, {0.1, 0.6, 0.3}, {0.0, 1.0, 0.0}};
  const auto b = compute_bias(m);
  CHECK(b[0].favored == Sign::Negative);
  CHECK(b[0].magnitude == doctest::Approx(0.75));
  CHECK(b[1].favored == Sign::None);
  CHECK(b[1].magnitude == 0.5);
}

TEST_CASE("first value rule") {
  const Bias pos{1, Sign::Positive, 0.9}, neg{1, Sign::Negative, 0.9}, none{1, Sign::None, 0.5};
  CHECK(first_value(pos, Quantifier::Universal) == false);
  CHECK(first_value(pos, Quantifier::Existential) == true);
  CHECK(first_value(neg, Quantifier::Universal) == true);
  CHECK(first_value(neg, Quantifier::Existential) == false);
  CHECK(first_value(none, Quantifier::Universal) == false);
  CHECK(first_value(none, Quantifier::Existential) == false);
}

TEST_CASE("BPH order on a two-variable example") {
  const auto f = forall_x_exists_y({cl({1, 2}), cl({1, -2})});
  const auto order = bph_order(f, BpParams{});
  REQUIRE(order.size() == 2);
  CHECK(order[0] == Decision{1, false, order[0].bias});
  CHECK(order[0].bias > 0.5);
  CHECK(order[1].var == 2);
  CHECK(order[1].first_value == false);

  // Negating x flips its first value and leaves the order alone.
  const auto g = forall_x_exists_y({cl({-1, 2}), cl({-1, -2})});
  const auto flipped = bph_order(g, BpParams{});
  CHECK(flipped[0].var == 1);
  CHECK(flipped[0].first_value == true);
  CHECK(flipped[1].var == 2);
}

TEST_CASE("BPH with no bias anywhere falls back to index order") {
  const QbfFormula f(3, {{Quantifier::Existential, {3, 1, 2}}}, {});
  const auto order = bph_order(f, BpParams{});
  REQUIRE(order.size() == 3);
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(order[r].var == r + 1);
    CHECK_FALSE(order[r].first_value);
  }
}

TEST_CASE("BPDH examples") {
  const auto f = forall_x_exists_y({cl({1, 2}), cl({1, -2})});
  const auto order = bpdh_order(f, BpParams{});
  REQUIRE(order.size() == 2);
  CHECK(order[0].var == 1);
  CHECK(order[0].first_value == false);
  CHECK(order[1].var == 2);

  const QbfFormula empty(4, {{Quantifier::Universal, {3, 4}}, {Quantifier::Existential, {1, 2}}}, {});
  const auto e = bpdh_order(empty, BpParams{});
  REQUIRE(e.size() == 4);
  CHECK(e[0].var == 3);
  CHECK(e[1].var == 4);
  CHECK(e[2].var == 1);
  CHECK(e[3].var == 2);
  for (const auto& d : e) CHECK_FALSE(d.first_value);
}

TEST_CASE("order invariants on random formulas") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const QbfFormula f = seed % 2 ? gen_lk(LkSpec{1, 3, 8, 8, 30}, seed) : gen_model_b(ModelBSpec{4, 4, 1, 3, 25}, seed);
    BpParams p;
    p.seed = seed;
    const auto bph = bph_order(f, p);
    const auto bpdh = bpdh_order(f, p);
    CHECK(covers_all_variables(bph, f.num_vars()));
    CHECK(covers_all_variables(bpdh, f.num_vars()));
    CHECK(covers_all_variables(index_order(f), f.num_vars()));
    CHECK(bph == bph_order(f, p));
    CHECK(bpdh == bpdh_order(f, p));

    // BPH sign rule, straight from the marginals.
    const FactorGraph g(f);
    const auto biases = compute_bias(bp_marginals(g, bp_run(g, p)));
    for (const Decision& d : bph) {
      const Bias& b = biases[d.var - 1];
      if (b.favored == Sign::None) CHECK_FALSE(d.first_value);
      else if (f.is_universal(d.var)) CHECK(d.first_value == (b.favored == Sign::Negative));
      else CHECK(d.first_value == (b.favored == Sign::Positive));
    }
    for (std::size_t r = 1; r < bph.size(); ++r) CHECK_FALSE(more_biased(biases[bph[r].var - 1], biases[bph[r - 1].var - 1]));

    // BPDH block monotonicity.
    for (std::size_t r = 1; r < bpdh.size(); ++r) CHECK(f.block_of(bpdh[r - 1].var) <= f.block_of(bpdh[r].var));
  }
}

TEST_CASE("covers_all_variables rejects bad orders") {
  CHECK_FALSE(covers_all_variables({{1, false, 0.5}, {1, true, 0.5}}, 2));
  CHECK_FALSE(covers_all_variables({{1, false, 0.5}}, 2));
  CHECK_FALSE(covers_all_variables({{1, false, 0.5}, {3, false, 0.5}}, 2));
}

TEST_CASE("order CSV") {
  std::ostringstream out;
  write_order_csv(out, {{2, true, 0.75}, {1, false, 0.5}});
  CHECK(out.str() == "rank,variable,first_sign,bias\n1,2,true,0.75\n2,1,false,0.5\n");
}

TEST_CASE("VSIDS literal counts") {
  const auto f = forall_x_exists_y({cl({1, 2}), cl({1, -2})});
  VsidsScores s(f);
  CHECK(s.score(Literal::from_dimacs(1)) == 2);
  CHECK(s.score(Literal::from_dimacs(-1)) == 0);
  CHECK(s.score(Literal::from_dimacs(2)) == 1);
  CHECK(s.score(Literal::from_dimacs(-2)) == 1);
  const std::vector<LBool> values(3, LBool::Undef);
  const std::vector<Var> all{1, 2};
  CHECK(s.pick(all, values) == Literal::from_dimacs(1));
  const std::vector<Var> only_y{2};
  CHECK(s.pick(only_y, values) == Literal::from_dimacs(-2));
}

TEST_CASE("VSIDS ties and decay") {
  const QbfFormula f(3, {{Quantifier::Existential, {1, 2, 3}}}, {cl({1, 2, 3}), cl({-1, -2, -3})});
  VsidsScores s(f);
  std::vector<LBool> values(4, LBool::Undef);
  const std::vector<Var> all{3, 2, 1};
  CHECK(s.pick(all, values) == Literal::from_dimacs(-1));
  values[1] = LBool::True;
  CHECK(s.pick(all, values) == Literal::from_dimacs(-2));

  for (std::uint64_t i = 0; i < VsidsScores::kDecayInterval - 1; ++i) s.on_conflict();
  CHECK(s.score(Literal::from_dimacs(1)) == 1.0);
  s.on_conflict();
  CHECK(s.score(Literal::from_dimacs(1)) == 0.5);
  CHECK(s.pick(all, values) == Literal::from_dimacs(-2));
}

TEST_CASE("heuristic names") {
  for (auto k : {HeuristicKind::Vsids, HeuristicKind::Bph, HeuristicKind::Bpdh, HeuristicKind::Index})
    CHECK(parse_heuristic(heuristic_name(k)) == k);
  CHECK_THROWS_AS(parse_heuristic("moms"), std::invalid_argument);
}
