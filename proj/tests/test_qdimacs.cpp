#include <doctest.h>

#include "qbfmp/gen.hpp"
#include "qbfmp/qdimacs.hpp"

using namespace qbfmp;

TEST_CASE("parse quantified example") {
  const auto f = parse_qdimacs("p cnf 3 2\na 1 0\ne 2 3 0\n1 2 0\n-1 3 0\n");
  REQUIRE(f.prefix().size() == 2);
  CHECK(f.prefix()[0].quantifier == Quantifier::Universal);
  CHECK(f.prefix()[0].variables == std::vector<Var>{1});
  CHECK(f.prefix()[1].variables == std::vector<Var>{2, 3});
  REQUIRE(f.num_clauses() == 2);
  CHECK(f.matrix()[1][0] == Literal::from_dimacs(-1));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_qdimacs("p cnf 2 1\na 1 0\ne 1 0\n1 2 0"), ParseError);
  CHECK_THROWS_AS(parse_qdimacs("p cnf x 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_qdimacs("1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_qdimacs("p cnf 2 1\n3 0\n"), ParseError);
  CHECK_THROWS_AS(parse_qdimacs("p cnf 2 1\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_qdimacs("p cnf 2 1\na 1\n1 2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_qdimacs("p cnf 2 1\n0\n"), ParseError);
  CHECK_THROWS_AS(parse_qdimacs("p cnf 2 1\np cnf 2 1\n1 0\n"), ParseError);
}

TEST_CASE("free variables form a trailing existential block") {
  const auto f = parse_qdimacs("p cnf 2 1\n1 -2 0");
  REQUIRE(f.prefix().size() == 1);
  CHECK(f.prefix()[0].quantifier == Quantifier::Existential);
  CHECK(f.prefix()[0].variables == std::vector<Var>{1, 2});
}

TEST_CASE("tautologies dropped and duplicate literals merged") {
  const auto f = parse_qdimacs("c comment\np cnf 3 3\n1 -1 2 0\n2 2 3 0\n-3 0\n");
  REQUIRE(f.num_clauses() == 2);
  CHECK(f.matrix()[0].size() == 2);
}

TEST_CASE("canonical output") {
  const std::string text = "p cnf 3 2\na 1 0\ne 2 3 0\n1 2 0\n-1 3 0\n";
  CHECK(to_qdimacs(parse_qdimacs(text)) == text);
  CHECK(to_qdimacs(QbfFormula(0, {}, {})) == "p cnf 0 0\n");
  CHECK(to_qdimacs(QbfFormula(2, {{Quantifier::Universal, {1}}, {Quantifier::Existential, {2}}}, {})) ==
        "p cnf 2 0\na 1 0\ne 2 0\n");
  // Adjacent blocks with one quantifier are merged on output.
  CHECK(to_qdimacs(parse_qdimacs("p cnf 2 1\ne 1 0\ne 2 0\n1 2 0\n")) == "p cnf 2 1\ne 1 2 0\n1 2 0\n");
}

TEST_CASE("round trip on generated formulas") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto f = seed % 2 ? gen_lk(LkSpec{1, 3, 10, 12, 30}, seed) : gen_model_b(ModelBSpec{4, 5, 1, 3, 25}, seed);
    const std::string once = to_qdimacs(f);
    const auto g = parse_qdimacs(once);
    CHECK(g == f);
    CHECK(to_qdimacs(g) == once);
  }
}
