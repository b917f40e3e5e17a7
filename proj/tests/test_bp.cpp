#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qbfmp/bp.hpp"

using namespace qbfmp;

namespace {

Clause cl(std::initializer_list<int> lits) {
  Clause c;
  for (int l : lits) c.push_back(Literal::from_dimacs(l));
  return c;
}

BpParams tight(std::uint64_t seed = 0) {
  BpParams p;
  p.t_max = 10000;
  p.epsilon = 1e-13;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("params validation") {
  BpParams p;
  CHECK_NOTHROW(p.validate());
  p.t_max = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = BpParams{};
  p.epsilon = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = BpParams{};
  p.damping = 1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("unit clause") {
  const Cnf m{cl({1})};
  const FactorGraph g(1, m);
  BpParams one;
  one.t_max = 1;
  const auto s1 = bp_run(g, one);
  CHECK(s1.u[0] == 0.0);
  const auto s = bp_run(g, BpParams{});
  CHECK(s.converged);
  CHECK(bp_marginals(g, s)[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single clause fixed point") {
  const Cnf m{cl({1, 2})};
  const FactorGraph g(2, m);
  const auto s = bp_run(g, tight());
  REQUIRE(s.converged);
  for (double u : s.u) CHECK(u == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  for (double psi : s.psi) CHECK(psi == doctest::Approx(0.5).epsilon(1e-10));
  const auto marg = bp_marginals(g, s);
  const auto exact = oracle::solution_marginals(2, m).value();
  CHECK(marg[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(marg[1] == doctest::Approx(exact[1]).epsilon(1e-10));
  CHECK(marg[2] == doctest::Approx(exact[2]).epsilon(1e-10));
}

TEST_CASE("loopy closed-form fixed point") {
  const Cnf m{cl({1, 2}), cl({-1, 2})};
  const FactorGraph g(2, m);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = bp_run(g, tight(seed));
    REQUIRE(s.converged);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const double expected = g.edge_var(e) == 1 ? std::sqrt(2.0) - 1.0 : 1.0 - 1.0 / std::sqrt(2.0);
      CHECK(std::abs(s.u[e] - expected) < 1e-10);
    }
    const auto marg = bp_marginals(g, s);
    CHECK(std::abs(marg[1] - 0.5) < 1e-10);
    CHECK(std::abs(marg[2] - (2.0 + std::sqrt(2.0)) / 4.0) < 1e-10);
    // The exact marginal of x2 is 1: loopy BP is only an approximation here.
    CHECK(oracle::solution_marginals(2, m).value()[2] == 1.0);
  }
}

TEST_CASE("isolated variables have marginal one half") {
  const Cnf m{cl({1})};
  const FactorGraph g(3, m);
  const auto marg = bp_marginals(g, bp_run(g, BpParams{}));
  CHECK(marg[2] == 0.5);
  CHECK(marg[3] == 0.5);
}

TEST_CASE("messages stay in the unit interval and runs are deterministic") {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const Cnf m = oracle::random_mixed_cnf(rng, 20, 60, 4);
    const FactorGraph g(20, m);
    BpParams p;
    p.seed = static_cast<std::uint64_t>(trial);
    p.damping = trial % 2 ? 0.3 : 0.0;
    const auto a = bp_run(g, p);
    const auto b = bp_run(g, p);
    CHECK(a.u == b.u);
    CHECK(a.psi == b.psi);
    CHECK(a.sweeps == b.sweeps);
    CHECK(a.residual >= 0.0);
    for (double u : a.u) CHECK((u >= 0.0 && u <= 1.0));
    for (double psi : a.psi) CHECK((psi >= 0.0 && psi <= 1.0));
  }
}

TEST_CASE("tree exactness") {
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng.below(14);
    const Cnf m = oracle::random_tree_cnf(rng, n);
    const FactorGraph g(n, m);
    const auto s = bp_run(g, tight(static_cast<std::uint64_t>(trial)));
    REQUIRE(s.converged);
    const auto marg = bp_marginals(g, s);
    const auto exact = oracle::solution_marginals(n, m).value();
    for (Var v = 1; v <= n; ++v) CHECK(std::abs(marg[v] - exact[v]) < 1e-6);
  }
}

TEST_CASE("flip covariance") {
  Rng rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 12;
    Cnf m = oracle::random_mixed_cnf(rng, n, 20, 3);
    const Var flip = static_cast<Var>(1 + rng.below(n));
    Cnf flipped = m;
    for (Clause& c : flipped)
      for (Literal& l : c)
        if (l.var() == flip) l = ~l;
    BpParams p;
    p.epsilon = 1e-11;
    p.t_max = 3000;
    p.seed = static_cast<std::uint64_t>(trial);
    const FactorGraph g(n, m), h(n, flipped);
    const auto sa = bp_run(g, p), sb = bp_run(h, p);
    if (!sa.converged || !sb.converged) continue;
    const auto a = bp_marginals(g, sa), b = bp_marginals(h, sb);
    for (Var v = 1; v <= n; ++v) {
      const double expected = v == flip ? 1.0 - a[v] : a[v];
      CHECK(std::abs(b[v] - expected) < 1e-8);
    }
  }
}

TEST_CASE("variable occurring only non-negated leans positive") {
  Rng rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 10;
    Cnf m = oracle::random_mixed_cnf(rng, n, 18, 3);
    for (Clause& c : m)
      for (Literal& l : c)
        if (l.var() == 1 && l.negative()) l = ~l;
    const FactorGraph g(n, m);
    BpParams p;
    p.seed = static_cast<std::uint64_t>(trial);
    const auto s = bp_run(g, p);
    if (!s.converged) continue;
    CHECK(bp_marginals(g, s)[1] >= 0.5 - 1e-9);
  }
}

TEST_CASE("initial messages of the wrong size are rejected") {
  const Cnf m{cl({1, 2})};
  const FactorGraph g(2, m);
  CHECK_THROWS_AS(bp_run(g, BpParams{}, std::vector<double>{0.5}), std::invalid_argument);
}
