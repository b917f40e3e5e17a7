#include <doctest.h>

#include "oracles.hpp"
#include "qbfmp/gen.hpp"
#include "qbfmp/sat.hpp"

using namespace qbfmp;

namespace {

Clause cl(std::initializer_list<int> lits) {
  Clause c;
  for (int l : lits) c.push_back(Literal::from_dimacs(l));
  return c;
}

bool model_satisfies(const Cnf& cnf, const Assignment& model) {
  for (const Clause& c : cnf) {
    bool sat = false;
    for (Literal l : c) sat = sat || model.value(l).value_or(false);
    if (!sat) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("small examples") {
  CHECK(sat_solve(Cnf{cl({1}), cl({-1})}).status == SatStatus::Unsat);

  const auto r = sat_solve(Cnf{cl({1, 2}), cl({-1})});
  REQUIRE(r.status == SatStatus::Sat);
  CHECK(r.model.get(1) == false);
  CHECK(r.model.get(2) == true);

  const auto e = sat_solve(Cnf{});
  CHECK(e.status == SatStatus::Sat);
  CHECK(e.model.empty());

  CHECK(sat_solve(Cnf{cl({1, 2}), Clause{}}).status == SatStatus::Unsat);
}

TEST_CASE("duplicates and repeated clauses") {
  CHECK(sat_solve(Cnf{cl({1, 2}), cl({1, 2}), cl({-1}), cl({-2})}).status == SatStatus::Unsat);
  CHECK(sat_solve(Cnf{cl({3, 3, -1})}).status == SatStatus::Sat);
}

TEST_CASE("agreement with enumeration") {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.below(20);
    const std::size_t m = rng.below(5 * n + 1);
    const Cnf cnf = oracle::random_mixed_cnf(rng, n, m, 4);
    const auto r = sat_solve(cnf, SatOptions{static_cast<std::uint64_t>(trial)});
    const bool expected = oracle::brute_sat(n, cnf);
    CHECK((r.status == SatStatus::Sat) == expected);
    if (r.status == SatStatus::Sat) CHECK(model_satisfies(cnf, r.model));
  }
}

TEST_CASE("harder random 3-SAT near threshold stays complete and sound") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Cnf cnf = random_kcnf(150, 3, 640, seed);
    const auto r = sat_solve(cnf, SatOptions{seed});
    REQUIRE(r.status != SatStatus::Unknown);
    if (r.status == SatStatus::Sat) CHECK(model_satisfies(cnf, r.model));
  }
}

TEST_CASE("determinism for a fixed seed") {
  const Cnf cnf = random_kcnf(120, 3, 500, 4);
  const auto a = sat_solve(cnf, SatOptions{9});
  const auto b = sat_solve(cnf, SatOptions{9});
  CHECK(a.status == b.status);
  CHECK(a.model == b.model);
}

TEST_CASE("deadline yields unknown") {
  const Cnf cnf = random_kcnf(400, 3, 1700, 1);
  SatOptions o;
  o.deadline = std::chrono::steady_clock::now();
  CHECK(sat_solve(cnf, o).status == SatStatus::Unknown);
}
