#pragma once

#include <cstdint>
#include <variant>

#include "qbfmp/formula.hpp"

namespace qbfmp {

/// forall X exists Y with |X| = num_universal, |Y| = num_existential;
/// every clause has L universal and K existential literals.
struct LkSpec {
  std::size_t L = 1;
  std::size_t K = 3;
  std::size_t num_universal = 0;
  std::size_t num_existential = 0;
  std::size_t num_clauses = 0;
};

/// t alternating blocks of n variables, outermost universal; every clause has
/// U literals over the union of universal blocks and V over the existential ones.
struct ModelBSpec {
  std::size_t alternations = 2;
  std::size_t block_size = 0;
  std::size_t U = 1;
  std::size_t V = 1;
  std::size_t num_clauses = 0;
};

using GeneratorSpec = std::variant<LkSpec, ModelBSpec>;

/// M = round(alpha * num_existential).
std::size_t clauses_for_ratio(double alpha, std::size_t num_existential);

/// Variables: X = 1..N_u, Y = N_u+1..N_u+N_e.
/// Clause c is drawn from its own stream Rng(derive_seed(seed, c)): universal
/// literals first, then existential; each variable is drawn uniformly from its
/// pool with rejection of repeats and is followed by its fair sign coin.
/// Throws std::invalid_argument on an invalid spec.
QbfFormula gen_lk(const LkSpec& spec, std::uint64_t seed);

/// Block b holds variables b*n+1 .. (b+1)*n. Same clause streams as gen_lk,
/// so t = 2 with n = N_u = N_e produces exactly the gen_lk instance.
QbfFormula gen_model_b(const ModelBSpec& spec, std::uint64_t seed);

QbfFormula generate(const GeneratorSpec& spec, std::uint64_t seed);

/// Plain random k-CNF over n variables, same per-clause stream scheme.
Cnf random_kcnf(std::size_t num_vars, std::size_t k, std::size_t num_clauses, std::uint64_t seed);

}  // namespace qbfmp
