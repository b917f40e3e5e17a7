#include "qbfmp/gen.hpp"

#include <cmath>
#include <stdexcept>

#include "qbfmp/rng.hpp"

namespace qbfmp {

namespace {

void draw(Rng& rng, const std::vector<Var>& pool, std::size_t count, Clause& out) {
  const std::size_t start = out.size();
  while (out.size() - start < count) {
    const Var v = pool[rng.below(pool.size())];
    bool repeat = false;
    for (std::size_t i = start; i < out.size(); ++i) repeat = repeat || out[i].var() == v;
    if (repeat) continue;
    out.emplace_back(v, rng.coin());
  }
}

Cnf sample(const std::vector<Var>& universal, std::size_t nu, const std::vector<Var>& existential, std::size_t ne,
           std::size_t num_clauses, std::uint64_t seed) {
  Cnf matrix;
  matrix.reserve(num_clauses);
  for (std::size_t c = 0; c < num_clauses; ++c) {
    Rng rng(derive_seed(seed, c));
    Clause clause;
    clause.reserve(nu + ne);
    draw(rng, universal, nu, clause);
    draw(rng, existential, ne, clause);
    matrix.push_back(std::move(clause));
  }
  return matrix;
}

std::vector<Var> range(Var first, std::size_t count) {
  std::vector<Var> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = first + static_cast<Var>(i);
  return out;
}

}  // namespace

std::size_t clauses_for_ratio(double alpha, std::size_t num_existential) {
  if (!(alpha >= 0)) throw std::invalid_argument("clause ratio must be non-negative");
  return static_cast<std::size_t>(std::llround(alpha * static_cast<double>(num_existential)));
}

QbfFormula gen_lk(const LkSpec& s, std::uint64_t seed) {
  if (s.L < 1 || s.L > s.num_universal) throw std::invalid_argument("gen_lk: need 1 <= L <= N_u");
  if (s.K < 1 || s.K > s.num_existential) throw std::invalid_argument("gen_lk: need 1 <= K <= N_e");
  const auto x = range(1, s.num_universal);
  const auto y = range(static_cast<Var>(s.num_universal + 1), s.num_existential);
  Cnf matrix = sample(x, s.L, y, s.K, s.num_clauses, seed);
  return QbfFormula(s.num_universal + s.num_existential,
                    {{Quantifier::Universal, x}, {Quantifier::Existential, y}}, std::move(matrix));
}

QbfFormula gen_model_b(const ModelBSpec& s, std::uint64_t seed) {
  if (s.alternations < 2) throw std::invalid_argument("gen_model_b: need t >= 2");
  if (s.V == 0) throw std::invalid_argument("gen_model_b: need V > 0");
  std::vector<QuantBlock> prefix;
  std::vector<Var> universal, existential;
  for (std::size_t b = 0; b < s.alternations; ++b) {
    const bool is_universal = b % 2 == 0;
    auto vars = range(static_cast<Var>(b * s.block_size + 1), s.block_size);
    auto& pool = is_universal ? universal : existential;
    pool.insert(pool.end(), vars.begin(), vars.end());
    prefix.push_back({is_universal ? Quantifier::Universal : Quantifier::Existential, std::move(vars)});
  }
  if (s.U > universal.size()) throw std::invalid_argument("gen_model_b: U exceeds the universal variables");
  if (s.V > existential.size()) throw std::invalid_argument("gen_model_b: V exceeds the existential variables");
  Cnf matrix = sample(universal, s.U, existential, s.V, s.num_clauses, seed);
  return QbfFormula(s.alternations * s.block_size, std::move(prefix), std::move(matrix));
}

QbfFormula generate(const GeneratorSpec& spec, std::uint64_t seed) {
  if (const auto* lk = std::get_if<LkSpec>(&spec)) return gen_lk(*lk, seed);
  return gen_model_b(std::get<ModelBSpec>(spec), seed);
}

Cnf random_kcnf(std::size_t num_vars, std::size_t k, std::size_t num_clauses, std::uint64_t seed) {
  if (k < 1 || k > num_vars) throw std::invalid_argument("random_kcnf: need 1 <= k <= n");
  return sample({}, 0, range(1, num_vars), k, num_clauses, seed);
}

}  // namespace qbfmp
