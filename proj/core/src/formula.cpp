#include "qbfmp/formula.hpp"

#include <algorithm>
#include <string>

namespace qbfmp {

void Assignment::set(Var v, bool value) {
  if (v == 0) throw std::invalid_argument("assignment: variable 0 is not valid");
  if (v >= values_.size()) values_.resize(static_cast<std::size_t>(v) + 1, LBool::Undef);
  if (values_[v] != LBool::Undef)
    throw std::invalid_argument("assignment: variable " + std::to_string(v) + " bound twice");
  values_[v] = to_lbool(value);
  ++count_;
}

std::vector<Var> Assignment::variables() const {
  std::vector<Var> out;
  out.reserve(count_);
  for (Var v = 1; v < values_.size(); ++v)
    if (values_[v] != LBool::Undef) out.push_back(v);
  return out;
}

std::vector<Literal> Assignment::literals() const {
  std::vector<Literal> out;
  out.reserve(count_);
  for (Var v = 1; v < values_.size(); ++v)
    if (values_[v] != LBool::Undef) out.emplace_back(v, values_[v] == LBool::False);
  return out;
}

QbfFormula::QbfFormula(std::size_t num_vars, std::vector<QuantBlock> prefix, Cnf matrix)
    : num_vars_(num_vars), matrix_(std::move(matrix)) {
  constexpr std::size_t kUnbound = static_cast<std::size_t>(-1);
  block_of_.assign(num_vars_ + 1, kUnbound);

  for (auto& block : prefix) {
    if (block.variables.empty()) continue;
    if (prefix_.empty() || prefix_.back().quantifier != block.quantifier)
      prefix_.push_back(QuantBlock{block.quantifier, {}});
    for (Var v : block.variables) {
      if (v == 0 || v > num_vars_)
        throw FormulaError("quantified variable " + std::to_string(v) + " out of range");
      if (block_of_[v] != kUnbound) throw FormulaError("variable " + std::to_string(v) + " quantified twice");
      block_of_[v] = prefix_.size() - 1;
      prefix_.back().variables.push_back(v);
    }
  }

  // Free variables are existential and innermost.
  for (Var v = 1; v <= num_vars_; ++v) {
    if (block_of_[v] != kUnbound) continue;
    if (prefix_.empty() || prefix_.back().quantifier != Quantifier::Existential)
      prefix_.push_back(QuantBlock{Quantifier::Existential, {}});
    block_of_[v] = prefix_.size() - 1;
    prefix_.back().variables.push_back(v);
  }

  for (const auto& block : prefix_) {
    (block.quantifier == Quantifier::Universal ? num_universal_ : num_existential_) += block.variables.size();
  }

  std::vector<std::size_t> seen(num_vars_ + 1, static_cast<std::size_t>(-1));
  for (std::size_t c = 0; c < matrix_.size(); ++c) {
    const Clause& clause = matrix_[c];
    if (clause.empty()) throw FormulaError("clause " + std::to_string(c + 1) + " is empty");
    for (Literal lit : clause) {
      if (lit.var() == 0 || lit.var() > num_vars_)
        throw FormulaError("literal " + std::to_string(lit.to_dimacs()) + " exceeds variable count");
      if (seen[lit.var()] == c)
        throw FormulaError("variable " + std::to_string(lit.var()) + " occurs twice in clause " +
                           std::to_string(c + 1));
      seen[lit.var()] = c;
    }
  }
}

std::vector<Var> QbfFormula::universal_variables() const {
  std::vector<Var> out;
  for (const auto& b : prefix_)
    if (b.quantifier == Quantifier::Universal) out.insert(out.end(), b.variables.begin(), b.variables.end());
  return out;
}

std::vector<Var> QbfFormula::existential_variables() const {
  std::vector<Var> out;
  for (const auto& b : prefix_)
    if (b.quantifier == Quantifier::Existential) out.insert(out.end(), b.variables.begin(), b.variables.end());
  return out;
}

bool QbfFormula::is_two_level() const {
  if (prefix_.size() <= 1) return true;
  return prefix_.size() == 2 && prefix_[0].quantifier == Quantifier::Universal;
}

std::optional<Clause> normalize_clause(const Clause& clause) {
  Clause out;
  out.reserve(clause.size());
  for (Literal lit : clause) {
    bool duplicate = false;
    for (Literal kept : out) {
      if (kept.var() != lit.var()) continue;
      if (kept != lit) return std::nullopt;
      duplicate = true;
      break;
    }
    if (!duplicate) out.push_back(lit);
  }
  return out;
}

Conditioned condition(std::span<const Clause> matrix, const Assignment& assignment) {
  Conditioned out;
  for (const Clause& clause : matrix) {
    Clause reduced;
    bool satisfied = false;
    for (Literal lit : clause) {
      auto v = assignment.value(lit);
      if (!v) {
        reduced.push_back(lit);
      } else if (*v) {
        satisfied = true;
        break;
      }
    }
    if (satisfied) continue;
    if (reduced.empty()) {
      out.empty_clause = true;
      continue;
    }
    out.matrix.push_back(std::move(reduced));
  }
  return out;
}

Cnf residual_existential(const QbfFormula& f, const Assignment& sigma_x) {
  if (!f.is_two_level()) throw std::invalid_argument("residual_existential: prefix is not forall-exists");
  for (Var x : f.universal_variables())
    if (!sigma_x.contains(x))
      throw std::invalid_argument("residual_existential: universal variable " + std::to_string(x) + " unassigned");
  for (Var v : sigma_x.variables())
    if (v > f.num_vars() || !f.is_universal(v))
      throw std::invalid_argument("residual_existential: variable " + std::to_string(v) + " is not universal");

  Cnf out;
  for (const Clause& clause : f.matrix()) {
    Clause rest;
    bool satisfied = false;
    for (Literal lit : clause) {
      if (f.is_universal(lit.var())) {
        if (*sigma_x.value(lit)) {
          satisfied = true;
          break;
        }
      } else {
        rest.push_back(lit);
      }
    }
    if (!satisfied) out.push_back(std::move(rest));
  }
  return out;
}

TwoAlternation to_two_alternation(const QbfFormula& f) {
  if (f.num_universal() == 0) return {f, true};
  std::vector<QuantBlock> prefix{{Quantifier::Universal, f.universal_variables()},
                                 {Quantifier::Existential, f.existential_variables()}};
  return {QbfFormula(f.num_vars(), std::move(prefix), f.matrix()), false};
}

}  // namespace qbfmp
