#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbfmp/types.hpp"

namespace qbfmp {

class FormulaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Quantifier : std::uint8_t { Universal, Existential };

constexpr char quantifier_letter(Quantifier q) { return q == Quantifier::Universal ? 'a' : 'e'; }

struct QuantBlock {
  Quantifier quantifier = Quantifier::Existential;
  std::vector<Var> variables;

  friend bool operator==(const QuantBlock&, const QuantBlock&) = default;
};

/// Partial map from variables to truth values. Each variable is bound at most once.
class Assignment {
 public:
  Assignment() = default;

  /// Binds v. Throws std::invalid_argument if v is 0 or already bound.
  void set(Var v, bool value);
  void set(Literal lit) { set(lit.var(), lit.satisfying_value()); }

  std::optional<bool> get(Var v) const {
    if (v >= values_.size() || values_[v] == LBool::Undef) return std::nullopt;
    return values_[v] == LBool::True;
  }
  bool contains(Var v) const { return get(v).has_value(); }

  /// Truth value of a literal under this assignment, if its variable is bound.
  std::optional<bool> value(Literal lit) const {
    auto b = get(lit.var());
    if (!b) return std::nullopt;
    return *b == lit.satisfying_value();
  }

  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  /// Bound variables in ascending order.
  std::vector<Var> variables() const;

  /// Signed literal list of the bound variables, ascending by variable.
  std::vector<Literal> literals() const;

  friend bool operator==(const Assignment& a, const Assignment& b) { return a.literals() == b.literals(); }

 private:
  std::vector<LBool> values_;
  std::size_t count_ = 0;
};

/// A prenex-CNF quantified Boolean formula.
///
/// Construction normalizes the prefix: empty blocks are dropped, adjacent
/// blocks with the same quantifier are merged, and every variable in
/// 1..num_vars that is not quantified is appended to a trailing existential
/// block. Clauses must be non-empty and mention each variable at most once
/// (see normalize_clause).
class QbfFormula {
 public:
  QbfFormula() = default;
  QbfFormula(std::size_t num_vars, std::vector<QuantBlock> prefix, Cnf matrix);

  std::size_t num_vars() const { return num_vars_; }
  const std::vector<QuantBlock>& prefix() const { return prefix_; }
  const Cnf& matrix() const { return matrix_; }

  std::size_t num_clauses() const { return matrix_.size(); }
  std::size_t num_universal() const { return num_universal_; }
  std::size_t num_existential() const { return num_existential_; }
  double alpha_e() const { return static_cast<double>(num_clauses()) / static_cast<double>(num_existential_); }
  double alpha_u() const { return static_cast<double>(num_clauses()) / static_cast<double>(num_universal_); }

  /// Number of quantifier blocks after normalization.
  std::size_t alternations() const { return prefix_.size(); }

  std::size_t block_of(Var v) const { return block_of_.at(v); }
  Quantifier quantifier(Var v) const { return prefix_[block_of(v)].quantifier; }
  bool is_universal(Var v) const { return quantifier(v) == Quantifier::Universal; }

  /// All universal variables, in prefix order.
  std::vector<Var> universal_variables() const;
  std::vector<Var> existential_variables() const;

  /// True when the prefix has the shape forall X exists Y (either block may be absent).
  bool is_two_level() const;

  friend bool operator==(const QbfFormula& a, const QbfFormula& b) {
    return a.num_vars_ == b.num_vars_ && a.prefix_ == b.prefix_ && a.matrix_ == b.matrix_;
  }

 private:
  std::size_t num_vars_ = 0;
  std::vector<QuantBlock> prefix_;
  Cnf matrix_;
  std::vector<std::size_t> block_of_;  // index 0 unused
  std::size_t num_universal_ = 0;
  std::size_t num_existential_ = 0;
};

/// Removes duplicate literals (keeping the first occurrence). Returns nullopt
/// for a tautological clause.
std::optional<Clause> normalize_clause(const Clause& clause);

struct Conditioned {
  Cnf matrix;
  bool empty_clause = false;
};

/// Simplifies a clause set under a partial assignment: satisfied clauses are
/// dropped and false literals removed. Clauses that lose every literal are
/// dropped from the result and reported through empty_clause.
Conditioned condition(std::span<const Clause> matrix, const Assignment& assignment);

/// Clauses of a forall-X exists-Y formula that no universal literal satisfies
/// under sigma_x, with universal literals removed. May contain empty clauses.
/// Throws std::invalid_argument if the prefix is not two-level, if sigma_x is
/// not total over X, or if it binds an existential variable.
Cnf residual_existential(const QbfFormula& f, const Assignment& sigma_x);

struct TwoAlternation {
  QbfFormula formula;
  bool purely_existential = false;
};

/// Moves every universal block in front of every existential block, keeping
/// relative order inside each group. Unsatisfiability of the result implies
/// unsatisfiability of the input; the converse does not hold.
TwoAlternation to_two_alternation(const QbfFormula& f);

}  // namespace qbfmp
