#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <vector>

namespace qbfmp {

/// Variable identifier. Variables are numbered from 1 as in DIMACS.
using Var = std::uint32_t;

/// Three-valued truth value used by the search engines.
enum class LBool : std::int8_t { False = -1, Undef = 0, True = 1 };

constexpr LBool to_lbool(bool b) { return b ? LBool::True : LBool::False; }

class Literal {
 public:
  constexpr Literal() = default;
  constexpr Literal(Var var, bool negative) : var_(var), negative_(negative) {}

  /// Builds a literal from its signed DIMACS encoding (non-zero).
  static constexpr Literal from_dimacs(std::int64_t lit) {
    return lit < 0 ? Literal(static_cast<Var>(-lit), true) : Literal(static_cast<Var>(lit), false);
  }

  constexpr Var var() const { return var_; }
  constexpr bool negative() const { return negative_; }
  constexpr bool positive() const { return !negative_; }

  /// Value of var() that makes this literal true.
  constexpr bool satisfying_value() const { return !negative_; }

  constexpr Literal operator~() const { return Literal(var_, !negative_); }

  constexpr std::int64_t to_dimacs() const {
    return negative_ ? -static_cast<std::int64_t>(var_) : static_cast<std::int64_t>(var_);
  }

  /// Dense index 2*var + sign, handy for per-literal tables.
  constexpr std::size_t index() const { return 2 * static_cast<std::size_t>(var_) + (negative_ ? 1 : 0); }

  friend constexpr bool operator==(Literal, Literal) = default;
  friend constexpr auto operator<=>(Literal a, Literal b) {
    if (auto c = a.var_ <=> b.var_; c != 0) return c;
    return a.negative_ <=> b.negative_;
  }

 private:
  Var var_ = 0;
  bool negative_ = false;
};

using Clause = std::vector<Literal>;
using Cnf = std::vector<Clause>;

}  // namespace qbfmp
