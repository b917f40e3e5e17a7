#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "qbfmp/formula.hpp"

namespace qbfmp {

class ParseError : public FormulaError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : FormulaError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads QDIMACS. Plain DIMACS is accepted as the special case without
/// quantifier lines. Tautological clauses are dropped and repeated literals
/// merged; unquantified variables become a trailing existential block.
QbfFormula parse_qdimacs(std::istream& in);
QbfFormula parse_qdimacs(std::string_view text);
QbfFormula read_qdimacs_file(const std::filesystem::path& path);

/// Canonical QDIMACS: header, one line per quantifier block, one line per clause.
void write_qdimacs(std::ostream& out, const QbfFormula& f);
std::string to_qdimacs(const QbfFormula& f);

}  // namespace qbfmp
