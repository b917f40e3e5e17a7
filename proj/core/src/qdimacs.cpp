#include "qbfmp/qdimacs.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace qbfmp {
namespace {

std::string_view trim_left(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  return s;
}

std::string_view next_token(std::string_view& s) {
  s = trim_left(s);
  std::size_t n = 0;
  while (n < s.size() && s[n] != ' ' && s[n] != '\t' && s[n] != '\r') ++n;
  std::string_view tok = s.substr(0, n);
  s.remove_prefix(n);
  return tok;
}

std::int64_t to_int(std::string_view tok, std::size_t line) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  return value;
}

}  // namespace

QbfFormula parse_qdimacs(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  bool in_matrix = false;
  std::int64_t num_vars = 0;
  std::vector<QuantBlock> prefix;
  Cnf matrix;
  Clause pending;
  std::size_t pending_line = 0;

  auto check_var = [&](std::int64_t lit) {
    const std::int64_t v = lit < 0 ? -lit : lit;
    if (v > num_vars)
      throw ParseError(line_no, "literal " + std::to_string(lit) + " exceeds declared variable count " +
                                    std::to_string(num_vars));
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim_left(raw);
    if (line.empty() || line.front() == 'c') continue;
    if (line.front() == '%') break;  // SATLIB trailer

    if (line.front() == 'p') {
      if (have_header) throw ParseError(line_no, "duplicate header");
      line.remove_prefix(1);
      if (next_token(line) != "cnf") throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      auto vars_tok = next_token(line);
      auto clauses_tok = next_token(line);
      if (vars_tok.empty() || clauses_tok.empty() || !next_token(line).empty())
        throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      num_vars = to_int(vars_tok, line_no);
      if (num_vars < 0 || to_int(clauses_tok, line_no) < 0) throw ParseError(line_no, "negative count in header");
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "data before 'p cnf' header");

    if (line.front() == 'a' || line.front() == 'e') {
      if (in_matrix) throw ParseError(line_no, "quantifier line after the first clause");
      QuantBlock block{line.front() == 'a' ? Quantifier::Universal : Quantifier::Existential, {}};
      line.remove_prefix(1);
      bool terminated = false;
      for (auto tok = next_token(line); !tok.empty(); tok = next_token(line)) {
        if (terminated) throw ParseError(line_no, "tokens after terminating 0");
        const std::int64_t v = to_int(tok, line_no);
        if (v == 0) {
          terminated = true;
          continue;
        }
        if (v < 0) throw ParseError(line_no, "negative variable in quantifier line");
        check_var(v);
        block.variables.push_back(static_cast<Var>(v));
      }
      if (!terminated) throw ParseError(line_no, "quantifier line missing 0 terminator");
      prefix.push_back(std::move(block));
      continue;
    }

    in_matrix = true;
    for (auto tok = next_token(line); !tok.empty(); tok = next_token(line)) {
      const std::int64_t lit = to_int(tok, line_no);
      if (lit == 0) {
        if (pending.empty()) throw ParseError(line_no, "empty clause");
        if (auto clause = normalize_clause(pending)) matrix.push_back(std::move(*clause));
        pending.clear();
        continue;
      }
      check_var(lit);
      if (pending.empty()) pending_line = line_no;
      pending.push_back(Literal::from_dimacs(lit));
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'p cnf' header");
  if (!pending.empty()) throw ParseError(pending_line, "clause missing 0 terminator");

  try {
    return QbfFormula(static_cast<std::size_t>(num_vars), std::move(prefix), std::move(matrix));
  } catch (const ParseError&) {
    throw;
  } catch (const FormulaError& e) {
    throw ParseError(line_no, e.what());
  }
}

QbfFormula parse_qdimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_qdimacs(in);
}

QbfFormula read_qdimacs_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_qdimacs(in);
}

void write_qdimacs(std::ostream& out, const QbfFormula& f) {
  out << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
  for (const auto& block : f.prefix()) {
    out << quantifier_letter(block.quantifier);
    for (Var v : block.variables) out << ' ' << v;
    out << " 0\n";
  }
  for (const auto& clause : f.matrix()) {
    for (Literal lit : clause) out << lit.to_dimacs() << ' ';
    out << "0\n";
  }
}

std::string to_qdimacs(const QbfFormula& f) {
  std::ostringstream out;
  write_qdimacs(out, f);
  return out.str();
}

}  // namespace qbfmp
