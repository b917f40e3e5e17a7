#include "qbfmp/qdpll.hpp"

#include <cassert>
#include <chrono>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace qbfmp {

std::string_view status_name(QbfStatus s) {
  switch (s) {
    case QbfStatus::Sat: return "sat";
    case QbfStatus::Unsat: return "unsat";
    case QbfStatus::Unknown: return "unknown";
  }
  return "?";
}

StaticOrderHeuristic::StaticOrderHeuristic(const DecisionOrder& order, std::size_t num_vars)
    : rank_(num_vars + 1, std::numeric_limits<std::size_t>::max()), first_value_(num_vars + 1, false) {
  if (!covers_all_variables(order, num_vars)) throw std::invalid_argument("decision order must cover every variable once");
  for (std::size_t r = 0; r < order.size(); ++r) {
    rank_[order[r].var] = r;
    first_value_[order[r].var] = order[r].first_value;
  }
}

Literal StaticOrderHeuristic::choose(std::span<const Var> block, std::span<const LBool> values) {
  Var best = 0;
  for (Var v : block)
    if (values[v] == LBool::Undef && (best == 0 || rank_[v] < rank_[best])) best = v;
  if (best == 0) throw std::logic_error("StaticOrderHeuristic::choose: no unassigned candidate");
  return Literal(best, !first_value_[best]);
}

std::unique_ptr<BranchingHeuristic> make_heuristic(HeuristicKind kind, const QbfFormula& f, const BpParams& p) {
  switch (kind) {
    case HeuristicKind::Vsids: return std::make_unique<VsidsHeuristic>(f);
    case HeuristicKind::Bph: return std::make_unique<StaticOrderHeuristic>(bph_order(f, p), f.num_vars());
    case HeuristicKind::Bpdh: return std::make_unique<StaticOrderHeuristic>(bpdh_order(f, p), f.num_vars());
    case HeuristicKind::Index: return std::make_unique<StaticOrderHeuristic>(index_order(f), f.num_vars());
  }
  throw std::invalid_argument("unknown heuristic kind");
}

QdpllSolver::QdpllSolver(const QbfFormula& f)
    : f_(f),
      values_(f.num_vars() + 1, LBool::Undef),
      occurs_(2 * (f.num_vars() + 1)),
      true_count_(f.num_clauses(), 0),
      false_count_(f.num_clauses(), 0) {
  for (std::size_t c = 0; c < f.num_clauses(); ++c) {
    for (Literal lit : f.matrix()[c]) occurs_[lit.index()].push_back(c);
    if (f.matrix()[c].size() <= 1) queue_.push_back(c);
  }
  for (const QuantBlock& b : f.prefix()) block_unassigned_.push_back(b.variables.size());
  open_universals_ = f.num_universal();
}

void QdpllSolver::assign(Literal lit, bool decision, bool flipped) {
  const Var v = lit.var();
  assert(values_[v] == LBool::Undef);
  values_[v] = to_lbool(lit.satisfying_value());
  --block_unassigned_[f_.block_of(v)];
  open_universals_ -= f_.is_universal(v);
  trail_.push_back({v, decision, flipped});
  for (std::size_t c : occurs_[lit.index()])
    if (++true_count_[c] == 1) ++satisfied_;
  for (std::size_t c : occurs_[(~lit).index()]) {
    ++false_count_[c];
    if (true_count_[c] == 0 && f_.matrix()[c].size() - false_count_[c] <= 1) queue_.push_back(c);
  }
}

void QdpllSolver::unassign(Var v) {
  const Literal true_lit(v, values_[v] == LBool::False);
  for (std::size_t c : occurs_[true_lit.index()])
    if (--true_count_[c] == 0) --satisfied_;
  for (std::size_t c : occurs_[(~true_lit).index()]) --false_count_[c];
  values_[v] = LBool::Undef;
  ++block_unassigned_[f_.block_of(v)];
  open_universals_ += f_.is_universal(v);
}

std::optional<std::size_t> QdpllSolver::propagate() {
  while (queue_head_ < queue_.size()) {
    const std::size_t c = queue_[queue_head_++];
    if (true_count_[c] > 0) continue;
    const Clause& clause = f_.matrix()[c];
    const std::size_t free = clause.size() - false_count_[c];
    std::optional<std::size_t> conflict;
    if (free == 0) {
      conflict = c;
    } else if (free == 1) {
      Literal unit;
      for (Literal lit : clause)
        if (values_[lit.var()] == LBool::Undef) unit = lit;
      // The universal player falsifies a lone universal literal.
      if (f_.is_universal(unit.var())) {
        conflict = c;
      } else {
        assign(unit, false, false);
        ++stats_.propagations;
      }
    }
    if (conflict) {
      queue_.clear();
      queue_head_ = 0;
      return conflict;
    }
  }
  queue_.clear();
  queue_head_ = 0;
  return std::nullopt;
}

void QdpllSolver::decide(Literal lit) {
  if (values_.at(lit.var()) != LBool::Undef) throw std::logic_error("decide: variable already assigned");
  decisions_.push_back(trail_.size());
  assign(lit, true, false);
  ++stats_.decisions;
}

std::optional<std::size_t> QdpllSolver::open_block() const {
  for (std::size_t b = 0; b < block_unassigned_.size(); ++b)
    if (block_unassigned_[b] > 0) return b;
  return std::nullopt;
}

bool QdpllSolver::backtrack(Quantifier kind) {
  std::size_t k = decisions_.size();
  while (k > 0) {
    const TrailEntry& d = trail_[decisions_[k - 1]];
    if (!d.flipped && f_.quantifier(d.var) == kind) break;
    --k;
  }
  if (k == 0) return false;

  const std::size_t pos = decisions_[k - 1];
  const Var var = trail_[pos].var;
  const bool was_true = values_[var] == LBool::True;
  while (trail_.size() > pos) {
    unassign(trail_.back().var);
    trail_.pop_back();
  }
  decisions_.resize(k - 1);
  queue_.clear();
  queue_head_ = 0;
  decisions_.push_back(trail_.size());
  assign(Literal(var, was_true), true, true);
  return true;
}

QdpllResult QdpllSolver::solve(BranchingHeuristic& heuristic, const QdpllOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  QdpllResult result;
  for (std::uint64_t iter = 1;; ++iter) {
    if (options.deadline && (iter & 1023U) == 0 && std::chrono::steady_clock::now() >= *options.deadline) {
      result.status = QbfStatus::Unknown;
      break;
    }
    if (propagate()) {
      ++stats_.conflicts;
      heuristic.on_conflict();
      if (!backtrack(Quantifier::Existential)) {
        result.status = QbfStatus::Unsat;
        break;
      }
      continue;
    }
    if (at_solution()) {
      ++stats_.solutions;
      if (!backtrack(Quantifier::Universal)) {
        result.status = QbfStatus::Sat;
        break;
      }
      continue;
    }
    const auto block = open_block();
    if (!block) throw std::logic_error("qdpll: all variables assigned without a verdict");
    const Literal lit = heuristic.choose(f_.prefix()[*block].variables, values_);
    if (values_.at(lit.var()) != LBool::Undef || f_.block_of(lit.var()) != *block)
      throw std::logic_error("qdpll: heuristic chose a variable outside the open block");
    decide(lit);
  }
  stats_.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.stats = stats_;
  return result;
}

QdpllResult qdpll_solve(const QbfFormula& f, HeuristicKind kind, const BpParams& p, const QdpllOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  auto heuristic = make_heuristic(kind, f, p);
  QdpllSolver solver(f);
  QdpllResult result = solver.solve(*heuristic, options);
  result.stats.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void write_stats_csv(std::ostream& out, const QdpllResult& result) {
  char time_buf[32];
  std::snprintf(time_buf, sizeof time_buf, "%.6f", result.stats.wall_time);
  out << "status,decisions,conflicts,solutions,propagations,wall_time\n"
      << status_name(result.status) << ',' << result.stats.decisions << ',' << result.stats.conflicts << ','
      << result.stats.solutions << ',' << result.stats.propagations << ',' << time_buf << '\n';
}

namespace {

struct MaskClause {
  std::uint32_t pos = 0;
  std::uint32_t neg = 0;
};

class GameTree {
 public:
  explicit GameTree(const QbfFormula& f) {
    std::vector<std::uint32_t> bit(f.num_vars() + 1, 0);
    for (const QuantBlock& b : f.prefix())
      for (Var v : b.variables) {
        bit[v] = static_cast<std::uint32_t>(universal_.size());
        universal_.push_back(b.quantifier == Quantifier::Universal);
      }
    for (const Clause& c : f.matrix()) {
      MaskClause m;
      for (Literal lit : c) (lit.negative() ? m.neg : m.pos) |= 1U << bit[lit.var()];
      clauses_.push_back(m);
    }
  }

  bool eval(std::size_t depth, std::uint32_t bits) const {
    if (depth == universal_.size()) {
      for (const MaskClause& c : clauses_)
        if (((bits & c.pos) | (~bits & c.neg)) == 0) return false;
      return true;
    }
    const std::uint32_t with = bits | (1U << depth);
    if (universal_[depth]) return eval(depth + 1, bits) && eval(depth + 1, with);
    return eval(depth + 1, bits) || eval(depth + 1, with);
  }

 private:
  std::vector<bool> universal_;
  std::vector<MaskClause> clauses_;
};

}  // namespace

QbfStatus brute_force_eval(const QbfFormula& f) {
  if (f.num_vars() > 24) throw std::invalid_argument("brute_force_eval: more than 24 variables");
  return GameTree(f).eval(0, 0) ? QbfStatus::Sat : QbfStatus::Unsat;
}

}  // namespace qbfmp
