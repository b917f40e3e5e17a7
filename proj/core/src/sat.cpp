#include "qbfmp/sat.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "qbfmp/rng.hpp"

namespace qbfmp {
namespace {

// Literal code 2*var + negative, as Literal::index().
using Lit = std::uint32_t;
constexpr Lit kNoLit = static_cast<Lit>(-1);
constexpr std::uint32_t kNoReason = static_cast<std::uint32_t>(-1);

constexpr Lit negate(Lit l) { return l ^ 1U; }
constexpr std::uint32_t var_of(Lit l) { return l >> 1; }
constexpr bool is_negative(Lit l) { return (l & 1U) != 0; }

// Binary max-heap over variables keyed by activity.
class VarHeap {
 public:
  explicit VarHeap(const std::vector<double>& activity) : activity_(activity) {}

  bool contains(std::uint32_t v) const { return v < pos_.size() && pos_[v] != kAbsent; }
  bool empty() const { return heap_.empty(); }

  void insert(std::uint32_t v) {
    if (v >= pos_.size()) pos_.resize(v + 1, kAbsent);
    if (contains(v)) return;
    pos_[v] = heap_.size();
    heap_.push_back(v);
    up(pos_[v]);
  }

  void increased(std::uint32_t v) {
    if (contains(v)) up(pos_[v]);
  }

  std::uint32_t pop() {
    const std::uint32_t top = heap_.front();
    heap_.front() = heap_.back();
    pos_[heap_.front()] = 0;
    heap_.pop_back();
    pos_[top] = kAbsent;
    if (!heap_.empty()) down(0);
    return top;
  }

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

  bool before(std::uint32_t a, std::uint32_t b) const {
    if (activity_[a] != activity_[b]) return activity_[a] > activity_[b];
    return a < b;
  }

  void up(std::size_t i) {
    const std::uint32_t v = heap_[i];
    while (i > 0) {
      const std::size_t parent = (i - 1) / 2;
      if (!before(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      pos_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    pos_[v] = i;
  }

  void down(std::size_t i) {
    const std::uint32_t v = heap_[i];
    for (;;) {
      std::size_t child = 2 * i + 1;
      if (child >= heap_.size()) break;
      if (child + 1 < heap_.size() && before(heap_[child + 1], heap_[child])) ++child;
      if (!before(heap_[child], v)) break;
      heap_[i] = heap_[child];
      pos_[heap_[i]] = i;
      i = child;
    }
    heap_[i] = v;
    pos_[v] = i;
  }

  const std::vector<double>& activity_;
  std::vector<std::uint32_t> heap_;
  std::vector<std::size_t> pos_;
};

class Cdcl {
 public:
  Cdcl(std::size_t num_vars, const SatOptions& options)
      : num_vars_(num_vars),
        options_(options),
        rng_(derive_seed(options.seed, 0x736174)),
        values_(num_vars + 1, LBool::Undef),
        level_(num_vars + 1, 0),
        reason_(num_vars + 1, kNoReason),
        phase_(num_vars + 1, false),
        seen_(num_vars + 1, 0),
        activity_(num_vars + 1, 0.0),
        watches_(2 * (num_vars + 1)),
        heap_(activity_) {
    for (std::uint32_t v = 1; v <= num_vars; ++v) heap_.insert(v);
  }

  // Returns false once the clause set is known to be unsatisfiable.
  bool add_clause(std::vector<Lit> lits) {
    if (!ok_) return false;
    if (lits.empty()) return ok_ = false;
    if (lits.size() == 1) {
      const LBool v = value(lits[0]);
      if (v == LBool::False) return ok_ = false;
      if (v == LBool::Undef) enqueue(lits[0], kNoReason);
      return true;
    }
    attach(std::move(lits), false);
    return true;
  }

  SatStatus solve() {
    if (!ok_) return SatStatus::Unsat;
    if (propagate() != kNoReason) return SatStatus::Unsat;

    double restart_limit = 100;
    std::uint64_t conflicts_since_restart = 0;
    std::uint64_t steps = 0;
    std::vector<Lit> learnt;

    for (;;) {
      if (options_.deadline && (++steps & 255U) == 0 && std::chrono::steady_clock::now() >= *options_.deadline)
        return SatStatus::Unknown;

      const std::uint32_t confl = propagate();
      if (confl != kNoReason) {
        if (decision_level() == 0) return SatStatus::Unsat;
        ++conflicts_since_restart;
        const std::uint32_t back_level = analyze(confl, learnt);
        backtrack(back_level);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          const std::uint32_t cref = attach(learnt, true);
          enqueue(learnt[0], cref);
        }
        var_inc_ /= 0.95;
        continue;
      }

      if (conflicts_since_restart >= restart_limit) {
        conflicts_since_restart = 0;
        restart_limit *= 1.5;
        backtrack(0);
      }

      const std::uint32_t next = pick_branch_var();
      if (next == 0) return SatStatus::Sat;
      trail_lim_.push_back(trail_.size());
      enqueue(2 * next + (phase_[next] ? 0U : 1U), kNoReason);
    }
  }

  bool model_value(Var v) const { return values_[v] == LBool::True; }

 private:
  struct Watcher {
    std::uint32_t cref;
    Lit blocker;
  };

  // TODO: learnt-clause database reduction; residual formulas are small
  // enough that the database never needs trimming in the current drivers.
  struct StoredClause {
    std::vector<Lit> lits;
    bool learnt;
  };

  LBool value(Lit l) const {
    const LBool v = values_[var_of(l)];
    if (v == LBool::Undef) return v;
    return (v == LBool::True) != is_negative(l) ? LBool::True : LBool::False;
  }

  std::uint32_t decision_level() const { return static_cast<std::uint32_t>(trail_lim_.size()); }

  std::uint32_t attach(std::vector<Lit> lits, bool learnt) {
    const auto cref = static_cast<std::uint32_t>(clauses_.size());
    watches_[lits[0]].push_back({cref, lits[1]});
    watches_[lits[1]].push_back({cref, lits[0]});
    clauses_.push_back({std::move(lits), learnt});
    return cref;
  }

  void enqueue(Lit l, std::uint32_t reason) {
    const std::uint32_t v = var_of(l);
    values_[v] = is_negative(l) ? LBool::False : LBool::True;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(l);
  }

  // Watch lists are keyed by the watched literal and visited when it turns false.
  std::uint32_t propagate() {
    std::uint32_t confl = kNoReason;
    while (qhead_ < trail_.size()) {
      const Lit false_lit = negate(trail_[qhead_++]);
      std::vector<Watcher>& ws = watches_[false_lit];
      std::size_t i = 0, j = 0;
      while (i < ws.size()) {
        const Watcher w = ws[i++];
        if (value(w.blocker) == LBool::True) {
          ws[j++] = w;
          continue;
        }
        std::vector<Lit>& c = clauses_[w.cref].lits;
        if (c[0] == false_lit) std::swap(c[0], c[1]);
        const Lit first = c[0];
        if (first != w.blocker && value(first) == LBool::True) {
          ws[j++] = {w.cref, first};
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (value(c[k]) != LBool::False) {
            std::swap(c[1], c[k]);
            watches_[c[1]].push_back({w.cref, first});
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = {w.cref, first};
        if (value(first) == LBool::False) {
          confl = w.cref;
          qhead_ = trail_.size();
          while (i < ws.size()) ws[j++] = ws[i++];
        } else {
          enqueue(first, w.cref);
        }
      }
      ws.resize(j);
      if (confl != kNoReason) break;
    }
    return confl;
  }

  void bump(std::uint32_t v) {
    if ((activity_[v] += var_inc_) > 1e100) {
      for (double& a : activity_) a *= 1e-100;
      var_inc_ *= 1e-100;
    }
    heap_.increased(v);
  }

  // First-UIP learning. On return out[0] is the asserting literal and out[1]
  // (if any) the literal with the highest remaining level.
  std::uint32_t analyze(std::uint32_t confl, std::vector<Lit>& out) {
    out.assign(1, kNoLit);
    int open = 0;
    Lit p = kNoLit;
    std::size_t index = trail_.size();
    do {
      const std::vector<Lit>& c = clauses_[confl].lits;
      for (std::size_t j = (p == kNoLit ? 0 : 1); j < c.size(); ++j) {
        const std::uint32_t v = var_of(c[j]);
        if (seen_[v] || level_[v] == 0) continue;
        seen_[v] = 1;
        bump(v);
        if (level_[v] >= decision_level())
          ++open;
        else
          out.push_back(c[j]);
      }
      while (!seen_[var_of(trail_[--index])]) {
      }
      p = trail_[index];
      confl = reason_[var_of(p)];
      seen_[var_of(p)] = 0;
      --open;
    } while (open > 0);
    out[0] = negate(p);

    std::uint32_t back_level = 0;
    std::size_t max_i = 1;
    for (std::size_t i = 1; i < out.size(); ++i) {
      if (level_[var_of(out[i])] > back_level) {
        back_level = level_[var_of(out[i])];
        max_i = i;
      }
    }
    if (out.size() > 1) std::swap(out[1], out[max_i]);
    for (Lit l : out) seen_[var_of(l)] = 0;
    return back_level;
  }

  void backtrack(std::uint32_t level) {
    if (decision_level() <= level) return;
    for (std::size_t i = trail_.size(); i > trail_lim_[level]; --i) {
      const std::uint32_t v = var_of(trail_[i - 1]);
      phase_[v] = values_[v] == LBool::True;
      values_[v] = LBool::Undef;
      reason_[v] = kNoReason;
      heap_.insert(v);
    }
    trail_.resize(trail_lim_[level]);
    trail_lim_.resize(level);
    qhead_ = trail_.size();
  }

  std::uint32_t pick_branch_var() {
    if (num_vars_ > 0 && rng_.uniform() < options_.random_decision_freq) {
      const auto v = static_cast<std::uint32_t>(1 + rng_.below(num_vars_));
      if (values_[v] == LBool::Undef) return v;
    }
    while (!heap_.empty()) {
      const std::uint32_t v = heap_.pop();
      if (values_[v] == LBool::Undef) return v;
    }
    return 0;
  }

  std::size_t num_vars_;
  SatOptions options_;
  Rng rng_;
  bool ok_ = true;

  std::vector<LBool> values_;
  std::vector<std::uint32_t> level_;
  std::vector<std::uint32_t> reason_;
  std::vector<bool> phase_;
  std::vector<char> seen_;
  std::vector<double> activity_;
  double var_inc_ = 1.0;

  std::vector<StoredClause> clauses_;
  std::vector<std::vector<Watcher>> watches_;
  VarHeap heap_;

  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
};

}  // namespace

SatResult sat_solve(std::span<const Clause> cnf, const SatOptions& options) {
  Var max_var = 0;
  for (const Clause& c : cnf) {
    if (c.empty()) return {SatStatus::Unsat, {}};
    for (Literal l : c) max_var = std::max(max_var, l.var());
  }

  Cdcl solver(max_var, options);
  std::set<std::vector<Lit>> distinct;
  for (const Clause& c : cnf) {
    std::vector<Lit> lits;
    lits.reserve(c.size());
    for (Literal l : c) lits.push_back(static_cast<Lit>(l.index()));
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    bool tautology = false;
    for (std::size_t i = 1; i < lits.size(); ++i)
      if (var_of(lits[i]) == var_of(lits[i - 1])) tautology = true;
    if (tautology || !distinct.insert(lits).second) continue;
    if (!solver.add_clause(std::move(lits))) return {SatStatus::Unsat, {}};
  }

  SatResult result;
  result.status = solver.solve();
  if (result.status != SatStatus::Sat) return result;

  for (Var v = 1; v <= max_var; ++v) result.model.set(v, solver.model_value(v));
  for (const Clause& c : cnf) {
    const bool satisfied = std::any_of(c.begin(), c.end(), [&](Literal l) { return *result.model.value(l); });
    if (!satisfied) throw std::logic_error("sat_solve: model violates an input clause");
  }
  return result;
}

}  // namespace qbfmp
