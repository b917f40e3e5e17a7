#include "qbfmp/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qbfmp/rng.hpp"

namespace qbfmp {
namespace {

Bias bias_from_pair(Var v, double plus, double minus, double tie_epsilon) {
  Bias b{v, Sign::None, std::max(plus, minus)};
  if (std::abs(plus - minus) >= tie_epsilon) b.favored = plus > minus ? Sign::Positive : Sign::Negative;
  return b;
}

double rank_magnitude(const Bias& b) { return b.favored == Sign::None ? 0.5 : b.magnitude; }

}  // namespace

bool more_biased(const Bias& a, const Bias& b) {
  const double ma = rank_magnitude(a), mb = rank_magnitude(b);
  if (ma != mb) return ma > mb;
  return a.var < b.var;
}

std::vector<Bias> compute_bias(std::span<const double> psi_plus, double tie_epsilon) {
  std::vector<Bias> out;
  for (Var v = 1; v < psi_plus.size(); ++v) out.push_back(bias_from_pair(v, psi_plus[v], 1.0 - psi_plus[v], tie_epsilon));
  return out;
}

std::vector<Bias> compute_bias(std::span<const SpMarginal> marginals, double tie_epsilon) {
  std::vector<Bias> out;
  for (Var v = 1; v < marginals.size(); ++v) {
    const double total = marginals[v].plus + marginals[v].minus;
    if (!(total > 0.0)) {
      out.push_back(Bias{v, Sign::None, 0.5});
      continue;
    }
    out.push_back(bias_from_pair(v, marginals[v].plus / total, marginals[v].minus / total, tie_epsilon));
  }
  return out;
}

bool first_value(const Bias& b, Quantifier q) {
  if (b.favored == Sign::None) return false;
  const bool favored_true = b.favored == Sign::Positive;
  return q == Quantifier::Universal ? !favored_true : favored_true;
}

DecisionOrder index_order(const QbfFormula& f) {
  DecisionOrder order;
  for (Var v = 1; v <= f.num_vars(); ++v) order.push_back({v, false, 0.5});
  return order;
}

DecisionOrder bph_order(const QbfFormula& f, const BpParams& p) {
  FactorGraph g(f);
  const BpState state = bp_run(g, p);
  std::vector<Bias> biases = compute_bias(bp_marginals(g, state));
  std::sort(biases.begin(), biases.end(), more_biased);
  DecisionOrder order;
  order.reserve(biases.size());
  for (const Bias& b : biases) order.push_back({b.var, first_value(b, f.quantifier(b.var)), b.magnitude});
  return order;
}

DecisionOrder bpdh_order(const QbfFormula& f, const BpParams& p) {
  DecisionOrder order;
  Cnf matrix = f.matrix();
  bool stopped = false;
  std::uint64_t step = 0;

  for (const QuantBlock& block : f.prefix()) {
    std::vector<Var> remaining = block.variables;
    while (!remaining.empty()) {
      if (stopped || matrix.empty()) {
        std::sort(remaining.begin(), remaining.end());
        for (Var v : remaining) order.push_back({v, false, 0.5});
        break;
      }
      BpParams q = p;
      q.seed = derive_seed(p.seed, step++);
      FactorGraph g(f.num_vars(), matrix);
      const std::vector<Bias> biases = compute_bias(bp_marginals(g, bp_run(g, q)));

      auto best = remaining.begin();
      for (auto it = remaining.begin(); it != remaining.end(); ++it)
        if (more_biased(biases[*it - 1], biases[*best - 1])) best = it;
      const Bias& b = biases[*best - 1];
      const bool value = first_value(b, block.quantifier);
      order.push_back({b.var, value, b.magnitude});
      remaining.erase(best);

      Assignment fix;
      fix.set(b.var, value);
      Conditioned c = condition(matrix, fix);
      matrix = std::move(c.matrix);
      stopped = c.empty_clause;
    }
  }
  return order;
}

bool covers_all_variables(const DecisionOrder& order, std::size_t num_vars) {
  if (order.size() != num_vars) return false;
  std::vector<bool> seen(num_vars + 1, false);
  for (const Decision& d : order) {
    if (d.var == 0 || d.var > num_vars || seen[d.var]) return false;
    seen[d.var] = true;
  }
  return true;
}

void write_order_csv(std::ostream& out, const DecisionOrder& order) {
  out << "rank,variable,first_sign,bias\n";
  char buf[64];
  for (std::size_t r = 0; r < order.size(); ++r) {
    std::snprintf(buf, sizeof buf, "%.12g", order[r].bias);
    out << r + 1 << ',' << order[r].var << ',' << (order[r].first_value ? "true" : "false") << ',' << buf << '\n';
  }
}

VsidsScores::VsidsScores(const QbfFormula& f) : scores_(2 * (f.num_vars() + 1), 0.0) {
  for (const Clause& c : f.matrix())
    for (Literal lit : c) scores_[lit.index()] += 1.0;
}

Literal VsidsScores::pick(std::span<const Var> candidates, std::span<const LBool> values) const {
  Literal best;
  double best_score = -1.0;
  for (Var v : candidates) {
    if (values[v] != LBool::Undef) continue;
    for (bool neg : {true, false}) {
      const Literal lit(v, neg);
      const double s = score(lit);
      // Strictly greater, or an equal score on a lower variable.
      if (s > best_score || (s == best_score && v < best.var())) {
        best = lit;
        best_score = s;
      }
    }
  }
  if (best.var() == 0) throw std::logic_error("VsidsScores::pick: no unassigned candidate");
  return best;
}

void VsidsScores::on_conflict() {
  if (++conflicts_ % kDecayInterval != 0) return;
  for (double& s : scores_) s *= 0.5;
}

HeuristicKind parse_heuristic(std::string_view name) {
  if (name == "vsids") return HeuristicKind::Vsids;
  if (name == "bph") return HeuristicKind::Bph;
  if (name == "bpdh") return HeuristicKind::Bpdh;
  if (name == "index") return HeuristicKind::Index;
  throw std::invalid_argument("unknown heuristic '" + std::string(name) + "'");
}

std::string_view heuristic_name(HeuristicKind kind) {
  switch (kind) {
    case HeuristicKind::Vsids: return "vsids";
    case HeuristicKind::Bph: return "bph";
    case HeuristicKind::Bpdh: return "bpdh";
    case HeuristicKind::Index: return "index";
  }
  return "?";
}

}  // namespace qbfmp
