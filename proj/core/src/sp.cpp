#include "qbfmp/sp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qbfmp/rng.hpp"

namespace qbfmp {

double SpState::max_eta() const {
  double m = 0.0;
  for (double x : u) m = std::max(m, 1.0 - x);
  return m;
}

bool is_nontrivial(const SpState& s, double eps_trivial) { return s.max_eta() > eps_trivial; }

namespace {

// Normalized (w_a, w_b, w_ab) for weights
//   w_a  ~ (1 - e^b) e^a
//   w_b  ~ (1 - e^a) e^b
//   w_ab ~ e^(a+b)
// with a, b <= 0 given as logs. Scaled by e^-max(a,b) so nothing overflows.
// Returns false when all three weights vanish.
bool normalized_triple(double a, double b, std::array<double, 3>& out) {
  const double m = std::max(a, b);
  const double wa = 0.0 - std::expm1(b) * std::exp(a - m);
  const double wb = 0.0 - std::expm1(a) * std::exp(b - m);
  const double wab = std::exp(a + b - m);
  const double c = wa + wb + wab;
  if (!(c > 0.0) || !std::isfinite(c)) return false;
  out = {wa / c, wb / c, wab / c};
  return true;
}

// Only the lower end is clamped: SP never takes log(1 - u), and leaving u = 1
// exact keeps the trivial fixed point exact.
double log_message(double u) { return std::log(std::max(u, kMessageFloor)); }

class SpKernel {
 public:
  SpKernel(const FactorGraph& g, std::vector<double> u) : g_(g), u_(std::move(u)) {
    log_u_.resize(u_.size());
    pos_.resize(g.num_vars() + 1);
    neg_.resize(g.num_vars() + 1);
    for (EdgeId e = 0; e < u_.size(); ++e) log_u_[e] = log_message(u_[e]);
    recompute_sums();
  }

  void recompute_sums() {
    for (Var i = 1; i <= g_.num_vars(); ++i) {
      pos_[i] = neg_[i] = 0.0;
      for (EdgeId e : g_.positive_edges(i)) pos_[i] += log_u_[e];
      for (EdgeId e : g_.negative_edges(i)) neg_[i] += log_u_[e];
    }
  }

  // (psi^U, psi^S, psi^*) for i -> a.
  bool psi(EdgeId e, std::array<double, 3>& out) const {
    const Var i = g_.edge_var(e);
    const bool neg = g_.edge_negated(e);
    const double same = (neg ? neg_[i] : pos_[i]) - log_u_[e];
    const double opp = neg ? pos_[i] : neg_[i];
    // psi^U ~ (1 - prod_U u) prod_S u; psi^S ~ (1 - prod_S u) prod_U u.
    return normalized_triple(same, opp, out);
  }

  bool marginal(Var i, std::array<double, 3>& out) const {
    // psi^+ ~ (1 - prod_{d+} u) prod_{d-} u: the triple helper's first slot
    // takes a = log prod_{d-} u, b = log prod_{d+} u.
    return normalized_triple(neg_[i], pos_[i], out);
  }

  double u(EdgeId e) const { return u_[e]; }

  void set_u(EdgeId e, double value) {
    const double old = log_u_[e];
    u_[e] = value;
    log_u_[e] = log_message(value);
    (g_.edge_negated(e) ? neg_ : pos_)[g_.edge_var(e)] += log_u_[e] - old;
  }

  std::vector<double> take_u() { return std::move(u_); }

 private:
  const FactorGraph& g_;
  std::vector<double> u_;
  std::vector<double> log_u_;
  std::vector<double> pos_, neg_;
};

constexpr std::array<double, 3> kJoker{0.0, 0.0, 1.0};

}  // namespace

SpState sp_run(const FactorGraph& g, const BpParams& p) {
  Rng rng(derive_seed(p.seed, 0x696e6974));
  std::vector<double> u(g.num_edges());
  for (double& x : u) x = rng.uniform(0.01, 0.99);
  return sp_run(g, p, std::move(u));
}

SpState sp_run(const FactorGraph& g, const BpParams& p, std::vector<double> initial_u) {
  p.validate();
  if (initial_u.size() != g.num_edges()) throw std::invalid_argument("sp_run: one initial message per edge required");

  SpKernel kernel(g, std::move(initial_u));
  SpState state;
  state.psi.assign(g.num_edges(), kJoker);
  std::vector<EdgeId> order(g.num_edges());
  std::iota(order.begin(), order.end(), EdgeId{0});
  Rng rng(derive_seed(p.seed, 0x7377656570));

  auto refresh = [&](EdgeId f) {
    if (!kernel.psi(f, state.psi[f])) {
      state.psi[f] = kJoker;
      ++state.jokers;
    }
  };

  for (int sweep = 1; sweep <= p.t_max; ++sweep) {
    rng.shuffle(std::span<EdgeId>(order));
    double residual = 0.0;
    for (EdgeId e : order) {
      double prod = 1.0;
      for (EdgeId f : g.clause_edges(g.edge_clause(e))) {
        if (f == e) continue;
        refresh(f);
        prod *= state.psi[f][0];
      }
      double next = 1.0 - prod;
      if (p.damping > 0.0) next = p.damping * kernel.u(e) + (1.0 - p.damping) * next;
      assert(next >= 0.0 && next <= 1.0);
      residual = std::max(residual, std::abs(next - kernel.u(e)));
      kernel.set_u(e, next);
    }
    kernel.recompute_sums();
    state.sweeps = sweep;
    state.residual = residual;
    if (residual < p.epsilon) {
      state.converged = true;
      break;
    }
  }

  for (EdgeId e = 0; e < g.num_edges(); ++e) refresh(e);
  state.u = kernel.take_u();
  return state;
}

std::vector<SpMarginal> sp_marginals(const FactorGraph& g, const SpState& s) {
  if (s.u.size() != g.num_edges()) throw std::invalid_argument("sp_marginals: state does not match graph");
  SpKernel kernel(g, s.u);
  std::vector<SpMarginal> out(g.num_vars() + 1);
  for (Var i = 1; i <= g.num_vars(); ++i) {
    std::array<double, 3> t;
    if (!kernel.marginal(i, t)) t = kJoker;
    out[i] = SpMarginal{t[0], t[2], t[1]};
  }
  return out;
}

}  // namespace qbfmp
