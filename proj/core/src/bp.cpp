#include "qbfmp/bp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qbfmp/rng.hpp"

namespace qbfmp {

void BpParams::validate() const {
  if (t_max < 1) throw std::invalid_argument("t_max must be at least 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(damping >= 0.0 && damping < 1.0)) throw std::invalid_argument("damping must lie in [0, 1)");
}

namespace {

double clamp_message(double u) { return std::clamp(u, kMessageFloor, 1.0 - kMessageFloor); }

// Keeps, per variable and sign, the sums of log u and log(1-u) over the
// occurrences of that sign, so that a variable-to-clause message costs O(1).
class BpKernel {
 public:
  BpKernel(const FactorGraph& g, std::vector<double> u) : g_(g), u_(std::move(u)) {
    const std::size_t n = g.num_vars() + 1;
    log_u_.resize(u_.size());
    log_1mu_.resize(u_.size());
    pos_u_.resize(n);
    pos_1mu_.resize(n);
    neg_u_.resize(n);
    neg_1mu_.resize(n);
    for (EdgeId e = 0; e < u_.size(); ++e) cache_logs(e);
    recompute_sums();
  }

  void recompute_sums() {
    for (Var i = 1; i <= g_.num_vars(); ++i) {
      pos_u_[i] = pos_1mu_[i] = neg_u_[i] = neg_1mu_[i] = 0.0;
      for (EdgeId e : g_.positive_edges(i)) {
        pos_u_[i] += log_u_[e];
        pos_1mu_[i] += log_1mu_[e];
      }
      for (EdgeId e : g_.negative_edges(i)) {
        neg_u_[i] += log_u_[e];
        neg_1mu_[i] += log_1mu_[e];
      }
    }
  }

  // psi_{i->a}: the S_ia clauses push i toward violating a, the U_ia clauses
  // away from it.
  double psi(EdgeId e) const {
    const Var i = g_.edge_var(e);
    const bool neg = g_.edge_negated(e);
    const double same_u = (neg ? neg_u_[i] : pos_u_[i]) - log_u_[e];
    const double same_1mu = (neg ? neg_1mu_[i] : pos_1mu_[i]) - log_1mu_[e];
    const double opp_u = neg ? pos_u_[i] : neg_u_[i];
    const double opp_1mu = neg ? pos_1mu_[i] : neg_1mu_[i];
    const double violate = same_u + opp_1mu;
    const double satisfy = opp_u + same_1mu;
    return 1.0 / (1.0 + std::exp(satisfy - violate));
  }

  double plus_marginal(Var i) const {
    const double plus = neg_u_[i] + pos_1mu_[i];
    const double minus = pos_u_[i] + neg_1mu_[i];
    return 1.0 / (1.0 + std::exp(minus - plus));
  }

  double u(EdgeId e) const { return u_[e]; }

  void set_u(EdgeId e, double value) {
    const double old_lu = log_u_[e], old_l1 = log_1mu_[e];
    u_[e] = value;
    cache_logs(e);
    const Var i = g_.edge_var(e);
    if (g_.edge_negated(e)) {
      neg_u_[i] += log_u_[e] - old_lu;
      neg_1mu_[i] += log_1mu_[e] - old_l1;
    } else {
      pos_u_[i] += log_u_[e] - old_lu;
      pos_1mu_[i] += log_1mu_[e] - old_l1;
    }
  }

  std::vector<double> take_u() { return std::move(u_); }

 private:
  void cache_logs(EdgeId e) {
    const double c = clamp_message(u_[e]);
    log_u_[e] = std::log(c);
    log_1mu_[e] = std::log1p(-c);
  }

  const FactorGraph& g_;
  std::vector<double> u_;
  std::vector<double> log_u_, log_1mu_;
  std::vector<double> pos_u_, pos_1mu_, neg_u_, neg_1mu_;
};

std::vector<double> random_messages(std::size_t edges, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x696e6974));
  std::vector<double> u(edges);
  for (double& x : u) x = rng.uniform(0.01, 0.99);
  return u;
}

}  // namespace

BpState bp_run(const FactorGraph& g, const BpParams& p) { return bp_run(g, p, random_messages(g.num_edges(), p.seed)); }

BpState bp_run(const FactorGraph& g, const BpParams& p, std::vector<double> initial_u) {
  p.validate();
  if (initial_u.size() != g.num_edges()) throw std::invalid_argument("bp_run: one initial message per edge required");

  BpKernel kernel(g, std::move(initial_u));
  BpState state;
  state.psi.assign(g.num_edges(), 0.5);
  std::vector<EdgeId> order(g.num_edges());
  std::iota(order.begin(), order.end(), EdgeId{0});
  Rng rng(derive_seed(p.seed, 0x7377656570));

  for (int sweep = 1; sweep <= p.t_max; ++sweep) {
    rng.shuffle(std::span<EdgeId>(order));
    double residual = 0.0;
    for (EdgeId e : order) {
      double prod = 1.0;
      for (EdgeId f : g.clause_edges(g.edge_clause(e))) {
        if (f == e) continue;
        state.psi[f] = kernel.psi(f);
        prod *= state.psi[f];
      }
      double next = (1.0 - prod) / (2.0 - prod);
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

  for (EdgeId e = 0; e < g.num_edges(); ++e) state.psi[e] = kernel.psi(e);
  state.u = kernel.take_u();
  return state;
}

std::vector<double> bp_marginals(const FactorGraph& g, const BpState& s) {
  if (s.u.size() != g.num_edges()) throw std::invalid_argument("bp_marginals: state does not match graph");
  BpKernel kernel(g, s.u);
  std::vector<double> out(g.num_vars() + 1, 0.5);
  for (Var i = 1; i <= g.num_vars(); ++i) out[i] = kernel.plus_marginal(i);
  return out;
}

}  // namespace qbfmp
