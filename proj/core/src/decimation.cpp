#include "qbfmp/decimation.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qbfmp/heuristics.hpp"
#include "qbfmp/rng.hpp"
#include "qbfmp/sp.hpp"

namespace qbfmp {

std::string_view outcome_name(ProofOutcome o) {
  switch (o) {
    case ProofOutcome::UnsatProved: return "unsat_proved";
    case ProofOutcome::Unknown: return "unknown";
    case ProofOutcome::UnsatEarly: return "unsat_early";
  }
  return "?";
}

ProverMethod parse_prover_method(std::string_view name) {
  if (name == "bpdu") return ProverMethod::Bpdu;
  if (name == "bpspdu") return ProverMethod::Bpspdu;
  if (name == "greedy") return ProverMethod::Greedy;
  throw std::invalid_argument("unknown prover method '" + std::string(name) + "'");
}

std::string_view prover_method_name(ProverMethod m) {
  switch (m) {
    case ProverMethod::Bpdu: return "bpdu";
    case ProverMethod::Bpspdu: return "bpspdu";
    case ProverMethod::Greedy: return "greedy";
  }
  return "?";
}

namespace {

void require_two_level(const QbfFormula& f) {
  if (!f.is_two_level()) throw std::invalid_argument("prover: prefix must be forall X exists Y");
}

UnsatProofAttempt check_residual(const QbfFormula& f, UnsatProofAttempt attempt, const ProverOptions& options) {
  const Cnf residual = residual_existential(f, attempt.universal_witness);
  attempt.residual_clause_count = residual.size();
  SatOptions sat;
  sat.seed = derive_seed(options.bp.seed, 0x736174);
  sat.deadline = options.deadline;
  attempt.outcome = sat_solve(residual, sat).status == SatStatus::Unsat ? ProofOutcome::UnsatProved
                                                                         : ProofOutcome::Unknown;
  return attempt;
}

struct StepBiases {
  std::vector<Bias> biases;
  bool converged = false;
  BiasSource source = BiasSource::Bp;
};

StepBiases step_biases(const FactorGraph& g, const ProverOptions& options, std::uint64_t step, bool try_sp) {
  StepBiases out;
  if (try_sp) {
    for (int a = 0; a < options.sp.attempts; ++a) {
      BpParams q = options.bp;
      q.seed = derive_seed(options.bp.seed, step, 1, a);
      const SpState s = sp_run(g, q);
      if (s.converged && is_nontrivial(s, options.sp.eps_trivial)) {
        out.biases = compute_bias(sp_marginals(g, s));
        out.converged = true;
        out.source = BiasSource::Sp;
        return out;
      }
    }
  }
  BpParams q = options.bp;
  q.seed = derive_seed(options.bp.seed, step, 0);
  const BpState s = bp_run(g, q);
  out.biases = compute_bias(bp_marginals(g, s));
  out.converged = s.converged;
  return out;
}

UnsatProofAttempt decimate(const QbfFormula& f, const ProverOptions& options, bool try_sp) {
  require_two_level(f);
  UnsatProofAttempt attempt;
  std::vector<Var> remaining = f.universal_variables();
  Cnf matrix = f.matrix();

  for (std::uint64_t step = 0; !remaining.empty(); ++step) {
    const FactorGraph g(f.num_vars(), matrix);
    const StepBiases sb = step_biases(g, options, step, try_sp);

    auto best = remaining.begin();
    for (auto it = remaining.begin(); it != remaining.end(); ++it)
      if (more_biased(sb.biases[*it - 1], sb.biases[*best - 1])) best = it;
    const Bias& b = sb.biases[*best - 1];
    // Against the bias; unbiased variables go false.
    const bool value = b.favored == Sign::Negative;
    attempt.steps.push_back({b.var, value, b.magnitude, sb.converged, sb.source});
    attempt.universal_witness.set(b.var, value);
    remaining.erase(best);

    Assignment fix;
    fix.set(b.var, value);
    Conditioned c = condition(matrix, fix);
    matrix = std::move(c.matrix);
    if (c.empty_clause) {
      for (Var x : remaining) attempt.universal_witness.set(x, false);
      attempt.outcome = ProofOutcome::UnsatEarly;
      attempt.residual_clause_count = residual_existential(f, attempt.universal_witness).size();
      return attempt;
    }
  }
  return check_residual(f, std::move(attempt), options);
}

}  // namespace

UnsatProofAttempt bpdu(const QbfFormula& f, const ProverOptions& options) { return decimate(f, options, false); }

UnsatProofAttempt bpspdu(const QbfFormula& f, const ProverOptions& options) { return decimate(f, options, true); }

Assignment greedy_universal(const QbfFormula& f) {
  require_two_level(f);
  std::vector<long> balance(f.num_vars() + 1, 0);  // negated minus non-negated
  for (const Clause& c : f.matrix())
    for (Literal lit : c) balance[lit.var()] += lit.negative() ? 1 : -1;
  Assignment out;
  for (Var x : f.universal_variables()) out.set(x, balance[x] > 0);
  return out;
}

UnsatProofAttempt prove_unsat(const QbfFormula& f, ProverMethod method, const ProverOptions& options) {
  if (!f.is_two_level()) return prove_unsat(to_two_alternation(f).formula, method, options);
  switch (method) {
    case ProverMethod::Bpdu: return bpdu(f, options);
    case ProverMethod::Bpspdu: return bpspdu(f, options);
    case ProverMethod::Greedy: {
      UnsatProofAttempt attempt;
      attempt.universal_witness = greedy_universal(f);
      return check_residual(f, std::move(attempt), options);
    }
  }
  throw std::invalid_argument("unknown prover method");
}

void write_witness(std::ostream& out, const Assignment& witness) {
  out << 'v';
  for (Literal lit : witness.literals()) out << ' ' << lit.to_dimacs();
  out << " 0\n";
}

}  // namespace qbfmp
