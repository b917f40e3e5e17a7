#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "qbfmp/bp.hpp"
#include "qbfmp/formula.hpp"
#include "qbfmp/sat.hpp"

namespace qbfmp {

enum class ProofOutcome { UnsatProved, Unknown, UnsatEarly };
enum class BiasSource { Bp, Sp };
enum class ProverMethod { Bpdu, Bpspdu, Greedy };

std::string_view outcome_name(ProofOutcome o);
ProverMethod parse_prover_method(std::string_view name);
std::string_view prover_method_name(ProverMethod m);

/// One fixing step of the decimation loop.
struct DecimationStep {
  Var var = 0;
  bool value = false;
  double bias = 0.5;
  bool converged = false;
  BiasSource source = BiasSource::Bp;
};

struct UnsatProofAttempt {
  ProofOutcome outcome = ProofOutcome::Unknown;
  Assignment universal_witness;
  std::size_t residual_clause_count = 0;
  std::vector<DecimationStep> steps;

  bool proves_unsat() const { return outcome != ProofOutcome::Unknown; }
};

struct SpOptions {
  double eps_trivial = 1e-3;
  int attempts = 1;  ///< SP restarts per step before falling back to BP
};

struct ProverOptions {
  BpParams bp;
  SpOptions sp;
  std::optional<Deadline> deadline;  ///< bounds the SAT backend only
};

/// Decimation over the universal variables of a forall-X exists-Y formula.
///
/// Repeatedly runs BP on the current matrix (quantifiers ignored), fixes the
/// most biased unfixed universal variable against its bias and conditions.
/// An empty clause ends the loop early with the remaining universals set
/// false (UnsatEarly). Otherwise the residual formula is handed to the SAT
/// backend: Unsat proves the QBF false, Sat gives Unknown. With no universal
/// variables the matrix goes to the SAT backend directly.
/// Throws std::invalid_argument unless the prefix is two-level.
UnsatProofAttempt bpdu(const QbfFormula& f, const ProverOptions& options);

/// As bpdu, but each step first runs SP and uses its biases whenever it
/// converges to a nontrivial fixed point.
UnsatProofAttempt bpspdu(const QbfFormula& f, const ProverOptions& options);

/// Per-variable majority rule: true if the variable occurs negated in more
/// clauses than non-negated, false otherwise.
Assignment greedy_universal(const QbfFormula& f);

/// Dispatches to a method. Formulas with a deeper prefix are first flattened
/// with to_two_alternation, which keeps any unsatisfiability proof valid.
UnsatProofAttempt prove_unsat(const QbfFormula& f, ProverMethod method, const ProverOptions& options);

/// Witness as `v <lit> <lit> ... 0`.
void write_witness(std::ostream& out, const Assignment& witness);

}  // namespace qbfmp
