// qbfmp: generate random QBFs, run BP/SP, prove unsatisfiability by
// decimation, solve with QDPLL, and drive benchmark sweeps.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qbfmp/bp.hpp"
#include "qbfmp/decimation.hpp"
#include "qbfmp/factor_graph.hpp"
#include "qbfmp/gen.hpp"
#include "qbfmp/heuristics.hpp"
#include "qbfmp/qdimacs.hpp"
#include "qbfmp/qdpll.hpp"
#include "qbfmp/sat.hpp"
#include "qbfmp/sp.hpp"
#include "qbfmp/sweep.hpp"

namespace {

using namespace qbfmp;

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;

QbfFormula read_input(const std::string& path) {
  if (path == "-") return parse_qdimacs(std::cin);
  return read_qdimacs_file(path);
}

// Writes to the named file, or stdout for "-" / empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

struct BpFlags {
  std::uint64_t seed = 0;
  int tmax = BpParams{}.t_max;
  double epsilon = BpParams{}.epsilon;
  double damping = BpParams{}.damping;

  void add(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_option("--tmax", tmax, "maximum message-passing sweeps")->check(CLI::PositiveNumber);
    cmd->add_option("--epsilon", epsilon, "convergence threshold")->check(CLI::PositiveNumber);
    cmd->add_option("--damping", damping, "damping on clause messages")->check(CLI::Range(0.0, 0.999999));
  }
  BpParams params() const {
    BpParams p;
    p.seed = seed;
    p.t_max = tmax;
    p.epsilon = epsilon;
    p.damping = damping;
    return p;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Message passing for quantified Boolean formulas"};
  app.require_subcommand(1);
  int exit_code = 0;

  // generate
  auto* gen = app.add_subcommand("generate", "Write a random QBF in QDIMACS");
  std::string model = "lk", gen_out;
  std::size_t L = 1, K = 3, nu = 0, ne = 0, t = 2, n = 0, U = 1, V = 1;
  std::optional<std::size_t> clauses;
  double alpha = 1.0;
  std::uint64_t gen_seed = 0;
  gen->add_option("--model", model, "lk or model_b")->check(CLI::IsMember({"lk", "model_b"}));
  gen->add_option("--L", L, "universal literals per clause (lk)");
  gen->add_option("--K", K, "existential literals per clause (lk)");
  gen->add_option("--nu", nu, "universal variables (lk)");
  gen->add_option("--ne", ne, "existential variables (lk)");
  gen->add_option("--t", t, "quantifier blocks (model_b)");
  gen->add_option("--n", n, "variables per block (model_b)");
  gen->add_option("--U", U, "universal literals per clause (model_b)");
  gen->add_option("--V", V, "existential literals per clause (model_b)");
  gen->add_option("--alpha", alpha, "clauses per existential variable");
  gen->add_option("-m,--clauses", clauses, "clause count (overrides --alpha)");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("-o,--output", gen_out, "output file (default stdout)");
  gen->callback([&] {
    QbfFormula f;
    if (model == "lk") {
      LkSpec s{L, K, nu, ne, clauses.value_or(clauses_for_ratio(alpha, ne))};
      f = gen_lk(s, gen_seed);
    } else {
      ModelBSpec s{t, n, U, V, 0};
      s.num_clauses = clauses.value_or(clauses_for_ratio(alpha, (t / 2) * n));
      f = gen_model_b(s, gen_seed);
    }
    Output out(gen_out);
    write_qdimacs(out.stream(), f);
  });

  // solve
  auto* solve = app.add_subcommand("solve", "Decide a QBF with QDPLL; exit 10 sat, 20 unsat, 0 unknown");
  std::string solve_in, heuristic = "vsids", stats_format;
  double timeout = 0;
  BpFlags solve_bp;
  solve->add_option("file", solve_in, "QDIMACS file or -")->required();
  solve->add_option("--heuristic", heuristic, "vsids, bph, bpdh or index")
      ->check(CLI::IsMember({"vsids", "bph", "bpdh", "index"}));
  solve->add_option("--timeout", timeout, "wall-time limit in seconds (0 = none)")->check(CLI::NonNegativeNumber);
  solve->add_option("--stats", stats_format, "emit statistics (csv)")->check(CLI::IsMember({"csv"}));
  solve_bp.add(solve);
  solve->callback([&] {
    const QbfFormula f = read_input(solve_in);
    QdpllOptions opts;
    if (timeout > 0)
      opts.deadline = std::chrono::steady_clock::now() +
                      std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(timeout));
    const QdpllResult r = qdpll_solve(f, parse_heuristic(heuristic), solve_bp.params(), opts);
    if (stats_format == "csv") {
      write_stats_csv(std::cout, r);
    } else {
      std::cout << "s " << status_name(r.status) << '\n';
    }
    exit_code = r.status == QbfStatus::Sat ? kExitSat : r.status == QbfStatus::Unsat ? kExitUnsat : 0;
  });

  // prove-unsat
  auto* prove = app.add_subcommand("prove-unsat", "Try to prove a QBF false; exit 20 proved, 0 unknown");
  std::string prove_in, method = "bpdu";
  BpFlags prove_bp;
  prove->add_option("file", prove_in, "QDIMACS file or -")->required();
  prove->add_option("--method", method, "bpdu, bpspdu or greedy")->check(CLI::IsMember({"bpdu", "bpspdu", "greedy"}));
  prove_bp.add(prove);
  prove->callback([&] {
    const QbfFormula f = read_input(prove_in);
    ProverOptions opts;
    opts.bp = prove_bp.params();
    const UnsatProofAttempt a = prove_unsat(f, parse_prover_method(method), opts);
    std::cout << "s " << outcome_name(a.outcome) << '\n';
    write_witness(std::cout, a.universal_witness);
    exit_code = a.proves_unsat() ? kExitUnsat : 0;
  });

  // sat
  auto* sat = app.add_subcommand("sat", "Solve a DIMACS CNF; exit 10 sat, 20 unsat");
  std::string sat_in;
  std::uint64_t sat_seed = 0;
  sat->add_option("file", sat_in, "DIMACS file or -")->required();
  sat->add_option("--seed", sat_seed, "RNG seed");
  sat->callback([&] {
    const QbfFormula f = read_input(sat_in);
    const SatResult r = sat_solve(f.matrix(), SatOptions{sat_seed});
    if (r.status == SatStatus::Sat) {
      std::cout << "s SATISFIABLE\n";
      write_witness(std::cout, r.model);
      exit_code = kExitSat;
    } else {
      std::cout << "s UNSATISFIABLE\n";
      exit_code = kExitUnsat;
    }
  });

  // bp / sp
  auto* bp = app.add_subcommand("bp", "BP marginals as CSV variable,psi_plus,converged");
  std::string bp_in;
  BpFlags bp_flags;
  bp->add_option("file", bp_in, "QDIMACS file or -")->required();
  bp_flags.add(bp);
  bp->callback([&] {
    const QbfFormula f = read_input(bp_in);
    const FactorGraph g(f);
    const BpState s = bp_run(g, bp_flags.params());
    const auto psi = bp_marginals(g, s);
    std::cout << "variable,psi_plus,converged\n";
    for (Var v = 1; v <= f.num_vars(); ++v)
      std::cout << v << ',' << num(psi[v]) << ',' << (s.converged ? "true" : "false") << '\n';
  });

  auto* sp = app.add_subcommand("sp", "SP marginals as CSV");
  std::string sp_in;
  BpFlags sp_flags;
  double eps_trivial = SpOptions{}.eps_trivial;
  sp->add_option("file", sp_in, "QDIMACS file or -")->required();
  sp->add_option("--eps-trivial", eps_trivial, "threshold on max survey for a nontrivial fixed point");
  sp_flags.add(sp);
  sp->callback([&] {
    const QbfFormula f = read_input(sp_in);
    const FactorGraph g(f);
    const SpState s = sp_run(g, sp_flags.params());
    const auto m = sp_marginals(g, s);
    const bool nontrivial = is_nontrivial(s, eps_trivial);
    std::cout << "variable,psi_plus,psi_star,psi_minus,converged,nontrivial\n";
    for (Var v = 1; v <= f.num_vars(); ++v)
      std::cout << v << ',' << num(m[v].plus) << ',' << num(m[v].star) << ',' << num(m[v].minus) << ','
                << (s.converged ? "true" : "false") << ',' << (nontrivial ? "true" : "false") << '\n';
  });

  // order
  auto* order = app.add_subcommand("order", "Decision order as CSV rank,variable,first_sign,bias");
  std::string order_in, order_kind = "bph";
  BpFlags order_bp;
  order->add_option("file", order_in, "QDIMACS file or -")->required();
  order->add_option("--heuristic", order_kind, "bph, bpdh or index")->check(CLI::IsMember({"bph", "bpdh", "index"}));
  order_bp.add(order);
  order->callback([&] {
    const QbfFormula f = read_input(order_in);
    const auto kind = parse_heuristic(order_kind);
    const DecisionOrder o = kind == HeuristicKind::Bph    ? bph_order(f, order_bp.params())
                            : kind == HeuristicKind::Bpdh ? bpdh_order(f, order_bp.params())
                                                          : index_order(f);
    write_order_csv(std::cout, o);
  });

  // transform
  auto* transform = app.add_subcommand("transform", "Flatten the prefix to forall X exists Y");
  std::string transform_in, transform_out;
  transform->add_option("file", transform_in, "QDIMACS file or -")->required();
  transform->add_option("-o,--output", transform_out, "output file (default stdout)");
  transform->callback([&] {
    const TwoAlternation t2 = to_two_alternation(read_input(transform_in));
    Output out(transform_out);
    write_qdimacs(out.stream(), t2.formula);
  });

  // bench
  auto* bench = app.add_subcommand("bench", "Run a sweep; writes raw.csv and summary.csv");
  std::string spec_path, bench_out = "results";
  unsigned workers = 0;
  bench->add_option("--spec", spec_path, "sweep TOML file")->required()->check(CLI::ExistingFile);
  bench->add_option("-o,--output", bench_out, "output directory");
  bench->add_option("--workers", workers, "worker threads (default: QBFMP_WORKERS or 1)");
  bench->callback([&] {
    const SweepSpec spec = load_sweep_spec(spec_path);
    const auto rows = run_sweep(spec, bench_out, workers);
    std::cerr << rows.size() << " summary rows written to " << bench_out << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "qbfmp: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}
