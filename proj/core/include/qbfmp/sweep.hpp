#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qbfmp/bp.hpp"
#include "qbfmp/gen.hpp"

namespace qbfmp {

enum class SweepAxis { Alpha, N };

/// One experiment. The generator is a template: the axis overrides either the
/// clause ratio (Alpha) or the size (N: N_u = N_e = n for lk, block size for model-B).
struct SweepSpec {
  GeneratorSpec generator = LkSpec{};
  double alpha = 1.0;  ///< clause ratio M / N_e when the axis is N
  SweepAxis axis = SweepAxis::Alpha;
  std::vector<double> values;
  std::size_t instances = 1;
  /// "qdpll:vsids", "qdpll:bph", "qdpll:bpdh", "qdpll:index", "bpdu", "bpspdu", "greedy"
  std::vector<std::string> methods;
  std::uint64_t seed = 0;
  double time_limit = 0.0;  ///< seconds per (instance, method); 0 means none
  BpParams bp;

  void validate() const;
};

SweepSpec parse_sweep_spec(std::string_view toml_text);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

/// Generator spec and seed of one cell; seed = derive_seed(spec.seed, point_index, instance).
GeneratorSpec point_generator(const SweepSpec& spec, std::size_t point_index);
std::uint64_t instance_seed(const SweepSpec& spec, std::size_t point_index, std::size_t instance);

/// One (point, instance, method) cell. For qdpll methods the counters are the
/// solver stats; for provers status is "unsat" when unsatisfiability was
/// proved and "unknown" otherwise, and decisions counts fixing steps.
struct RawRow {
  std::size_t point_index = 0;
  double point = 0.0;
  std::size_t instance = 0;
  std::uint64_t seed = 0;
  std::string method;
  std::string status;
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t solutions = 0;
  std::uint64_t propagations = 0;
  double wall_time = 0.0;  ///< seconds, rounded to microseconds as written
  bool timed_out = false;

  friend bool operator==(const RawRow&, const RawRow&) = default;
};

struct CounterSummary {
  double mean = 0.0;
  double median = 0.0;
};

struct SweepRow {
  std::size_t point_index = 0;
  double point = 0.0;
  std::string method;
  std::size_t instances = 0;
  std::size_t timeouts = 0;
  double fraction_sat = 0.0;
  double fraction_unsat_proved = 0.0;
  CounterSummary decisions, conflicts, solutions, propagations, wall_time;
};

/// Runs a single cell.
RawRow run_cell(const SweepSpec& spec, std::size_t point_index, std::size_t instance, const std::string& method);

/// Runs every cell not already in done, on up to workers threads. on_row is
/// called under a lock as each cell finishes. Returns done plus the new rows,
/// canonically sorted.
std::vector<RawRow> run_cells(const SweepSpec& spec, std::vector<RawRow> done, unsigned workers,
                              const std::function<void(const RawRow&)>& on_row = {});

/// Groups by (point, method), in canonical order.
std::vector<SweepRow> summarize(std::vector<RawRow> rows);

/// Sort key: point_index, instance, position of the method in spec order.
void sort_canonical(std::vector<RawRow>& rows, const std::vector<std::string>& methods);

void write_raw_csv(std::ostream& out, const std::vector<RawRow>& rows);
std::vector<RawRow> read_raw_csv(std::istream& in);
void write_summary_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Worker count: the explicit value if nonzero, else QBFMP_WORKERS, else 1.
unsigned resolve_workers(unsigned requested);

/// Full harness: resumes from out_dir/raw.csv if present, appends each new row
/// as it finishes, then rewrites raw.csv sorted and writes summary.csv.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir, unsigned workers);

}  // namespace qbfmp
