#include "qbfmp/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <toml.hpp>

#include "qbfmp/decimation.hpp"
#include "qbfmp/qdpll.hpp"
#include "qbfmp/rng.hpp"

namespace qbfmp {

namespace {

constexpr std::string_view kRawHeader =
    "point_index,point,instance,seed,method,status,decisions,conflicts,solutions,propagations,wall_time,timed_out";

bool valid_method(const std::string& m) {
  if (m.starts_with("qdpll:")) {
    try {
      parse_heuristic(std::string_view(m).substr(6));
      return true;
    } catch (const std::invalid_argument&) {
      return false;
    }
  }
  return m == "bpdu" || m == "bpspdu" || m == "greedy";
}

template <class T>
T require(const toml::node_view<const toml::node>& node, std::string_view key) {
  auto v = node.value<T>();
  if (!v) throw std::invalid_argument("sweep spec: missing or mistyped '" + std::string(key) + "'");
  return *v;
}

std::size_t count_field(const toml::node_view<const toml::node>& node, std::string_view key) {
  const auto v = require<std::int64_t>(node, key);
  if (v < 0) throw std::invalid_argument("sweep spec: '" + std::string(key) + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

std::string fmt(const char* pattern, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

double round_micro(double seconds) { return std::round(seconds * 1e6) / 1e6; }

std::size_t existential_count(const GeneratorSpec& g) {
  if (const auto* lk = std::get_if<LkSpec>(&g)) return lk->num_existential;
  const auto& b = std::get<ModelBSpec>(g);
  return (b.alternations / 2) * b.block_size;
}

CounterSummary summarize_values(std::vector<double> v) {
  CounterSummary s;
  if (v.empty()) return s;
  double sum = 0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  s.median = n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void SweepSpec::validate() const {
  if (instances < 1) throw std::invalid_argument("sweep spec: instances must be >= 1");
  if (values.empty()) throw std::invalid_argument("sweep spec: axis has no values");
  if (methods.empty()) throw std::invalid_argument("sweep spec: no methods");
  for (const auto& m : methods)
    if (!valid_method(m)) throw std::invalid_argument("sweep spec: unknown method '" + m + "'");
  if (time_limit < 0) throw std::invalid_argument("sweep spec: negative time limit");
  bp.validate();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0) throw std::invalid_argument("sweep spec: negative axis value");
    // Generating the first instance rejects invalid templates early.
    generate(point_generator(*this, i), 0);
  }
}

SweepSpec parse_sweep_spec(std::string_view toml_text) {
  toml::table root;
  try {
    root = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    throw std::invalid_argument(std::string("sweep spec: ") + std::string(e.description()));
  }
  const toml::node_view<const toml::node> t{static_cast<const toml::node&>(root)};
  SweepSpec s;
  s.seed = static_cast<std::uint64_t>(t["seed"].value_or<std::int64_t>(0));
  s.instances = count_field(t["instances"], "instances");
  s.time_limit = t["time_limit"].value_or(0.0);
  if (const auto* arr = t["methods"].as_array()) {
    for (const auto& el : *arr) {
      auto m = el.value<std::string>();
      if (!m) throw std::invalid_argument("sweep spec: methods must be strings");
      s.methods.push_back(*m);
    }
  }

  const auto g = t["generator"];
  const std::string model = g["model"].value_or<std::string>("lk");
  s.alpha = g["alpha"].value_or(1.0);
  if (model == "lk") {
    LkSpec lk;
    lk.L = count_field(g["L"], "generator.L");
    lk.K = count_field(g["K"], "generator.K");
    lk.num_universal = g["nu"].value_or<std::int64_t>(0);
    lk.num_existential = g["ne"].value_or<std::int64_t>(0);
    s.generator = lk;
  } else if (model == "model_b") {
    ModelBSpec b;
    b.alternations = count_field(g["t"], "generator.t");
    b.block_size = g["n"].value_or<std::int64_t>(0);
    b.U = count_field(g["U"], "generator.U");
    b.V = count_field(g["V"], "generator.V");
    s.generator = b;
  } else {
    throw std::invalid_argument("sweep spec: unknown generator model '" + model + "'");
  }

  const auto axis = t["axis"];
  const std::string name = axis["name"].value_or<std::string>("alpha");
  if (name == "alpha") s.axis = SweepAxis::Alpha;
  else if (name == "n") s.axis = SweepAxis::N;
  else throw std::invalid_argument("sweep spec: axis must be 'alpha' or 'n'");
  if (const auto* arr = axis["values"].as_array()) {
    for (const auto& el : *arr) {
      auto v = el.value<double>();
      if (!v) throw std::invalid_argument("sweep spec: axis values must be numbers");
      s.values.push_back(*v);
    }
  }

  const auto bp = t["bp"];
  s.bp.t_max = static_cast<int>(bp["t_max"].value_or<std::int64_t>(s.bp.t_max));
  s.bp.epsilon = bp["epsilon"].value_or(s.bp.epsilon);
  s.bp.damping = bp["damping"].value_or(s.bp.damping);

  s.validate();
  return s;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_sweep_spec(buf.str());
}

GeneratorSpec point_generator(const SweepSpec& spec, std::size_t point_index) {
  const double value = spec.values.at(point_index);
  GeneratorSpec g = spec.generator;
  double alpha = spec.alpha;
  if (spec.axis == SweepAxis::Alpha) {
    alpha = value;
  } else {
    const auto n = static_cast<std::size_t>(std::llround(value));
    if (auto* lk = std::get_if<LkSpec>(&g)) lk->num_universal = lk->num_existential = n;
    else std::get<ModelBSpec>(g).block_size = n;
  }
  const std::size_t m = clauses_for_ratio(alpha, existential_count(g));
  std::visit([m](auto& s) { s.num_clauses = m; }, g);
  return g;
}

std::uint64_t instance_seed(const SweepSpec& spec, std::size_t point_index, std::size_t instance) {
  return derive_seed(spec.seed, point_index, instance);
}

namespace {

RawRow run_method(const SweepSpec& spec, const QbfFormula& f, RawRow row) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  std::optional<Deadline> deadline;
  if (spec.time_limit > 0)
    deadline = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(spec.time_limit));
  BpParams bp = spec.bp;
  bp.seed = row.seed;

  if (row.method.starts_with("qdpll:")) {
    const auto kind = parse_heuristic(std::string_view(row.method).substr(6));
    const QdpllResult r = qdpll_solve(f, kind, bp, QdpllOptions{deadline});
    row.status = status_name(r.status);
    row.decisions = r.stats.decisions;
    row.conflicts = r.stats.conflicts;
    row.solutions = r.stats.solutions;
    row.propagations = r.stats.propagations;
    row.timed_out = r.status == QbfStatus::Unknown;
  } else {
    ProverOptions opts;
    opts.bp = bp;
    opts.deadline = deadline;
    const UnsatProofAttempt a = prove_unsat(f, parse_prover_method(row.method), opts);
    row.status = a.proves_unsat() ? "unsat" : "unknown";
    row.decisions = a.steps.size();
    row.timed_out = !a.proves_unsat() && deadline && Clock::now() >= *deadline;
  }
  row.wall_time = round_micro(std::chrono::duration<double>(Clock::now() - start).count());
  return row;
}

}  // namespace

RawRow run_cell(const SweepSpec& spec, std::size_t point_index, std::size_t instance, const std::string& method) {
  RawRow row;
  row.point_index = point_index;
  row.point = spec.values.at(point_index);
  row.instance = instance;
  row.seed = instance_seed(spec, point_index, instance);
  row.method = method;
  return run_method(spec, generate(point_generator(spec, point_index), row.seed), std::move(row));
}

void sort_canonical(std::vector<RawRow>& rows, const std::vector<std::string>& methods) {
  auto rank = [&](const std::string& m) {
    return static_cast<std::size_t>(std::find(methods.begin(), methods.end(), m) - methods.begin());
  };
  std::stable_sort(rows.begin(), rows.end(), [&](const RawRow& a, const RawRow& b) {
    return std::make_tuple(a.point_index, a.instance, rank(a.method), std::string_view(a.method)) <
           std::make_tuple(b.point_index, b.instance, rank(b.method), std::string_view(b.method));
  });
}

std::vector<RawRow> run_cells(const SweepSpec& spec, std::vector<RawRow> done, unsigned workers,
                              const std::function<void(const RawRow&)>& on_row) {
  std::set<std::tuple<std::size_t, std::size_t, std::string>> have;
  for (const RawRow& r : done) have.emplace(r.point_index, r.instance, r.method);

  struct Task {
    std::size_t point, instance;
    std::vector<std::string> methods;
  };
  std::vector<Task> tasks;
  for (std::size_t p = 0; p < spec.values.size(); ++p)
    for (std::size_t i = 0; i < spec.instances; ++i) {
      Task t{p, i, {}};
      for (const auto& m : spec.methods)
        if (!have.contains({p, i, m})) t.methods.push_back(m);
      if (!t.methods.empty()) tasks.push_back(std::move(t));
    }

  std::mutex lock;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < tasks.size();) {
      const Task& t = tasks[k];
      try {
        const std::uint64_t seed = instance_seed(spec, t.point, t.instance);
        const QbfFormula f = generate(point_generator(spec, t.point), seed);
        for (const auto& m : t.methods) {
          RawRow row;
          row.point_index = t.point;
          row.point = spec.values[t.point];
          row.instance = t.instance;
          row.seed = seed;
          row.method = m;
          row = run_method(spec, f, std::move(row));
          std::lock_guard guard(lock);
          if (on_row) on_row(row);
          done.push_back(std::move(row));
        }
      } catch (...) {
        std::lock_guard guard(lock);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };
  const unsigned n = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  sort_canonical(done, spec.methods);
  return done;
}

std::vector<SweepRow> summarize(std::vector<RawRow> rows) {
  std::map<std::pair<std::size_t, std::string>, std::vector<const RawRow*>> groups;
  std::vector<std::pair<std::size_t, std::string>> order;
  for (const RawRow& r : rows) {
    auto key = std::make_pair(r.point_index, r.method);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<SweepRow> out;
  for (const auto& key : order) {
    const auto& g = groups[key];
    SweepRow s;
    s.point_index = key.first;
    s.point = g.front()->point;
    s.method = key.second;
    s.instances = g.size();
    std::vector<double> dec, con, sol, prop, wall;
    std::size_t sat = 0, unsat = 0;
    for (const RawRow* r : g) {
      s.timeouts += r->timed_out;
      sat += r->status == "sat";
      unsat += r->status == "unsat";
      dec.push_back(static_cast<double>(r->decisions));
      con.push_back(static_cast<double>(r->conflicts));
      sol.push_back(static_cast<double>(r->solutions));
      prop.push_back(static_cast<double>(r->propagations));
      wall.push_back(r->wall_time);
    }
    s.fraction_sat = static_cast<double>(sat) / static_cast<double>(g.size());
    s.fraction_unsat_proved = static_cast<double>(unsat) / static_cast<double>(g.size());
    s.decisions = summarize_values(std::move(dec));
    s.conflicts = summarize_values(std::move(con));
    s.solutions = summarize_values(std::move(sol));
    s.propagations = summarize_values(std::move(prop));
    s.wall_time = summarize_values(std::move(wall));
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

void write_raw_row(std::ostream& out, const RawRow& r) {
  out << r.point_index << ',' << fmt("%.17g", r.point) << ',' << r.instance << ',' << r.seed << ',' << r.method << ','
      << r.status << ',' << r.decisions << ',' << r.conflicts << ',' << r.solutions << ',' << r.propagations << ','
      << fmt("%.6f", r.wall_time) << ',' << (r.timed_out ? 1 : 0) << '\n';
}

}  // namespace

void write_raw_csv(std::ostream& out, const std::vector<RawRow>& rows) {
  out << kRawHeader << '\n';
  for (const RawRow& r : rows) write_raw_row(out, r);
}

std::vector<RawRow> read_raw_csv(std::istream& in) {
  std::vector<RawRow> rows;
  std::string line;
  if (!std::getline(in, line)) return rows;
  if (line != kRawHeader) throw std::runtime_error("raw.csv: unexpected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    // A row cut short by an interrupted write is dropped and recomputed.
    if (f.size() != 12 || f[11].empty()) continue;
    RawRow r;
    r.point_index = std::stoull(f[0]);
    r.point = std::strtod(f[1].c_str(), nullptr);
    r.instance = std::stoull(f[2]);
    r.seed = std::stoull(f[3]);
    r.method = f[4];
    r.status = f[5];
    r.decisions = std::stoull(f[6]);
    r.conflicts = std::stoull(f[7]);
    r.solutions = std::stoull(f[8]);
    r.propagations = std::stoull(f[9]);
    r.wall_time = std::strtod(f[10].c_str(), nullptr);
    r.timed_out = f[11] == "1";
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "point_index,point,method,instances,timeouts,fraction_sat,fraction_unsat_proved";
  for (const char* c : {"decisions", "conflicts", "solutions", "propagations", "wall_time"})
    out << ",mean_" << c << ",median_" << c;
  out << '\n';
  for (const SweepRow& s : rows) {
    out << s.point_index << ',' << fmt("%.17g", s.point) << ',' << s.method << ',' << s.instances << ','
        << s.timeouts << ',' << fmt("%.17g", s.fraction_sat) << ',' << fmt("%.17g", s.fraction_unsat_proved);
    for (const CounterSummary* c : {&s.decisions, &s.conflicts, &s.solutions, &s.propagations, &s.wall_time})
      out << ',' << fmt("%.17g", c->mean) << ',' << fmt("%.17g", c->median);
    out << '\n';
  }
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QBFMP_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir, unsigned workers) {
  spec.validate();
  std::filesystem::create_directories(out_dir);
  const auto raw_path = out_dir / "raw.csv";

  std::vector<RawRow> done;
  if (std::ifstream in(raw_path); in) done = read_raw_csv(in);
  {
    // Rewrite without any truncated tail so appends start on a fresh line.
    std::ofstream out(raw_path, std::ios::trunc);
    write_raw_csv(out, done);
  }

  std::ofstream append(raw_path, std::ios::app);
  auto rows = run_cells(spec, std::move(done), resolve_workers(workers), [&](const RawRow& r) {
    write_raw_row(append, r);
    append.flush();
  });
  append.close();

  {
    std::ofstream out(raw_path, std::ios::trunc);
    write_raw_csv(out, rows);
  }
  auto summary = summarize(rows);
  std::ofstream out(out_dir / "summary.csv", std::ios::trunc);
  write_summary_csv(out, summary);
  return summary;
}

}  // namespace qbfmp
