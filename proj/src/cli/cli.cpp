#include "sfpa/cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <thread>

#include "sfpa/analysis.h"
#include "sfpa/dominators.h"
#include "sfpa/error.h"
#include "sfpa/galileo.h"
#include "sfpa/generator.h"
#include "sfpa/solver.h"

namespace sfpa::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

enum class Algo { kSfpa, kSfpa2, kTreelike, kOracle };

const std::map<std::string, Algo> kAlgoNames{
    {"sfpa", Algo::kSfpa}, {"sfpa2", Algo::kSfpa2}, {"treelike", Algo::kTreelike}, {"oracle", Algo::kOracle}};

struct Outcome {
  double value = 0;
  std::optional<Rational> exact;
  std::size_t max_live_vars = 0;
  std::size_t max_terms = 0;
  std::size_t substitutions = 0;
  std::chrono::nanoseconds wall_time{0};
};

template <typename C>
Outcome solve_with(const FaultTree& tree, Algo algo, std::size_t cap) {
  Outcome outcome;
  C value{};
  const auto start = Clock::now();
  auto absorb = [&](const SolveReport<C>& report) {
    value = report.unreliability;
    outcome.max_live_vars = report.max_live_vars;
    outcome.max_terms = report.max_terms;
    outcome.substitutions = report.substitutions;
  };
  switch (algo) {
    case Algo::kSfpa:
      absorb(solve_sfpa<C>(tree));
      break;
    case Algo::kSfpa2:
      absorb(solve_sfpa2<C>(tree));
      break;
    case Algo::kTreelike:
      value = solve_treelike<C>(tree);
      break;
    case Algo::kOracle:
      value = oracle_unreliability<C>(tree, cap);
      break;
  }
  outcome.wall_time = Clock::now() - start;
  outcome.value = CoefficientTraits<C>::to_double(value);
  if constexpr (CoefficientTraits<C>::kExact) outcome.exact = value;
  return outcome;
}

std::size_t default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

// Runs body(i) for i in [0, n) on up to `jobs` threads; body must not throw.
template <typename F>
void parallel_for(std::size_t n, std::size_t jobs, F body) {
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) body(i);
  };
  if (jobs == 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
}

std::string show(double x) { return CoefficientTraits<double>::to_string(x); }

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string file;
  std::string algo = "sfpa2";
  bool exact = false;
};

int cmd_solve(const SolveArgs& args, std::ostream& out) {
  const FaultTree tree = read_ft(args.file);
  const Algo algo = kAlgoNames.at(args.algo);
  const Outcome outcome = args.exact ? solve_with<Rational>(tree, algo, kDefaultEnumerationCap)
                                     : solve_with<double>(tree, algo, kDefaultEnumerationCap);
  Json report;
  report["file"] = args.file;
  report["algo"] = args.algo;
  report["exact"] = args.exact;
  report["unreliability"] = outcome.value;
  if (outcome.exact) report["unreliability_exact"] = to_decimal_string(*outcome.exact);
  report["nodes"] = tree.size();
  report["basic_events"] = tree.basic_events().size();
  report["gates"] = tree.gate_count();
  report["multiparent"] = tree.multiparent_count();
  report["max_live_vars"] = outcome.max_live_vars;
  report["max_terms"] = outcome.max_terms;
  report["substitutions"] = outcome.substitutions;
  report["wall_time_ns"] = outcome.wall_time.count();
  out << report.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  std::string path;
  std::size_t cap = kDefaultEnumerationCap;
  std::size_t jobs = default_jobs();
};

constexpr double kCheckTolerance = 1e-9;

enum class Verdict { kPass, kFail, kSkip, kError };

struct CheckResult {
  Verdict verdict = Verdict::kError;
  std::string detail;
};

std::vector<std::filesystem::path> collect_inputs(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (!fs::exists(path)) throw InputError("no such file or directory: " + path.string());
  if (!fs::is_directory(path)) return {path};
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".dft") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

CheckResult check_one(const std::filesystem::path& file, std::size_t cap) {
  try {
    const FaultTree tree = read_ft(file);
    const std::size_t n = tree.basic_events().size();
    if (n > cap) {
      return {Verdict::kSkip, std::to_string(n) + " basic events exceed cap " + std::to_string(cap)};
    }
    const double oracle = oracle_unreliability<double>(tree, cap);
    const double sfpa = solve_sfpa<double>(tree).unreliability;
    const double sfpa2 = solve_sfpa2<double>(tree).unreliability;
    const double spread = std::max({oracle, sfpa, sfpa2}) - std::min({oracle, sfpa, sfpa2});
    if (spread <= kCheckTolerance) return {Verdict::kPass, "U=" + show(sfpa2)};
    return {Verdict::kFail, "oracle=" + show(oracle) + " sfpa=" + show(sfpa) + " sfpa2=" + show(sfpa2)};
  } catch (const std::exception& e) {
    return {Verdict::kError, e.what()};
  }
}

int cmd_check(const CheckArgs& args, std::ostream& out) {
  const auto files = collect_inputs(args.path);
  std::vector<CheckResult> results(files.size());
  parallel_for(files.size(), args.jobs, [&](std::size_t i) { results[i] = check_one(files[i], args.cap); });

  std::map<Verdict, std::size_t> tally;
  for (std::size_t i = 0; i < files.size(); ++i) {
    static const char* const kLabels[] = {"PASS", "FAIL", "SKIP", "ERROR"};
    const auto& r = results[i];
    ++tally[r.verdict];
    out << kLabels[static_cast<int>(r.verdict)] << ' ' << files[i].string() << ": " << r.detail << "\n";
  }
  out << files.size() << " files: " << tally[Verdict::kPass] << " passed, " << tally[Verdict::kFail] << " failed, "
      << tally[Verdict::kSkip] << " skipped, " << tally[Verdict::kError] << " errors\n";
  if (tally[Verdict::kFail] > 0) return kInternalError;
  if (tally[Verdict::kError] > 0) return kInputError;
  return kOk;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  GenConfig cfg;
  bool local = false;
  std::string out_dir;
  std::size_t count = 1;
};

int cmd_gen(GenArgs args, std::ostream& out) {
  args.cfg.topology = args.local ? Topology::kLocal : Topology::kRandom;
  if (args.out_dir.empty()) {
    if (args.count != 1) throw InputError("--count above 1 needs --out");
    out << to_galileo(generate(args.cfg));
    return kOk;
  }
  std::vector<GenConfig> grid(args.count, args.cfg);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i].seed = args.cfg.seed + i;
  const auto rows = generate_corpus(grid, args.out_dir);
  out << "wrote " << rows.size() << " fault trees and manifest.csv to " << args.out_dir << "\n";
  return kOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string manifest;
  std::string out = "-";
  std::size_t repeats = 3;
  std::vector<std::string> algos{"sfpa2"};
  std::size_t jobs = 1;
  std::size_t cap = kDefaultEnumerationCap;
};

struct BenchRecord {
  ManifestRow row;
  std::string algo;
  double value = 0;
  std::chrono::nanoseconds wall_time{0};
  std::size_t max_terms = 0;
  std::size_t max_live_vars = 0;
  std::string error;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

std::chrono::nanoseconds median(std::vector<std::chrono::nanoseconds> samples) {
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  if (samples.size() % 2 == 1) return samples[mid];
  return (samples[mid - 1] + samples[mid]) / 2;
}

std::vector<BenchRecord> bench_row(const ManifestRow& row, const std::filesystem::path& base, const BenchArgs& args) {
  std::vector<BenchRecord> records;
  std::optional<FaultTree> tree;
  std::string load_error;
  try {
    std::filesystem::path file(row.file);
    tree = read_ft(file.is_absolute() ? file : base / file);
  } catch (const std::exception& e) {
    load_error = e.what();
  }
  for (const auto& name : args.algos) {
    BenchRecord record;
    record.row = row;
    record.algo = name;
    if (!tree) {
      record.error = load_error;
      records.push_back(std::move(record));
      continue;
    }
    try {
      std::vector<std::chrono::nanoseconds> samples;
      for (std::size_t r = 0; r < args.repeats; ++r) {
        const Outcome outcome = solve_with<double>(*tree, kAlgoNames.at(name), args.cap);
        samples.push_back(outcome.wall_time);
        record.value = outcome.value;
        record.max_terms = outcome.max_terms;
        record.max_live_vars = outcome.max_live_vars;
      }
      record.wall_time = median(std::move(samples));
    } catch (const std::exception& e) {
      record.error = e.what();
    }
    records.push_back(std::move(record));
  }
  return records;
}

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  const auto rows = read_manifest(args.manifest);
  const auto base = std::filesystem::path(args.manifest).parent_path();
  std::vector<std::vector<BenchRecord>> per_row(rows.size());
  parallel_for(rows.size(), args.jobs, [&](std::size_t i) { per_row[i] = bench_row(rows[i], base, args); });

  std::vector<BenchRecord> records;
  for (auto& batch : per_row) std::move(batch.begin(), batch.end(), std::back_inserter(records));
  std::stable_sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return std::tie(a.row.c, a.row.nodes) < std::tie(b.row.c, b.row.nodes);
  });

  std::ofstream file;
  std::ostream* sink = &out;
  if (args.out != "-") {
    file.open(args.out, std::ios::binary);
    if (!file) throw InputError("cannot write " + args.out);
    sink = &file;
  }
  *sink << "file,nodes,multiparent,c,algo,value,wall_time_ns,max_terms,max_live_vars,error\n";
  for (const auto& r : records) {
    *sink << csv_field(r.row.file) << ',' << r.row.nodes << ',' << r.row.multiparent << ',' << r.row.c << ','
          << r.algo << ',';
    if (r.error.empty()) {
      *sink << show(r.value) << ',' << r.wall_time.count() << ',' << r.max_terms << ',' << r.max_live_vars << ",\n";
    } else {
      *sink << ",,,," << csv_field(r.error) << "\n";
    }
  }
  return kOk;
}

// ---------------------------------------------------------------- mcs, dom

int cmd_mcs(const std::string& path, std::ostream& out) {
  const FaultTree tree = read_ft(path);
  const SafetyEvent cut = minimal_cut_set_via_reduction(tree);
  std::vector<std::string> names;
  for (NodeId be : tree.basic_events()) {
    if (cut.at(tree, be)) names.push_back(tree.name(be));
  }
  std::sort(names.begin(), names.end());
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? " " : "") << names[i];
  out << "\n";
  return kOk;
}

int cmd_dom(const std::string& path, std::ostream& out) {
  const FaultTree tree = read_ft(path);
  const DominatorInfo dom = immediate_dominators(tree);
  for (NodeId v : dom.topo_order()) {
    if (dom.has_idom(v)) out << tree.name(v) << " -> " << tree.name(dom.idom(v)) << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact fault tree unreliability with squarefree polynomial algebra", "sfpa"};
  app.require_subcommand(1);
  std::function<int()> action;
  std::vector<std::string> algo_choices;
  for (const auto& [name, algo] : kAlgoNames) algo_choices.push_back(name);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute the unreliability of one fault tree (JSON report)");
  solve_cmd->add_option("file", solve.file, "Galileo fault tree file")->required();
  solve_cmd->add_option("--algo", solve.algo, "Algorithm")
      ->check(CLI::IsMember({"sfpa", "sfpa2", "treelike"}))
      ->capture_default_str();
  solve_cmd->add_flag("--exact", solve.exact, "Exact rational arithmetic");
  solve_cmd->callback([&] { action = [&] { return cmd_solve(solve, out); }; });

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Cross-check sfpa, sfpa2 and brute-force enumeration");
  check_cmd->add_option("path", check.path, "File or directory of .dft files")->required();
  check_cmd->add_option("--cap", check.cap, "Skip trees with more basic events than this")->capture_default_str();
  check_cmd->add_option("--jobs", check.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  check_cmd->callback([&] { action = [&] { return cmd_check(check, out); }; });

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate random fault trees");
  gen_cmd->add_option("--seed", gen.cfg.seed, "Seed of the first tree; tree i uses seed+i")->capture_default_str();
  gen_cmd->add_option("--bes", gen.cfg.n_be, "Basic events per tree")->capture_default_str();
  gen_cmd->add_option("--gates", gen.cfg.n_gates, "Gates per tree")->capture_default_str();
  gen_cmd->add_option("--multiparent", gen.cfg.n_multiparent, "Nodes with two or more parents")
      ->capture_default_str();
  gen_cmd->add_option("--max-children", gen.cfg.max_children, "Maximum gate fan-in")->capture_default_str();
  gen_cmd->add_option("--p-and", gen.cfg.p_and, "Probability that a gate is AND")->capture_default_str();
  gen_cmd->add_option("--prob-min", gen.cfg.prob_min, "Smallest BE probability")->capture_default_str();
  gen_cmd->add_option("--prob-max", gen.cfg.prob_max, "Largest BE probability")->capture_default_str();
  gen_cmd->add_option("--prefix", gen.cfg.name_prefix, "Prefix for node names");
  gen_cmd->add_flag("--local", gen.local, "Share nodes only between sibling gates (bounded variable budget)");
  gen_cmd->add_option("--out", gen.out_dir, "Output directory; prints one tree to stdout if omitted");
  gen_cmd->add_option("--count", gen.count, "Number of trees")->capture_default_str();
  gen_cmd->callback([&] { action = [&] { return cmd_gen(gen, out); }; });

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time algorithms over a generated corpus (CSV)");
  bench_cmd->add_option("manifest", bench.manifest, "manifest.csv written by `sfpa gen`")->required();
  bench_cmd->add_option("--out", bench.out, "CSV output file, - for stdout")->capture_default_str();
  bench_cmd->add_option("--repeats", bench.repeats, "Timed runs per file; the median is reported")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--algo", bench.algos, "Algorithms to time")
      ->delimiter(',')
      ->check(CLI::IsMember(algo_choices))
      ->capture_default_str();
  bench_cmd->add_option("--jobs", bench.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--cap", bench.cap, "Basic event cap for the oracle")->capture_default_str();
  bench_cmd->callback([&] { action = [&] { return cmd_bench(bench, out); }; });

  std::string mcs_file;
  auto* mcs_cmd = app.add_subcommand("mcs", "Print one minimal cut set found through the unreliability");
  mcs_cmd->add_option("file", mcs_file, "Galileo fault tree file")->required();
  mcs_cmd->callback([&] { action = [&] { return cmd_mcs(mcs_file, out); }; });

  std::string dom_file;
  auto* dom_cmd = app.add_subcommand("dom", "Print the immediate dominator of every node");
  dom_cmd->add_option("file", dom_file, "Galileo fault tree file")->required();
  dom_cmd->callback([&] { action = [&] { return cmd_dom(dom_file, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  try {
    return action();
  } catch (const InputError& e) {
    err << "sfpa: input error: " << e.what() << "\n";
    return kInputError;
  } catch (const PreconditionError& e) {
    err << "sfpa: precondition violated: " << e.what() << "\n";
    return kPreconditionError;
  } catch (const Error& e) {
    err << "sfpa: error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "sfpa: internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace sfpa::cli
