#include "cpcp_cli/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cpcp/cuts.hpp"
#include "cpcp/error.hpp"
#include "cpcp/generator.hpp"
#include "cpcp/model.hpp"
#include "cpcp/radius_ladder.hpp"
#include "cpcp/solver.hpp"
#include "cpcp_cli/report.hpp"

namespace fs = std::filesystem;

namespace cpcp::cli {

namespace {

constexpr const char* kTimeLimitEnv = "CPCP_TIME_LIMIT";

constexpr const char* kFormatHelp =
    "Instance file (UTF-8 text, one record per line; blank lines and lines\n"
    "starting with '#' are skipped):\n"
    "  line 1: n m p mode       mode is coord-int (default), coord-float or\n"
    "                           matrix\n"
    "  coord-int / coord-float (vertex instances, m = n):\n"
    "    n lines: x y q Q       coordinates, demand, capacity\n"
    "    distances are Euclidean; coord-int rounds them down to integers\n"
    "  matrix:\n"
    "    n lines: q             customer demands\n"
    "    m lines: Q             facility capacities\n"
    "    m lines of n values    distance from facility i to customer j\n";

struct SolveArgs {
  std::string instance;
  std::string strategy = "l3";
  double time_limit = 600.0;
  std::uint64_t seed = 1;
  int ils_rounds = 300;
  std::optional<std::uint64_t> node_limit;
  std::optional<double> lower_bound;
  std::string witness;
  std::string csv;
  bool no_header = false;
};

struct GenerateArgs {
  int n = 50;
  std::string rule = "n10";
  int count = 1;
  std::uint64_t seed = 1;
  std::string mode = "int";
  std::string out = ".";
};

struct EmitArgs {
  std::string instance;
  std::string form;
  std::optional<std::size_t> r_index;
  std::optional<double> r_value;
  bool drop_dominated = false;
  std::string out = ".";
};

struct BenchArgs {
  std::string dir;
  std::string strategies = "ss,l2,l3,l4,bs";
  double time_limit = 600.0;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out;
  std::string runs;
};

Strategy parse_strategy(const std::string& token) {
  if (auto s = Strategy::parse(token)) return *s;
  throw Error("unknown strategy '" + token + "' (ss, bs, l2, l3, l4, l<k>)");
}

std::vector<Strategy> parse_strategy_list(const std::string& list) {
  std::vector<Strategy> out;
  std::stringstream in(list);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (!token.empty()) out.push_back(parse_strategy(token));
  }
  if (out.empty()) throw Error("empty strategy list");
  return out;
}

SolveOptions solve_options(const Strategy& strategy, double time_limit,
                           std::uint64_t seed) {
  if (!(time_limit > 0.0)) throw Error("time limit must be positive");
  SolveOptions opts;
  opts.strategy = strategy;
  opts.time_limit = std::chrono::duration<double>(time_limit);
  opts.seed = seed;
  return opts;
}

std::string instance_id(const fs::path& path) {
  return path.stem().string();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

// Open facilities and customer/facility pairs, 1-based.
std::string format_witness(const Witness& w, Distance radius) {
  std::ostringstream out;
  out << "radius " << format_number(radius) << '\n';
  out << "open";
  for (int i : w.open_set) out << ' ' << i + 1;
  out << '\n';
  out << "# customer facility\n";
  for (std::size_t j = 0; j < w.assignment.size(); ++j) {
    out << j + 1 << ' ' << w.assignment[j] + 1 << '\n';
  }
  return out.str();
}

int exit_for(SolveStatus status) {
  return status == SolveStatus::kGap ? kExitGap : kExitOk;
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const Strategy strategy = parse_strategy(a.strategy);
  const Instance inst = load_instance(a.instance);
  SolveOptions opts = solve_options(strategy, a.time_limit, a.seed);
  opts.ils_rounds = a.ils_rounds;
  opts.node_limit = a.node_limit;
  opts.lower_bound = a.lower_bound;
  const SolveReport report = solve_cpcp(inst, opts);
  const RunReport row =
      make_report(instance_id(a.instance), inst, strategy, report);

  if (a.csv.empty()) {
    if (!a.no_header) out << run_csv_header();
    out << run_csv_row(row);
  } else {
    const bool fresh = !fs::exists(a.csv) || fs::file_size(a.csv) == 0;
    std::ofstream csv(a.csv, std::ios::app | std::ios::binary);
    if (!csv) throw Error("cannot write '" + a.csv + "'");
    if (fresh && !a.no_header) csv << run_csv_header();
    csv << run_csv_row(row);
  }
  if (!a.witness.empty()) {
    if (!report.witness || !report.ub) {
      throw Error("no feasible solution to write");
    }
    write_file(a.witness, format_witness(*report.witness, *report.ub));
  }
  return exit_for(report.status);
}

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  const auto rule = parse_p_rule(a.rule);
  if (!rule) throw Error("unknown rule '" + a.rule + "' (n10, n7, n4, n3)");
  if (a.mode != "int" && a.mode != "float") {
    throw Error("mode must be 'int' or 'float'");
  }
  if (a.count < 1) throw Error("count must be at least 1");
  fs::create_directories(a.out);

  std::ostringstream manifest;
  manifest << csv_line({"file", "n", "p", "rule", "mode", "seed"});
  for (int k = 1; k <= a.count; ++k) {
    // Per-file seed derived from (seed, k) so files are independent of count.
    std::seed_seq seq{static_cast<std::uint32_t>(a.seed),
                      static_cast<std::uint32_t>(a.seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    GeneratorConfig cfg;
    cfg.n = a.n;
    cfg.rule = *rule;
    cfg.seed = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
    cfg.integer_distances = a.mode == "int";
    const Instance inst = generate_instance(cfg);

    std::ostringstream name;
    name << "rand_n" << a.n << '_' << to_string(*rule) << '_' << a.mode << "_s"
         << a.seed << '_' << std::setw(3) << std::setfill('0') << k << ".cpc";
    write_file(fs::path(a.out) / name.str(), format_instance(inst));
    manifest << csv_line({name.str(), std::to_string(a.n),
                          std::to_string(inst.p()), std::string(to_string(*rule)),
                          a.mode, std::to_string(cfg.seed)});
  }
  write_file(fs::path(a.out) / "manifest.csv", manifest.str());
  out << "wrote " << a.count << " instance(s) and manifest.csv to " << a.out
      << '\n';
  return kExitOk;
}

int cmd_emit(const EmitArgs& a, std::ostream& out) {
  const Instance inst = load_instance(a.instance);
  const std::string stem = instance_id(a.instance);
  ModelDocument doc;
  std::string file;
  if (a.form == "cpcp-d") {
    doc = emit_cpcp_descriptive(inst);
    file = stem + "__cpcp-d.lp";
  } else {
    if (a.r_index.has_value() == a.r_value.has_value()) {
      throw Error("give exactly one of --r-index and --r-value");
    }
    const RadiusLadder ladder(inst);
    Distance r = 0.0;
    if (a.r_index) {
      if (*a.r_index < 1 || *a.r_index > ladder.size()) {
        throw Error("radius index must be in 1.." +
                    std::to_string(ladder.size()));
      }
      r = ladder[*a.r_index];
    } else {
      r = *a.r_value;
    }
    if (a.form == "cscp-plain") {
      doc = emit_cscp(inst, r, CscpVariant::kPlain);
    } else if (a.form == "cscp-full") {
      CutOptions options;
      options.keep_dominated = !a.drop_dominated;
      doc = emit_cscp(inst, r, CscpVariant::kFull, options);
    } else if (a.form == "cscp-af") {
      doc = emit_cscp_arcflow(inst, r);
    } else {
      throw Error("unknown form '" + a.form + "'");
    }
    // The emitters reject off-ladder radii, so the index exists here.
    const std::size_t k = a.r_index ? *a.r_index : *ladder.index_of(r);
    file = stem + "__r" + std::to_string(k) + "__" + a.form + ".lp";
  }
  fs::create_directories(a.out);
  const fs::path path = fs::path(a.out) / file;
  write_file(path, write_lp(doc));
  out << "variables " << doc.variables.size() << '\n'
      << "constraints " << doc.rows.size() << '\n'
      << "file " << path.string() << '\n';
  return kExitOk;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const std::vector<Strategy> strategies = parse_strategy_list(a.strategies);
  if (!fs::is_directory(a.dir)) throw Error("not a directory: '" + a.dir + "'");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".cpc") {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) throw Error("no .cpc instances in '" + a.dir + "'");
  std::sort(files.begin(), files.end());
  if (a.jobs < 1) throw Error("jobs must be at least 1");

  std::vector<Instance> instances;
  instances.reserve(files.size());
  for (const fs::path& f : files) instances.push_back(load_instance(f));

  const std::size_t total = strategies.size() * files.size();
  std::vector<std::vector<RunReport>> runs(
      strategies.size(), std::vector<RunReport>(files.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < total;) {
      const std::size_t s = t / files.size();
      const std::size_t k = t % files.size();
      const SolveReport rep = solve_cpcp(
          instances[k], solve_options(strategies[s], a.time_limit, a.seed));
      runs[s][k] =
          make_report(instance_id(files[k]), instances[k], strategies[s], rep);
    }
  };
  const int workers =
      static_cast<int>(std::min<std::size_t>(a.jobs, total));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::vector<std::string> names;
  for (const Strategy& s : strategies) names.push_back(s.name());
  std::ostringstream table;
  table << bench_csv_header(names);
  for (const GroupRow& row : aggregate(runs)) table << bench_csv_row(row);
  if (a.out.empty()) {
    out << table.str();
  } else {
    write_file(a.out, table.str());
  }
  if (!a.runs.empty()) {
    std::ostringstream detail;
    detail << run_csv_header();
    for (std::size_t k = 0; k < files.size(); ++k) {
      for (std::size_t s = 0; s < strategies.size(); ++s) {
        detail << run_csv_row(runs[s][k]);
      }
    }
    write_file(a.runs, detail.str());
  }
  bool gap = false;
  for (const auto& per : runs) {
    for (const RunReport& r : per) gap |= r.status == SolveStatus::kGap;
  }
  if (gap) err << "some runs ended with an open gap\n";
  return gap ? kExitGap : kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exact solver for the capacitated vertex p-center problem"};
  app.require_subcommand(0, 1);
  bool show_format = false;
  app.add_flag("--format", show_format, "Describe the instance file format");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve one instance");
  s->add_option("instance", solve.instance, "Instance file")->required();
  s->add_option("--strategy", solve.strategy,
                "Radius search: ss, bs, l2, l3, l4, l<k>")
      ->capture_default_str();
  s->add_option("--time-limit", solve.time_limit, "Seconds")
      ->envname(kTimeLimitEnv)
      ->capture_default_str();
  s->add_option("--seed", solve.seed, "Heuristic seed")->capture_default_str();
  s->add_option("--ils-rounds", solve.ils_rounds, "Heuristic descents")
      ->capture_default_str();
  s->add_option("--node-limit", solve.node_limit, "Per-subproblem node limit");
  s->add_option("--lb", solve.lower_bound,
                "Radius known to be infeasible (verified before use)");
  s->add_option("--witness", solve.witness, "Write the best solution here");
  s->add_option("--csv", solve.csv, "Append the report row to this file");
  s->add_flag("--no-header", solve.no_header, "Omit the CSV header");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate random instances");
  g->add_option("--n", gen.n, "Vertices")->capture_default_str();
  g->add_option("--rule", gen.rule, "Facility budget: n10, n7, n4, n3")
      ->capture_default_str();
  g->add_option("--count", gen.count, "Number of files")->capture_default_str();
  g->add_option("--seed", gen.seed, "Batch seed")->capture_default_str();
  g->add_option("--mode", gen.mode, "Distances: int or float")
      ->capture_default_str();
  g->add_option("--out", gen.out, "Output directory")->capture_default_str();

  EmitArgs emit;
  auto* e = app.add_subcommand("emit", "Write a MILP model in LP format");
  e->add_option("instance", emit.instance, "Instance file")->required();
  e->add_option("--form", emit.form, "cpcp-d, cscp-plain, cscp-full, cscp-af")
      ->required();
  e->add_option("--r-index", emit.r_index, "Ladder index (1-based)");
  e->add_option("--r-value", emit.r_value, "Radius value on the ladder");
  e->add_flag("--drop-dominated", emit.drop_dominated,
              "cscp-full: omit capacity cuts with rhs <= 1 and subset-sum "
              "cuts no tighter than the capacity row");
  e->add_option("--out", emit.out, "Output directory")->capture_default_str();

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Solve a directory, aggregate by (n, p)");
  b->add_option("dir", bench.dir, "Directory of .cpc files")->required();
  b->add_option("--strategies", bench.strategies, "Comma-separated list")
      ->capture_default_str();
  b->add_option("--time-limit", bench.time_limit, "Seconds per run")
      ->envname(kTimeLimitEnv)
      ->capture_default_str();
  b->add_option("--seed", bench.seed, "Heuristic seed")->capture_default_str();
  b->add_option("--jobs", bench.jobs, "Parallel workers")->capture_default_str();
  b->add_option("--out", bench.out, "Write the aggregate CSV here");
  b->add_option("--runs", bench.runs, "Write per-run CSV rows here");

  std::vector<const char*> argv;
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    // Subcommand help requests surface as CallForHelp from the subcommand.
    if (ex.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  }

  if (show_format) {
    out << kFormatHelp;
    return kExitOk;
  }
  if (app.get_subcommands().empty()) {
    err << "error: a subcommand is required\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*s) return cmd_solve(solve, out);
    if (*g) return cmd_generate(gen, out);
    if (*e) return cmd_emit(emit, out);
    return cmd_bench(bench, out, err);
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
  } catch (const fs::filesystem_error& ex) {
    err << "error: " << ex.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace cpcp::cli
