#pragma once

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kbiplex/edge_list.hpp"
#include "kbiplex/generator.hpp"
#include "kbiplex/large.hpp"
#include "kbiplex/traversal.hpp"
#include "kbiplex/verify.hpp"

namespace kbiplex::cli {

enum Exit : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// An error that maps to an exit status.
struct CliError : std::runtime_error {
  CliError(Exit code, const std::string& what) : std::runtime_error(what), code(code) {}
  Exit code;
};

namespace detail {

struct EnumArgs {
  std::string input;
  std::string format = "plain";
  unsigned k = 1;
  std::string mode = "i";
  std::string variant = "l2r2";
  std::string anchor = "left";
  bool no_exclusion = false;
  std::optional<std::size_t> theta, theta_left, theta_right;
  std::optional<std::size_t> limit;
  bool stats = false;
  bool measure_delay = false;
  std::string output = "-";
};

struct GenArgs {
  Index nl = 0, nr = 0;
  double density = 0.0;
  std::uint64_t seed = 0;
  std::string output = "-";
};

struct VerifyArgs {
  std::size_t trials = 200;
  Index max_side = 6;
  Index kmax = 3;
  std::uint64_t seed = 42;
  bool inject_fault = false;
  std::string report;
};

struct BenchArgs {
  std::string input;
  std::string format = "plain";
  Index nl = 0, nr = 0;
  double density = 10.0;
  std::uint64_t seed = 1;
  unsigned k = 1;
  std::vector<std::string> modes{"b", "i"};
  std::vector<std::string> variants{"l2r2"};
  bool no_exclusion = false;
  std::size_t limit = 1000;
};

inline void add_graph_input(CLI::App& cmd, std::string& input, std::string& format, bool required) {
  auto* opt = cmd.add_option("--input", input, "Edge-list file");
  if (required) opt->required();
  cmd.add_option("--format", format, "Input format")
      ->check(CLI::IsMember({"plain", "konect"}))
      ->capture_default_str();
}

inline BipartiteGraph read_graph(const std::string& path, const std::string& format) {
  std::ifstream in(path);
  if (!in) throw CliError(kFailure, "cannot open '" + path + "'");
  try {
    return load_edge_list(in, format == "konect" ? EdgeListFormat::Konect : EdgeListFormat::Plain);
  } catch (const ParseError& e) {
    throw CliError(kFailure, path + ": " + e.what());
  }
}

/// Returns the stream named by `path` ("-" is `fallback`).
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      os_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw CliError(kFailure, "cannot write '" + path + "'");
    os_ = file_.get();
  }
  std::ostream& stream() { return *os_; }
  void finish() {
    os_->flush();
    if (!*os_) throw CliError(kFailure, "write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

inline Mode parse_mode(const std::string& s) { return s == "b" ? Mode::Baseline : Mode::Improved; }

inline void print_stats(std::ostream& os, const RunStats& st, bool delay) {
  os << "# solutions=" << st.solutions << " links=" << st.links << " calls=" << st.recursive_calls
     << " max_call_gap=" << st.max_call_gap << '\n';
  if (delay) os << "# max_wall_gap_seconds=" << std::setprecision(6) << st.max_wall_gap_seconds << '\n';
}

inline int cmd_enum(const EnumArgs& a, std::ostream& out) {
  if (a.theta && (a.theta_left || a.theta_right))
    throw CliError(kUsage, "--theta excludes --theta-left/--theta-right");
  RunConfig cfg;
  cfg.k = a.k;
  cfg.mode = parse_mode(a.mode);
  cfg.variant = parse_local_variant(a.variant);
  cfg.anchor_side = a.anchor == "right" ? Side::Right : Side::Left;
  cfg.exclusion = !a.no_exclusion;
  cfg.limit = a.limit;
  cfg.measure_delay = a.measure_delay;
  cfg.size.left = a.theta ? *a.theta : a.theta_left.value_or(0);
  cfg.size.right = a.theta ? *a.theta : a.theta_right.value_or(0);
  const bool large = a.theta || a.theta_left || a.theta_right;
  if (large && !cfg.size.active()) throw CliError(kUsage, "size thresholds must not all be zero");
  if (large && cfg.mode == Mode::Baseline)
    throw CliError(kUsage, "size-constrained enumeration runs in mode i only");

  const BipartiteGraph g = read_graph(a.input, a.format);
  OutputTarget target(a.output, out);
  std::ostream& os = target.stream();
  auto sink = [&](const Biplex& h, std::size_t) { os << format_biplex(g, h) << '\n'; };
  const RunStats st = large ? enumerate_large(g, cfg, true, sink) : traverse(g, cfg, sink);
  if (a.stats || a.measure_delay) print_stats(os, st, a.measure_delay);
  target.finish();
  return kOk;
}

inline int cmd_gen(const GenArgs& a, std::ostream& out) {
  BipartiteGraph g;
  try {
    g = gen_er(a.nl, a.nr, a.density, a.seed);
  } catch (const std::invalid_argument& e) {
    throw CliError(kUsage, e.what());
  }
  OutputTarget target(a.output, out);
  write_edge_list(target.stream(), g, WriteOptions{.declare_vertices = false});
  target.finish();
  return kOk;
}

// The largest solution other than the initial one, if any: pre-seeding it
// makes every configuration skip a real MBP.
inline std::optional<Biplex> fault_target(const BipartiteGraph& g, Tolerance k) {
  const Biplex h0 = initial_solution(g, k);
  auto all = brute_force_mbps(g, k);
  for (auto it = all.rbegin(); it != all.rend(); ++it)
    if (*it != h0) return *it;
  return std::nullopt;
}

inline int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.max_side < 1 || a.kmax < 1) throw CliError(kUsage, "--max-side and --kmax must be >= 1");
  if (2 * static_cast<std::size_t>(a.max_side) > kOracleMaxVertices)
    throw CliError(kUsage, "--max-side exceeds the oracle limit");
  RandomSuite suite(a.seed, a.max_side, a.kmax);
  nlohmann::json report = nlohmann::json::array();
  std::size_t checks = 0;
  for (std::size_t t = 0; t < a.trials; ++t) {
    const auto in = suite.next();
    std::vector<Biplex> preseed;
    if (a.inject_fault)
      if (auto h = fault_target(in.graph, in.k)) preseed.push_back(*h);
    VerifyReport rep = verify_graph(in.graph, in.k, preseed);
    for (std::size_t theta = 1; theta <= 4; ++theta) {
      RunConfig c;
      c.store_preseed = preseed;
      c.size.left = c.size.right = theta;
      rep.append(verify_run(in.graph, in.k, c), "large/theta=" + std::to_string(theta) + ":");
    }
    checks += rep.records.size();
    std::ostringstream where;
    where << "trial " << t << " (nl=" << in.spec.n_left << " nr=" << in.spec.n_right
          << " density=" << in.spec.density << " seed=" << in.spec.seed << " k=" << in.k << ")";
    if (!a.report.empty())
      report.push_back({{"trial", t}, {"graph", where.str()}, {"checks", to_json(rep)}});
    if (const CheckRecord* bad = rep.first_failure()) {
      out << "FAIL " << where.str() << ": " << bad->name << ": " << bad->witness << '\n';
      write_edge_list(out, in.graph);
      if (!a.report.empty()) {
        OutputTarget target(a.report, out);
        target.stream() << report.dump(2) << '\n';
        target.finish();
      }
      return kFailure;
    }
  }
  if (!a.report.empty()) {
    OutputTarget target(a.report, out);
    target.stream() << report.dump(2) << '\n';
    target.finish();
  }
  out << "PASS " << a.trials << " graphs, " << checks << " checks\n";
  return kOk;
}

inline int cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.input.empty() == (a.nl == 0 && a.nr == 0))
    throw CliError(kUsage, "give either --input or --nl/--nr");
  BipartiteGraph g;
  std::string source = a.input;
  if (!a.input.empty()) {
    g = read_graph(a.input, a.format);
  } else {
    try {
      g = gen_er(a.nl, a.nr, a.density, a.seed);
    } catch (const std::invalid_argument& e) {
      throw CliError(kUsage, e.what());
    }
    std::ostringstream s;
    s << "er(" << a.nl << "," << a.nr << "," << a.density << "," << a.seed << ")";
    source = s.str();
  }
  std::vector<nlohmann::json> rows;
  for (const auto& m : a.modes)
    for (const auto& v : a.variants) {
      RunConfig cfg;
      cfg.k = a.k;
      cfg.mode = parse_mode(m);
      cfg.variant = parse_local_variant(v);
      cfg.exclusion = !a.no_exclusion;
      cfg.limit = a.limit;
      cfg.measure_delay = true;
      const auto t0 = std::chrono::steady_clock::now();
      const RunStats st = traverse(g, cfg, [](const Biplex&, std::size_t) {});
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      rows.push_back({{"graph", source},
                      {"mode", m},
                      {"variant", v},
                      {"k", a.k},
                      {"exclusion", cfg.exclusion},
                      {"limit", a.limit},
                      {"seconds", secs},
                      {"solutions", st.solutions},
                      {"links", st.links},
                      {"calls", st.recursive_calls},
                      {"max_call_gap", st.max_call_gap},
                      {"max_wall_gap_seconds", st.max_wall_gap_seconds}});
    }
  out << std::left << std::setw(6) << "mode" << std::setw(9) << "variant" << std::right
      << std::setw(11) << "seconds" << std::setw(11) << "solutions" << std::setw(11) << "links"
      << std::setw(9) << "calls" << std::setw(9) << "max_gap" << std::setw(14) << "max_wall_gap"
      << '\n';
  for (const auto& r : rows)
    out << std::left << std::setw(6) << r["mode"].get<std::string>() << std::setw(9)
        << r["variant"].get<std::string>() << std::right << std::fixed << std::setprecision(3)
        << std::setw(11) << r["seconds"].get<double>() << std::setw(11)
        << r["solutions"].get<std::size_t>() << std::setw(11) << r["links"].get<std::size_t>()
        << std::setw(9) << r["calls"].get<std::size_t>() << std::setw(9)
        << r["max_call_gap"].get<std::size_t>() << std::setw(14) << std::setprecision(6)
        << r["max_wall_gap_seconds"].get<double>() << '\n';
  out.unsetf(std::ios::floatfield);
  for (const auto& r : rows) out << r.dump() << '\n';
  return kOk;
}

}  // namespace detail

/// Parses `args` (program name excluded) and runs the chosen subcommand.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Enumerate maximal k-biplexes of a bipartite graph"};
  app.require_subcommand(1);
  const auto variants = CLI::IsMember({"l1r1", "l1r2", "l2r1", "l2r2"});
  const auto modes = CLI::IsMember({"b", "i"});

  EnumArgs ea;
  auto* en = app.add_subcommand("enum", "Print every maximal k-biplex, one per line");
  add_graph_input(*en, ea.input, ea.format, true);
  en->add_option("-k", ea.k, "Non-neighbors tolerated per vertex")->check(CLI::PositiveNumber)->capture_default_str();
  en->add_option("--mode", ea.mode, "b (baseline) or i (improved)")->check(modes)->capture_default_str();
  en->add_option("--variant", ea.variant, "Local enumeration variant")->check(variants)->capture_default_str();
  en->add_option("--anchor", ea.anchor, "Anchor side")->check(CLI::IsMember({"left", "right"}))->capture_default_str();
  en->add_flag("--no-exclusion", ea.no_exclusion, "Disable the exclusion strategy");
  en->add_option("--theta", ea.theta, "Only MBPs with both sides >= theta")->check(CLI::PositiveNumber);
  en->add_option("--theta-left", ea.theta_left, "Only MBPs with |L| >= theta-left");
  en->add_option("--theta-right", ea.theta_right, "Only MBPs with |R| >= theta-right");
  en->add_option("--limit", ea.limit, "Stop after this many solutions")->check(CLI::PositiveNumber);
  en->add_flag("--stats", ea.stats, "Append '#' summary lines");
  en->add_flag("--measure-delay", ea.measure_delay, "Also report the largest wall-clock gap between outputs");
  en->add_option("--output", ea.output, "Output file, '-' for stdout")->capture_default_str();

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Write a seeded uniform random bipartite graph");
  gen->add_option("--nl", ga.nl, "Left vertices")->required();
  gen->add_option("--nr", ga.nr, "Right vertices")->required();
  gen->add_option("--density", ga.density, "|E| / (|L| + |R|)")->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", ga.seed, "RNG seed")->capture_default_str();
  gen->add_option("--output", ga.output, "Output file, '-' for stdout")->capture_default_str();

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "Check every configuration against brute force on random graphs");
  ver->add_option("--trials", va.trials, "Number of random graphs")->capture_default_str();
  ver->add_option("--max-side", va.max_side, "Largest side size")->capture_default_str();
  ver->add_option("--kmax", va.kmax, "Largest k")->capture_default_str();
  ver->add_option("--seed", va.seed, "RNG seed")->capture_default_str();
  ver->add_flag("--inject-fault", va.inject_fault, "Pre-seed the solution store so one MBP goes missing");
  ver->add_option("--report", va.report, "Write the per-check JSON report here");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Time enumeration across modes and variants");
  add_graph_input(*bench, ba.input, ba.format, false);
  bench->add_option("--nl", ba.nl, "Generate: left vertices");
  bench->add_option("--nr", ba.nr, "Generate: right vertices");
  bench->add_option("--density", ba.density, "Generate: density")->capture_default_str();
  bench->add_option("--seed", ba.seed, "Generate: seed")->capture_default_str();
  bench->add_option("-k", ba.k, "Non-neighbors tolerated per vertex")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--modes", ba.modes, "Modes to run")->check(modes)->delimiter(',')->capture_default_str();
  bench->add_option("--variants", ba.variants, "Variants to run")->check(variants)->delimiter(',')->capture_default_str();
  bench->add_flag("--no-exclusion", ba.no_exclusion, "Disable the exclusion strategy");
  bench->add_option("--limit", ba.limit, "Solutions per run")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*en) return cmd_enum(ea, out);
    if (*gen) return cmd_gen(ga, out);
    if (*ver) return cmd_verify(va, out);
    return cmd_bench(ba, out);
  } catch (const CliError& e) {
    err << "error: " << e.what() << '\n';
    return e.code;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace kbiplex::cli
