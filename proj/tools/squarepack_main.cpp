// squarepack: pack | fuzz | serve
//
// Exit codes: 0 success, 1 placement failure or audit violation,
// 2 I/O or parse error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "squarepack/fuzz.hpp"
#include "squarepack/http_server.hpp"
#include "squarepack/serialize.hpp"
#include "squarepack/session.hpp"
#include "squarepack/svg.hpp"

using namespace squarepack;

namespace {

bool read_file(const std::string& path, std::string& out) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    ss << in.rdbuf();
  }
  out = ss.str();
  return true;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

struct PackArgs {
  std::string input;
  bool verify = false;
  std::string svg;
  double budget = 0.375;
  bool enforce_budget = false;
  std::string log;
};

int cmd_pack(const PackArgs& a) {
  std::string text;
  if (!read_file(a.input, text)) {
    std::cerr << "cannot read " << a.input << "\n";
    return 2;
  }
  std::vector<double> heights;
  try {
    heights = parse_heights(text);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }

  Packer packer(PackerConfig{a.enforce_budget, a.budget});
  std::string records;
  int code = 0;
  for (std::size_t i = 0; i < heights.size(); ++i) {
    const PlacementOutcome out = packer.place(heights[i]);
    if (out.placed()) {
      records += placement_record(out.square(), packer.state()).dump() + "\n";
    } else {
      records += rejection_record(i, heights[i], out.rejection()).dump() + "\n";
      code = 1;
      break;
    }
  }
  std::cout << records << std::flush;

  if (!a.log.empty()) {
    std::string events;
    for (const Event& e : packer.state().events) events += to_json(e, packer.state()).dump() + "\n";
    if (!write_file(a.log, events)) {
      std::cerr << "cannot write " << a.log << "\n";
      return 2;
    }
  }
  if (!a.svg.empty() && !write_file(a.svg, render_svg(packer.state()))) {
    std::cerr << "cannot write " << a.svg << "\n";
    return 2;
  }
  if (a.verify) {
    const AuditReport rep = audit_all(packer.state(), true);
    for (const Violation& v : rep.violations) std::cerr << "violation " << v.rule << ": " << v.detail << "\n";
    if (!rep.passed()) code = 1;
  }
  return code;
}

struct FuzzArgs {
  FuzzOptions opts;
  std::string dist = "uniform";
  bool audit_all = false;
  bool allow_failures = false;
};

int cmd_fuzz(FuzzArgs a) {
  try {
    a.opts.distribution = parse_distribution(a.dist);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  if (a.opts.distribution == Distribution::scripted) {
    std::cerr << "scripted sequences need an input; use pack\n";
    return 2;
  }
  if (a.opts.budget > 0.5) {
    std::cerr << "budget must be at most 0.5\n";
    return 2;
  }
  a.opts.audit = a.audit_all;
  const FuzzSummary s = run_fuzz(a.opts);

  json summary = {{"runs", s.runs},
                  {"packed", s.packed},
                  {"placement_failures", s.placement_failures},
                  {"audit_failures", s.audit_failures},
                  {"squares", s.total_squares},
                  {"distribution", a.dist},
                  {"budget", a.opts.budget},
                  {"seed", a.opts.seed},
                  {"failing_seeds", s.failing_seeds}};
  if (a.audit_all) {
    summary["pair_close_runs"] = s.pair_close_runs;
    if (s.pair_close_runs) summary["min_pair_close_total"] = s.min_pair_close_total;
    summary["max_large_reservation_sum"] = s.max_reservation_sum;
  }
  std::cout << s.packed << "/" << s.runs << " packed\n" << summary.dump(2) << "\n";
  for (const std::string& m : s.first_messages) std::cerr << m << "\n";
  if (!s.clean() && !a.allow_failures) {
    std::cerr << "first failing seed: " << s.failing_seeds.front() << "\n";
    return 1;
  }
  return 0;
}

int cmd_serve_stdio(PackerConfig config) {
  Session session(config);
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::cout << session.handle_line(line).dump() << "\n" << std::flush;
  }
  return 0;
}

int cmd_serve_http(PackerConfig config, const std::string& host, int port) {
  HttpServer server(config);
  const int bound = server.bind(host, port);
  if (bound < 0) {
    std::cerr << "cannot bind " << host << ":" << port << "\n";
    return 2;
  }
  std::cerr << "listening on http://" << host << ":" << bound << "\n";
  return server.listen() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online square packing into the unit square"};
  app.require_subcommand(1);

  PackArgs pack;
  auto* p = app.add_subcommand("pack", "Place a height sequence and print placement records");
  p->add_option("input", pack.input, "Sequence file (one decimal per line or a JSON array); - for stdin")
      ->required();
  p->add_flag("--verify", pack.verify, "Run every audit on the final state");
  p->add_option("--svg", pack.svg, "Write a final-state SVG");
  p->add_option("--budget", pack.budget, "Area budget")->check(CLI::Range(0.0, 1.0));
  p->add_flag("--enforce-budget", pack.enforce_budget, "Reject squares that exceed the budget");
  p->add_option("--log", pack.log, "Write the event log as JSON lines");

  FuzzArgs fuzz;
  auto* f = app.add_subcommand("fuzz", "Pack generated sequences with independent packers");
  f->add_option("--runs", fuzz.opts.runs, "Number of sequences");
  f->add_option("--seed", fuzz.opts.seed, "Seed of the first run; run i uses seed + i");
  f->add_option("--dist", fuzz.dist,
                "uniform | class_boundary | medium_heavy | very_small_heavy | mixed");
  f->add_option("--budget", fuzz.opts.budget, "Area budget per sequence");
  f->add_flag("--audit-all", fuzz.audit_all, "Audit every final state");
  f->add_flag("--allow-failures", fuzz.allow_failures, "Report failures but exit 0");
  f->add_option("--threads", fuzz.opts.threads, "Worker threads (0 = all cores)");
  f->add_option("--overflow-retries", fuzz.opts.overflow_retries,
                "Redraws before a sequence stops at the budget");
  f->add_option("--max-squares", fuzz.opts.max_squares, "Cap on sequence length");

  int port = 8080;
  std::string host = "127.0.0.1";
  bool stdio = false;
  double serve_budget = 0.375;
  bool serve_enforce = false;
  auto* s = app.add_subcommand("serve", "Run the interactive session protocol");
  auto* port_opt = s->add_option("--port", port, "HTTP port (0 picks a free one)");
  auto* stdio_opt = s->add_flag("--stdio", stdio, "Newline-delimited JSON on stdin/stdout");
  port_opt->excludes(stdio_opt);
  s->add_option("--host", host, "HTTP bind address");
  s->add_option("--budget", serve_budget, "Area budget");
  s->add_flag("--enforce-budget", serve_enforce, "Reject squares that exceed the budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (*p) return cmd_pack(pack);
  if (*f) return cmd_fuzz(fuzz);
  const PackerConfig config{serve_enforce, serve_budget};
  return stdio ? cmd_serve_stdio(config) : cmd_serve_http(config, host, port);
}
