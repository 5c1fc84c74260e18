// Command-line driver: single-point reports, (a, c) scans and the full
// verification suite.
//
//   hsph report --n 1 --p 1 --a 0 --c 1
//   hsph scan --n 1 --p 1 --a-min -3 --a-max 3 --c-min 0.1 --c-max 4 --steps-a 15 --steps-c 15
//   hsph check --n 2 --p 1 --steps-a 5 --steps-c 5
//
// Exit codes: 0 success / all checks pass, 1 verification failure,
// 2 invalid input or I/O error.

#include "hsph/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInvalid = 2;

struct Flags {
  int n = 1;
  int p = 1;
  std::optional<double> a;
  std::optional<double> c;
  double a_min = -3.0;
  double a_max = 3.0;
  double c_min = 0.1;
  double c_max = 4.0;
  int steps_a = 5;
  int steps_c = 5;
  int restarts = 64;
  int max_iters = 2000;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string format = "csv";
  std::string output;
  bool check = false;
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--n", f.n, "first sphere is S^{2n+1}")->capture_default_str();
  cmd->add_option("--p", f.p, "second sphere is S^{2p+1}")->capture_default_str();
  cmd->add_option("--restarts", f.restarts, "optimizer restarts per extremum")
      ->capture_default_str();
  cmd->add_option("--max-iters", f.max_iters, "optimizer sweeps per restart")
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "optimizer seed")->capture_default_str();
  cmd->add_option("--tol", f.tol, "optimizer terminal step")->capture_default_str();
  cmd->add_option("--format", f.format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
  cmd->add_option("--output", f.output, "output file (default stdout)");
  cmd->add_option("--threads", f.threads, "worker threads (0 = hardware)")
      ->capture_default_str();
}

void add_point(CLI::App* cmd, Flags& f) {
  cmd->add_option("--a", f.a, "structure parameter a");
  cmd->add_option("--c", f.c, "structure parameter c > 0");
}

void add_grid(CLI::App* cmd, Flags& f) {
  cmd->add_option("--a-min", f.a_min)->capture_default_str();
  cmd->add_option("--a-max", f.a_max)->capture_default_str();
  cmd->add_option("--c-min", f.c_min)->capture_default_str();
  cmd->add_option("--c-max", f.c_max)->capture_default_str();
  cmd->add_option("--steps-a", f.steps_a)->capture_default_str();
  cmd->add_option("--steps-c", f.steps_c)->capture_default_str();
}

hsph::ReportOptions report_options(const Flags& f, bool with_checks) {
  hsph::ReportOptions opts;
  opts.extrema.restarts = f.restarts;
  opts.extrema.max_iters = f.max_iters;
  opts.extrema.seed = f.seed;
  opts.extrema.tol = f.tol;
  opts.with_checks = with_checks;
  if (f.restarts < 1) throw std::invalid_argument("--restarts must be >= 1");
  if (f.max_iters < 1) throw std::invalid_argument("--max-iters must be >= 1");
  if (!(f.tol > 0.0)) throw std::invalid_argument("--tol must be > 0");
  return opts;
}

hsph::OutputFormat output_format(const Flags& f) {
  return f.format == "jsonl" ? hsph::OutputFormat::Jsonl : hsph::OutputFormat::Csv;
}

void emit(const Flags& f, const std::string& text) {
  if (f.output.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(f.output, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot open output file: " + f.output);
  out << text;
  out.flush();
  if (!out) throw std::ios_base::failure("failed writing output file: " + f.output);
}

hsph::ScanGrid grid_from(const Flags& f) {
  hsph::ScanGrid g{f.n, f.p, f.a_min, f.a_max, f.c_min, f.c_max, f.steps_a, f.steps_c};
  g.validate();
  return g;
}

int cmd_report(const Flags& f) {
  const hsph::StructureParams params{f.n, f.p, f.a.value_or(0.0), f.c.value_or(1.0)};
  params.validate();
  const hsph::CurvatureReport rep = hsph::make_report(params, report_options(f, f.check));
  std::ostringstream os;
  hsph::write_reports(os, {rep}, output_format(f), f.check);
  emit(f, os.str());
  return f.check && !rep.all_checks_pass() ? kExitFailed : kExitOk;
}

int cmd_scan(const Flags& f) {
  const hsph::ScanGrid grid = grid_from(f);
  const auto reports = hsph::scan(grid, report_options(f, f.check), f.threads);
  std::ostringstream os;
  hsph::write_reports(os, reports, output_format(f), f.check);
  emit(f, os.str());
  return kExitOk;
}

int cmd_check(const Flags& f) {
  const hsph::ReportOptions opts = report_options(f, true);
  std::vector<hsph::CurvatureReport> reports;
  if (f.a.has_value() != f.c.has_value()) {
    throw std::invalid_argument("give both --a and --c for a single point, or neither");
  }
  if (f.a) {
    const hsph::StructureParams params{f.n, f.p, *f.a, *f.c};
    params.validate();
    reports.push_back(hsph::make_report(params, opts));
  } else {
    reports = hsph::scan(grid_from(f), opts, f.threads);
  }
  const auto summary = hsph::summarize_checks(reports);
  bool all = true;
  std::ostringstream os;
  if (f.format == "jsonl") {
    for (const auto& c : summary) {
      char buf[256];
      std::snprintf(buf, sizeof buf,
                    "{\"name\":\"%s\",\"pass\":%s,\"worst_error\":%.12g,\"tolerance\":%.12g}\n",
                    c.name.c_str(), c.pass ? "true" : "false", c.worst_error, c.tolerance);
      os << buf;
      all = all && c.pass;
    }
  } else {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-26s %-5s %-20s %s\n", "check", "pass", "worst_error",
                  "tolerance");
    os << buf;
    for (const auto& c : summary) {
      std::snprintf(buf, sizeof buf, "%-26s %-5s %-20.12g %.3g\n", c.name.c_str(),
                    c.pass ? "PASS" : "FAIL", c.worst_error, c.tolerance);
      os << buf;
      all = all && c.pass;
    }
    os << (all ? "ALL PASS" : "FAILURES") << " (" << reports.size() << " point"
       << (reports.size() == 1 ? "" : "s") << ")\n";
  }
  emit(f, os.str());
  return all ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature of invariant Hermitian metrics on S^{2n+1} x S^{2p+1}"};
  app.require_subcommand(1);
  Flags flags;

  auto* report = app.add_subcommand("report", "curvature report at one (a, c) point");
  add_common(report, flags);
  add_point(report, flags);
  report->add_flag("--check", flags.check, "run the verification suite and append its summary");

  auto* scan = app.add_subcommand("scan", "reports over an (a, c) grid, sorted by (a, c)");
  add_common(scan, flags);
  add_grid(scan, flags);
  scan->add_flag("--check", flags.check, "append verification summary columns");

  auto* check = app.add_subcommand("check", "full verification suite at a point or on a grid");
  add_common(check, flags);
  add_point(check, flags);
  add_grid(check, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (report->parsed()) return cmd_report(flags);
    if (scan->parsed()) return cmd_scan(flags);
    return cmd_check(flags);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
