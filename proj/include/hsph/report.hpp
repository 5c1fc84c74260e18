#pragma once

// Per-point curvature reports, the verification suite, parameter-plane scans
// and their CSV / JSON Lines serialization.

#include "hsph/extremes.hpp"

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace hsph {

struct CheckResult {
  std::string name;
  bool pass = false;
  double worst_error = 0.0;
  double tolerance = 0.0;
};

struct Tolerances {
  double structure = 1e-12;    // J^2 = -Id, omega-compatibility, orthonormality
  double metric_blocks = 1e-14;
  double invariance = 1e-10;   // ad_h-invariance of I(a,c)
  double connection = 1e-10;   // U solve vs closed form, torsion, compatibility
  double curvature = 1e-10;    // tabulated entries, symmetries, Bianchi
  double ricci = 1e-9;
  double scalar = 1e-9;
  double containment = 1e-6;
};

struct ReportOptions {
  ExtremaOptions extrema;
  Tolerances tol;
  bool with_checks = false;
};

struct CurvatureReport {
  StructureParams params;
  Region region = Region::High;
  double scalar_closed = 0.0;
  double scalar_trace = 0.0;
  std::vector<double> ricci_eigs_closed;
  double ricci_max_route_discrepancy = 0.0;
  double k_min_closed = 0.0;
  double k_max_closed = 0.0;
  double k_lo_numeric = 0.0;
  double k_hi_numeric = 0.0;
  double gap_low = 0.0;
  double gap_high = 0.0;
  bool converged = true;
  double boundary_mismatch = 0.0;
  std::vector<CheckResult> checks;

  bool all_checks_pass() const;
};

/// Max entrywise spread between the closed-form, Besse and contraction Ricci
/// matrices, all in the orthonormal Z frame.
double ricci_route_discrepancy(const Geometry& geom, const CurvatureOperator& r);

/// Runs every structural and closed-form-vs-oracle check at one point.
std::vector<CheckResult> run_checks(const Geometry& geom, const CurvatureOperator& r,
                                    const ExtremesReport& extremes, const ReportOptions& opts);

CurvatureReport make_report(const StructureParams& params, const ReportOptions& opts);
CurvatureReport make_report(const StructureParams& params, const ReportOptions& opts,
                            std::shared_ptr<const ReductiveFrame> frame);

struct ScanGrid {
  int n = 1;
  int p = 1;
  double a_min = -3.0;
  double a_max = 3.0;
  double c_min = 0.1;
  double c_max = 4.0;
  int steps_a = 2;
  int steps_c = 2;

  /// Throws std::invalid_argument for n,p < 1, c_min <= 0, reversed ranges or
  /// fewer than two steps on an axis.
  void validate() const;
  double a_at(int i) const;
  double c_at(int j) const;
};

/// Reports for every grid point, ordered by (a, c) with a as the outer axis,
/// independent of `threads`.
std::vector<CurvatureReport> scan(const ScanGrid& grid, const ReportOptions& opts,
                                  unsigned threads = 0);

/// Aggregates per-check results over many reports: worst error, all-pass.
std::vector<CheckResult> summarize_checks(const std::vector<CurvatureReport>& reports);

enum class OutputFormat { Csv, Jsonl };

/// CSV columns, in order:
///   n,p,a,c,region,scalar_closed,scalar_trace,ricci_eigs_closed,
///   ricci_max_route_discrepancy,k_min_closed,k_max_closed,k_lo_numeric,
///   k_hi_numeric,gap_low,gap_high,converged
/// and, with checks: checks_passed,checks_total,checks_all_pass,worst_check.
/// Reals use 12 significant digits; ricci_eigs_closed is ';'-separated.
std::string csv_header(bool with_checks);
std::string csv_row(const CurvatureReport& report, bool with_checks);
std::string jsonl_row(const CurvatureReport& report);

void write_reports(std::ostream& out, const std::vector<CurvatureReport>& reports,
                   OutputFormat format, bool with_checks);

}  // namespace hsph
