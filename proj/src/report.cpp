#include "hsph/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace hsph {

namespace {

CheckResult make_check(std::string name, double worst, double tol) {
  return {std::move(name), worst <= tol, worst, tol};
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// g(a,c) written out block by block, independent of omega and I.
Eigen::MatrixXd tabulated_metric(const StructureParams& params) {
  const int d = params.dim();
  const int x2 = 2 * params.n + 1;
  const double a = params.a;
  const double c = params.c;
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(d, d);
  g(0, 0) = 1.0 / c;
  g(x2, x2) = (a * a + c * c) / c;
  g(0, x2) = g(x2, 0) = -a / c;
  return g;
}

}  // namespace

bool CurvatureReport::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

double ricci_route_discrepancy(const Geometry& geom, const CurvatureOperator& r) {
  const Eigen::MatrixXd closed = to_orthonormal(ricci_closed_form(geom.params), geom.orthonormal);
  const Eigen::MatrixXd besse = ricci_via_besse(geom);
  const Eigen::MatrixXd contraction = ricci_via_contraction(r);
  return std::max({max_abs(closed - contraction), max_abs(besse - contraction),
                   max_abs(closed - besse)});
}

std::vector<CheckResult> run_checks(const Geometry& geom, const CurvatureOperator& r,
                                    const ExtremesReport& extremes, const ReportOptions& opts) {
  const Tolerances& tol = opts.tol;
  const StructureParams& params = geom.params;
  const ReductiveFrame& frame = *geom.frame;
  const int d = geom.dim();
  const Eigen::MatrixXd& j = geom.complex_structure;
  const Eigen::MatrixXd& g = geom.metric.matrix;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  std::vector<CheckResult> out;

  out.push_back(make_check("j_squared", max_abs(j * j + id), tol.structure));

  double inv = 0.0;
  for (int k = 0; k < frame.dim_h(); ++k) {
    const Eigen::MatrixXd ad = frame.ad_h_matrix(k);
    inv = std::max(inv, max_abs(ad * j - j * ad));
  }
  out.push_back(make_check("ad_h_invariance", inv, tol.invariance));

  const PositivityReport pos =
      check_positive_associated(j, fundamental_form(params.n, params.p), tol.structure);
  CheckResult positivity = make_check(
      "positive_associated", std::max(pos.compat_error, std::max(0.0, -pos.min_eigenvalue)),
      tol.structure);
  positivity.pass = pos.ok();
  out.push_back(positivity);

  out.push_back(
      make_check("metric_blocks", max_abs(g - tabulated_metric(params)), tol.metric_blocks));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  CheckResult pd{"metric_positive_definite", min_eig > 0.0, std::max(0.0, -min_eig), 0.0};
  out.push_back(pd);

  const Eigen::MatrixXd& zf = geom.orthonormal.vectors;
  out.push_back(make_check("orthonormal_frame", max_abs(zf.transpose() * g * zf - id),
                           tol.structure));

  const UTensor closed = u_tensor_closed_form(params);
  out.push_back(make_check("connection_closed_form", max_discrepancy(geom.connection, closed),
                           tol.connection));
  out.push_back(make_check("connection_identity",
                           std::max(defining_identity_error(geom.connection, frame, g),
                                    geom.connection.symmetry_error()),
                           tol.connection));

  double torsion = 0.0;
  double compat = 0.0;
  for (int a = 0; a < d; ++a) {
    const Eigen::VectorXd x = Eigen::VectorXd::Unit(d, a);
    for (int b = 0; b < d; ++b) {
      const Eigen::VectorXd y = Eigen::VectorXd::Unit(d, b);
      const Eigen::VectorXd dxy = covariant_derivative(x, y, geom.connection, frame);
      const Eigen::VectorXd dyx = covariant_derivative(y, x, geom.connection, frame);
      torsion = std::max(torsion, (dxy - dyx - frame.bracket_p(x, y)).cwiseAbs().maxCoeff());
      for (int c = 0; c < d; ++c) {
        const Eigen::VectorXd z = Eigen::VectorXd::Unit(d, c);
        const double lhs =
            geom.inner(dxy, z) + geom.inner(y, covariant_derivative(x, z, geom.connection, frame));
        compat = std::max(compat, std::abs(lhs));
      }
    }
  }
  out.push_back(make_check("torsion_free", torsion, tol.connection));
  out.push_back(make_check("metric_compatible", compat, tol.connection));

  out.push_back(make_check("curvature_symmetries", r.symmetries().worst(), tol.curvature));

  double entries = 0.0;
  for (const TabulatedEntry& e : tabulated_curvature_entries(params)) {
    entries = std::max(entries, std::abs(r.entry(e.alpha, e.nu, e.rho, e.mu) - e.expected));
  }
  out.push_back(make_check("curvature_entries", entries, tol.curvature));

  out.push_back(make_check("ricci_three_route", ricci_route_discrepancy(geom, r), tol.ricci));

  std::vector<double> analytic = ricci_eigenvalues_closed_form(params);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ric_es(ricci_closed_form(params),
                                                        Eigen::EigenvaluesOnly);
  std::sort(analytic.begin(), analytic.end());
  double eig_err = 0.0;
  for (int k = 0; k < d; ++k) {
    const double ref = analytic[k];
    eig_err = std::max(eig_err, std::abs(ric_es.eigenvalues()(k) - ref) / std::max(1.0, std::abs(ref)));
  }
  out.push_back(make_check("ricci_eigenvalues", eig_err, tol.ricci));

  out.push_back(make_check("scalar_two_route",
                           std::abs(scalar_closed_form(params) - scalar_via_trace(geom)),
                           tol.scalar));

  double coord = 0.0;
  const double a = params.a;
  const double c = params.c;
  const int x2 = 2 * params.n + 1;
  for (int k = 1; k <= 2 * params.n; ++k) {
    coord = std::max(coord, std::abs(r.entry(0, k, 0, k) - 1.0 / c));
  }
  for (int k = x2 + 1; k < d; ++k) {
    coord = std::max(coord, std::abs(r.entry(0, k, 0, k) - a * a / c));
    coord = std::max(coord, std::abs(r.entry(x2, k, x2, k) - c));
  }
  out.push_back(make_check("coordinate_planes", coord, tol.curvature));

  out.push_back(make_check("theorem_containment",
                           std::max({0.0, -extremes.gap_low, -extremes.gap_high}),
                           tol.containment));

  const BlockBoundsReport blocks = block_bounds_check(r, opts.extrema, tol.containment);
  const double block_err = std::max(
      {0.0, blocks.first.bound_lo - blocks.first.k_lo, blocks.first.k_hi - blocks.first.bound_hi,
       blocks.second.bound_lo - blocks.second.k_lo, blocks.second.k_hi - blocks.second.bound_hi});
  out.push_back(make_check("factor_block_bounds", block_err, tol.containment));
  return out;
}

CurvatureReport make_report(const StructureParams& params, const ReportOptions& opts) {
  params.validate();
  return make_report(params, opts, std::make_shared<const ReductiveFrame>(params.n, params.p));
}

CurvatureReport make_report(const StructureParams& params, const ReportOptions& opts,
                            std::shared_ptr<const ReductiveFrame> frame) {
  const Geometry geom = Geometry::build(params, std::move(frame));
  const CurvatureOperator r = curvature_operator(geom);
  const ExtremesReport ext = extremes_report(geom, r, opts.extrema);

  CurvatureReport rep;
  rep.params = params;
  rep.region = ext.region;
  rep.scalar_closed = scalar_closed_form(params);
  rep.scalar_trace = scalar_via_trace(geom);
  rep.ricci_eigs_closed = ricci_eigenvalues_closed_form(params);
  rep.ricci_max_route_discrepancy = ricci_route_discrepancy(geom, r);
  rep.k_min_closed = ext.k_min_closed;
  rep.k_max_closed = ext.k_max_closed;
  rep.k_lo_numeric = ext.k_lo_numeric;
  rep.k_hi_numeric = ext.k_hi_numeric;
  rep.gap_low = ext.gap_low;
  rep.gap_high = ext.gap_high;
  rep.converged = ext.converged;
  rep.boundary_mismatch = ext.boundary_mismatch;
  if (opts.with_checks) rep.checks = run_checks(geom, r, ext, opts);
  return rep;
}

void ScanGrid::validate() const {
  if (n < 1 || p < 1) throw std::invalid_argument("n and p must be >= 1");
  if (!std::isfinite(a_min) || !std::isfinite(a_max) || !std::isfinite(c_min) ||
      !std::isfinite(c_max)) {
    throw std::invalid_argument("scan ranges must be finite");
  }
  if (a_min > a_max) throw std::invalid_argument("a-min must not exceed a-max");
  if (!(c_min > 0.0)) throw std::invalid_argument("c range must be strictly positive");
  if (c_min > c_max) throw std::invalid_argument("c-min must not exceed c-max");
  if (steps_a < 2 || steps_c < 2) throw std::invalid_argument("steps must be >= 2 per axis");
}

double ScanGrid::a_at(int i) const {
  return i == steps_a - 1 ? a_max : a_min + (a_max - a_min) * i / (steps_a - 1);
}

double ScanGrid::c_at(int j) const {
  return j == steps_c - 1 ? c_max : c_min + (c_max - c_min) * j / (steps_c - 1);
}

std::vector<CurvatureReport> scan(const ScanGrid& grid, const ReportOptions& opts,
                                  unsigned threads) {
  grid.validate();
  const auto frame = std::make_shared<const ReductiveFrame>(grid.n, grid.p);
  const int total = grid.steps_a * grid.steps_c;
  std::vector<CurvatureReport> out(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<int> next{0};

  auto worker = [&] {
    for (int k = next++; k < total; k = next++) {
      try {
        const StructureParams params{grid.n, grid.p, grid.a_at(k / grid.steps_c),
                                     grid.c_at(k % grid.steps_c)};
        out[k] = make_report(params, opts, frame);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(total));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<CheckResult> summarize_checks(const std::vector<CurvatureReport>& reports) {
  std::vector<CheckResult> out;
  std::map<std::string, size_t> index;
  for (const auto& rep : reports) {
    for (const auto& c : rep.checks) {
      const auto [it, inserted] = index.emplace(c.name, out.size());
      if (inserted) {
        out.push_back(c);
        continue;
      }
      CheckResult& agg = out[it->second];
      agg.pass = agg.pass && c.pass;
      agg.worst_error = std::max(agg.worst_error, c.worst_error);
    }
  }
  return out;
}

std::string csv_header(bool with_checks) {
  std::string h =
      "n,p,a,c,region,scalar_closed,scalar_trace,ricci_eigs_closed,ricci_max_route_discrepancy,"
      "k_min_closed,k_max_closed,k_lo_numeric,k_hi_numeric,gap_low,gap_high,converged";
  if (with_checks) h += ",checks_passed,checks_total,checks_all_pass,worst_check";
  return h;
}

std::string csv_row(const CurvatureReport& r, bool with_checks) {
  std::string eigs;
  for (size_t k = 0; k < r.ricci_eigs_closed.size(); ++k) {
    if (k) eigs += ';';
    eigs += fmt_real(r.ricci_eigs_closed[k]);
  }
  std::string row = std::to_string(r.params.n) + ',' + std::to_string(r.params.p) + ',' +
                    fmt_real(r.params.a) + ',' + fmt_real(r.params.c) + ',' +
                    region_name(r.region) + ',' + fmt_real(r.scalar_closed) + ',' +
                    fmt_real(r.scalar_trace) + ',' + eigs + ',' +
                    fmt_real(r.ricci_max_route_discrepancy) + ',' + fmt_real(r.k_min_closed) +
                    ',' + fmt_real(r.k_max_closed) + ',' + fmt_real(r.k_lo_numeric) + ',' +
                    fmt_real(r.k_hi_numeric) + ',' + fmt_real(r.gap_low) + ',' +
                    fmt_real(r.gap_high) + ',' + (r.converged ? "true" : "false");
  if (with_checks) {
    const auto passed = std::count_if(r.checks.begin(), r.checks.end(),
                                      [](const CheckResult& c) { return c.pass; });
    std::string worst = "none";
    double worst_excess = 0.0;
    for (const auto& c : r.checks) {
      if (!c.pass && (worst == "none" || c.worst_error - c.tolerance > worst_excess)) {
        worst = c.name;
        worst_excess = c.worst_error - c.tolerance;
      }
    }
    row += ',' + std::to_string(passed) + ',' + std::to_string(r.checks.size()) + ',' +
           (r.all_checks_pass() ? "true" : "false") + ',' + worst;
  }
  return row;
}

std::string jsonl_row(const CurvatureReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.params.n;
  j["p"] = r.params.p;
  j["a"] = r.params.a;
  j["c"] = r.params.c;
  j["region"] = region_name(r.region);
  j["scalar_closed"] = r.scalar_closed;
  j["scalar_trace"] = r.scalar_trace;
  j["ricci_eigs_closed"] = r.ricci_eigs_closed;
  j["ricci_max_route_discrepancy"] = r.ricci_max_route_discrepancy;
  j["k_min_closed"] = r.k_min_closed;
  j["k_max_closed"] = r.k_max_closed;
  j["k_lo_numeric"] = r.k_lo_numeric;
  j["k_hi_numeric"] = r.k_hi_numeric;
  j["gap_low"] = r.gap_low;
  j["gap_high"] = r.gap_high;
  j["converged"] = r.converged;
  j["boundary_mismatch"] = r.boundary_mismatch;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"worst_error", c.worst_error},
                      {"tolerance", c.tolerance}});
  }
  j["checks"] = std::move(checks);
  return j.dump();
}

void write_reports(std::ostream& out, const std::vector<CurvatureReport>& reports,
                   OutputFormat format, bool with_checks) {
  if (format == OutputFormat::Csv) {
    out << csv_header(with_checks) << '\n';
    for (const auto& r : reports) out << csv_row(r, with_checks) << '\n';
  } else {
    for (const auto& r : reports) out << jsonl_row(r) << '\n';
  }
}

}  // namespace hsph
