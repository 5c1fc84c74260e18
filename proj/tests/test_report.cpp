#include "hsph/report.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sstream>

using namespace hsph;

namespace {

ReportOptions quick(bool checks = false) {
  ReportOptions o;
  o.extrema.restarts = 8;
  o.with_checks = checks;
  return o;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

TEST_CASE("report at the round product") {
  const CurvatureReport r = make_report({1, 1, 0.0, 1.0}, quick(true));
  CHECK(r.region == Region::High);
  CHECK(r.scalar_closed == doctest::Approx(12.0));
  CHECK(r.scalar_trace == doctest::Approx(12.0));
  CHECK(r.ricci_eigs_closed.size() == 6u);
  CHECK(r.ricci_max_route_discrepancy < 1e-9);
  CHECK(std::abs(r.k_lo_numeric) < 1e-6);
  CHECK(std::abs(r.k_hi_numeric - 1.0) < 1e-6);
  CHECK(r.checks.size() == 18u);
  CHECK(r.all_checks_pass());
}

TEST_CASE("every check passes across regions") {
  for (auto [n, p] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
    for (auto [a, c] : {std::pair{0.2, 0.3}, {2.0, 0.5}, {-1.0, 2.0}}) {
      const CurvatureReport r = make_report({n, p, a, c}, quick(true));
      for (const auto& ch : r.checks) {
        INFO(ch.name, " worst ", ch.worst_error, " tol ", ch.tolerance);
        CHECK(ch.pass);
      }
    }
  }
}

TEST_CASE("checks are skipped unless requested") {
  CHECK(make_report({1, 1, 0.5, 0.5}, quick(false)).checks.empty());
}

TEST_CASE("scan grid validation and ordering") {
  ScanGrid g{1, 1, -1.0, 1.0, 0.5, 1.5, 3, 2};
  CHECK_NOTHROW(g.validate());
  CHECK(g.a_at(0) == -1.0);
  CHECK(g.a_at(2) == 1.0);
  CHECK(g.c_at(1) == 1.5);
  const auto reports = scan(g, quick(), 2);
  REQUIRE(reports.size() == 6u);
  CHECK(reports[0].params.a == -1.0);
  CHECK(reports[0].params.c == 0.5);
  CHECK(reports[1].params.a == -1.0);
  CHECK(reports[1].params.c == 1.5);
  CHECK(reports[2].params.a == 0.0);

  ScanGrid bad = g;
  bad.c_min = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = g;
  bad.steps_a = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = g;
  bad.a_min = 2.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = g;
  bad.n = 0;
  CHECK_THROWS_AS(scan(bad, quick()), std::invalid_argument);
}

TEST_CASE("scan output does not depend on thread count") {
  const ScanGrid g{1, 1, -2.0, 2.0, 0.2, 3.0, 3, 3};
  std::ostringstream one, many;
  write_reports(one, scan(g, quick(), 1), OutputFormat::Csv, false);
  write_reports(many, scan(g, quick(), 4), OutputFormat::Csv, false);
  CHECK(one.str() == many.str());
}

TEST_CASE("csv layout") {
  const std::string header = csv_header(false);
  CHECK(header ==
        "n,p,a,c,region,scalar_closed,scalar_trace,ricci_eigs_closed,"
        "ricci_max_route_discrepancy,k_min_closed,k_max_closed,k_lo_numeric,"
        "k_hi_numeric,gap_low,gap_high,converged");
  CHECK(split(csv_header(true), ',').size() == 20u);
  const CurvatureReport r = make_report({2, 1, 1.0, 2.0}, quick(true));
  const auto cols = split(csv_row(r, false), ',');
  REQUIRE(cols.size() == 16u);
  CHECK(cols[0] == "2");
  CHECK(cols[4] == "HIGH");
  CHECK(std::stod(cols[5]) == doctest::Approx(25.0));
  CHECK(split(cols[7], ';').size() == 8u);
  const auto with = split(csv_row(r, true), ',');
  REQUIRE(with.size() == 20u);
  CHECK(with[16] == "18");
  CHECK(with[17] == "18");
  CHECK(with[18] == "true");
}

TEST_CASE("jsonl rows parse") {
  const CurvatureReport r = make_report({1, 2, -0.5, 0.7}, quick(true));
  const auto j = nlohmann::json::parse(jsonl_row(r));
  CHECK(j["n"] == 1);
  CHECK(j["p"] == 2);
  CHECK(j["a"].get<double>() == -0.5);
  CHECK(j["region"] == region_name(r.region));
  CHECK(j["ricci_eigs_closed"].size() == 8u);
  CHECK(j["checks"].size() == 18u);
  CHECK(j["converged"].is_boolean());
  std::ostringstream os;
  write_reports(os, {r, r}, OutputFormat::Jsonl, true);
  CHECK(split(os.str(), '\n').size() == 2u);
}

TEST_CASE("summaries keep the worst error") {
  const auto reports = scan({1, 1, -1.0, 1.0, 0.5, 2.0, 2, 2}, quick(true), 1);
  const auto summary = summarize_checks(reports);
  REQUIRE(summary.size() == 18u);
  for (const auto& s : summary) {
    double worst = 0.0;
    for (const auto& r : reports) {
      for (const auto& c : r.checks) {
        if (c.name == s.name) worst = std::max(worst, c.worst_error);
      }
    }
    CHECK(s.worst_error == worst);
    CHECK(s.pass);
  }
}
