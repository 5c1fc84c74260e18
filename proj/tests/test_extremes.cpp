#include "hsph/extremes.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hsph;

namespace {

ExtremaOptions quick(std::uint64_t seed = 0) {
  ExtremaOptions o;
  o.restarts = 16;
  o.seed = seed;
  return o;
}

}  // namespace

TEST_CASE("region classification") {
  CHECK(classify_region(0.0, 0.5) == Region::Disk);
  CHECK(classify_region(0.0, 0.999) == Region::Disk);
  CHECK(classify_region(0.5, 0.5) == Region::Disk);
  CHECK(classify_region(0.51, 0.5) == Region::Mid);
  CHECK(classify_region(2.0, 0.5) == Region::Mid);
  CHECK(classify_region(0.0, 1.0) == Region::High);
  CHECK(classify_region(-3.0, 3.0) == Region::High);
  CHECK(std::string(region_name(Region::Disk)) == "DISK");
  CHECK(std::string(region_name(Region::Mid)) == "MID");
  CHECK(std::string(region_name(Region::High)) == "HIGH");
  CHECK_THROWS_AS(classify_region(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("theorem bounds values") {
  const TheoremBounds round = theorem_bounds({1, 1, 0.0, 1.0});
  CHECK(round.region == Region::High);
  CHECK(round.k_min == doctest::Approx(0.0));
  CHECK(round.k_max == doctest::Approx(1.0));

  const TheoremBounds mid = theorem_bounds({1, 1, 2.0, 0.5});
  CHECK(mid.region == Region::Mid);
  CHECK(mid.k_max == doctest::Approx(9.0));

  // Direct substitution in the DISK branch at a = 0, c = 1/2.
  const TheoremBounds disk = theorem_bounds({1, 1, 0.0, 0.5});
  CHECK(disk.region == Region::Disk);
  CHECK(disk.k_min == doctest::Approx((2.5 - 3 - std::sqrt(-9 + 2.25 + 9)) / 1.0));
  CHECK(disk.k_max == doctest::Approx(2.5 - 0.75 + std::sqrt(2.25 - 2.25 + 0.5625)));
}

TEST_CASE("theorem bounds are symmetric in a and branches meet on boundaries") {
  for (double a : {0.0, 0.3, 1.7}) {
    for (double c : {0.2, 0.8, 1.0, 2.5}) {
      const TheoremBounds l = theorem_bounds({1, 1, a, c});
      const TheoremBounds r = theorem_bounds({1, 1, -a, c});
      CHECK(l.k_min == doctest::Approx(r.k_min));
      CHECK(l.k_max == doctest::Approx(r.k_max));
      CHECK(l.k_min <= l.k_max);
    }
  }
  CHECK(boundary_mismatch(0.3, 1.7) == 0.0);
  CHECK(boundary_mismatch(0.0, 1.0) < 1e-12);
}

TEST_CASE("round product extremes are exactly 0 and 1") {
  ExtremaOptions o;
  o.restarts = 64;
  const NumericExtremes e = numeric_extremes(StructureParams{1, 1, 0.0, 1.0}, o);
  CHECK(std::abs(e.k_lo) < 1e-6);
  CHECK(std::abs(e.k_hi - 1.0) < 1e-6);
  CHECK(e.converged);
}

TEST_CASE("argmin and argmax planes realize the extremes") {
  const CurvatureOperator r = curvature_operator({2, 1, 1.0, 2.0});
  const NumericExtremes e = numeric_extremes(r, quick());
  CHECK(std::abs(e.argmin.x.norm() - 1.0) < 1e-12);
  CHECK(std::abs(e.argmin.x.dot(e.argmin.y)) < 1e-12);
  CHECK(sectional(Bivector::wedge(e.argmin.x, e.argmin.y), r) == doctest::Approx(e.k_lo));
  CHECK(sectional(Bivector::wedge(e.argmax.x, e.argmax.y), r) == doctest::Approx(e.k_hi));
  CHECK(e.k_lo == doctest::Approx(-3.5).epsilon(1e-6));
  CHECK(e.k_hi == doctest::Approx(2.5).epsilon(1e-6));
}

TEST_CASE("extremes report converts planes to p-vectors") {
  const ExtremesReport rep = extremes_report({1, 1, 0.4, 0.7}, quick());
  const Geometry geom = Geometry::build({1, 1, 0.4, 0.7});
  CHECK(geom.inner(rep.argmax_plane.x, rep.argmax_plane.x) == doctest::Approx(1.0));
  CHECK(std::abs(geom.inner(rep.argmax_plane.x, rep.argmax_plane.y)) < 1e-12);
  const oracle::Geometry ref(1, 1, 0.4, 0.7);
  CHECK(ref.sectional(rep.argmax_plane.x, rep.argmax_plane.y) ==
        doctest::Approx(rep.k_hi_numeric));
  CHECK(ref.sectional(rep.argmin_plane.x, rep.argmin_plane.y) ==
        doctest::Approx(rep.k_lo_numeric));
  CHECK(rep.gap_low == doctest::Approx(rep.k_lo_numeric - rep.k_min_closed));
  CHECK(rep.gap_high == doctest::Approx(rep.k_max_closed - rep.k_hi_numeric));
  CHECK(rep.contained(1e-6));
}

TEST_CASE("random planes stay inside the numeric extremes") {
  for (auto [a, c] : {std::pair{0.0, 1.0}, {1.2, 0.4}, {-2.0, 3.0}, {0.2, 0.3}}) {
    const StructureParams s{2, 1, a, c};
    const NumericExtremes e = numeric_extremes(s, quick());
    const oracle::Geometry ref(2, 1, a, c);
    std::mt19937_64 rng(31);
    for (int t = 0; t < 300; ++t) {
      const double k = ref.sectional(oracle::random_vector(8, rng), oracle::random_vector(8, rng));
      CHECK(k >= e.k_lo - 1e-9);
      CHECK(k <= e.k_hi + 1e-9);
    }
  }
}

TEST_CASE("containment at points in every region") {
  for (auto [n, p] : {std::pair{1, 1}, {2, 1}}) {
    for (auto [a, c] : {std::pair{0.0, 0.5}, {0.3, 0.2}, {1.5, 0.5}, {-2.5, 0.9}, {1.0, 2.0},
                        {-0.4, 3.5}}) {
      const ExtremesReport rep = extremes_report({n, p, a, c}, quick());
      CHECK(rep.contained(1e-6));
      CHECK(rep.converged);
    }
  }
}

TEST_CASE("seeded determinism") {
  const CurvatureOperator r = curvature_operator({1, 1, 0.7, 0.6});
  const NumericExtremes first = numeric_extremes(r, quick(42));
  const NumericExtremes second = numeric_extremes(r, quick(42));
  CHECK(first.k_lo == second.k_lo);
  CHECK(first.k_hi == second.k_hi);
  CHECK(first.argmax.x == second.argmax.x);
  const NumericExtremes other = numeric_extremes(r, quick(43));
  CHECK(std::abs(other.k_hi - first.k_hi) < 1e-6);
}

TEST_CASE("subspace restriction") {
  const CurvatureOperator r = curvature_operator({1, 1, 0.0, 1.0});
  const std::vector<int> first{1, 2};
  const NumericExtremes e = numeric_extremes(r, quick(), first);
  CHECK(e.k_lo == doctest::Approx(1.0));
  CHECK(e.k_hi == doctest::Approx(1.0));
  CHECK(e.argmax.x(0) == 0.0);
  const std::vector<int> one{1};
  CHECK_THROWS_AS(numeric_extremes(r, quick(), one), std::invalid_argument);
  const std::vector<int> bad{1, 9};
  CHECK_THROWS_AS(numeric_extremes(r, quick(), bad), std::out_of_range);
}

TEST_CASE("option validation") {
  const CurvatureOperator r = curvature_operator({1, 1, 0.0, 1.0});
  ExtremaOptions o = quick();
  o.restarts = 0;
  CHECK_THROWS_AS(numeric_extremes(r, o), std::invalid_argument);
  o = quick();
  o.max_iters = 0;
  CHECK_THROWS_AS(numeric_extremes(r, o), std::invalid_argument);
  o = quick();
  o.tol = 0.0;
  CHECK_THROWS_AS(numeric_extremes(r, o), std::invalid_argument);
}

TEST_CASE("unconverged searches are flagged") {
  ExtremaOptions o = quick();
  o.max_iters = 1;
  const NumericExtremes e = numeric_extremes(StructureParams{2, 1, 1.3, 0.4}, o);
  CHECK_FALSE(e.converged);
  CHECK(e.unconverged_searches > 0);
}

TEST_CASE("block bounds") {
  for (auto [a, c] : {std::pair{0.0, 1.0}, {0.5, 0.4}, {2.0, 2.0}, {-1.0, 0.8}}) {
    const BlockBoundsReport b = block_bounds_check(StructureParams{2, 2, a, c}, quick());
    const double s = a * a + c * c;
    CHECK(b.first.bound_lo == doctest::Approx(std::min(4 - 3 / c, 1.0)));
    CHECK(b.first.bound_hi == doctest::Approx(std::max(4 - 3 / c, 1.0)));
    CHECK(b.second.bound_lo == doctest::Approx(std::min(4 - 3 * s / c, 1.0)));
    CHECK(b.second.bound_hi == doctest::Approx(std::max(4 - 3 * s / c, 1.0)));
    CHECK(b.alt_second_upper == doctest::Approx(std::max(4 - 3 / c, 1.0)));
    CHECK(b.first_within);
    CHECK(b.second_within);
    CHECK((b.satisfied_reading == "a2c2" || b.satisfied_reading == "both"));
  }
}
