#pragma once

// Piecewise closed-form bounds on sectional curvature of g(a,c) and an
// independent numerical estimate of the true extremes over 2-planes.

#include "hsph/curvature.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hsph {

/// DISK: a^2 + (c-1/2)^2 <= 1/4 (c < 1); MID: the rest of c < 1; HIGH: c >= 1.
/// The closed disk touches c = 1 only at (0, 1); that point is HIGH, where
/// both branches give the same bounds.
enum class Region { Disk, Mid, High };

const char* region_name(Region region);
Region classify_region(double a, double c);

struct TheoremBounds {
  double k_min = 0.0;
  double k_max = 0.0;
  Region region = Region::High;
};

TheoremBounds theorem_bounds(const StructureParams& params);
/// Evaluates one branch's formulas regardless of where (a, c) lies.
TheoremBounds theorem_bounds_branch(double a, double c, Region branch);
/// Max difference of (k_min, k_max) between every branch whose closed region
/// contains (a, c); zero off the region boundaries.
double boundary_mismatch(double a, double c, double on_boundary_tol = 1e-12);

struct ExtremaOptions {
  int restarts = 64;
  int max_iters = 2000;  // sweeps over all coordinate 2-subspaces
  double tol = 1e-9;     // terminal rotation step, radians
  std::uint64_t seed = 0;
  double initial_step = 0.5;
  double decay = 0.7;
};

/// Orthonormal pair spanning a 2-plane, in Z-frame coordinates.
struct Plane {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

struct NumericExtremes {
  double k_lo = 0.0;
  double k_hi = 0.0;
  Plane argmin;
  Plane argmax;
  bool converged = true;
  int unconverged_searches = 0;
};

/// Multi-start pattern search over 2-planes: small rotations of the pair in
/// coordinate 2-subspaces, step decayed after a sweep without improvement.
/// Starts from the best coordinate planes Z_i ^ Z_j plus random planes.
/// `subspace` restricts planes to span{Z_i : i in subspace}; empty means all.
/// Deterministic in opts.seed. Throws std::invalid_argument for restarts < 1
/// or a subspace with fewer than two directions.
NumericExtremes numeric_extremes(const CurvatureOperator& r, const ExtremaOptions& opts,
                                 std::span<const int> subspace = {});
NumericExtremes numeric_extremes(const StructureParams& params, const ExtremaOptions& opts);

struct ExtremesReport {
  StructureParams params;
  Region region = Region::High;
  double k_min_closed = 0.0;
  double k_max_closed = 0.0;
  double k_lo_numeric = 0.0;
  double k_hi_numeric = 0.0;
  Plane argmin_plane;  // over p_basis, orthonormal in g(a,c)
  Plane argmax_plane;
  double gap_low = 0.0;   // k_lo_numeric - k_min_closed
  double gap_high = 0.0;  // k_max_closed - k_hi_numeric
  bool converged = true;
  double boundary_mismatch = 0.0;

  bool contained(double tol) const { return gap_low >= -tol && gap_high >= -tol; }
};

ExtremesReport extremes_report(const Geometry& geom, const CurvatureOperator& r,
                               const ExtremaOptions& opts);
ExtremesReport extremes_report(const StructureParams& params, const ExtremaOptions& opts);

struct FactorRange {
  double k_lo = 0.0;
  double k_hi = 0.0;
  double bound_lo = 0.0;
  double bound_hi = 0.0;

  bool within(double tol) const { return k_lo >= bound_lo - tol && k_hi <= bound_hi + tol; }
};

/// Sectional curvature restricted to planes inside the horizontal space of
/// each factor, compared with the Berger-sphere ranges
///   first:  [min(4 - 3/c, 1), max(4 - 3/c, 1)]
///   second: [min(4 - 3(a^2+c^2)/c, 1), max(4 - 3(a^2+c^2)/c, 1)]
/// The alternative second-factor upper bound max(4 - 3/c, 1) is also tested.
struct BlockBoundsReport {
  FactorRange first;
  FactorRange second;
  double alt_second_upper = 0.0;
  bool first_within = false;
  bool second_within = false;      // (a^2+c^2) reading
  bool second_within_alt = false;  // max(4 - 3/c, 1) reading
  std::string satisfied_reading;   // "a2c2", "alt", "both" or "neither"
};

BlockBoundsReport block_bounds_check(const CurvatureOperator& r, const ExtremaOptions& opts,
                                     double tol = 1e-6);
BlockBoundsReport block_bounds_check(const StructureParams& params, const ExtremaOptions& opts,
                                     double tol = 1e-6);

}  // namespace hsph
