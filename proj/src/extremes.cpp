#include "hsph/extremes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace hsph {

namespace {

// Improvements below this relative size are evaluation noise.
constexpr double kImproveTol = 1e-13;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void orthonormalize(Eigen::VectorXd& x, Eigen::VectorXd& y) {
  x.normalize();
  y -= x.dot(y) * x;
  y.normalize();
}

struct SearchResult {
  double value;  // sign * K at the final plane
  Plane plane;
  bool converged;
};

// Maximizes sign * K(x ^ y) by rotating the pair in coordinate 2-subspaces.
class PlaneSearch {
 public:
  PlaneSearch(const CurvatureOperator& r, std::span<const int> subspace, double sign,
              const ExtremaOptions& opts)
      : r_(r), sign_(sign), opts_(opts), scratch_(bivector_dim(r.dim())) {
    for (size_t a = 0; a < subspace.size(); ++a)
      for (size_t b = a + 1; b < subspace.size(); ++b) pairs_.emplace_back(subspace[a], subspace[b]);
  }

  double value(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return sign_ * r_.sectional_pair({x.data(), static_cast<size_t>(x.size())},
                                     {y.data(), static_cast<size_t>(y.size())}, scratch_);
  }

  SearchResult run(Plane start, std::mt19937_64& rng) {
    const int d = r_.dim();
    Eigen::VectorXd x = std::move(start.x);
    Eigen::VectorXd y = std::move(start.y);
    orthonormalize(x, y);
    double best = value(x, y);
    double step = opts_.initial_step;
    bool converged = false;
    std::vector<std::pair<int, int>> order = pairs_;
    Eigen::MatrixXd sweep_rotation(d, d);

    for (int iter = 0; iter < opts_.max_iters; ++iter) {
      std::shuffle(order.begin(), order.end(), rng);
      sweep_rotation.setIdentity();
      bool improved = false;
      for (const auto& [i, j] : order) {
        for (const double theta : {step, -step}) {
          rotate(x, i, j, theta);
          rotate(y, i, j, theta);
          const double v = value(x, y);
          if (improves(v, best)) {
            best = v;
            improved = true;
            rotate_rows(sweep_rotation, i, j, theta);
            break;
          }
          rotate(x, i, j, -theta);
          rotate(y, i, j, -theta);
        }
      }
      if (improved) {
        // Pattern move: repeat the sweep's net rotation while it keeps paying off.
        for (int k = 0; k < 32; ++k) {
          const Eigen::VectorXd px = sweep_rotation * x;
          const Eigen::VectorXd py = sweep_rotation * y;
          const double v = value(px, py);
          if (!improves(v, best)) break;
          x = px;
          y = py;
          best = v;
        }
      }
      orthonormalize(x, y);
      best = value(x, y);
      if (improved) {
        step = std::min(step / opts_.decay, opts_.initial_step);
      } else {
        step *= opts_.decay;
        if (step < opts_.tol) {
          converged = true;
          break;
        }
      }
    }
    return {best, {x, y}, converged};
  }

 private:
  static void rotate(Eigen::VectorXd& v, int i, int j, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double vi = v(i);
    const double vj = v(j);
    v(i) = c * vi - s * vj;
    v(j) = s * vi + c * vj;
  }

  // Left-multiplies by the rotation of the (i, j) coordinate plane.
  static void rotate_rows(Eigen::MatrixXd& m, int i, int j, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Eigen::RowVectorXd ri = m.row(i);
    const Eigen::RowVectorXd rj = m.row(j);
    m.row(i) = c * ri - s * rj;
    m.row(j) = s * ri + c * rj;
  }

  static bool improves(double candidate, double best) {
    return candidate > best + kImproveTol * (1.0 + std::abs(best));
  }

  const CurvatureOperator& r_;
  double sign_;
  const ExtremaOptions& opts_;
  std::vector<double> scratch_;
  std::vector<std::pair<int, int>> pairs_;
};

SearchResult optimize(const CurvatureOperator& r, std::span<const int> subspace, double sign,
                      const ExtremaOptions& opts) {
  const int d = r.dim();
  PlaneSearch search(r, subspace, sign, opts);

  // Coordinate planes, best first; ties keep index order.
  struct Coord {
    int i, j;
    double value;
  };
  std::vector<Coord> coords;
  for (size_t a = 0; a < subspace.size(); ++a) {
    for (size_t b = a + 1; b < subspace.size(); ++b) {
      const int i = subspace[a];
      const int j = subspace[b];
      coords.push_back({i, j, sign * r.matrix()(bivector_index(std::min(i, j), std::max(i, j), d),
                                                bivector_index(std::min(i, j), std::max(i, j), d))});
    }
  }
  std::stable_sort(coords.begin(), coords.end(),
                   [](const Coord& l, const Coord& r) { return l.value > r.value; });

  auto unit_plane = [d](int i, int j) {
    return Plane{Eigen::VectorXd::Unit(d, i), Eigen::VectorXd::Unit(d, j)};
  };

  SearchResult best{coords.front().value, unit_plane(coords.front().i, coords.front().j), true};
  const int from_coords = std::min<int>(std::max(1, opts.restarts / 2), static_cast<int>(coords.size()));
  const std::uint64_t stream = sign > 0 ? 0x51ULL : 0xA7ULL;

  for (int k = 0; k < opts.restarts; ++k) {
    std::mt19937_64 rng(splitmix64(opts.seed ^ splitmix64(stream + static_cast<std::uint64_t>(k))));
    Plane start;
    if (k < from_coords) {
      start = unit_plane(coords[k].i, coords[k].j);
    } else {
      std::normal_distribution<double> normal;
      start.x = Eigen::VectorXd::Zero(d);
      start.y = Eigen::VectorXd::Zero(d);
      for (const int i : subspace) {
        start.x(i) = normal(rng);
        start.y(i) = normal(rng);
      }
    }
    SearchResult res = search.run(std::move(start), rng);
    if (res.value > best.value) {
      const bool converged = best.converged && res.converged;
      best = std::move(res);
      best.converged = converged;
    } else {
      best.converged = best.converged && res.converged;
    }
  }
  return best;
}

}  // namespace

const char* region_name(Region region) {
  switch (region) {
    case Region::Disk: return "DISK";
    case Region::Mid: return "MID";
    case Region::High: return "HIGH";
  }
  return "?";
}

Region classify_region(double a, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("classify_region requires c > 0");
  if (c >= 1.0) return Region::High;
  if (a * a + (c - 0.5) * (c - 0.5) <= 0.25) return Region::Disk;
  return Region::Mid;
}

TheoremBounds theorem_bounds_branch(double a, double c, Region branch) {
  if (!(c > 0.0)) throw std::invalid_argument("theorem bounds require c > 0");
  const double s = a * a + c * c;
  const double ratio = std::abs(a / c);
  TheoremBounds b;
  b.region = branch;
  switch (branch) {
    case Region::Disk:
      b.k_min = std::min(-ratio,
                         (5 * c - 3 - std::sqrt(16 * a * a - 18 * c + 9 * c * c + 9)) / (2 * c));
      b.k_max = std::max(
          1 / c,
          (5 * c - 3 * s + std::sqrt(16 * a * a + 9 * c * c - 18 * c * s + 9 * s * s)) / (2 * c));
      break;
    case Region::Mid:
      b.k_min = std::min(
          -ratio,
          (8 * c - 3 * (1 + s) - std::sqrt(9 * (s - 1) * (s - 1) + 16 * a * a)) / (2 * c));
      b.k_max = std::max({s / c, 1 + 2 * ratio, 1 / c});
      break;
    case Region::High:
      b.k_min = std::min(
          -ratio,
          (5 * c - 3 * s - std::sqrt(16 * a * a + 9 * c * c - 18 * c * s + 9 * s * s)) / (2 * c));
      b.k_max = std::max(
          s / c, (5 * c - 3 + std::sqrt(16 * a * a - 18 * c + 9 * c * c + 9)) / (2 * c));
      break;
  }
  return b;
}

TheoremBounds theorem_bounds(const StructureParams& params) {
  params.validate();
  return theorem_bounds_branch(params.a, params.c, classify_region(params.a, params.c));
}

double boundary_mismatch(double a, double c, double on_boundary_tol) {
  const double disk = a * a + (c - 0.5) * (c - 0.5) - 0.25;
  std::vector<Region> branches;
  if (disk <= on_boundary_tol) branches.push_back(Region::Disk);
  if (disk >= -on_boundary_tol && c <= 1.0 + on_boundary_tol) branches.push_back(Region::Mid);
  if (c >= 1.0 - on_boundary_tol) branches.push_back(Region::High);
  double worst = 0.0;
  for (size_t i = 0; i < branches.size(); ++i) {
    for (size_t j = i + 1; j < branches.size(); ++j) {
      const TheoremBounds l = theorem_bounds_branch(a, c, branches[i]);
      const TheoremBounds r = theorem_bounds_branch(a, c, branches[j]);
      worst = std::max({worst, std::abs(l.k_min - r.k_min), std::abs(l.k_max - r.k_max)});
    }
  }
  return worst;
}

NumericExtremes numeric_extremes(const CurvatureOperator& r, const ExtremaOptions& opts,
                                 std::span<const int> subspace) {
  if (opts.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (opts.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(opts.tol > 0.0) || !(opts.decay > 0.0 && opts.decay < 1.0)) {
    throw std::invalid_argument("tol must be > 0 and decay in (0, 1)");
  }
  std::vector<int> dirs(subspace.begin(), subspace.end());
  if (dirs.empty()) {
    dirs.resize(r.dim());
    std::iota(dirs.begin(), dirs.end(), 0);
  }
  if (dirs.size() < 2) throw std::invalid_argument("subspace must have at least two directions");
  for (const int i : dirs) {
    if (i < 0 || i >= r.dim()) throw std::out_of_range("subspace index out of range");
  }

  SearchResult hi = optimize(r, dirs, +1.0, opts);
  SearchResult lo = optimize(r, dirs, -1.0, opts);
  NumericExtremes out;
  out.k_hi = hi.value;
  out.k_lo = -lo.value;
  out.argmax = std::move(hi.plane);
  out.argmin = std::move(lo.plane);
  out.converged = hi.converged && lo.converged;
  out.unconverged_searches = (hi.converged ? 0 : 1) + (lo.converged ? 0 : 1);
  return out;
}

NumericExtremes numeric_extremes(const StructureParams& params, const ExtremaOptions& opts) {
  return numeric_extremes(curvature_operator(params), opts);
}

ExtremesReport extremes_report(const Geometry& geom, const CurvatureOperator& r,
                               const ExtremaOptions& opts) {
  const TheoremBounds bounds = theorem_bounds(geom.params);
  const NumericExtremes num = numeric_extremes(r, opts);
  const Eigen::MatrixXd& z = geom.orthonormal.vectors;

  ExtremesReport rep;
  rep.params = geom.params;
  rep.region = bounds.region;
  rep.k_min_closed = bounds.k_min;
  rep.k_max_closed = bounds.k_max;
  rep.k_lo_numeric = num.k_lo;
  rep.k_hi_numeric = num.k_hi;
  rep.argmin_plane = {z * num.argmin.x, z * num.argmin.y};
  rep.argmax_plane = {z * num.argmax.x, z * num.argmax.y};
  rep.gap_low = num.k_lo - bounds.k_min;
  rep.gap_high = bounds.k_max - num.k_hi;
  rep.converged = num.converged;
  rep.boundary_mismatch = boundary_mismatch(geom.params.a, geom.params.c);
  return rep;
}

ExtremesReport extremes_report(const StructureParams& params, const ExtremaOptions& opts) {
  const Geometry geom = Geometry::build(params);
  return extremes_report(geom, curvature_operator(geom), opts);
}

BlockBoundsReport block_bounds_check(const CurvatureOperator& r, const ExtremaOptions& opts,
                                     double tol) {
  const StructureParams& params = r.params();
  const int n = params.n;
  const int d = params.dim();
  const double c = params.c;
  const double s = params.a * params.a + c * c;

  std::vector<int> first(2 * n);
  std::iota(first.begin(), first.end(), 1);
  std::vector<int> second(d - (2 * n + 2));
  std::iota(second.begin(), second.end(), 2 * n + 2);

  BlockBoundsReport rep;
  const NumericExtremes f = numeric_extremes(r, opts, first);
  const NumericExtremes g = numeric_extremes(r, opts, second);
  const double first_edge = 4.0 - 3.0 / c;
  const double second_edge = 4.0 - 3.0 * s / c;
  rep.first = {f.k_lo, f.k_hi, std::min(first_edge, 1.0), std::max(first_edge, 1.0)};
  rep.second = {g.k_lo, g.k_hi, std::min(second_edge, 1.0), std::max(second_edge, 1.0)};
  rep.alt_second_upper = std::max(first_edge, 1.0);
  rep.first_within = rep.first.within(tol);
  rep.second_within = rep.second.within(tol);
  FactorRange alt = rep.second;
  alt.bound_hi = rep.alt_second_upper;
  rep.second_within_alt = alt.within(tol);
  rep.satisfied_reading = rep.second_within && rep.second_within_alt ? "both"
                          : rep.second_within                        ? "a2c2"
                          : rep.second_within_alt                    ? "alt"
                                                                     : "neither";
  return rep;
}

BlockBoundsReport block_bounds_check(const StructureParams& params, const ExtremaOptions& opts,
                                     double tol) {
  return block_bounds_check(curvature_operator(params), opts, tol);
}

}  // namespace hsph
