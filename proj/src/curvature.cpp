#include "hsph/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hsph {

namespace {

// Operator entries below this are assembly noise and skipped in the sparse
// quadratic form used by the optimizer.
constexpr double kSparseDropTol = 1e-13;

Eigen::VectorXd nabla(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Geometry& g) {
  return covariant_derivative(x, y, g.connection, *g.frame);
}

}  // namespace

int bivector_dim(int d) { return d * (d - 1) / 2; }

int bivector_index(int i, int j, int d) {
  if (i < 0 || j >= d || i >= j) throw std::out_of_range("bivector index needs 0 <= i < j < D");
  return i * d - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<int, int> bivector_pair(int index, int d) {
  if (index < 0 || index >= bivector_dim(d)) throw std::out_of_range("bivector index");
  int i = 0;
  while (index >= d - 1 - i) {
    index -= d - 1 - i;
    ++i;
  }
  return {i, i + 1 + index};
}

Bivector Bivector::zero(int d) { return {d, Eigen::VectorXd::Zero(bivector_dim(d))}; }

Bivector Bivector::wedge(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size()) throw std::invalid_argument("wedge of vectors of different length");
  const int d = static_cast<int>(x.size());
  Bivector b = zero(d);
  int k = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) b.coeffs(k++) = x(i) * y(j) - x(j) * y(i);
  }
  return b;
}

double Bivector::at(int i, int j) const {
  if (i == j) return 0.0;
  return i < j ? coeffs(bivector_index(i, j, dim)) : -coeffs(bivector_index(j, i, dim));
}

double Bivector::plucker_defect() const {
  double worst = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k)
        for (int l = k + 1; l < dim; ++l) {
          const double q = at(i, j) * at(k, l) - at(i, k) * at(j, l) + at(i, l) * at(j, k);
          worst = std::max(worst, std::abs(q));
        }
  return worst;
}

Eigen::VectorXd riemann(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& z, const Geometry& geom,
                        bool include_isotropy_term) {
  const ReductiveFrame& frame = *geom.frame;
  Eigen::VectorXd r = nabla(x, nabla(y, z, geom), geom) - nabla(y, nabla(x, z, geom), geom) -
                      nabla(frame.bracket_p(x, y), z, geom);
  if (include_isotropy_term) r -= frame.bracket_hp(frame.bracket_h(x, y), z);
  return r;
}

double CurvatureSymmetryReport::worst() const {
  return std::max({operator_asymmetry, first_pair_antisymmetry, last_pair_antisymmetry,
                   pair_exchange, bianchi});
}

CurvatureOperator::CurvatureOperator(StructureParams params, std::vector<double> tensor)
    : params_(params), dim_(params.dim()), tensor_(std::move(tensor)) {
  const int d = dim_;
  if (static_cast<int>(tensor_.size()) != d * d * d * d) {
    throw std::invalid_argument("curvature tensor must have D^4 entries");
  }
  const int m = bivector_dim(d);
  matrix_.resize(m, m);
  for (int row = 0; row < m; ++row) {
    const auto [alpha, nu] = bivector_pair(row, d);
    for (int col = 0; col < m; ++col) {
      const auto [rho, mu] = bivector_pair(col, d);
      matrix_(row, col) = entry(alpha, nu, rho, mu);
    }
  }
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  for (int row = 0; row < m; ++row) {
    for (int col = row; col < m; ++col) {
      const double w = row == col ? matrix_(row, col) : matrix_(row, col) + matrix_(col, row);
      if (std::abs(w) > kSparseDropTol * scale) terms_.push_back({row, col, w});
    }
  }
}

double CurvatureOperator::quadratic(const Bivector& b) const {
  if (b.dim != dim_) throw std::invalid_argument("bivector dimension mismatch");
  return b.coeffs.dot(matrix_ * b.coeffs);
}

double CurvatureOperator::sectional_pair(std::span<const double> x, std::span<const double> y,
                                         std::span<double> scratch) const {
  const int d = dim_;
  int k = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) scratch[k++] = x[i] * y[j] - x[j] * y[i];
  }
  double sum = 0.0;
  for (const Term& t : terms_) sum += t.weight * scratch[t.row] * scratch[t.col];
  return sum;
}

CurvatureSymmetryReport CurvatureOperator::symmetries() const {
  CurvatureSymmetryReport r;
  r.operator_asymmetry = (matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff();
  const int d = dim_;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const double t = tensor(i, j, k, l);
          r.first_pair_antisymmetry =
              std::max(r.first_pair_antisymmetry, std::abs(t + tensor(j, i, k, l)));
          r.last_pair_antisymmetry =
              std::max(r.last_pair_antisymmetry, std::abs(t + tensor(i, j, l, k)));
          r.pair_exchange = std::max(r.pair_exchange, std::abs(t - tensor(k, l, i, j)));
          r.bianchi = std::max(
              r.bianchi, std::abs(t + tensor(j, k, i, l) + tensor(k, i, j, l)));
        }
  return r;
}

CurvatureOperator curvature_operator(const Geometry& geom, bool include_isotropy_term) {
  const int d = geom.dim();
  const Eigen::MatrixXd& zf = geom.orthonormal.vectors;
  // Row k of gz is <., Z_k>_g as a covector on p-vectors.
  const Eigen::MatrixXd gz = zf.transpose() * geom.metric.matrix;
  std::vector<double> tensor(static_cast<size_t>(d) * d * d * d, 0.0);
  auto at = [d](int i, int j, int k, int l) { return ((i * d + j) * d + k) * d + l; };
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        const Eigen::VectorXd v =
            riemann(zf.col(i), zf.col(j), zf.col(k), geom, include_isotropy_term);
        const Eigen::VectorXd proj = gz * v;
        for (int l = 0; l < d; ++l) {
          tensor[at(i, j, k, l)] = proj(l);
          tensor[at(j, i, k, l)] = -proj(l);
        }
      }
    }
  }
  return {geom.params, std::move(tensor)};
}

CurvatureOperator curvature_operator(const StructureParams& params) {
  return curvature_operator(Geometry::build(params));
}

double sectional(const Bivector& b, const CurvatureOperator& r, double tol) {
  if (std::abs(b.norm() - 1.0) > tol) {
    throw NonUnitBivector("bivector norm is " + std::to_string(b.norm()) + ", expected 1");
  }
  const double defect = b.plucker_defect();
  if (defect > tol) {
    throw NonDecomposableBivector("bivector violates the Plucker relations by " +
                                  std::to_string(defect));
  }
  return r.quadratic(b);
}

std::vector<TabulatedEntry> tabulated_curvature_entries(const StructureParams& params) {
  params.validate();
  const int n = params.n;
  const int d = params.dim();
  const int v2 = 2 * n + 1;  // index of Z_{2n+1}
  const double a = params.a;
  const double c = params.c;
  auto first_y = [n](int i) { return i >= 1 && i <= 2 * n; };
  auto second_y = [n, d](int i) { return i >= 2 * n + 2 && i < d; };

  std::map<std::pair<int, int>, TabulatedEntry> table;
  auto add = [&](int alpha, int nu, int rho, int mu, double expected, const char* family) {
    const int r1 = bivector_index(alpha, nu, d);
    const int r2 = bivector_index(rho, mu, d);
    const auto key = std::minmax(r1, r2);
    const auto it = table.find(key);
    if (it != table.end()) {
      if (it->second.expected != expected) {
        throw std::logic_error("inconsistent closed-form curvature table");
      }
      return;
    }
    table.emplace(key, TabulatedEntry{alpha, nu, rho, mu, expected, family});
  };

  const int m = bivector_dim(d);
  for (int nu = 1; nu < d; ++nu) {
    for (int col = 0; col < m; ++col) {
      const auto [rho, mu] = bivector_pair(col, d);
      double expected = 0.0;
      if (rho == 0 && mu == nu && first_y(nu)) expected = 1.0 / c;
      if (rho == 0 && mu == nu && second_y(nu)) expected = a * a / c;
      if (rho == v2 && mu == nu && second_y(nu)) expected = -a;
      add(0, nu, rho, mu, expected, "vertical_x1");
    }
  }
  for (int nu = v2 + 1; nu < d; ++nu) {
    for (int col = 0; col < m; ++col) {
      const auto [rho, mu] = bivector_pair(col, d);
      double expected = 0.0;
      if (rho == 0 && mu == nu) expected = -a;
      if (rho == v2 && mu == nu) expected = c;
      add(v2, nu, rho, mu, expected, "vertical_x2");
    }
  }
  for (int alpha = 1; alpha <= 2 * n; ++alpha) {
    for (int nu = alpha + 1; nu <= 2 * n; ++nu) {
      for (int rho = 2 * n + 2; rho < d; ++rho) {
        for (int mu = rho + 1; mu < d; ++mu) {
          const bool holomorphic_pair = alpha % 2 == 1 && nu == alpha + 1 && rho % 2 == 0 &&
                                        mu == rho + 1;
          add(alpha, nu, rho, mu, holomorphic_pair ? 2.0 * a / c : 0.0, "horizontal_cross");
        }
      }
    }
  }
  for (int alpha = 1; alpha <= 2 * n; ++alpha) {
    for (int nu = 2 * n + 2; nu < d; ++nu) {
      for (int rho = 1; rho <= 2 * n; ++rho) {
        for (int mu = 2 * n + 2; mu < d; ++mu) {
          // Within one complex line of each factor: {2l-1, 2l} x {2n+2m, 2n+2m+1}.
          double expected = 0.0;
          const int l1 = (alpha + 1) / 2;
          const int l2 = (rho + 1) / 2;
          const int m1 = (nu - 2 * n) / 2;
          const int m2 = (mu - 2 * n) / 2;
          if (l1 == l2 && m1 == m2 && alpha != rho && nu != mu) {
            const bool alpha_odd = alpha % 2 == 1;
            const bool nu_even_slot = (nu - 2 * n) % 2 == 0;  // 2n+2m
            if (alpha_odd && nu_even_slot) expected = a / c;
            if (!alpha_odd && nu_even_slot) expected = -a / c;
            if (alpha_odd && !nu_even_slot) expected = -a / c;
            if (!alpha_odd && !nu_even_slot) expected = a / c;
          }
          add(alpha, nu, rho, mu, expected, "horizontal_mixed");
        }
      }
    }
  }

  std::vector<TabulatedEntry> out;
  out.reserve(table.size());
  for (const auto& [key, e] : table) out.push_back(e);
  return out;
}

Eigen::MatrixXd ricci_closed_form(const StructureParams& params) {
  params.validate();
  const int n = params.n;
  const int p = params.p;
  const int d = params.dim();
  const int x2 = 2 * n + 1;
  const double a = params.a;
  const double c = params.c;
  const double s = a * a + c * c;

  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(d, d);
  r(0, 0) = 2.0 * (n + p * a * a) / (c * c);
  r(x2, x2) = 2.0 * (n * a * a + p * s * s) / (c * c);
  r(0, x2) = r(x2, 0) = -2.0 * (a / (c * c)) * (n + p * s);
  for (int k = 1; k <= 2 * n; ++k) r(k, k) = 2.0 * (1.0 + n - 1.0 / c);
  for (int k = x2 + 1; k < d; ++k) r(k, k) = 2.0 * (1.0 + p - s / c);
  return r;
}

std::vector<double> ricci_eigenvalues_closed_form(const StructureParams& params) {
  params.validate();
  const double a = params.a;
  const double c = params.c;
  const double s = a * a + c * c;
  const double x = 2.0 * (params.n + params.p * a * a) / (c * c);
  const double y = 2.0 * (params.n * a * a + params.p * s * s) / (c * c);
  const double z = -2.0 * (a / (c * c)) * (params.n + params.p * s);
  const double root = std::sqrt((x - y) * (x - y) + 4.0 * z * z);

  std::vector<double> eigs{0.5 * (x + y + root), 0.5 * (x + y - root)};
  eigs.insert(eigs.end(), 2 * params.n, 2.0 * (1.0 + params.n - 1.0 / c));
  eigs.insert(eigs.end(), 2 * params.p, 2.0 * (1.0 + params.p - s / c));
  return eigs;
}

Eigen::VectorXd mean_curvature_vector(const Geometry& geom) {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(geom.dim());
  for (int i = 0; i < geom.dim(); ++i) {
    const Eigen::VectorXd v = geom.orthonormal.z(i);
    z += geom.connection.apply(v, v);
  }
  return z;
}

Eigen::MatrixXd ricci_via_besse(const Geometry& geom) {
  const ReductiveFrame& frame = *geom.frame;
  const int d = geom.dim();
  const Eigen::VectorXd zvec = mean_curvature_vector(geom);
  std::vector<Eigen::VectorXd> v(d);
  for (int i = 0; i < d; ++i) v[i] = geom.orthonormal.z(i);

  auto quadratic = [&](const Eigen::VectorXd& x) {
    double q = 0.0;
    for (int i = 0; i < d; ++i) {
      const Eigen::VectorXd xv_p = frame.bracket_p(x, v[i]);
      q -= 0.5 * geom.inner(xv_p, xv_p);
      q -= 0.5 * geom.inner(frame.bracket_p(x, xv_p), v[i]);
      // [X, W] = -[W, X] for W in h.
      const Eigen::VectorXd x_xv_h = -frame.bracket_hp(frame.bracket_h(x, v[i]), x);
      q -= geom.inner(x_xv_h, v[i]);
      for (int j = 0; j < d; ++j) {
        const double t = geom.inner(frame.bracket_p(v[i], v[j]), x);
        q += 0.25 * t * t;
      }
    }
    q -= geom.inner(frame.bracket_p(zvec, x), x);
    return q;
  };

  std::vector<double> diag(d);
  for (int i = 0; i < d; ++i) diag[i] = quadratic(v[i]);
  Eigen::MatrixXd ric(d, d);
  for (int i = 0; i < d; ++i) {
    ric(i, i) = diag[i];
    for (int j = i + 1; j < d; ++j) {
      ric(i, j) = ric(j, i) = 0.5 * (quadratic(v[i] + v[j]) - diag[i] - diag[j]);
    }
  }
  return ric;
}

Eigen::MatrixXd ricci_via_besse(const StructureParams& params) {
  return ricci_via_besse(Geometry::build(params));
}

Eigen::MatrixXd ricci_via_contraction(const CurvatureOperator& r) {
  const int d = r.dim();
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(d, d);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int i = 0; i < d; ++i) ric(x, y) += r.tensor(i, x, y, i);
  return ric;
}

Eigen::MatrixXd ricci_via_contraction(const Geometry& geom) {
  return ricci_via_contraction(curvature_operator(geom));
}

Eigen::MatrixXd ricci_via_contraction(const StructureParams& params) {
  return ricci_via_contraction(Geometry::build(params));
}

Eigen::MatrixXd to_orthonormal(const Eigen::MatrixXd& form, const OrthonormalFrame& z) {
  return z.vectors.transpose() * form * z.vectors;
}

Eigen::MatrixXd to_invariant(const Eigen::MatrixXd& form, const OrthonormalFrame& z) {
  const Eigen::MatrixXd inv = z.vectors.inverse();
  return inv.transpose() * form * inv;
}

double scalar_closed_form(const StructureParams& params) {
  params.validate();
  const double n = params.n;
  const double p = params.p;
  const double c = params.c;
  const double s = params.a * params.a + c * c;
  return 4.0 * n * (1.0 + n - 1.0 / (2.0 * c)) + 4.0 * p * (1.0 + p - s / (2.0 * c));
}

double scalar_via_trace(const Geometry& geom) {
  const Eigen::MatrixXd ric = to_invariant(ricci_via_contraction(geom), geom.orthonormal);
  return geom.metric.matrix.ldlt().solve(ric).trace();
}

double scalar_via_trace(const StructureParams& params) {
  return scalar_via_trace(Geometry::build(params));
}

}  // namespace hsph
