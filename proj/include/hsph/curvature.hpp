#pragma once

// Riemann curvature on p, the curvature operator on bivectors over the
// orthonormal Z frame, sectional curvature, Ricci (three routes) and scalar
// curvature (two routes).

#include "hsph/geometry.hpp"

#include <Eigen/Dense>

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hsph {

// Bivector coordinates are linearized row-major over pairs (i, j), i < j:
// (0,1), (0,2), ..., (0,D-1), (1,2), ...

int bivector_dim(int d);
int bivector_index(int i, int j, int d);
std::pair<int, int> bivector_pair(int index, int d);

/// Coefficients over Z_i ^ Z_j (i < j). The Z frame is orthonormal, so the
/// induced bivector inner product is Euclidean in these coordinates.
struct Bivector {
  int dim = 0;
  Eigen::VectorXd coeffs;

  static Bivector zero(int d);
  /// x ^ y for vectors given in Z-frame coordinates.
  static Bivector wedge(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

  double norm() const { return coeffs.norm(); }
  double at(int i, int j) const;
  /// Largest |b_ij b_kl - b_ik b_jl + b_il b_jk| over i<j<k<l.
  double plucker_defect() const;
  bool is_decomposable(double tol = 1e-10) const { return plucker_defect() <= tol; }
};

class NonUnitBivector : public std::invalid_argument {
 public:
  explicit NonUnitBivector(const std::string& what) : std::invalid_argument(what) {}
};

class NonDecomposableBivector : public std::invalid_argument {
 public:
  explicit NonDecomposableBivector(const std::string& what) : std::invalid_argument(what) {}
};

/// R(X,Y)Z on p-vectors:
///   L(X)L(Y)Z - L(Y)L(X)Z - L([X,Y]_p)Z - [[X,Y]_h, Z],  L(X)Y = D_X Y.
/// With include_isotropy_term = false the last term is dropped; that truncated
/// form is kept only to measure what it gets wrong.
Eigen::VectorXd riemann(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& z, const Geometry& geom,
                        bool include_isotropy_term = true);

struct CurvatureSymmetryReport {
  double operator_asymmetry = 0.0;  // |R_(ab)(cd) - R_(cd)(ab)|
  double first_pair_antisymmetry = 0.0;
  double last_pair_antisymmetry = 0.0;
  double pair_exchange = 0.0;
  double bianchi = 0.0;

  double worst() const;
};

/// Symmetric M x M operator, M = D(D-1)/2, with entry
/// ((alpha nu), (rho mu)) = <R(Z_alpha, Z_nu) Z_mu, Z_rho>.
class CurvatureOperator {
 public:
  CurvatureOperator(StructureParams params, std::vector<double> tensor);

  const StructureParams& params() const { return params_; }
  int dim() const { return dim_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  /// <R(Z_i, Z_j) Z_k, Z_l>.
  double tensor(int i, int j, int k, int l) const {
    return tensor_[((i * dim_ + j) * dim_ + k) * dim_ + l];
  }
  /// Operator entry R_(alpha nu)(rho mu) for any index order.
  double entry(int alpha, int nu, int rho, int mu) const {
    return tensor(alpha, nu, mu, rho);
  }

  /// B^T R B without unit/decomposability checks.
  double quadratic(const Bivector& b) const;
  /// K(x ^ y) for a Z-orthonormal pair; `scratch` must hold bivector_dim(D).
  double sectional_pair(std::span<const double> x, std::span<const double> y,
                        std::span<double> scratch) const;

  CurvatureSymmetryReport symmetries() const;

 private:
  struct Term {
    int row;
    int col;
    double weight;
  };

  StructureParams params_;
  int dim_;
  std::vector<double> tensor_;
  Eigen::MatrixXd matrix_;
  std::vector<Term> terms_;
};

CurvatureOperator curvature_operator(const Geometry& geom, bool include_isotropy_term = true);
CurvatureOperator curvature_operator(const StructureParams& params);

/// K(B) = <R B, B> for a unit decomposable bivector. Throws NonUnitBivector or
/// NonDecomposableBivector.
double sectional(const Bivector& b, const CurvatureOperator& r, double tol = 1e-10);

/// One entry of the closed-form curvature table: its value, or zero for the
/// entries the table declares vanishing.
struct TabulatedEntry {
  int alpha;
  int nu;
  int rho;
  int mu;
  double expected;
  const char* family;
};

/// All entries on the vertical rows (0,nu) and (2n+1,nu), the horizontal
/// cross block (Y1^Y1, Y2^Y2) and the mixed block (Y1^Y2, Y1^Y2), with their
/// closed-form values. Each unordered pair of bivector indices appears once.
std::vector<TabulatedEntry> tabulated_curvature_entries(const StructureParams& params);

// Ricci curvature.

/// Closed-form Ricci matrix over p_basis.
Eigen::MatrixXd ricci_closed_form(const StructureParams& params);
/// Eigenvalues of the closed-form coefficient matrix: the two roots of the
/// (X1, X2) block (x+y +- sqrt((x-y)^2 + 4z^2))/2, then 2n copies of
/// 2(1+n-1/c), then 2p copies of 2(1+p-(a^2+c^2)/c).
std::vector<double> ricci_eigenvalues_closed_form(const StructureParams& params);

/// Z = sum_i U(v_i, v_i) over the orthonormal frame.
Eigen::VectorXd mean_curvature_vector(const Geometry& geom);
/// Homogeneous-space Ricci formula with Killing-form term split over p and h;
/// returned in the orthonormal Z frame.
Eigen::MatrixXd ricci_via_besse(const Geometry& geom);
Eigen::MatrixXd ricci_via_besse(const StructureParams& params);
/// Ric(X,Y) = sum_i <R(Z_i, X) Y, Z_i>, in the orthonormal Z frame.
Eigen::MatrixXd ricci_via_contraction(const Geometry& geom);
Eigen::MatrixXd ricci_via_contraction(const CurvatureOperator& r);
Eigen::MatrixXd ricci_via_contraction(const StructureParams& params);

/// Bilinear form over p_basis -> Z frame, and back.
Eigen::MatrixXd to_orthonormal(const Eigen::MatrixXd& form, const OrthonormalFrame& z);
Eigen::MatrixXd to_invariant(const Eigen::MatrixXd& form, const OrthonormalFrame& z);

double scalar_closed_form(const StructureParams& params);
/// s = Ric_ij g^ij with the contraction Ricci expressed over p_basis.
double scalar_via_trace(const Geometry& geom);
double scalar_via_trace(const StructureParams& params);

}  // namespace hsph
