#pragma once

// Invariant complex structures I(a,c), the 2-form omega and the associated
// Hermitian metrics g(a,c) = omega(., I(a,c) .) on p.

#include <Eigen/Dense>

namespace hsph {

/// Selects the manifold (n, p) and the structure (a, c), c > 0.
struct StructureParams {
  int n = 1;
  int p = 1;
  double a = 0.0;
  double c = 1.0;

  int dim() const { return 2 * n + 2 * p + 2; }
  /// Throws std::invalid_argument for n < 1, p < 1, c <= 0 or non-finite a, c.
  void validate() const;
};

/// Matrix of I(a,c) over p_basis; column j is the image of basis vector j.
///
/// On the even Y vectors the action Y_{2k} -> -Y_{2k-1} is forced by
/// I^2 = -Id; only the odd ones are prescribed directly.
Eigen::MatrixXd complex_structure(const StructureParams& params);

/// Omega(i, j) = omega(e_i, e_j) with omega(X1, X2) = +1 and
/// omega(Y_{2k-1}, Y_{2k}) = +1 in each factor.
Eigen::MatrixXd fundamental_form(int n, int p);

struct PositivityReport {
  bool compatible = false;    // J^T Omega J == Omega
  bool positive = false;      // (X, Y) -> omega(X, JY) positive definite
  double compat_error = 0.0;  // max |J^T Omega J - Omega|
  double symmetry_error = 0.0;
  double min_eigenvalue = 0.0;

  bool ok() const { return compatible && positive; }
};

/// Tests that J preserves omega and that omega(., J .) is positive definite.
PositivityReport check_positive_associated(const Eigen::MatrixXd& j,
                                           const Eigen::MatrixXd& omega, double tol = 1e-12);

struct MetricTensor {
  StructureParams params;
  Eigen::MatrixXd matrix;  // over p_basis
};

/// g(a,c)(X, Y) = omega(X, I(a,c) Y). Throws std::logic_error if Omega*J comes
/// out non-symmetric; the result is never symmetrized.
MetricTensor metric(const StructureParams& params);

/// Columns are Z_0..Z_{D-1} as p-vectors:
/// Z_0 = sqrt(c) X1, Z_k = Y1_k, Z_{2n+1} = (a X1 + X2)/sqrt(c), Z_{2n+1+k} = Y2_k.
struct OrthonormalFrame {
  Eigen::MatrixXd vectors;

  Eigen::VectorXd z(int k) const { return vectors.col(k); }
  /// p-vector -> coordinates in the Z frame.
  Eigen::VectorXd coordinates(const Eigen::VectorXd& p_vector) const;
};

OrthonormalFrame orthonormal_frame(const StructureParams& params);

}  // namespace hsph
