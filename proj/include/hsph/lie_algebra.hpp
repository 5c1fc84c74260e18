#pragma once

// Matrix realization of u(n+1) + u(p+1) with the reductive splitting g = h + p
// used for S^{2n+1} x S^{2p+1} = U(n+1)/U(n) x U(p+1)/U(p).

#include <Eigen/Dense>

#include <vector>

namespace hsph {

/// One element of u(n+1) + u(p+1): a pair of skew-Hermitian blocks.
struct AlgebraElement {
  Eigen::MatrixXcd block1;
  Eigen::MatrixXcd block2;

  static AlgebraElement zero(int n, int p);

  bool is_skew_hermitian(double tol = 1e-12) const;
  bool same_shape(const AlgebraElement& other) const;
  /// Largest entry modulus over both blocks.
  double max_abs() const;

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(double s);
};

AlgebraElement operator+(AlgebraElement lhs, const AlgebraElement& rhs);
AlgebraElement operator-(AlgebraElement lhs, const AlgebraElement& rhs);
AlgebraElement operator-(AlgebraElement v);
AlgebraElement operator*(double s, AlgebraElement v);

/// Componentwise commutator [A1,B1] + [A2,B2]. Throws std::invalid_argument on
/// a block size mismatch.
AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b);

/// Sparse structure constant: coefficient `value` of output basis element `k`
/// in the bracket of input basis elements `i` and `j`.
struct StructureConstant {
  int i;
  int j;
  int k;
  double value;
};

/// Ordered basis of p (X1, Y1_1..Y1_2n, X2, Y2_1..Y2_2p) plus a basis of
/// h = u(n) + u(p), with cached projections and bracket tables.
///
/// Coefficient vectors over p_basis are called p-vectors throughout; they are
/// indexed 0..D-1 with X1 at 0, Y1_k at k, X2 at 2n+1 and Y2_k at 2n+1+k.
class ReductiveFrame {
 public:
  /// Throws std::invalid_argument unless n >= 1 and p >= 1.
  ReductiveFrame(int n, int p);

  int n() const { return n_; }
  int p() const { return p_; }
  /// D = 2n + 2p + 2.
  int dim_p() const { return static_cast<int>(p_basis_.size()); }
  int dim_h() const { return static_cast<int>(h_basis_.size()); }
  int dim_g() const { return dim_p() + dim_h(); }

  const std::vector<AlgebraElement>& p_basis() const { return p_basis_; }
  const std::vector<AlgebraElement>& h_basis() const { return h_basis_; }

  // Positions in p_basis; k is 1-based as in Y1_k, Y2_k.
  int index_x1() const { return 0; }
  int index_y1(int k) const;
  int index_x2() const { return 2 * n_ + 1; }
  int index_y2(int k) const;

  const AlgebraElement& x1() const { return p_basis_[index_x1()]; }
  const AlgebraElement& y1(int k) const { return p_basis_[index_y1(k)]; }
  const AlgebraElement& x2() const { return p_basis_[index_x2()]; }
  const AlgebraElement& y2(int k) const { return p_basis_[index_y2(k)]; }

  /// Coefficients of A over p_basis (resp. h_basis). Throws std::domain_error
  /// if A is not in g to within 1e-10.
  Eigen::VectorXd project_p(const AlgebraElement& a) const;
  Eigen::VectorXd project_h(const AlgebraElement& a) const;

  AlgebraElement from_p(const Eigen::VectorXd& coeffs) const;
  AlgebraElement from_h(const Eigen::VectorXd& coeffs) const;

  /// [x, y]_p for p-vectors x, y.
  Eigen::VectorXd bracket_p(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  /// h-coefficients of [x, y] for p-vectors x, y.
  Eigen::VectorXd bracket_h(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  /// [w, z] for an h-vector w and a p-vector z; lands in p by reductivity.
  Eigen::VectorXd bracket_hp(const Eigen::VectorXd& w, const Eigen::VectorXd& z) const;

  /// Matrix of ad_w restricted to p for the h-basis element k.
  Eigen::MatrixXd ad_h_matrix(int k) const;

  /// Largest h-component of [W, V] over W in h_basis, V in p_basis.
  double reductivity_defect() const { return reductivity_defect_; }

  /// Real flattening (Re, Im of every entry of both blocks).
  Eigen::VectorXd flatten(const AlgebraElement& a) const;
  /// Columns are flattened p_basis followed by h_basis elements.
  const Eigen::MatrixXd& basis_matrix() const { return basis_matrix_; }

 private:
  Eigen::VectorXd solve_combined(const AlgebraElement& a) const;

  int n_;
  int p_;
  std::vector<AlgebraElement> p_basis_;
  std::vector<AlgebraElement> h_basis_;
  Eigen::MatrixXd basis_matrix_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
  std::vector<StructureConstant> pp_to_p_;
  std::vector<StructureConstant> pp_to_h_;
  std::vector<StructureConstant> hp_to_p_;
  double reductivity_defect_ = 0.0;
};

/// Builds the frame for U(n+1)/U(n) x U(p+1)/U(p).
ReductiveFrame build_frame(int n, int p);

}  // namespace hsph
