#pragma once

// Invariant Levi-Civita connection D_X Y = 1/2 [X,Y]_p + U(X,Y) for g(a,c).

#include "hsph/hermitian.hpp"
#include "hsph/lie_algebra.hpp"

#include <Eigen/Dense>

#include <vector>

namespace hsph {

/// Symmetric bilinear U: p x p -> p stored as a dense D x D table of p-vectors.
class UTensor {
 public:
  UTensor(StructureParams params, std::vector<Eigen::VectorXd> table);

  const StructureParams& params() const { return params_; }
  int dim() const { return dim_; }
  /// U(e_i, e_j).
  const Eigen::VectorXd& at(int i, int j) const { return table_[i * dim_ + j]; }
  Eigen::VectorXd apply(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  /// max |U(e_i,e_j) - U(e_j,e_i)|.
  double symmetry_error() const;

 private:
  StructureParams params_;
  int dim_;
  std::vector<Eigen::VectorXd> table_;
  std::vector<StructureConstant> nonzero_;
};

/// Solves 2 g(U(X,Y), Z) = g([Z,X]_p, Y) + g(X, [Z,Y]_p) for every basis pair.
UTensor u_tensor_solve(const StructureParams& params, const ReductiveFrame& frame);

/// The sparse closed-form table: only U(X1|X2, Y_k) pairs are nonzero.
UTensor u_tensor_closed_form(const StructureParams& params);

/// Largest entrywise difference between two tensors of the same dimension.
double max_discrepancy(const UTensor& lhs, const UTensor& rhs);

/// Largest residual of the defining identity over all basis triples.
double defining_identity_error(const UTensor& u, const ReductiveFrame& frame,
                               const Eigen::MatrixXd& g);

/// D_X Y = 1/2 [X,Y]_p + U(X,Y) on p-vectors.
Eigen::VectorXd covariant_derivative(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                     const UTensor& u, const ReductiveFrame& frame);

}  // namespace hsph
