#include "hsph/connection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hsph {

UTensor::UTensor(StructureParams params, std::vector<Eigen::VectorXd> table)
    : params_(params), dim_(params.dim()), table_(std::move(table)) {
  if (static_cast<int>(table_.size()) != dim_ * dim_) {
    throw std::invalid_argument("U table must have D*D entries");
  }
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      const Eigen::VectorXd& v = at(i, j);
      if (v.size() != dim_) throw std::invalid_argument("U entry has wrong length");
      for (int k = 0; k < dim_; ++k) {
        if (v(k) != 0.0) nonzero_.push_back({i, j, k, v(k)});
      }
    }
  }
}

Eigen::VectorXd UTensor::apply(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
  for (const auto& e : nonzero_) out(e.k) += e.value * x(e.i) * y(e.j);
  return out;
}

double UTensor::symmetry_error() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = i + 1; j < dim_; ++j) {
      worst = std::max(worst, (at(i, j) - at(j, i)).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

UTensor u_tensor_solve(const StructureParams& params, const ReductiveFrame& frame) {
  params.validate();
  if (frame.n() != params.n || frame.p() != params.p) {
    throw std::invalid_argument("frame dimensions do not match params");
  }
  const int d = params.dim();
  const Eigen::MatrixXd g = metric(params).matrix;
  const Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) {
    throw std::logic_error("metric Gram matrix is not positive definite");
  }

  // ad[k] is the matrix of [e_k, .]_p on p.
  std::vector<Eigen::MatrixXd> ad(d, Eigen::MatrixXd::Zero(d, d));
  for (int k = 0; k < d; ++k) {
    const Eigen::VectorXd ek = Eigen::VectorXd::Unit(d, k);
    for (int i = 0; i < d; ++i) {
      ad[k].col(i) = frame.bracket_p(ek, Eigen::VectorXd::Unit(d, i));
    }
  }

  std::vector<Eigen::VectorXd> table(d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Eigen::VectorXd rhs(d);
      for (int k = 0; k < d; ++k) {
        rhs(k) = 0.5 * (ad[k].col(i).dot(g.col(j)) + g.row(i).dot(ad[k].col(j)));
      }
      table[i * d + j] = llt.solve(rhs);
    }
  }
  return {params, std::move(table)};
}

UTensor u_tensor_closed_form(const StructureParams& params) {
  params.validate();
  const int d = params.dim();
  const int x1 = 0;
  const int x2 = 2 * params.n + 1;
  const double a = params.a;
  const double c = params.c;
  std::vector<Eigen::VectorXd> table(d * d, Eigen::VectorXd::Zero(d));

  // U(X, Y_{2k-1}) = k_coef Y_{2k}, U(X, Y_{2k}) = -k_coef Y_{2k-1}, symmetric.
  auto set_pairs = [&](int x, int first, int count, double coef) {
    for (int k = 0; k < count; ++k) {
      const int odd = first + 2 * k;
      const int even = odd + 1;
      table[x * d + odd](even) = coef;
      table[x * d + even](odd) = -coef;
      table[odd * d + x](even) = coef;
      table[even * d + x](odd) = -coef;
    }
  };
  set_pairs(x1, 1, params.n, (2.0 - c) / (2.0 * c));
  set_pairs(x1, x2 + 1, params.p, -a / c);
  set_pairs(x2, 1, params.n, -a / c);
  set_pairs(x2, x2 + 1, params.p, (a * a + c * c) / c - 0.5);
  return {params, std::move(table)};
}

double max_discrepancy(const UTensor& lhs, const UTensor& rhs) {
  if (lhs.dim() != rhs.dim()) throw std::invalid_argument("U tensors differ in dimension");
  double worst = 0.0;
  for (int i = 0; i < lhs.dim(); ++i) {
    for (int j = 0; j < lhs.dim(); ++j) {
      worst = std::max(worst, (lhs.at(i, j) - rhs.at(i, j)).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double defining_identity_error(const UTensor& u, const ReductiveFrame& frame,
                               const Eigen::MatrixXd& g) {
  const int d = u.dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    const Eigen::VectorXd ei = Eigen::VectorXd::Unit(d, i);
    for (int j = 0; j < d; ++j) {
      const Eigen::VectorXd ej = Eigen::VectorXd::Unit(d, j);
      for (int k = 0; k < d; ++k) {
        const Eigen::VectorXd ek = Eigen::VectorXd::Unit(d, k);
        const double lhs = 2.0 * u.at(i, j).dot(g * ek);
        const double rhs =
            frame.bracket_p(ek, ei).dot(g * ej) + ei.dot(g * frame.bracket_p(ek, ej));
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
  }
  return worst;
}

Eigen::VectorXd covariant_derivative(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                     const UTensor& u, const ReductiveFrame& frame) {
  return 0.5 * frame.bracket_p(x, y) + u.apply(x, y);
}

}  // namespace hsph
