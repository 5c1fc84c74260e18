#include "hsph/lie_algebra.hpp"

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>

namespace hsph {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

// Structure constants are small rationals; anything below this is QR noise.
constexpr double kDropTol = 1e-13;
constexpr double kSpanTol = 1e-10;

Eigen::MatrixXcd unit(int size, int row, int col) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size, size);
  m(row, col) = 1.0;
  return m;
}

AlgebraElement embed(int n, int p, int factor, const Eigen::MatrixXcd& m) {
  AlgebraElement e = AlgebraElement::zero(n, p);
  (factor == 0 ? e.block1 : e.block2) = m;
  return e;
}

void check_shape(const AlgebraElement& a, const AlgebraElement& b) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument("algebra elements have mismatched block sizes");
  }
}

Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a * b - b * a;
}

}  // namespace

AlgebraElement AlgebraElement::zero(int n, int p) {
  return {Eigen::MatrixXcd::Zero(n + 1, n + 1), Eigen::MatrixXcd::Zero(p + 1, p + 1)};
}

bool AlgebraElement::is_skew_hermitian(double tol) const {
  auto skew = [tol](const Eigen::MatrixXcd& m) {
    return m.rows() == m.cols() &&
           (m + m.adjoint()).cwiseAbs().maxCoeff() <= tol;
  };
  return skew(block1) && skew(block2);
}

bool AlgebraElement::same_shape(const AlgebraElement& other) const {
  return block1.rows() == other.block1.rows() && block1.cols() == other.block1.cols() &&
         block2.rows() == other.block2.rows() && block2.cols() == other.block2.cols();
}

double AlgebraElement::max_abs() const {
  double m = 0.0;
  if (block1.size() > 0) m = std::max(m, block1.cwiseAbs().maxCoeff());
  if (block2.size() > 0) m = std::max(m, block2.cwiseAbs().maxCoeff());
  return m;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  check_shape(*this, other);
  block1 += other.block1;
  block2 += other.block2;
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  check_shape(*this, other);
  block1 -= other.block1;
  block2 -= other.block2;
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(double s) {
  block1 *= s;
  block2 *= s;
  return *this;
}

AlgebraElement operator+(AlgebraElement lhs, const AlgebraElement& rhs) { return lhs += rhs; }
AlgebraElement operator-(AlgebraElement lhs, const AlgebraElement& rhs) { return lhs -= rhs; }
AlgebraElement operator-(AlgebraElement v) { return v *= -1.0; }
AlgebraElement operator*(double s, AlgebraElement v) { return v *= s; }

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) {
  check_shape(a, b);
  return {commutator(a.block1, b.block1), commutator(a.block2, b.block2)};
}

ReductiveFrame::ReductiveFrame(int n, int p) : n_(n), p_(p) {
  if (n < 1 || p < 1) {
    throw std::invalid_argument("build_frame requires n >= 1 and p >= 1 (got n=" +
                                std::to_string(n) + ", p=" + std::to_string(p) + ")");
  }

  for (int factor = 0; factor < 2; ++factor) {
    const int m = factor == 0 ? n : p;
    const int size = m + 1;
    // X = (i/2) T_00 = i E_00
    p_basis_.push_back(embed(n, p, factor, 0.5 * kI * (2.0 * unit(size, 0, 0))));
    for (int nu = 1; nu <= m; ++nu) {
      p_basis_.push_back(embed(n, p, factor, unit(size, nu, 0) - unit(size, 0, nu)));
      p_basis_.push_back(embed(n, p, factor, kI * (unit(size, nu, 0) + unit(size, 0, nu))));
    }
  }

  // Stabilizer of the first basis vector: Z_{nu mu}, iT_{nu mu}, iE_{nu nu}
  // with indices 1..m, sitting in the lower-right m x m block.
  for (int factor = 0; factor < 2; ++factor) {
    const int m = factor == 0 ? n : p;
    const int size = m + 1;
    for (int nu = 1; nu <= m; ++nu) {
      for (int mu = 1; mu < nu; ++mu) {
        h_basis_.push_back(embed(n, p, factor, unit(size, nu, mu) - unit(size, mu, nu)));
        h_basis_.push_back(embed(n, p, factor, kI * (unit(size, nu, mu) + unit(size, mu, nu))));
      }
      h_basis_.push_back(embed(n, p, factor, kI * unit(size, nu, nu)));
    }
  }

  const int rows = 2 * ((n + 1) * (n + 1) + (p + 1) * (p + 1));
  basis_matrix_.resize(rows, dim_g());
  for (int j = 0; j < dim_p(); ++j) basis_matrix_.col(j) = flatten(p_basis_[j]);
  for (int j = 0; j < dim_h(); ++j) basis_matrix_.col(dim_p() + j) = flatten(h_basis_[j]);
  qr_.compute(basis_matrix_);
  if (qr_.rank() != dim_g()) {
    throw std::logic_error("combined basis of p and h is rank deficient");
  }

  const int d = dim_p();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Eigen::VectorXd coeffs = solve_combined(bracket(p_basis_[i], p_basis_[j]));
      for (int k = 0; k < d; ++k) {
        if (std::abs(coeffs(k)) > kDropTol) pp_to_p_.push_back({i, j, k, coeffs(k)});
      }
      for (int k = 0; k < dim_h(); ++k) {
        if (std::abs(coeffs(d + k)) > kDropTol) pp_to_h_.push_back({i, j, k, coeffs(d + k)});
      }
    }
  }
  for (int w = 0; w < dim_h(); ++w) {
    for (int j = 0; j < d; ++j) {
      const Eigen::VectorXd coeffs = solve_combined(bracket(h_basis_[w], p_basis_[j]));
      for (int k = 0; k < d; ++k) {
        if (std::abs(coeffs(k)) > kDropTol) hp_to_p_.push_back({w, j, k, coeffs(k)});
      }
      reductivity_defect_ =
          std::max(reductivity_defect_, coeffs.tail(dim_h()).cwiseAbs().maxCoeff());
    }
  }
}

int ReductiveFrame::index_y1(int k) const {
  if (k < 1 || k > 2 * n_) throw std::out_of_range("Y1 index out of range");
  return k;
}

int ReductiveFrame::index_y2(int k) const {
  if (k < 1 || k > 2 * p_) throw std::out_of_range("Y2 index out of range");
  return 2 * n_ + 1 + k;
}

Eigen::VectorXd ReductiveFrame::flatten(const AlgebraElement& a) const {
  const Eigen::Index s1 = a.block1.size();
  const Eigen::Index s2 = a.block2.size();
  Eigen::VectorXd v(2 * (s1 + s2));
  Eigen::Index pos = 0;
  for (const Eigen::MatrixXcd* block : {&a.block1, &a.block2}) {
    for (Eigen::Index c = 0; c < block->cols(); ++c) {
      for (Eigen::Index r = 0; r < block->rows(); ++r) {
        v(pos++) = (*block)(r, c).real();
        v(pos++) = (*block)(r, c).imag();
      }
    }
  }
  return v;
}

Eigen::VectorXd ReductiveFrame::solve_combined(const AlgebraElement& a) const {
  if (a.block1.rows() != n_ + 1 || a.block1.cols() != n_ + 1 || a.block2.rows() != p_ + 1 ||
      a.block2.cols() != p_ + 1) {
    throw std::invalid_argument("algebra element does not match the frame's block sizes");
  }
  const Eigen::VectorXd target = flatten(a);
  Eigen::VectorXd coeffs = qr_.solve(target);
  const double residual = (basis_matrix_ * coeffs - target).cwiseAbs().maxCoeff();
  if (residual > kSpanTol * std::max(1.0, target.cwiseAbs().maxCoeff())) {
    throw std::domain_error("element is not in u(n+1)+u(p+1) (residual " +
                            std::to_string(residual) + ")");
  }
  return coeffs;
}

Eigen::VectorXd ReductiveFrame::project_p(const AlgebraElement& a) const {
  return solve_combined(a).head(dim_p());
}

Eigen::VectorXd ReductiveFrame::project_h(const AlgebraElement& a) const {
  return solve_combined(a).tail(dim_h());
}

AlgebraElement ReductiveFrame::from_p(const Eigen::VectorXd& coeffs) const {
  if (coeffs.size() != dim_p()) throw std::invalid_argument("p-vector has wrong length");
  AlgebraElement out = AlgebraElement::zero(n_, p_);
  for (int i = 0; i < dim_p(); ++i) {
    if (coeffs(i) != 0.0) out += coeffs(i) * p_basis_[i];
  }
  return out;
}

AlgebraElement ReductiveFrame::from_h(const Eigen::VectorXd& coeffs) const {
  if (coeffs.size() != dim_h()) throw std::invalid_argument("h-vector has wrong length");
  AlgebraElement out = AlgebraElement::zero(n_, p_);
  for (int i = 0; i < dim_h(); ++i) {
    if (coeffs(i) != 0.0) out += coeffs(i) * h_basis_[i];
  }
  return out;
}

Eigen::VectorXd ReductiveFrame::bracket_p(const Eigen::VectorXd& x,
                                          const Eigen::VectorXd& y) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_p());
  for (const auto& sc : pp_to_p_) out(sc.k) += sc.value * x(sc.i) * y(sc.j);
  return out;
}

Eigen::VectorXd ReductiveFrame::bracket_h(const Eigen::VectorXd& x,
                                          const Eigen::VectorXd& y) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_h());
  for (const auto& sc : pp_to_h_) out(sc.k) += sc.value * x(sc.i) * y(sc.j);
  return out;
}

Eigen::VectorXd ReductiveFrame::bracket_hp(const Eigen::VectorXd& w,
                                           const Eigen::VectorXd& z) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_p());
  for (const auto& sc : hp_to_p_) out(sc.k) += sc.value * w(sc.i) * z(sc.j);
  return out;
}

Eigen::MatrixXd ReductiveFrame::ad_h_matrix(int k) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_p(), dim_p());
  for (const auto& sc : hp_to_p_) {
    if (sc.i == k) m(sc.k, sc.j) += sc.value;
  }
  return m;
}

ReductiveFrame build_frame(int n, int p) { return ReductiveFrame(n, p); }

}  // namespace hsph
