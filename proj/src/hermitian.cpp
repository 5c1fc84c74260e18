#include "hsph/hermitian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hsph {

namespace {

constexpr double kSymmetryTol = 1e-14;

}  // namespace

void StructureParams::validate() const {
  if (n < 1 || p < 1) {
    throw std::invalid_argument("n and p must be >= 1 (got n=" + std::to_string(n) +
                                ", p=" + std::to_string(p) + ")");
  }
  if (!std::isfinite(a) || !std::isfinite(c)) {
    throw std::invalid_argument("a and c must be finite");
  }
  if (!(c > 0.0)) {
    throw std::invalid_argument("c must be > 0 (got " + std::to_string(c) + ")");
  }
}

Eigen::MatrixXd complex_structure(const StructureParams& params) {
  params.validate();
  const int d = params.dim();
  const int x1 = 0;
  const int x2 = 2 * params.n + 1;
  const double a = params.a;
  const double c = params.c;

  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(d, d);
  j(x1, x1) = a / c;
  j(x2, x1) = 1.0 / c;
  j(x1, x2) = -(a * a + c * c) / c;
  j(x2, x2) = -a / c;
  auto rotate_pairs = [&j](int first, int count) {
    for (int k = 0; k < count; ++k) {
      const int odd = first + 2 * k;
      j(odd + 1, odd) = 1.0;
      j(odd, odd + 1) = -1.0;
    }
  };
  rotate_pairs(1, params.n);
  rotate_pairs(x2 + 1, params.p);
  return j;
}

Eigen::MatrixXd fundamental_form(int n, int p) {
  if (n < 1 || p < 1) throw std::invalid_argument("n and p must be >= 1");
  const int d = 2 * n + 2 * p + 2;
  const int x2 = 2 * n + 1;
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(d, d);
  omega(0, x2) = 1.0;
  omega(x2, 0) = -1.0;
  auto pairs = [&omega](int first, int count) {
    for (int k = 0; k < count; ++k) {
      const int odd = first + 2 * k;
      omega(odd, odd + 1) = 1.0;
      omega(odd + 1, odd) = -1.0;
    }
  };
  pairs(1, n);
  pairs(x2 + 1, p);
  return omega;
}

PositivityReport check_positive_associated(const Eigen::MatrixXd& j,
                                           const Eigen::MatrixXd& omega, double tol) {
  if (j.rows() != j.cols() || omega.rows() != omega.cols() || j.rows() != omega.rows()) {
    throw std::invalid_argument("J and omega must be square of the same size");
  }
  PositivityReport r;
  r.compat_error = (j.transpose() * omega * j - omega).cwiseAbs().maxCoeff();
  r.compatible = r.compat_error <= tol;

  const Eigen::MatrixXd form = omega * j;
  r.symmetry_error = (form - form.transpose()).cwiseAbs().maxCoeff();
  const Eigen::MatrixXd sym = 0.5 * (form + form.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  r.positive = r.min_eigenvalue > 0.0;
  return r;
}

MetricTensor metric(const StructureParams& params) {
  params.validate();
  const Eigen::MatrixXd g =
      fundamental_form(params.n, params.p) * complex_structure(params);
  const double asym = (g - g.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol) {
    throw std::logic_error("omega(., I .) is not symmetric; sign convention broken");
  }
  return {params, g};
}

Eigen::VectorXd OrthonormalFrame::coordinates(const Eigen::VectorXd& p_vector) const {
  return vectors.partialPivLu().solve(p_vector);
}

OrthonormalFrame orthonormal_frame(const StructureParams& params) {
  params.validate();
  const int d = params.dim();
  const int x2 = 2 * params.n + 1;
  const double rc = std::sqrt(params.c);
  Eigen::MatrixXd z = Eigen::MatrixXd::Identity(d, d);
  z(0, 0) = rc;
  z(0, x2) = params.a / rc;
  z(x2, x2) = 1.0 / rc;
  return {z};
}

}  // namespace hsph
