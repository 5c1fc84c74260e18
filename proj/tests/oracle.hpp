#pragma once

// Brute-force reference computations used only by the tests. Everything here
// works on raw complex matrices and reads p-coordinates straight off the
// matrix entries, so it shares no code with the library's frame, projections
// or structure constants.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;

struct Pair {
  Mat m1;
  Mat m2;
};

inline Pair zero(int n, int p) {
  return {Mat::Zero(n + 1, n + 1), Mat::Zero(p + 1, p + 1)};
}

inline Pair commutator(const Pair& x, const Pair& y) {
  return {x.m1 * y.m1 - y.m1 * x.m1, x.m2 * y.m2 - y.m2 * x.m2};
}

inline Pair minus(const Pair& x, const Pair& y) { return {x.m1 - y.m1, x.m2 - y.m2}; }

// p-vector layout: X1, Y1_1..Y1_2n, X2, Y2_1..Y2_2p.
inline void fill_factor(Mat& m, const Vec& v, int offset, int k) {
  const std::complex<double> i(0.0, 1.0);
  m(0, 0) += i * v(offset);
  for (int nu = 1; nu <= k; ++nu) {
    const double re = v(offset + 2 * nu - 1);
    const double im = v(offset + 2 * nu);
    m(nu, 0) += re + i * im;
    m(0, nu) += -re + i * im;
  }
}

inline Pair from_p(const Vec& v, int n, int p) {
  Pair out = zero(n, p);
  fill_factor(out.m1, v, 0, n);
  fill_factor(out.m2, v, 2 * n + 1, p);
  return out;
}

inline void read_factor(const Mat& m, Vec& v, int offset, int k) {
  v(offset) = m(0, 0).imag();
  for (int nu = 1; nu <= k; ++nu) {
    v(offset + 2 * nu - 1) = m(nu, 0).real();
    v(offset + 2 * nu) = m(nu, 0).imag();
  }
}

/// p-component of an element of u(n+1) + u(p+1).
inline Vec to_p(const Pair& x, int n, int p) {
  Vec v = Vec::Zero(2 * n + 2 * p + 2);
  read_factor(x.m1, v, 0, n);
  read_factor(x.m2, v, 2 * n + 1, p);
  return v;
}

inline Vec bracket_p(const Vec& x, const Vec& y, int n, int p) {
  return to_p(commutator(from_p(x, n, p), from_p(y, n, p)), n, p);
}

/// Gram matrix of g(a,c) over the p basis, written out block by block.
inline Eigen::MatrixXd metric(int n, int p, double a, double c) {
  const int d = 2 * n + 2 * p + 2;
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(d, d);
  const int x2 = 2 * n + 1;
  g(0, 0) = 1.0 / c;
  g(0, x2) = g(x2, 0) = -a / c;
  g(x2, x2) = (a * a + c * c) / c;
  return g;
}

/// Columns Z_0..Z_{D-1} as p-vectors.
inline Eigen::MatrixXd z_frame(int n, int p, double a, double c) {
  const int d = 2 * n + 2 * p + 2;
  const int x2 = 2 * n + 1;
  Eigen::MatrixXd z = Eigen::MatrixXd::Identity(d, d);
  z(0, 0) = std::sqrt(c);
  z(0, x2) = a / std::sqrt(c);
  z(x2, x2) = 1.0 / std::sqrt(c);
  return z;
}

class Geometry {
 public:
  Geometry(int n, int p, double a, double c)
      : n_(n), p_(p), d_(2 * n + 2 * p + 2), g_(metric(n, p, a, c)), z_(z_frame(n, p, a, c)) {
    const Eigen::MatrixXd ginv = g_.inverse();
    u_.assign(d_ * d_, Vec::Zero(d_));
    for (int i = 0; i < d_; ++i) {
      for (int j = 0; j < d_; ++j) {
        const Vec ei = Vec::Unit(d_, i);
        const Vec ej = Vec::Unit(d_, j);
        Vec rhs(d_);
        for (int k = 0; k < d_; ++k) {
          const Vec ek = Vec::Unit(d_, k);
          rhs(k) = 0.5 * (inner(bracket_p(ek, ei, n, p), ej) + inner(ei, bracket_p(ek, ej, n, p)));
        }
        u_[i * d_ + j] = ginv * rhs;
      }
    }
  }

  int dim() const { return d_; }
  const Eigen::MatrixXd& g() const { return g_; }
  const Eigen::MatrixXd& z() const { return z_; }
  double inner(const Vec& x, const Vec& y) const { return x.dot(g_ * y); }

  Vec u(const Vec& x, const Vec& y) const {
    Vec out = Vec::Zero(d_);
    for (int i = 0; i < d_; ++i) {
      if (x(i) == 0.0) continue;
      for (int j = 0; j < d_; ++j) {
        if (y(j) != 0.0) out += x(i) * y(j) * u_[i * d_ + j];
      }
    }
    return out;
  }
  const Vec& u_at(int i, int j) const { return u_[i * d_ + j]; }

  Vec nabla(const Vec& x, const Vec& y) const { return 0.5 * bracket_p(x, y, n_, p_) + u(x, y); }

  Vec riemann(const Vec& x, const Vec& y, const Vec& w) const {
    const Pair xy = commutator(from_p(x, n_, p_), from_p(y, n_, p_));
    const Vec xy_p = to_p(xy, n_, p_);
    const Pair xy_h = minus(xy, from_p(xy_p, n_, p_));
    const Vec iso = to_p(commutator(xy_h, from_p(w, n_, p_)), n_, p_);
    return nabla(x, nabla(y, w)) - nabla(y, nabla(x, w)) - nabla(xy_p, w) - iso;
  }

  /// <R(Z_i, Z_j) Z_k, Z_l>.
  double tensor(int i, int j, int k, int l) const {
    return inner(riemann(z_.col(i), z_.col(j), z_.col(k)), z_.col(l));
  }

  /// Sectional curvature of span{x, y}, x and y p-vectors in general position.
  double sectional(const Vec& x, const Vec& y) const {
    const double area = inner(x, x) * inner(y, y) - inner(x, y) * inner(x, y);
    return inner(riemann(x, y, y), x) / area;
  }

  /// Ric(X, Y) = sum_i <R(Z_i, X) Y, Z_i>.
  double ricci(const Vec& x, const Vec& y) const {
    double s = 0.0;
    for (int i = 0; i < d_; ++i) s += inner(riemann(z_.col(i), x, y), z_.col(i));
    return s;
  }

 private:
  int n_;
  int p_;
  int d_;
  Eigen::MatrixXd g_;
  Eigen::MatrixXd z_;
  std::vector<Vec> u_;
};

/// Closed-form scalar curvature.
inline double scalar(int n, int p, double a, double c) {
  return 4.0 * n * (1.0 + n - 1.0 / (2.0 * c)) + 4.0 * p * (1.0 + p - (a * a + c * c) / (2.0 * c));
}

inline Vec random_vector(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = dist(rng);
  return v;
}

}  // namespace oracle
