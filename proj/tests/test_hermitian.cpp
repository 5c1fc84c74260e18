#include "hsph/hermitian.hpp"
#include "hsph/lie_algebra.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace hsph;

namespace {

std::vector<StructureParams> sample_params() {
  std::vector<StructureParams> out;
  for (auto [n, p] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
    for (double a : {-3.0, -0.7, 0.0, 0.4, 2.5}) {
      for (double c : {0.1, 0.5, 1.0, 2.3, 4.0}) out.push_back({n, p, a, c});
    }
  }
  return out;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("complex structure squares to -Id") {
  for (const auto& s : sample_params()) {
    const Eigen::MatrixXd j = complex_structure(s);
    const auto d = s.dim();
    CHECK(max_abs(j * j + Eigen::MatrixXd::Identity(d, d)) < 1e-12);
  }
}

TEST_CASE("complex structure prescribed entries") {
  const StructureParams s{1, 1, 1.5, 2.0};
  const Eigen::MatrixXd j = complex_structure(s);
  const int x2 = 3;
  CHECK(j(0, 0) == doctest::Approx(0.75));
  CHECK(j(x2, 0) == doctest::Approx(0.5));
  CHECK(j(0, x2) == doctest::Approx(-(2.25 + 4.0) / 2.0));
  CHECK(j(x2, x2) == doctest::Approx(-0.75));
  CHECK(j(2, 1) == 1.0);
  CHECK(j(1, 2) == -1.0);
  CHECK(j(5, 4) == 1.0);
}

TEST_CASE("complex structure commutes with ad h") {
  for (auto [n, p] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
    const ReductiveFrame f(n, p);
    for (double a : {-2.0, 0.3}) {
      const Eigen::MatrixXd j = complex_structure({n, p, a, 1.7});
      for (int k = 0; k < f.dim_h(); ++k) {
        const Eigen::MatrixXd ad = f.ad_h_matrix(k);
        CHECK(max_abs(ad * j - j * ad) < 1e-10);
      }
    }
  }
}

TEST_CASE("fundamental form") {
  const Eigen::MatrixXd w = fundamental_form(2, 1);
  CHECK(w(0, 5) == 1.0);
  CHECK(w(5, 0) == -1.0);
  CHECK(w(1, 2) == 1.0);
  CHECK(w(3, 4) == 1.0);
  CHECK(w(6, 7) == 1.0);
  CHECK(max_abs(w + w.transpose()) == 0.0);
  const ReductiveFrame f(2, 1);
  for (int k = 0; k < f.dim_h(); ++k) {
    const Eigen::MatrixXd ad = f.ad_h_matrix(k);
    CHECK(max_abs(ad.transpose() * w + w * ad) < 1e-12);
  }
}

TEST_CASE("structures are positive associated with omega") {
  for (const auto& s : sample_params()) {
    const PositivityReport r =
        check_positive_associated(complex_structure(s), fundamental_form(s.n, s.p));
    CHECK(r.ok());
    CHECK(r.min_eigenvalue > 0.0);
  }
}

TEST_CASE("positivity rejects the conjugate structure") {
  const StructureParams s{1, 1, 0.5, 1.2};
  const Eigen::MatrixXd w = fundamental_form(1, 1);
  const PositivityReport r = check_positive_associated(-complex_structure(s), w);
  CHECK(r.compatible);
  CHECK_FALSE(r.positive);
  CHECK_FALSE(r.ok());
  Eigen::MatrixXd skewed = complex_structure(s);
  skewed(0, 1) += 0.3;
  CHECK_FALSE(check_positive_associated(skewed, w).compatible);
}

TEST_CASE("metric blocks, symmetry and positive definiteness") {
  for (const auto& s : sample_params()) {
    const MetricTensor g = metric(s);
    CHECK(max_abs(g.matrix - oracle::metric(s.n, s.p, s.a, s.c)) < 1e-14);
    CHECK(max_abs(g.matrix - g.matrix.transpose()) == 0.0);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.matrix);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("metric is I-invariant") {
  std::mt19937_64 rng(5);
  for (const auto& s : sample_params()) {
    const Eigen::MatrixXd j = complex_structure(s);
    const Eigen::MatrixXd g = metric(s).matrix;
    const Eigen::VectorXd x = oracle::random_vector(s.dim(), rng);
    const Eigen::VectorXd y = oracle::random_vector(s.dim(), rng);
    const double lhs = (j * x).dot(g * (j * y));
    CHECK(lhs == doctest::Approx(x.dot(g * y)).epsilon(1e-12));
  }
}

TEST_CASE("orthonormal frame") {
  for (const auto& s : sample_params()) {
    const OrthonormalFrame z = orthonormal_frame(s);
    const Eigen::MatrixXd g = metric(s).matrix;
    const auto d = s.dim();
    CHECK(max_abs(z.vectors.transpose() * g * z.vectors - Eigen::MatrixXd::Identity(d, d)) <
          1e-12);
    CHECK(max_abs(z.vectors - oracle::z_frame(s.n, s.p, s.a, s.c)) < 1e-14);
    const Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(d, -1.0, 2.0);
    CHECK(max_abs(z.vectors * z.coordinates(v) - v) < 1e-12);
  }
}

TEST_CASE("round product metric is the identity") {
  const MetricTensor g = metric({1, 1, 0.0, 1.0});
  CHECK(max_abs(g.matrix - Eigen::MatrixXd::Identity(6, 6)) == 0.0);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((StructureParams{1, 1, 0.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((StructureParams{1, 1, 0.0, -1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((StructureParams{0, 1, 0.0, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((StructureParams{1, 0, 0.0, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((StructureParams{1, 1, std::nan(""), 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((StructureParams{1, 1, 0.0, INFINITY}.validate()), std::invalid_argument);
  CHECK_THROWS_AS(complex_structure({1, 1, 0.0, -2.0}), std::invalid_argument);
  CHECK_THROWS_AS(metric({1, 1, 0.0, 0.0}), std::invalid_argument);
  CHECK_NOTHROW((StructureParams{1, 1, -3.0, 1e-6}.validate()));
}
