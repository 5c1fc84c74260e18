#pragma once

#include "hsph/connection.hpp"
#include "hsph/hermitian.hpp"
#include "hsph/lie_algebra.hpp"

#include <Eigen/Dense>

#include <memory>

namespace hsph {

/// Everything derived from one StructureParams: frame, I(a,c), g(a,c), the
/// solved U tensor and the orthonormal Z frame. Immutable once built.
struct Geometry {
  StructureParams params;
  std::shared_ptr<const ReductiveFrame> frame;
  Eigen::MatrixXd complex_structure;
  MetricTensor metric;
  UTensor connection;
  OrthonormalFrame orthonormal;

  static Geometry build(const StructureParams& params);
  /// Reuses a frame already built for (params.n, params.p).
  static Geometry build(const StructureParams& params,
                        std::shared_ptr<const ReductiveFrame> frame);

  int dim() const { return params.dim(); }
  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return x.dot(metric.matrix * y);
  }
};

}  // namespace hsph
