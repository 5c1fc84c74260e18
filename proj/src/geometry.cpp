#include "hsph/geometry.hpp"

#include <stdexcept>

namespace hsph {

Geometry Geometry::build(const StructureParams& params) {
  params.validate();
  return build(params, std::make_shared<const ReductiveFrame>(params.n, params.p));
}

Geometry Geometry::build(const StructureParams& params,
                         std::shared_ptr<const ReductiveFrame> frame) {
  params.validate();
  if (!frame || frame->n() != params.n || frame->p() != params.p) {
    throw std::invalid_argument("frame does not match (n, p)");
  }
  UTensor u = u_tensor_solve(params, *frame);
  return Geometry{params,
                  std::move(frame),
                  hsph::complex_structure(params),
                  hsph::metric(params),
                  std::move(u),
                  orthonormal_frame(params)};
}

}  // namespace hsph
