#include "core/linear_extension.hpp"

#include <string>

namespace qspecies {

LinearExtensionMap::LinearExtensionMap(Matrix images, const Tolerances& tol)
    : images_(std::move(images)) {
  if (images_.rows() < 1 || images_.cols() < 1) {
    throw DimensionError("linear extension needs at least one image vector");
  }
  if (images_.cols() > images_.rows()) {
    throw CapacityError(
        "target dimension too small to host an orthonormal image set");
  }
  const Matrix gram = images_.adjoint() * images_;
  const Matrix id = Matrix::Identity(gram.rows(), gram.cols());
  isometry_residual_ = (gram - id).cwiseAbs().maxCoeff();
  if (isometry_residual_ > tol.isometry) {
    throw IsometryError("image set is not orthonormal (Gram deviation " +
                        std::to_string(isometry_residual_) + ")");
  }
}

Vector LinearExtensionMap::apply(const Vector& coeffs) const {
  if (coeffs.size() != images_.cols()) {
    throw DimensionError("coefficient count does not match domain dimension");
  }
  return images_ * coeffs;
}

Vector LinearExtensionMap::recover(const Vector& target) const {
  if (target.size() != images_.rows()) {
    throw DimensionError("target vector does not match target dimension");
  }
  return images_.adjoint() * target;
}

}  // namespace qspecies
