#pragma once

#include "core/hilbert.hpp"

namespace qspecies {

// A linear map specified by the images of an orthonormal domain basis and
// extended to arbitrary coefficient vectors. Arithmetic runs on raw
// (unnormalized) vectors; callers construct StateVectors at module
// boundaries. Construction verifies that the image set is orthonormal, which
// makes the map an isometry on its domain.
class LinearExtensionMap {
 public:
  // images: target_dim x domain_dim matrix whose columns are the images of
  // the domain basis vectors.
  explicit LinearExtensionMap(Matrix images,
                              const Tolerances& tol = default_tolerances());

  int domain_dim() const { return static_cast<int>(images_.cols()); }
  long long target_dim() const { return images_.rows(); }
  const Matrix& images() const { return images_; }

  // sum_j coeffs[j] * image_j.
  Vector apply(const Vector& coeffs) const;

  // Adjoint map: coefficient j of the result is <image_j|target>. For
  // targets inside the image span this inverts apply().
  Vector recover(const Vector& target) const;

  // Max absolute deviation of the image Gram matrix from the identity.
  double isometry_residual() const { return isometry_residual_; }

 private:
  Matrix images_;
  double isometry_residual_ = 0.0;
};

}  // namespace qspecies
