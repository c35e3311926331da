#include "core/random.hpp"

#include <cmath>
#include <random>

namespace qspecies {

namespace {

Vector gaussian_vector(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = normal(gen);
    const double im = normal(gen);
    v(i) = Complex(re, im);
  }
  return v;
}

}  // namespace

StateVector random_state(int dim, std::uint64_t seed) {
  if (dim < 1) throw DimensionError("state dimension must be at least 1");
  std::mt19937_64 gen(seed);
  return StateVector::normalized(gaussian_vector(dim, gen));
}

UnitaryMatrix random_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw DimensionError("unitary dimension must be at least 1");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix z(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const double re = normal(gen);
      const double im = normal(gen);
      z(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  // Fix gauge: absorb the diagonal phases of R into Q so that the implied R
  // has a real positive diagonal. This makes Q Haar-distributed and the
  // result reproducible for a fixed seed.
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    const Complex phase = (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return UnitaryMatrix(std::move(q));
}

}  // namespace qspecies
