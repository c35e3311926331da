#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "core/errors.hpp"
#include "core/tolerances.hpp"

namespace qspecies {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Hard cap on the number of complex amplitudes any operation may allocate.
inline constexpr long long kMaxTotalDim = 1LL << 20;

namespace detail {

// Kronecker product of raw coefficient vectors; row-major convention, the
// left factor is the most significant index block.
Vector kron(const Vector& a, const Vector& b);

// Kronecker product restricted by the total-dimension cap.
Vector kron_checked(const Vector& a, const Vector& b);

}  // namespace detail

// Normalized pure state. Construction validates the Euclidean norm; use
// normalized() to rescale raw coefficient vectors at module boundaries.
class StateVector {
 public:
  explicit StateVector(Vector amplitudes,
                       const Tolerances& tol = default_tolerances());

  // Rescales an arbitrary nonzero vector to unit norm.
  static StateVector normalized(Vector amplitudes);

  // Basis vector |index> of the given dimension.
  static StateVector basis(int dim, int index);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  Complex amplitude(int i) const;

 private:
  Vector amps_;
};

// Square matrix validated to satisfy U^dagger U = U U^dagger = I.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Matrix entries,
                         const Tolerances& tol = default_tolerances());

  static UnitaryMatrix identity(int dim);
  static UnitaryMatrix pauli_x();
  static UnitaryMatrix hadamard();
  // Real rotation [[cos a, -sin a], [sin a, cos a]].
  static UnitaryMatrix rotation2(double angle);
  // diag(exp(i*phases[0]), ..., exp(i*phases[d-1])).
  static UnitaryMatrix diagonal_phases(const std::vector<double>& phases);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& entries() const { return m_; }

  StateVector apply(const StateVector& s) const;
  UnitaryMatrix compose(const UnitaryMatrix& rhs) const;  // this * rhs
  UnitaryMatrix adjoint() const;
  UnitaryMatrix power(int exponent) const;  // exponent >= 0

 private:
  Matrix m_;
};

// Density operator validated to be Hermitian, unit trace, and positive
// semidefinite up to the configured eigenvalue floor.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries,
                         const Tolerances& tol = default_tolerances());

  static DensityMatrix from_pure(const StateVector& s);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& entries() const { return m_; }

  // Eigenvalues in ascending order (real by hermiticity).
  Eigen::VectorXd eigenvalues() const;

 private:
  Matrix m_;
};

// Tensor-factor bookkeeping for a composite Hilbert space. Index convention
// is row-major: the flat index of (i_0, ..., i_{m-1}) is
// sum_k i_k * stride(k) with stride(k) the product of the dimensions to the
// right of factor k.
class CompositeSpace {
 public:
  explicit CompositeSpace(std::vector<int> factor_dims);

  int factor_count() const { return static_cast<int>(dims_.size()); }
  int factor_dim(int i) const;
  const std::vector<int>& factor_dims() const { return dims_; }
  long long total_dim() const { return total_; }
  long long stride(int i) const;

  // Digits of a flat index, most significant factor first.
  std::vector<int> unflatten(long long index) const;
  long long flatten(const std::vector<int>& digits) const;

 private:
  std::vector<int> dims_;
  std::vector<long long> strides_;
  long long total_ = 1;
};

// <a|b>, conjugate-linear in the first argument.
Complex inner_product(const StateVector& a, const StateVector& b);

StateVector tensor(const StateVector& a, const StateVector& b);
StateVector tensor_power(const StateVector& s, int m);

// Applies u to the factor at `slot` of a state living in `space`.
StateVector apply_on_factor(const UnitaryMatrix& u, const StateVector& s,
                            const CompositeSpace& space, int slot);

// Reduced density matrix on the factors in `keep` (ascending factor order),
// tracing out the rest.
DensityMatrix partial_trace(const StateVector& s, const CompositeSpace& space,
                            const std::vector<int>& keep);

// tr(rho^2).
double purity(const DensityMatrix& rho);

// Von Neumann entropy, in bits, of the reduced state on the factors in
// `bipartition` (a proper nonempty subset of the space's factors).
double entanglement_entropy_bits(const StateVector& s,
                                 const CompositeSpace& space,
                                 const std::vector<int>& bipartition);

// Reorders tensor factors: factor i of the result is factor perm[i] of the
// input.
StateVector permute_factors(const StateVector& s, const CompositeSpace& space,
                            const std::vector<int>& perm);

}  // namespace qspecies
