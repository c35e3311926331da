#include "core/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qspecies {

namespace detail {

Vector kron(const Vector& a, const Vector& b) {
  const auto na = a.size();
  const auto nb = b.size();
  Vector out(na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    out.segment(i * nb, nb) = a(i) * b;
  }
  return out;
}

Vector kron_checked(const Vector& a, const Vector& b) {
  const long long total =
      static_cast<long long>(a.size()) * static_cast<long long>(b.size());
  if (total > kMaxTotalDim) {
    throw CapacityError("tensor product dimension " + std::to_string(total) +
                        " exceeds the cap of " + std::to_string(kMaxTotalDim));
  }
  return kron(a, b);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(Vector amplitudes, const Tolerances& tol)
    : amps_(std::move(amplitudes)) {
  if (amps_.size() < 1) {
    throw DimensionError("state dimension must be at least 1");
  }
  const double n = amps_.norm();
  if (std::abs(n - 1.0) > tol.norm) {
    throw ArgumentError("state norm " + std::to_string(n) +
                        " deviates from 1 beyond tolerance");
  }
}

StateVector StateVector::normalized(Vector amplitudes) {
  const double n = amplitudes.norm();
  if (n <= 0.0 || !std::isfinite(n)) {
    throw ArgumentError("cannot normalize a zero or non-finite vector");
  }
  return StateVector(amplitudes / n);
}

StateVector StateVector::basis(int dim, int index) {
  if (dim < 1) throw DimensionError("state dimension must be at least 1");
  if (index < 0 || index >= dim) {
    throw ArgumentError("basis index " + std::to_string(index) +
                        " outside [0, " + std::to_string(dim) + ")");
  }
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

Complex StateVector::amplitude(int i) const {
  if (i < 0 || i >= dim()) {
    throw ArgumentError("amplitude index out of range");
  }
  return amps_(i);
}

// ---------------------------------------------------------------------------
// UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(Matrix entries, const Tolerances& tol)
    : m_(std::move(entries)) {
  if (m_.rows() < 1 || m_.rows() != m_.cols()) {
    throw DimensionError("unitary must be a nonempty square matrix");
  }
  const Matrix id = Matrix::Identity(m_.rows(), m_.cols());
  const double dev_left = (m_.adjoint() * m_ - id).cwiseAbs().maxCoeff();
  const double dev_right = (m_ * m_.adjoint() - id).cwiseAbs().maxCoeff();
  if (std::max(dev_left, dev_right) > tol.unitary) {
    throw ArgumentError("matrix is not unitary within tolerance (deviation " +
                        std::to_string(std::max(dev_left, dev_right)) + ")");
  }
}

UnitaryMatrix UnitaryMatrix::identity(int dim) {
  if (dim < 1) throw DimensionError("unitary dimension must be at least 1");
  return UnitaryMatrix(Matrix::Identity(dim, dim));
}

UnitaryMatrix UnitaryMatrix::pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::hadamard() {
  const double h = 1.0 / std::sqrt(2.0);
  Matrix m(2, 2);
  m << h, h, h, -h;
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::rotation2(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Matrix m(2, 2);
  m << c, -s, s, c;
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::diagonal_phases(const std::vector<double>& phases) {
  const int d = static_cast<int>(phases.size());
  if (d < 1) throw DimensionError("unitary dimension must be at least 1");
  Matrix m = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    m(i, i) = std::polar(1.0, phases[i]);
  }
  return UnitaryMatrix(std::move(m));
}

StateVector UnitaryMatrix::apply(const StateVector& s) const {
  if (s.dim() != dim()) {
    throw DimensionError("unitary dimension " + std::to_string(dim()) +
                         " does not match state dimension " +
                         std::to_string(s.dim()));
  }
  return StateVector(m_ * s.amplitudes());
}

UnitaryMatrix UnitaryMatrix::compose(const UnitaryMatrix& rhs) const {
  if (rhs.dim() != dim()) {
    throw DimensionError("cannot compose unitaries of different dimensions");
  }
  return UnitaryMatrix(m_ * rhs.m_);
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(m_.adjoint()); }

UnitaryMatrix UnitaryMatrix::power(int exponent) const {
  if (exponent < 0) throw ArgumentError("unitary power expects exponent >= 0");
  Matrix acc = Matrix::Identity(dim(), dim());
  for (int i = 0; i < exponent; ++i) acc = m_ * acc;
  return UnitaryMatrix(std::move(acc));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Matrix entries, const Tolerances& tol)
    : m_(std::move(entries)) {
  if (m_.rows() < 1 || m_.rows() != m_.cols()) {
    throw DimensionError("density matrix must be a nonempty square matrix");
  }
  const double herm_dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > tol.density) {
    throw ArgumentError("density matrix is not Hermitian within tolerance");
  }
  const double trace_dev = std::abs(m_.trace() - Complex(1.0, 0.0));
  if (trace_dev > tol.density) {
    throw ArgumentError("density matrix trace deviates from 1 by " +
                        std::to_string(trace_dev));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol.density_eigen_floor) {
    throw ArgumentError("density matrix has an eigenvalue below the floor");
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& s) {
  const Vector& v = s.amplitudes();
  return DensityMatrix(v * v.adjoint());
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// ---------------------------------------------------------------------------
// CompositeSpace

CompositeSpace::CompositeSpace(std::vector<int> factor_dims)
    : dims_(std::move(factor_dims)) {
  if (dims_.empty()) {
    throw DimensionError("composite space needs at least one factor");
  }
  for (int d : dims_) {
    if (d < 1) throw DimensionError("factor dimensions must be at least 1");
  }
  strides_.assign(dims_.size(), 1);
  for (int i = static_cast<int>(dims_.size()) - 2; i >= 0; --i) {
    strides_[i] = strides_[i + 1] * dims_[i + 1];
  }
  total_ = strides_[0] * dims_[0];
  if (total_ > kMaxTotalDim) {
    throw CapacityError("composite dimension " + std::to_string(total_) +
                        " exceeds the cap of " + std::to_string(kMaxTotalDim));
  }
}

int CompositeSpace::factor_dim(int i) const {
  if (i < 0 || i >= factor_count()) {
    throw ArgumentError("factor index out of range");
  }
  return dims_[i];
}

long long CompositeSpace::stride(int i) const {
  if (i < 0 || i >= factor_count()) {
    throw ArgumentError("factor index out of range");
  }
  return strides_[i];
}

std::vector<int> CompositeSpace::unflatten(long long index) const {
  if (index < 0 || index >= total_) {
    throw ArgumentError("flat index out of range");
  }
  std::vector<int> digits(dims_.size());
  for (size_t i = 0; i < dims_.size(); ++i) {
    digits[i] = static_cast<int>(index / strides_[i]);
    index %= strides_[i];
  }
  return digits;
}

long long CompositeSpace::flatten(const std::vector<int>& digits) const {
  if (digits.size() != dims_.size()) {
    throw ArgumentError("digit count does not match factor count");
  }
  long long index = 0;
  for (size_t i = 0; i < dims_.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= dims_[i]) {
      throw ArgumentError("digit out of range for factor");
    }
    index += digits[i] * strides_[i];
  }
  return index;
}

// ---------------------------------------------------------------------------
// Operations

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("inner product requires equal dimensions");
  }
  return a.amplitudes().dot(b.amplitudes());
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  return StateVector(detail::kron_checked(a.amplitudes(), b.amplitudes()));
}

StateVector tensor_power(const StateVector& s, int m) {
  if (m < 1) throw ArgumentError("tensor power expects m >= 1");
  double log_total = m * std::log2(static_cast<double>(s.dim()));
  if (log_total > std::log2(static_cast<double>(kMaxTotalDim)) + 1e-9) {
    throw CapacityError("tensor power dimension exceeds the cap");
  }
  Vector acc = s.amplitudes();
  for (int i = 1; i < m; ++i) {
    acc = detail::kron_checked(acc, s.amplitudes());
  }
  return StateVector(std::move(acc));
}

StateVector apply_on_factor(const UnitaryMatrix& u, const StateVector& s,
                            const CompositeSpace& space, int slot) {
  if (space.total_dim() != s.dim()) {
    throw DimensionError("state dimension does not match composite space");
  }
  if (slot < 0 || slot >= space.factor_count()) {
    throw DimensionError("factor slot out of range");
  }
  const int d = space.factor_dim(slot);
  if (u.dim() != d) {
    throw DimensionError("unitary dimension does not match factor dimension");
  }
  const long long stride = space.stride(slot);
  const long long block = stride * d;
  const long long outer = space.total_dim() / block;

  const Vector& x = s.amplitudes();
  Vector y(x.size());
  Vector fiber(d);
  for (long long o = 0; o < outer; ++o) {
    const long long base = o * block;
    for (long long r = 0; r < stride; ++r) {
      for (int k = 0; k < d; ++k) fiber(k) = x(base + r + k * stride);
      fiber = u.entries() * fiber;
      for (int k = 0; k < d; ++k) y(base + r + k * stride) = fiber(k);
    }
  }
  return StateVector(std::move(y));
}

namespace {

void check_factor_subset(const CompositeSpace& space,
                         const std::vector<int>& subset, const char* what) {
  if (subset.empty()) {
    throw ArgumentError(std::string(what) + " must be nonempty");
  }
  for (size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 0 || subset[i] >= space.factor_count()) {
      throw ArgumentError(std::string(what) + " contains an invalid factor");
    }
    if (i > 0 && subset[i] <= subset[i - 1]) {
      throw ArgumentError(std::string(what) +
                          " must be strictly ascending factor indices");
    }
  }
}

}  // namespace

DensityMatrix partial_trace(const StateVector& s, const CompositeSpace& space,
                            const std::vector<int>& keep) {
  if (space.total_dim() != s.dim()) {
    throw DimensionError("state dimension does not match composite space");
  }
  check_factor_subset(space, keep, "keep set");

  std::vector<bool> kept(space.factor_count(), false);
  for (int f : keep) kept[f] = true;

  long long kept_total = 1;
  long long traced_total = 1;
  for (int f = 0; f < space.factor_count(); ++f) {
    (kept[f] ? kept_total : traced_total) *= space.factor_dim(f);
  }

  // Kept-space and traced-space strides, both row-major over their own
  // factor subsequences.
  std::vector<long long> kept_stride(space.factor_count(), 0);
  std::vector<long long> traced_stride(space.factor_count(), 0);
  long long ks = kept_total;
  long long ts = traced_total;
  for (int f = 0; f < space.factor_count(); ++f) {
    if (kept[f]) {
      ks /= space.factor_dim(f);
      kept_stride[f] = ks;
    } else {
      ts /= space.factor_dim(f);
      traced_stride[f] = ts;
    }
  }

  // Arrange amplitudes as a (kept x traced) matrix A; then rho = A A^dagger.
  Matrix a = Matrix::Zero(kept_total, traced_total);
  const Vector& x = s.amplitudes();
  for (long long g = 0; g < space.total_dim(); ++g) {
    long long rest = g;
    long long kr = 0;
    long long tr = 0;
    for (int f = 0; f < space.factor_count(); ++f) {
      const long long digit = rest / space.stride(f);
      rest %= space.stride(f);
      if (kept[f]) {
        kr += digit * kept_stride[f];
      } else {
        tr += digit * traced_stride[f];
      }
    }
    a(kr, tr) = x(g);
  }
  return DensityMatrix(a * a.adjoint());
}

double purity(const DensityMatrix& rho) {
  return (rho.entries() * rho.entries()).trace().real();
}

double entanglement_entropy_bits(const StateVector& s,
                                 const CompositeSpace& space,
                                 const std::vector<int>& bipartition) {
  check_factor_subset(space, bipartition, "bipartition");
  if (static_cast<int>(bipartition.size()) >= space.factor_count()) {
    throw ArgumentError("bipartition must be a proper subset of the factors");
  }
  const DensityMatrix rho = partial_trace(s, space, bipartition);
  const Eigen::VectorXd evals = rho.eigenvalues();
  double bits = 0.0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    const double p = evals(i);
    if (p > 1e-15) bits -= p * std::log2(p);
  }
  return bits;
}

StateVector permute_factors(const StateVector& s, const CompositeSpace& space,
                            const std::vector<int>& perm) {
  if (space.total_dim() != s.dim()) {
    throw DimensionError("state dimension does not match composite space");
  }
  if (static_cast<int>(perm.size()) != space.factor_count()) {
    throw ArgumentError("permutation length does not match factor count");
  }
  std::vector<bool> seen(perm.size(), false);
  for (int p : perm) {
    if (p < 0 || p >= space.factor_count() || seen[p]) {
      throw ArgumentError("invalid factor permutation");
    }
    seen[p] = true;
  }

  std::vector<int> new_dims(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) new_dims[i] = space.factor_dim(perm[i]);
  const CompositeSpace target(new_dims);

  Vector y(s.dim());
  const Vector& x = s.amplitudes();
  for (long long g = 0; g < space.total_dim(); ++g) {
    const std::vector<int> digits = space.unflatten(g);
    long long idx = 0;
    for (size_t i = 0; i < perm.size(); ++i) {
      idx += static_cast<long long>(digits[perm[i]]) * target.stride(static_cast<int>(i));
    }
    y(idx) = x(g);
  }
  return StateVector(std::move(y));
}

}  // namespace qspecies
