// State, unitary, composite-space, and reduction primitives, checked against
// hand-computed oracles and explicit Kronecker-product constructions.
#include <cmath>
#include <complex>
#include <vector>

#include "core/hilbert.hpp"
#include "core/random.hpp"
#include "doctest.h"

using namespace qspecies;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Vector vec2(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return v;
}

double sup_gap(const Vector& a, const Vector& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

Matrix matrix_kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("state construction validates dimension and norm") {
  CHECK_NOTHROW(StateVector(vec2(kInvSqrt2, kInvSqrt2)));
  CHECK_THROWS_AS(StateVector(vec2(1.0, 1.0)), ArgumentError);
  CHECK_THROWS_AS(StateVector{Vector()}, DimensionError);

  const StateVector s = StateVector::normalized(vec2(3.0, 4.0));
  CHECK(std::abs(s.amplitude(0) - Complex(0.6)) < 1e-15);
  CHECK(std::abs(s.amplitude(1) - Complex(0.8)) < 1e-15);
  CHECK_THROWS_AS(StateVector::normalized(vec2(0.0, 0.0)), ArgumentError);

  const StateVector b = StateVector::basis(4, 2);
  CHECK(b.dim() == 4);
  CHECK(b.amplitude(2) == Complex(1.0));
  CHECK(b.amplitude(0) == Complex(0.0));
  CHECK_THROWS_AS(StateVector::basis(3, 3), ArgumentError);
  CHECK_THROWS_AS(StateVector::basis(3, -1), ArgumentError);
  CHECK_THROWS_AS(s.amplitude(5), ArgumentError);
}

TEST_CASE("inner product is conjugate-linear in the first argument") {
  const StateVector a(vec2(kInvSqrt2, Complex(0.0, kInvSqrt2)));
  const StateVector b = StateVector::basis(2, 1);
  const Complex ip = inner_product(a, b);
  CHECK(std::abs(ip - Complex(0.0, -kInvSqrt2)) < 1e-15);
  CHECK(std::abs(inner_product(a, a) - Complex(1.0)) < 1e-15);
  CHECK_THROWS_AS(inner_product(a, StateVector::basis(3, 0)),
                  DimensionError);
}

TEST_CASE("tensor products use the row-major leftmost-major convention") {
  // |0>_2 (x) |1>_3 must be |1>_6: flat index 0*3 + 1.
  const StateVector t =
      tensor(StateVector::basis(2, 0), StateVector::basis(3, 1));
  CHECK(t.dim() == 6);
  CHECK(t.amplitude(1) == Complex(1.0));

  const StateVector a = random_state(2, 11);
  const StateVector b = random_state(3, 12);
  const StateVector ab = tensor(a, b);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(ab.amplitude(3 * i + j) -
                     a.amplitude(i) * b.amplitude(j)) < 1e-15);
    }
  }

  const StateVector p = tensor_power(a, 3);
  CHECK(p.dim() == 8);
  CHECK(std::abs(p.amplitude(7) - std::pow(a.amplitude(1), 3)) < 1e-14);
  CHECK_THROWS_AS(tensor_power(a, 0), ArgumentError);
  CHECK_NOTHROW(tensor_power(StateVector::basis(2, 0), 20));
  CHECK_THROWS_AS(tensor_power(StateVector::basis(2, 0), 21), CapacityError);
}

TEST_CASE("unitary construction validates both products") {
  Matrix bad(2, 2);
  bad << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_AS(UnitaryMatrix{bad}, ArgumentError);

  const UnitaryMatrix h = UnitaryMatrix::hadamard();
  CHECK(sup_gap(h.power(2).entries().reshaped(),
                UnitaryMatrix::identity(2).entries().reshaped()) < 1e-15);
  const UnitaryMatrix x = UnitaryMatrix::pauli_x();
  CHECK(x.apply(StateVector::basis(2, 0)).amplitude(1) == Complex(1.0));

  const UnitaryMatrix r = UnitaryMatrix::rotation2(0.3);
  CHECK(std::abs(r.entries()(0, 0) - std::cos(0.3)) < 1e-15);
  CHECK(std::abs(r.entries()(0, 1) + std::sin(0.3)) < 1e-15);

  const UnitaryMatrix d = UnitaryMatrix::diagonal_phases({0.0, 1.2, -0.4});
  CHECK(std::abs(d.entries()(1, 1) - std::polar(1.0, 1.2)) < 1e-15);
  CHECK(std::abs(d.entries()(0, 1)) == 0.0);

  // (A B)^dagger = B^dagger A^dagger.
  const UnitaryMatrix u = random_unitary(3, 5);
  const UnitaryMatrix v = random_unitary(3, 6);
  CHECK(sup_gap(u.compose(v).adjoint().entries().reshaped(),
                v.adjoint().compose(u.adjoint()).entries().reshaped()) <
        1e-14);
  CHECK_THROWS_AS(u.compose(random_unitary(2, 7)), DimensionError);
  CHECK_THROWS_AS(u.power(-1), ArgumentError);
  CHECK(sup_gap(u.power(0).entries().reshaped(),
                UnitaryMatrix::identity(3).entries().reshaped()) == 0.0);
}

TEST_CASE("seeded randomness is deterministic and unitary") {
  const StateVector s1 = random_state(4, 42);
  const StateVector s2 = random_state(4, 42);
  CHECK(sup_gap(s1.amplitudes(), s2.amplitudes()) == 0.0);
  CHECK(sup_gap(s1.amplitudes(), random_state(4, 43).amplitudes()) > 1e-3);
  CHECK(std::abs(s1.amplitudes().norm() - 1.0) < 1e-12);

  const UnitaryMatrix u1 = random_unitary(5, 9);
  const UnitaryMatrix u2 = random_unitary(5, 9);
  CHECK(sup_gap(u1.entries().reshaped(), u2.entries().reshaped()) == 0.0);
  const Matrix gram = u1.entries().adjoint() * u1.entries();
  CHECK((gram - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("composite space indexing round-trips") {
  const CompositeSpace space({2, 3, 4});
  CHECK(space.total_dim() == 24);
  CHECK(space.stride(0) == 12);
  CHECK(space.stride(1) == 4);
  CHECK(space.stride(2) == 1);
  for (long long i = 0; i < space.total_dim(); ++i) {
    CHECK(space.flatten(space.unflatten(i)) == i);
  }
  CHECK(space.flatten({1, 2, 3}) == 1 * 12 + 2 * 4 + 3);
  CHECK_THROWS_AS(space.flatten({1, 3, 0}), ArgumentError);
  CHECK_THROWS_AS(space.unflatten(24), ArgumentError);
  CHECK_THROWS_AS(CompositeSpace({}), DimensionError);
  CHECK_THROWS_AS(CompositeSpace({2, 0}), DimensionError);
  CHECK_THROWS_AS(CompositeSpace({1024, 1024, 2}), CapacityError);
  CHECK_NOTHROW(CompositeSpace({1024, 1024}));
}

TEST_CASE("apply_on_factor matches the explicit Kronecker embedding") {
  const CompositeSpace space({2, 3, 2});
  const StateVector s = random_state(12, 21);
  const UnitaryMatrix u = random_unitary(3, 22);

  const Matrix embedded = matrix_kron(
      Matrix::Identity(2, 2), matrix_kron(u.entries(), Matrix::Identity(2, 2)));
  const Vector expected = embedded * s.amplitudes();

  const StateVector got = apply_on_factor(u, s, space, 1);
  CHECK(sup_gap(got.amplitudes(), expected) < 1e-14);

  CHECK_THROWS_AS(apply_on_factor(u, s, space, 0), DimensionError);
  CHECK_THROWS_AS(apply_on_factor(u, s, space, 3), DimensionError);
  CHECK_THROWS_AS(apply_on_factor(u, random_state(6, 3), space, 1),
                  DimensionError);
}

TEST_CASE("density matrix validation") {
  Matrix not_herm(2, 2);
  not_herm << 1.0, Complex(0.0, 0.3), Complex(0.0, 0.3), 0.0;
  CHECK_THROWS_AS(DensityMatrix{not_herm}, ArgumentError);

  Matrix neg(2, 2);
  neg << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(DensityMatrix{neg}, ArgumentError);

  Matrix off_trace(2, 2);
  off_trace << 0.7, 0.0, 0.0, 0.7;
  CHECK_THROWS_AS(DensityMatrix{off_trace}, ArgumentError);

  const DensityMatrix rho = DensityMatrix::from_pure(random_state(3, 8));
  CHECK(std::abs(rho.entries().trace().real() - 1.0) < 1e-12);
  CHECK(purity(rho) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rho.eigenvalues().maxCoeff() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("partial trace of a product state recovers the kept factor") {
  const StateVector a = random_state(2, 31);
  const StateVector b = random_state(3, 32);
  const CompositeSpace space({2, 3});

  const DensityMatrix kept = partial_trace(tensor(a, b), space, {1});
  const Matrix expected =
      b.amplitudes() * b.amplitudes().adjoint();
  CHECK((kept.entries() - expected).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(purity(kept) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("partial trace of a maximally entangled pair is maximally mixed") {
  Vector bell(4);
  bell << kInvSqrt2, 0.0, 0.0, kInvSqrt2;
  const StateVector s(bell);
  const CompositeSpace space({2, 2});

  const DensityMatrix left = partial_trace(s, space, {0});
  CHECK((left.entries() - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-14);
  CHECK(purity(left) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(entanglement_entropy_bits(s, space, {0}) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("entropy is symmetric across a bipartition of a pure state") {
  const CompositeSpace space({2, 4});
  const StateVector s = random_state(8, 77);
  const double left = entanglement_entropy_bits(s, space, {0});
  const double right = entanglement_entropy_bits(s, space, {1});
  CHECK(left == doctest::Approx(right).epsilon(1e-9));
  CHECK(left >= 0.0);
  CHECK(left <= 1.0 + 1e-12);  // bounded by log2 of the smaller factor

  CHECK_THROWS_AS(entanglement_entropy_bits(s, space, {0, 1}), ArgumentError);
  CHECK_THROWS_AS(entanglement_entropy_bits(s, space, {}), ArgumentError);

  // Product states carry no entanglement.
  const StateVector prod = tensor(random_state(2, 1), random_state(4, 2));
  CHECK(entanglement_entropy_bits(prod, space, {0}) ==
        doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("partial trace keep-list validation") {
  const CompositeSpace space({2, 2, 2});
  const StateVector s = random_state(8, 15);
  CHECK_THROWS_AS(partial_trace(s, space, {}), ArgumentError);
  CHECK_THROWS_AS(partial_trace(s, space, {1, 0}), ArgumentError);
  CHECK_THROWS_AS(partial_trace(s, space, {0, 3}), ArgumentError);
  CHECK_THROWS_AS(partial_trace(s, space, {0, 0}), ArgumentError);
  CHECK_NOTHROW(partial_trace(s, space, {0, 1, 2}));
}

TEST_CASE("factor permutation relocates amplitudes") {
  const CompositeSpace space({2, 3});
  const StateVector s = random_state(6, 44);
  const StateVector swapped = permute_factors(s, space, {1, 0});
  const CompositeSpace swapped_space({3, 2});
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(swapped.amplitude(
                         static_cast<int>(swapped_space.flatten({j, i}))) -
                     s.amplitude(static_cast<int>(space.flatten({i, j})))) <
            1e-15);
    }
  }
  // Swapping twice is the identity.
  const StateVector twice =
      permute_factors(swapped, swapped_space, {1, 0});
  CHECK(sup_gap(twice.amplitudes(), s.amplitudes()) == 0.0);
  CHECK_THROWS_AS(permute_factors(s, space, {0, 0}), ArgumentError);
  CHECK_THROWS_AS(permute_factors(s, space, {0}), ArgumentError);
}

TEST_CASE("tolerance table round-trips by name") {
  Tolerances tol = default_tolerances();
  REQUIRE(tol.get("gram").has_value());
  CHECK(*tol.get("gram") == doctest::Approx(1e-9));
  CHECK(tol.set("gram", 2.5e-8));
  CHECK(*tol.get("gram") == doctest::Approx(2.5e-8));
  CHECK_FALSE(tol.set("nope", 1.0));
  CHECK_FALSE(tol.get("nope").has_value());
  CHECK(*tol.get("psd_floor") == doctest::Approx(1e-10));
  CHECK(*tol.get("periodicity") == doctest::Approx(1e-8));
  CHECK(kMaxTotalDim == (1LL << 20));
}
