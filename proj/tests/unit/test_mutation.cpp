// Mutation spreading: the entangled one-mutation state, its overlap with the
// unmutated population, and the no-go residual for a universal entangling
// mutation unitary. Closed forms are checked against a brute-force oracle
// that assembles the symmetric sum term by term.
#include <cmath>
#include <complex>
#include <vector>

#include "core/mutation.hpp"
#include "core/random.hpp"
#include "doctest.h"

using namespace qspecies;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Unnormalized symmetric one-mutation sum built term by term, bypassing
// entangled_mutation_state entirely.
Vector symmetric_sum_oracle(const StateVector& psi, const UnitaryMatrix& u,
                            int copies) {
  const StateVector mutated = u.apply(psi);
  long long total = 1;
  for (int i = 0; i < copies; ++i) total *= psi.dim();
  Vector sum = Vector::Zero(total);
  for (int slot = 0; slot < copies; ++slot) {
    StateVector term = (slot == 0) ? mutated : psi;
    for (int i = 1; i < copies; ++i) {
      term = tensor(term, (i == slot) ? mutated : psi);
    }
    sum += term.amplitudes();
  }
  return sum;
}

double overlap_oracle(const StateVector& psi, const UnitaryMatrix& u,
                      int copies) {
  const Vector sum = symmetric_sum_oracle(psi, u, copies);
  const Vector population = tensor_power(psi, copies).amplitudes();
  return std::norm(population.dot(sum) / sum.norm());
}

UnitaryMatrix half_overlap_unitary() {
  // <0|U|0> = cos(pi/4), so s2 = 1/2 on the |0> species.
  return UnitaryMatrix::rotation2(M_PI / 4.0);
}

}  // namespace

TEST_CASE("entangled mutation state: construction and frozen example") {
  const StateVector zero = StateVector::basis(2, 0);
  const StateVector fused =
      entangled_mutation_state(zero, UnitaryMatrix::pauli_x(), 2);
  // (|01> + |10>) / sqrt(2)
  CHECK(std::abs(fused.amplitude(0)) < 1e-14);
  CHECK(fused.amplitude(1).real() == doctest::Approx(kInvSqrt2).epsilon(1e-12));
  CHECK(fused.amplitude(2).real() == doctest::Approx(kInvSqrt2).epsilon(1e-12));
  CHECK(std::abs(fused.amplitude(3)) < 1e-14);

  // With U = I the mutation is invisible: the state is the plain population.
  const StateVector plain =
      entangled_mutation_state(zero, UnitaryMatrix::identity(2), 3);
  CHECK((plain.amplitudes() - tensor_power(zero, 3).amplitudes())
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  CHECK_THROWS_AS(entangled_mutation_state(zero, UnitaryMatrix::pauli_x(), 1),
                  ArgumentError);
  CHECK_THROWS_AS(entangled_mutation_state(StateVector::basis(3, 0),
                                           UnitaryMatrix::pauli_x(), 2),
                  DimensionError);
  CHECK_THROWS_AS(entangled_mutation_state(zero, UnitaryMatrix::pauli_x(), 21),
                  CapacityError);
}

TEST_CASE("entangled mutation state matches the term-by-term sum") {
  for (int dim : {2, 3}) {
    for (int copies : {2, 3, 4}) {
      for (int trial = 0; trial < 5; ++trial) {
        const StateVector psi = random_state(dim, 11000 + 31 * trial + dim);
        const UnitaryMatrix u = random_unitary(dim, 12000 + 17 * trial + dim);
        const Vector sum = symmetric_sum_oracle(psi, u, copies);
        const Vector expected = sum / sum.norm();
        const StateVector built = entangled_mutation_state(psi, u, copies);
        CHECK((built.amplitudes() - expected).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("overlap with the unmutated population: frozen values") {
  const StateVector zero = StateVector::basis(2, 0);
  const UnitaryMatrix u = half_overlap_unitary();

  CHECK(overlap_unentangled(zero, u) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(overlap_entangled_closed_form(zero, u, 3) ==
        doctest::Approx(0.75).epsilon(1e-12));
  CHECK(overlap_entangled_closed_form(zero, u, 1024) ==
        doctest::Approx(512.0 / 512.5).epsilon(1e-12));

  const MutationReport rep = mutation_report(zero, u, 2);
  CHECK(rep.copies == 2);
  CHECK(rep.s2 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rep.overlap_entangled == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(rep.overlap_unentangled == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rep.normalization ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(rep.gain == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("closed-form overlap agrees with the brute-force oracle") {
  for (int dim : {2, 3}) {
    for (int copies = 2; copies <= 6; ++copies) {
      for (int trial = 0; trial < 6; ++trial) {
        const StateVector psi = random_state(dim, 13000 + 41 * trial + dim);
        const UnitaryMatrix u = random_unitary(dim, 14000 + 43 * trial + dim);
        const double brute = overlap_oracle(psi, u, copies);
        CHECK(overlap_entangled_closed_form(psi, u, copies) ==
              doctest::Approx(brute).epsilon(1e-10));

        const MutationReport rep = mutation_report(psi, u, copies);
        const Vector sum = symmetric_sum_oracle(psi, u, copies);
        CHECK(rep.normalization ==
              doctest::Approx(1.0 / sum.norm()).epsilon(1e-11));
        CHECK(rep.gain * rep.overlap_unentangled ==
              doctest::Approx(rep.overlap_entangled).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("mutation survival grows with the population") {
  const StateVector zero = StateVector::basis(2, 0);
  const UnitaryMatrix u = half_overlap_unitary();
  std::vector<long long> copies;
  for (long long m = 2; m <= 1024; m *= 2) copies.push_back(m);

  const std::vector<MutationReport> sweep = paradox_sweep(zero, u, copies);
  REQUIRE(sweep.size() == copies.size());
  for (size_t i = 0; i < sweep.size(); ++i) {
    CHECK(sweep[i].copies == copies[i]);
    CHECK(sweep[i].overlap_unentangled ==
          doctest::Approx(0.5).epsilon(1e-12));
    if (i > 0) CHECK(sweep[i].overlap_entangled >
                     sweep[i - 1].overlap_entangled);
  }
  CHECK(sweep.back().overlap_entangled > 0.999);

  // A fully orthogonal mutation never survives, however large the colony.
  const std::vector<MutationReport> dead =
      paradox_sweep(zero, UnitaryMatrix::pauli_x(), {2, 8, 32});
  for (const auto& rep : dead) {
    CHECK(rep.overlap_entangled == doctest::Approx(0.0).scale(1.0));
    CHECK(rep.normalization ==
          doctest::Approx(1.0 / std::sqrt(double(rep.copies))).epsilon(1e-12));
  }

  CHECK_THROWS_AS(paradox_sweep(zero, u, {}), ArgumentError);
  CHECK_THROWS_AS(paradox_sweep(zero, u, {4, 2}), ArgumentError);
  CHECK_THROWS_AS(paradox_sweep(zero, u, {2, 2}), ArgumentError);
  CHECK_THROWS_AS(paradox_sweep(zero, u, {0, 2}), ArgumentError);
}

TEST_CASE("no universal entangling mutation unitary: residual bookkeeping") {
  SUBCASE("components recompute from first principles") {
    for (int trial = 0; trial < 20; ++trial) {
      const int dim = (trial % 2 == 0) ? 2 : 3;
      const StateVector psi = random_state(dim, 15000 + trial);
      const StateVector phi = random_state(dim, 16000 + trial);
      const UnitaryMatrix u = random_unitary(dim, 17000 + trial);

      const EntanglingResidual res = entangling_unitarity_residual(psi, phi, u);
      const Complex overlap = inner_product(psi, phi);
      CHECK(std::abs(res.lhs - overlap * overlap) < 1e-12);

      const Complex cross = inner_product(psi, u.apply(phi)) *
                            inner_product(psi, u.adjoint().apply(phi));
      CHECK(std::abs(res.cross - cross) < 1e-12);

      const double n_psi =
          1.0 / std::sqrt(2.0 + 2.0 * overlap_unentangled(psi, u));
      const double n_phi =
          1.0 / std::sqrt(2.0 + 2.0 * overlap_unentangled(phi, u));
      const Complex rhs = 2.0 * n_psi * n_phi * (overlap * overlap + cross);
      CHECK(std::abs(res.rhs - rhs) < 1e-12);

      CHECK(res.residual == doctest::Approx(std::abs(res.lhs - res.rhs))
                                .epsilon(1e-12));
      CHECK(res.residual_phase_min <= res.residual + 1e-15);
      CHECK(res.residual_phase_min ==
            doctest::Approx(std::abs(std::abs(res.lhs) - std::abs(res.rhs)))
                .epsilon(1e-10));
    }
  }

  SUBCASE("the obstruction is generic") {
    int blocked = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const StateVector psi = random_state(2, 18000 + 2 * trial);
      const StateVector phi = random_state(2, 18001 + 2 * trial);
      const UnitaryMatrix u = random_unitary(2, 19000 + trial);
      if (entangling_unitarity_residual(psi, phi, u).residual > 1e-6) {
        ++blocked;
      }
    }
    CHECK(blocked >= 99);
  }

  SUBCASE("orthogonal qubit witness: frozen values") {
    const EntanglingResidual res =
        qubit_orthogonal_example(kInvSqrt2, kInvSqrt2);
    CHECK(std::abs(res.lhs) < 1e-14);
    CHECK(res.cross.real() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(std::abs(res.cross.imag()) < 1e-14);
    CHECK(res.rhs.real() == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    CHECK(res.residual == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(res.residual_phase_min ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    // b = 0 leaves the basis fixed up to phase: no obstruction.
    const EntanglingResidual fixed = qubit_orthogonal_example(1.0, 0.0);
    CHECK(fixed.residual < 1e-14);

    CHECK_THROWS_AS(qubit_orthogonal_example(1.0, 1.0), ArgumentError);
  }

  SUBCASE("cross term equals -conj(b)^2 across the unit sphere") {
    for (int trial = 0; trial < 20; ++trial) {
      const StateVector probe = random_state(2, 20000 + trial);
      const Complex a = probe.amplitude(0);
      const Complex b = probe.amplitude(1);
      const EntanglingResidual res = qubit_orthogonal_example(a, b);
      CHECK(std::abs(res.cross - (-std::conj(b) * std::conj(b))) < 1e-12);
      if (std::abs(b) > 1e-3) CHECK(res.residual > 1e-8);
    }
  }

  SUBCASE("dimension mismatches are rejected") {
    CHECK_THROWS_AS(
        entangling_unitarity_residual(StateVector::basis(2, 0),
                                      StateVector::basis(3, 0),
                                      UnitaryMatrix::pauli_x()),
        DimensionError);
    CHECK_THROWS_AS(
        entangling_unitarity_residual(StateVector::basis(3, 0),
                                      StateVector::basis(3, 0),
                                      UnitaryMatrix::pauli_x()),
        DimensionError);
  }
}
