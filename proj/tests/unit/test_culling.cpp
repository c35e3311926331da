// Culling (deleting one of two identical copies), recovery by the adjoint,
// and the Gram-matching feasibility check for state-dependent replication.
#include <cmath>
#include <complex>
#include <vector>

#include "core/culling.hpp"
#include "core/random.hpp"
#include "doctest.h"

using namespace qspecies;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

StateVector uniform_qubit() {
  Vector v(2);
  v << kInvSqrt2, kInvSqrt2;
  return StateVector(v);
}

BasisCuller shared_blank_culler(int dim) {
  const std::vector<StateVector> blanks(dim, StateVector::basis(dim, 0));
  return BasisCuller(dim, StateVector::basis(2, 0), blanks);
}

BasisCuller orthogonal_blank_culler(int dim) {
  std::vector<StateVector> blanks;
  for (int k = 0; k < dim; ++k) blanks.push_back(StateVector::basis(dim, k));
  return BasisCuller(dim, StateVector::basis(2, 0), blanks);
}

// Closed-form fidelity: the reserved off-diagonal branch is orthogonal to
// every ideal output, so only |sum_k psi_k^2 conj(psi_k) <blank|w_k>|^2
// survives.
double cull_fidelity_closed_form(const BasisCuller& culler,
                                 const StateVector& psi,
                                 const StateVector& blank) {
  Complex sum = 0.0;
  for (int k = 0; k < psi.dim(); ++k) {
    const Complex a = psi.amplitude(k);
    sum += a * a * std::conj(a) * inner_product(blank, culler.blank_state(k));
  }
  return std::norm(sum);
}

}  // namespace

TEST_CASE("culler construction validates its pieces") {
  // The reserved off-diagonal branch needs a second ancilla level.
  CHECK_THROWS_AS(BasisCuller(2, StateVector::basis(1, 0),
                              {StateVector::basis(2, 0),
                               StateVector::basis(2, 0)}),
                  CapacityError);
  // One blank per basis index.
  CHECK_THROWS_AS(BasisCuller(2, StateVector::basis(2, 0),
                              {StateVector::basis(2, 0)}),
                  DimensionError);
  // Blanks live in the species space.
  CHECK_THROWS_AS(BasisCuller(2, StateVector::basis(2, 0),
                              {StateVector::basis(3, 0),
                               StateVector::basis(3, 0)}),
                  DimensionError);
  CHECK_THROWS_AS(shared_blank_culler(1), DimensionError);
  // Custom off-diagonal targets must stay orthonormal.
  const StateVector clash = StateVector::basis(8, 1);  // |0,1,1> twice
  CHECK_THROWS_AS(BasisCuller(2, StateVector::basis(2, 0),
                              {StateVector::basis(2, 0),
                               StateVector::basis(2, 0)},
                              std::vector<StateVector>{clash, clash}),
                  IsometryError);
}

TEST_CASE("culling basis pairs works exactly") {
  for (int dim : {2, 3}) {
    const BasisCuller culler = orthogonal_blank_culler(dim);
    for (int k = 0; k < dim; ++k) {
      const StateVector psi = StateVector::basis(dim, k);
      const StateVector out = culler.apply(psi);
      const StateVector ideal =
          culler.ideal_output(psi, culler.blank_state(k));
      CHECK((out.amplitudes() - ideal.amplitudes()).cwiseAbs().maxCoeff() <
            1e-14);
      const CullGapReport rep = cull_gap(culler, psi, culler.blank_state(k));
      CHECK(rep.fidelity == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(rep.diagonal_weight == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(rep.offdiag_weight == doctest::Approx(0.0).scale(1.0));
    }
  }
}

TEST_CASE("uniform qubit culling: the frozen gaps") {
  SUBCASE("shared blank keeps half the weight") {
    const BasisCuller culler = shared_blank_culler(2);
    const CullGapReport rep =
        cull_gap(culler, uniform_qubit(), culler.blank_state(0));
    CHECK(rep.fidelity == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(rep.diagonal_weight == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(rep.offdiag_weight == doctest::Approx(0.5).epsilon(1e-10));
  }
  SUBCASE("orthogonal blanks keep an eighth") {
    const BasisCuller culler = orthogonal_blank_culler(2);
    const CullGapReport rep =
        cull_gap(culler, uniform_qubit(), culler.blank_state(0));
    CHECK(rep.fidelity == doctest::Approx(0.125).epsilon(1e-10));
    CHECK(rep.diagonal_weight == doctest::Approx(0.5).epsilon(1e-10));
  }
}

TEST_CASE("cull gap agrees with the closed form on random inputs") {
  for (int dim : {2, 3, 4}) {
    for (int trial = 0; trial < 25; ++trial) {
      const std::uint64_t seed = 4000 * dim + trial;
      const StateVector psi = random_state(dim, seed);
      std::vector<StateVector> blanks;
      for (int k = 0; k < dim; ++k) {
        blanks.push_back(random_state(dim, seed * 11 + k));
      }
      const BasisCuller culler(dim, StateVector::basis(3, 0), blanks);
      const StateVector blank = random_state(dim, seed + 77);

      const CullGapReport rep = cull_gap(culler, psi, blank);
      CHECK(rep.fidelity ==
            doctest::Approx(cull_fidelity_closed_form(culler, psi, blank))
                .epsilon(1e-11));

      double diag = 0.0;
      for (int k = 0; k < dim; ++k) diag += std::norm(psi.amplitude(k)) *
                                            std::norm(psi.amplitude(k));
      CHECK(rep.diagonal_weight == doctest::Approx(diag).epsilon(1e-11));
      CHECK(rep.diagonal_weight + rep.offdiag_weight ==
            doctest::Approx(1.0).epsilon(1e-11));
    }
  }
}

TEST_CASE("superpositions never cull perfectly") {
  const BasisCuller culler = shared_blank_culler(3);
  for (int trial = 0; trial < 60; ++trial) {
    const StateVector psi = random_state(3, 7100 + trial);
    int sizable = 0;
    for (int k = 0; k < 3; ++k) {
      if (std::abs(psi.amplitude(k)) > 1e-3) ++sizable;
    }
    if (sizable < 2) continue;
    for (int b = 0; b < 3; ++b) {
      CHECK(cull_gap(culler, psi, culler.blank_state(b)).fidelity <
            1.0 - 1e-6);
    }
  }
}

TEST_CASE("the adjoint recovers culler inputs exactly") {
  for (int dim : {2, 3, 4}) {
    const BasisCuller culler = orthogonal_blank_culler(dim);
    for (int trial = 0; trial < 10; ++trial) {
      const StateVector psi = random_state(dim, 8200 + 10 * dim + trial);
      const StateVector recovered = culler.recover(culler.apply(psi));
      const StateVector expected = culler.input_state(psi);
      CHECK((recovered.amplitudes() - expected.amplitudes())
                .cwiseAbs()
                .maxCoeff() < 1e-12);
    }
  }
  CHECK_THROWS_AS(shared_blank_culler(2).recover(StateVector::basis(4, 0)),
                  DimensionError);
}

TEST_CASE("Gram matching decides state-dependent replicability") {
  SUBCASE("matched Grams are feasible with a working transport") {
    for (int trial = 0; trial < 10; ++trial) {
      const int dim = 3;
      // Build ancillas first, then transport them by a random unitary: the
      // two families share a Gram matrix by construction.
      std::vector<StateVector> ancillas;
      for (int k = 0; k < dim; ++k) {
        ancillas.push_back(random_state(dim, 9300 + 10 * trial + k));
      }
      bool orthogonal_pair = false;
      for (int k = 0; k < dim && !orthogonal_pair; ++k) {
        for (int l = k + 1; l < dim; ++l) {
          if (std::abs(inner_product(ancillas[k], ancillas[l])) < 1e-6) {
            orthogonal_pair = true;
          }
        }
      }
      if (orthogonal_pair) continue;  // outside the hypothesis
      const UnitaryMatrix u = random_unitary(dim, 9900 + trial);
      std::vector<StateVector> states;
      for (const auto& a : ancillas) states.push_back(u.apply(a));

      const GramFeasibility feas = jozsa_clonability_check(states, ancillas);
      CHECK(feas.feasible);
      CHECK(feas.max_residual <= 1e-12);
      REQUIRE(feas.transport.has_value());
      CHECK(feas.construction_residual <= 1e-10);
      // The transport really maps each ancilla onto its species state.
      for (int k = 0; k < dim; ++k) {
        const StateVector moved = feas.transport->apply(ancillas[k]);
        CHECK((moved.amplitudes() - states[k].amplitudes())
                  .cwiseAbs()
                  .maxCoeff() < 1e-9);
      }
    }
  }

  SUBCASE("perturbed ancillas break feasibility") {
    Vector a0(2), a1(2), s0(2), s1(2);
    a0 << 1.0, 0.0;
    a1 << kInvSqrt2, kInvSqrt2;
    s0 << 1.0, 0.0;
    s1 << 0.8, 0.6;  // <s0|s1> = 0.8 vs <a0|a1> = 1/sqrt(2)
    const GramFeasibility feas = jozsa_clonability_check(
        {StateVector(s0), StateVector(s1)}, {StateVector(a0), StateVector(a1)});
    CHECK_FALSE(feas.feasible);
    CHECK(feas.max_residual ==
          doctest::Approx(0.8 - kInvSqrt2).epsilon(1e-10));
    CHECK_FALSE(feas.transport.has_value());
    CHECK(feas.residuals.rows() == 2);
    CHECK(feas.residuals(0, 1) ==
          doctest::Approx(0.8 - kInvSqrt2).epsilon(1e-10));
  }

  SUBCASE("constant ancillas cannot track distinct species") {
    Vector s1v(2);
    s1v << 0.8, 0.6;
    const std::vector<StateVector> states = {StateVector::basis(2, 0),
                                             StateVector(s1v)};
    const std::vector<StateVector> ancillas = {StateVector::basis(2, 0),
                                               StateVector::basis(2, 0)};
    const GramFeasibility feas = jozsa_clonability_check(states, ancillas);
    CHECK_FALSE(feas.feasible);
    CHECK(feas.max_residual == doctest::Approx(0.2).epsilon(1e-10));
  }

  SUBCASE("hypothesis violations are rejected") {
    const StateVector z = StateVector::basis(2, 0);
    const StateVector o = StateVector::basis(2, 1);
    // Orthogonal species pair sits outside the theorem's hypothesis.
    CHECK_THROWS_AS(jozsa_clonability_check({z, o}, {z, z}), DomainError);
    // List length and dimension mismatches.
    CHECK_THROWS_AS(jozsa_clonability_check({z, z}, {z}), ArgumentError);
    CHECK_THROWS_AS(jozsa_clonability_check({z}, {z}), ArgumentError);
    CHECK_THROWS_AS(jozsa_clonability_check({z, uniform_qubit()},
                                            {z, StateVector::basis(3, 0)}),
                    DimensionError);
  }
}
