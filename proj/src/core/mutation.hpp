#pragma once

#include <vector>

#include "core/hilbert.hpp"

namespace qspecies {

// Overlap data for one M-copy mutation comparison. With
// s2 = |<psi|U|psi>|^2, one mutation distributed coherently over M copies
// keeps squared overlap M*s2 / (1 + (M-1)*s2) with the unmutated population,
// monotonically approaching 1, while the independent per-copy mutation stays
// at s2.
struct MutationReport {
  long long copies = 0;          // M
  double s2 = 0.0;               // |<psi|U|psi>|^2
  double overlap_entangled = 0.0;
  double overlap_unentangled = 0.0;
  double normalization = 0.0;    // 1 / sqrt(M + M*(M-1)*s2)
  double gain = 0.0;             // M / (1 + (M-1)*s2), entangled / unentangled
};

// The normalized symmetric one-mutation state
//   N * sum_j psi (x) ... (x) U psi (x) ... (x) psi  (U on slot j).
// Requires copies >= 2 and dim^copies within the total-dimension cap.
StateVector entangled_mutation_state(const StateVector& psi,
                                     const UnitaryMatrix& u, int copies);

// M*s2 / (1 + (M-1)*s2).
double overlap_entangled_closed_form(const StateVector& psi,
                                     const UnitaryMatrix& u, long long copies);

// s2 itself: the squared overlap surviving when the mutation hits one
// unentangled copy.
double overlap_unentangled(const StateVector& psi, const UnitaryMatrix& u);

MutationReport mutation_report(const StateVector& psi, const UnitaryMatrix& u,
                               long long copies);

// Reports for an ascending list of copy counts.
std::vector<MutationReport> paradox_sweep(const StateVector& psi,
                                          const UnitaryMatrix& u,
                                          const std::vector<long long>& copies);

// Inner-product bookkeeping for the requirement that a fixed unitary V maps
// every pre-mutation pair state psi (x) psi to the normalized symmetric
// post-mutation state N(psi) * (psi (x) U psi + U psi (x) psi). Unitarity
// of V would force lhs = rhs below for every state pair; the residual is
// generically nonzero, so no such V exists.
struct EntanglingResidual {
  Complex lhs{};        // <psi|phi>^2
  Complex rhs{};        // 2 N(psi) N(phi) (<psi|phi>^2 + cross)
  Complex cross{};      // <psi|U|phi> <psi|U^dagger|phi>
  double residual = 0.0;            // |lhs - rhs|
  double residual_phase_min = 0.0;  // min over global phase: ||lhs| - |rhs||
};

EntanglingResidual entangling_unitarity_residual(const StateVector& psi,
                                                 const StateVector& phi,
                                                 const UnitaryMatrix& u);

// The orthogonal-pair witness: psi = |0>, phi = |1>, U|0> = a|0> + b|1>,
// U|1> = conj(a)|1> - conj(b)|0>. The cross term equals -conj(b)^2, so the
// residual is nonzero whenever b != 0 even though <psi|phi> = 0.
EntanglingResidual qubit_orthogonal_example(Complex a, Complex b);

}  // namespace qspecies
