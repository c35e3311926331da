#pragma once

#include <optional>
#include <vector>

#include "core/hilbert.hpp"
#include "core/linear_extension.hpp"

namespace qspecies {

// Basis culler: the isometry defined on pair basis states by
//   |k> |k> |r>  ->  |k> |w_k> |pad>         (diagonal branch)
//   |k> |l> |r>  ->  |Phi_kl>, k != l        (off-diagonal branch)
// and extended linearly. The ancilla |r> is fixed; |pad> is the ancilla
// reference state |0>, and the default off-diagonal targets are the reserved
// vectors |k, l, 1>, orthonormal and orthogonal to every diagonal target.
// Deleting one of two identical copies therefore works on basis states but
// a superposition spills weight into the off-diagonal branch.
class BasisCuller {
 public:
  BasisCuller(int dim, StateVector ancilla,
              std::vector<StateVector> blank_states,
              const Tolerances& tol = default_tolerances());

  // Custom off-diagonal targets, listed for (k, l) in lexicographic order
  // with k != l, each living in the full copy1 x copy2 x ancilla space.
  // Construction fails with IsometryError unless all N^2 images remain
  // orthonormal.
  BasisCuller(int dim, StateVector ancilla,
              std::vector<StateVector> blank_states,
              const std::vector<StateVector>& offdiag_targets,
              const Tolerances& tol = default_tolerances());

  int dim() const { return dim_; }
  int ancilla_dim() const { return ancilla_.dim(); }
  const CompositeSpace& space() const { return space_; }
  const StateVector& ancilla() const { return ancilla_; }
  const StateVector& blank_state(int k) const;

  // Image of psi (x) psi (x) r under the linear extension.
  StateVector apply(const StateVector& psi) const;

  // psi (x) psi (x) r, the physical input to the culler.
  StateVector input_state(const StateVector& psi) const;

  // Intended output psi (x) blank (x) pad for comparison.
  StateVector ideal_output(const StateVector& psi,
                           const StateVector& blank) const;

  // Adjoint of the isometry: reconstructs the pair-basis coefficients from a
  // culler output and rebuilds the corresponding input sum_kl c_kl |k, l, r>.
  // Exact for outputs inside the image span.
  StateVector recover(const StateVector& culled) const;

 private:
  BasisCuller(int dim, StateVector ancilla,
              std::vector<StateVector> blank_states,
              const std::vector<StateVector>* offdiag_targets,
              const Tolerances& tol);

  int dim_;
  StateVector ancilla_;
  std::vector<StateVector> blanks_;
  CompositeSpace space_;
  LinearExtensionMap map_;
};

// How far linear culling falls short of deleting one copy.
struct CullGapReport {
  // |<psi (x) blank (x) pad | output>|^2 for the chosen ideal blank.
  double fidelity = 0.0;
  // sum_k |psi_k|^4, the weight surviving on the diagonal branch.
  double diagonal_weight = 0.0;
  // sum_{k != l} |psi_k|^2 |psi_l|^2; complements diagonal_weight to 1.
  double offdiag_weight = 0.0;
};

CullGapReport cull_gap(const BasisCuller& culler, const StateVector& psi,
                       const StateVector& ideal_blank);

// Feasibility of a state-dependent replicator of the form
// |psi_k>|a_k> -> |psi_k>|psi_k>: possible with a single unitary and pure
// ancillas exactly when the ancilla Gram matrix matches the species Gram
// matrix. The hypothesis excludes orthogonal species pairs.
struct GramFeasibility {
  bool feasible = false;
  // max_{k<l} |<a_k|a_l> - <psi_k|psi_l>|.
  double max_residual = 0.0;
  // Entrywise residual matrix.
  Eigen::MatrixXd residuals;
  // When feasible: unitary transporting each a_k to psi_k, realizing the
  // replicator constructively.
  std::optional<UnitaryMatrix> transport;
  // max_k || transport * a_k - psi_k ||_2 (0 when no transport was built).
  double construction_residual = 0.0;
};

GramFeasibility jozsa_clonability_check(
    const std::vector<StateVector>& states,
    const std::vector<StateVector>& ancillas,
    const Tolerances& tol = default_tolerances());

}  // namespace qspecies
