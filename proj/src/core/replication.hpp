#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core/hilbert.hpp"
#include "core/linear_extension.hpp"

namespace qspecies {

// Degrees-of-freedom audit for a universal replicating transformation on an
// organism space of dimension n with a rejected-state space of dimension r:
// matching every input state imposes 2*n^2*r real equations on only
// 2*(n + r + n*r) real unknowns.
struct WignerCount {
  long long organism_dim = 0;
  long long rejected_dim = 0;
  long long equations = 0;
  long long unknowns = 0;
  long long deficit = 0;  // equations - unknowns
};

WignerCount wigner_count(long long organism_dim, long long rejected_dim);

// Basis replicator: the isometry defined on basis states by
//   |k> (x) |w>  ->  |k> (x) |k> (x) |r_k>
// and extended linearly to superpositions. The nutrient |w> is a fixed state
// of the copy (x) rejected factors, so the total space is
// organism (x) copy (x) rejected.
class BasisCloner {
 public:
  BasisCloner(int dim, StateVector nutrient,
              std::vector<StateVector> rejected_states,
              const Tolerances& tol = default_tolerances());

  int dim() const { return dim_; }
  int rejected_dim() const { return rejected_[0].dim(); }
  const CompositeSpace& space() const { return space_; }
  const StateVector& nutrient() const { return nutrient_; }
  const StateVector& rejected_state(int k) const;

  // psi (x) nutrient, the physical input to the replicator.
  StateVector input_state(const StateVector& psi) const;

  // Linear extension applied to psi: sum_k psi_k |k, k, r_k>.
  StateVector apply(const StateVector& psi) const;

 private:
  int dim_;
  StateVector nutrient_;
  std::vector<StateVector> rejected_;
  CompositeSpace space_;
  LinearExtensionMap map_;
};

// How far the linear extension falls short of true replication for a given
// input.
struct CloneGapReport {
  // Fidelity <psi psi| rho |psi psi> between the intended pair of copies and
  // the actual output reduced to the organism (x) copy factors. Equals 1
  // exactly when the input is a basis state.
  double fidelity = 0.0;
  // Squared overlap |<psi (x) psi (x) r | output>|^2 against the fully ideal
  // product output with a fixed rejected state r (index selectable).
  double ideal_overlap = 0.0;
  // Purity of the organism factor after tracing out copy and rejected.
  double reduced_purity = 0.0;
  // Entanglement entropy (bits) across the organism | copy+rejected cut.
  double entropy_bits = 0.0;
};

CloneGapReport clone_gap(const BasisCloner& cloner, const StateVector& psi,
                         int ideal_rejected_index = 0);

// For a nonorthogonal pair, unitarity of a would-be replicator forces
// <psi1|psi2> = <psi1|psi2>^2 <r1|r2>; since |<r1|r2>| <= 1 the magnitudes
// leave the gap v = |s| - |s|^2, which is positive exactly when 0 < |s| < 1.
double nonorthogonal_unitarity_violation(const StateVector& psi1,
                                         const StateVector& psi2);

// Largest symmetric success probability p for which the probabilistic
// replication Gram constraint G1 - p*G2 >= 0 admits a solution, maximized
// over the rejected-state overlap (golden-section search on its magnitude,
// phase aligned analytically; positive semidefiniteness by eigenvalue check).
// Equals 1/(1 + |<psi1|psi2>|).
double duan_guo_max_probability(const StateVector& psi1,
                                const StateVector& psi2,
                                const Tolerances& tol = default_tolerances());

// Probabilistic replicating machine for a linearly independent pair:
//   |psi_i> |w> |P0>  ->  sqrt(p) |psi_i> |psi_i> |r_i> |P1>
//                         + sqrt(1-p) |Phi_i>
// with the failure components confined to the probe sector orthogonal to
// |P1>. Measuring the probe in {|P1>, rest} reveals success.
class ProbCloneMachine {
 public:
  ProbCloneMachine(StateVector psi1, StateVector psi2,
                   double success_probability,
                   const Tolerances& tol = default_tolerances());

  double success_probability() const { return p_; }
  int organism_dim() const { return inputs_[0].dim(); }
  // which is 1 or 2 throughout.
  const StateVector& input(int which) const;
  const StateVector& image(int which) const;           // T_i, full space
  const StateVector& success_target(int which) const;  // psi_i psi_i r_i
  const CompositeSpace& space() const { return space_; }

  // Images of an orthonormalized basis of span{psi_i (x) w (x) P0}.
  const Matrix& isometry() const { return isometry_; }

  // |<T1|T2> - <psi1|psi2>| (Gram preservation).
  double gram_residual() const { return gram_residual_; }
  // Max over i of the sup-norm gap between the renormalized probe-success
  // projection of T_i and the success target.
  double projection_residual() const { return projection_residual_; }
  double isometry_residual() const { return isometry_residual_; }

  // Squared weight of the probe-success block of T_i (equals p).
  double success_weight(int which) const;
  // Renormalized probe-success projection of T_i (organism x copy x rejected).
  StateVector post_success_state(int which) const;

 private:
  StateVector inputs_[2];
  StateVector images_[2];
  StateVector success_[2];
  CompositeSpace space_;
  double p_ = 0.0;
  Matrix isometry_;
  double gram_residual_ = 0.0;
  double projection_residual_ = 0.0;
  double isometry_residual_ = 0.0;
  int check_index(int which) const;
};

ProbCloneMachine build_prob_clone_machine(
    const StateVector& psi1, const StateVector& psi2, double success_probability,
    const Tolerances& tol = default_tolerances());

struct SampleReport {
  long long trials = 0;
  long long successes = 0;
  double rate = 0.0;
  // Sup-norm gap between the renormalized post-success state and the target,
  // checked once per run.
  double post_state_residual = 0.0;
};

// Monte Carlo simulation of the probe measurement for input `which`.
SampleReport sample_prob_clone(const ProbCloneMachine& machine, int which,
                               long long trials, std::uint64_t seed);

// Qubit step unitary with exact entrywise period `period`: a real mixing
// rotation conjugating diag(1, exp(2*pi*i/period)).
UnitaryMatrix periodic_qubit_step(int period, double mixing_angle);

// Replication fidelity along a periodic trajectory psi(t) = U_step^t |psi0>:
// returns (t, clone_gap fidelity) for t = 0..steps. Requires
// U_step^period = I entrywise and a basis-state psi0, so the fidelity
// returns to 1 exactly at multiples of the period.
std::vector<std::pair<int, double>> cyclic_replication_demo(
    const UnitaryMatrix& step, int period, const StateVector& psi0,
    const BasisCloner& cloner, int steps,
    const Tolerances& tol = default_tolerances());

}  // namespace qspecies
