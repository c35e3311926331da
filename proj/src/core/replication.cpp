#include "core/replication.hpp"

#include <cmath>
#include <random>
#include <string>

namespace qspecies {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Threshold above which a state pair counts as linearly dependent.
constexpr double kDependenceOverlap = 1.0 - 1e-9;

}  // namespace

// ---------------------------------------------------------------------------
// Counting argument

WignerCount wigner_count(long long organism_dim, long long rejected_dim) {
  if (organism_dim < 1 || rejected_dim < 1) {
    throw ArgumentError("counting argument requires dimensions >= 1");
  }
  WignerCount out;
  out.organism_dim = organism_dim;
  out.rejected_dim = rejected_dim;
  out.equations = 2 * organism_dim * organism_dim * rejected_dim;
  out.unknowns =
      2 * (organism_dim + rejected_dim + organism_dim * rejected_dim);
  out.deficit = out.equations - out.unknowns;
  return out;
}

// ---------------------------------------------------------------------------
// BasisCloner

namespace {

Matrix cloner_images(int dim, const std::vector<StateVector>& rejected) {
  const int r = rejected[0].dim();
  const long long total = static_cast<long long>(dim) * dim * r;
  if (total > kMaxTotalDim) {
    throw CapacityError("replicator target dimension exceeds the cap");
  }
  Matrix images = Matrix::Zero(total, dim);
  for (int k = 0; k < dim; ++k) {
    // |k, k, r_k>: the organism and copy factors are both |k>.
    const long long base = (static_cast<long long>(k) * dim + k) * r;
    images.block(base, k, r, 1) = rejected[k].amplitudes();
  }
  return images;
}

}  // namespace

BasisCloner::BasisCloner(int dim, StateVector nutrient,
                         std::vector<StateVector> rejected_states,
                         const Tolerances& tol)
    : dim_(dim),
      nutrient_(std::move(nutrient)),
      rejected_(std::move(rejected_states)),
      space_([&] {
        if (dim < 2) {
          throw DimensionError("replicator needs an organism dimension >= 2");
        }
        if (rejected_.size() != static_cast<size_t>(dim)) {
          throw DimensionError(
              "need exactly one rejected state per basis index");
        }
        const int r = rejected_[0].dim();
        for (const auto& s : rejected_) {
          if (s.dim() != r) {
            throw DimensionError("rejected states must share one dimension");
          }
        }
        if (nutrient_.dim() != dim * r) {
          throw DimensionError(
              "nutrient must live in the copy x rejected space (dim " +
              std::to_string(dim * r) + ")");
        }
        return CompositeSpace({dim, dim, r});
      }()),
      map_(cloner_images(dim_, rejected_), tol) {}

const StateVector& BasisCloner::rejected_state(int k) const {
  if (k < 0 || k >= dim_) throw ArgumentError("rejected index out of range");
  return rejected_[k];
}

StateVector BasisCloner::input_state(const StateVector& psi) const {
  if (psi.dim() != dim_) {
    throw DimensionError("input state dimension does not match replicator");
  }
  return tensor(psi, nutrient_);
}

StateVector BasisCloner::apply(const StateVector& psi) const {
  if (psi.dim() != dim_) {
    throw DimensionError("input state dimension does not match replicator");
  }
  return StateVector(map_.apply(psi.amplitudes()));
}

// ---------------------------------------------------------------------------
// clone_gap

CloneGapReport clone_gap(const BasisCloner& cloner, const StateVector& psi,
                         int ideal_rejected_index) {
  if (psi.dim() != cloner.dim()) {
    throw DimensionError("input state dimension does not match replicator");
  }
  if (ideal_rejected_index < 0 || ideal_rejected_index >= cloner.dim()) {
    throw ArgumentError("ideal rejected index out of range");
  }
  const StateVector out = cloner.apply(psi);

  CloneGapReport report;

  const DensityMatrix rho_pair = partial_trace(out, cloner.space(), {0, 1});
  const Vector pair = detail::kron(psi.amplitudes(), psi.amplitudes());
  report.fidelity = (pair.adjoint() * rho_pair.entries() * pair)(0).real();

  const Vector ideal = detail::kron(
      pair, cloner.rejected_state(ideal_rejected_index).amplitudes());
  const Complex overlap = ideal.dot(out.amplitudes());
  report.ideal_overlap = std::norm(overlap);

  report.reduced_purity = purity(partial_trace(out, cloner.space(), {0}));
  report.entropy_bits = entanglement_entropy_bits(out, cloner.space(), {0});
  return report;
}

// ---------------------------------------------------------------------------
// Nonorthogonal pair obstruction

double nonorthogonal_unitarity_violation(const StateVector& psi1,
                                         const StateVector& psi2) {
  const double s = std::abs(inner_product(psi1, psi2));
  return s - s * s;
}

// ---------------------------------------------------------------------------
// Probabilistic replication bound

namespace {

// Largest p in [0, 1] keeping G1 - p*G2 positive semidefinite, where both
// Gram matrices have unit diagonal, G1 has off-diagonal s and G2 has
// off-diagonal s^2 * gamma with gamma = g * exp(-i arg s).
double max_feasible_probability(Complex s, double g, double psd_floor) {
  const double mag = std::abs(s);
  const Complex gamma =
      (mag > 0.0) ? std::polar(g, -std::arg(s)) : Complex(g, 0.0);
  const Complex g2_off = s * s * gamma;

  const auto feasible = [&](double p) {
    Matrix m(2, 2);
    m(0, 0) = 1.0 - p;
    m(1, 1) = 1.0 - p;
    m(0, 1) = s - p * g2_off;
    m(1, 0) = std::conj(m(0, 1));
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -psd_floor;
  };

  if (feasible(1.0)) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

double duan_guo_max_probability(const StateVector& psi1,
                                const StateVector& psi2,
                                const Tolerances& tol) {
  const Complex s = inner_product(psi1, psi2);
  if (std::abs(s) > kDependenceOverlap) {
    throw DegenerateInputError(
        "probabilistic replication bound needs linearly independent states");
  }

  // Search a hair inside the configured floor so machine construction at
  // the returned probability re-passes the floor-level feasibility check
  // with margin instead of landing exactly on it.
  const auto value = [&](double g) {
    return max_feasible_probability(s, g, 0.99 * tol.psd_floor);
  };

  // Golden-section search for the maximizing rejected-state overlap
  // magnitude g in [0, 1]; the objective is monotone, so also probe the
  // endpoints explicitly.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0;
  double b = 1.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = value(c);
  double fd = value(d);
  for (int i = 0; i < 90; ++i) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = value(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = value(c);
    }
  }
  double best = std::max(fc, fd);
  best = std::max(best, value(0.0));
  best = std::max(best, value(1.0));
  return best;
}

// ---------------------------------------------------------------------------
// ProbCloneMachine

namespace {

constexpr int kRejectedDim = 2;
constexpr int kProbeDim = 2;
// Probe basis roles: |P0> = |0> initial / failure sector, |P1> = |1> success.
constexpr int kProbeSuccess = 1;
constexpr int kProbeFail = 0;

}  // namespace

ProbCloneMachine::ProbCloneMachine(StateVector psi1, StateVector psi2,
                                   double success_probability,
                                   const Tolerances& tol)
    : inputs_{std::move(psi1), std::move(psi2)},
      images_{StateVector::basis(1, 0), StateVector::basis(1, 0)},
      success_{StateVector::basis(1, 0), StateVector::basis(1, 0)},
      space_([&] {
        if (inputs_[0].dim() != inputs_[1].dim()) {
          throw DimensionError("machine inputs must share a dimension");
        }
        const int n = inputs_[0].dim();
        if (n < 2) {
          throw DimensionError("machine needs an organism dimension >= 2");
        }
        return CompositeSpace({n, n, kRejectedDim, kProbeDim});
      }()),
      p_(success_probability) {
  if (!(p_ >= 0.0 && p_ <= 1.0)) {
    throw ArgumentError("success probability must lie in [0, 1]");
  }
  const Complex s = inner_product(inputs_[0], inputs_[1]);
  if (std::abs(s) > kDependenceOverlap) {
    throw DegenerateInputError(
        "probabilistic replication needs linearly independent states");
  }

  // Rejected states with overlap <r1|r2> = exp(-i arg s), the phase-aligned
  // magnitude-1 choice that attains the probability bound.
  const double theta = (std::abs(s) > 0.0) ? std::arg(s) : 0.0;
  Vector r1v = Vector::Zero(kRejectedDim);
  r1v(0) = 1.0;
  Vector r2v = Vector::Zero(kRejectedDim);
  r2v(0) = std::polar(1.0, -theta);
  const StateVector r1(r1v);
  const StateVector r2(r2v);
  const Complex gamma = std::polar(1.0, -theta);

  success_[0] = tensor(tensor(inputs_[0], inputs_[0]), r1);
  success_[1] = tensor(tensor(inputs_[1], inputs_[1]), r2);

  const long long sector = success_[0].dim();  // organism x copy x rejected
  Vector probe_success = Vector::Zero(kProbeDim);
  probe_success(kProbeSuccess) = 1.0;
  Vector probe_fail = Vector::Zero(kProbeDim);
  probe_fail(kProbeFail) = 1.0;

  // Feasibility uses the same numerical criterion as the probability
  // search: G1 - p*G2 must be positive semidefinite within the floor.
  {
    Matrix constraint(2, 2);
    constraint(0, 0) = 1.0 - p_;
    constraint(1, 1) = 1.0 - p_;
    constraint(0, 1) = s - p_ * s * s * gamma;
    constraint(1, 0) = std::conj(constraint(0, 1));
    Eigen::SelfAdjointEigenSolver<Matrix> es(constraint,
                                             Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol.psd_floor) {
      throw InfeasibleError(
          "success probability exceeds the feasible maximum for this pair");
    }
  }

  Vector t1;
  Vector t2;
  if (p_ < 1.0) {
    // Failure overlap from Gram preservation:
    // s = p * s^2 * gamma + (1-p) * c. Within the floor band |c| may poke
    // just past 1; project it back onto the unit disk.
    Complex c = (s - p_ * s * s * gamma) / (1.0 - p_);
    if (std::abs(c) > 1.0) c /= std::abs(c);
    const double pivot = std::max(0.0, 1.0 - std::norm(c));
    // Cholesky factorization of the failure Gram [[1, c], [conj(c), 1]]
    // realized on two reserved basis vectors of the success sector.
    Vector phi1 = Vector::Zero(sector);
    phi1(0) = 1.0;
    Vector phi2 = Vector::Zero(sector);
    phi2(0) = c;
    phi2(1) = std::sqrt(pivot);

    t1 = std::sqrt(p_) * detail::kron(success_[0].amplitudes(), probe_success) +
         std::sqrt(1.0 - p_) * detail::kron(phi1, probe_fail);
    t2 = std::sqrt(p_) * detail::kron(success_[1].amplitudes(), probe_success) +
         std::sqrt(1.0 - p_) * detail::kron(phi2, probe_fail);
  } else {
    // p = 1 leaves no failure branch; the constraint check above only
    // passes when s = s^2 * gamma, i.e. for orthogonal inputs.
    t1 = detail::kron(success_[0].amplitudes(), probe_success);
    t2 = detail::kron(success_[1].amplitudes(), probe_success);
  }
  images_[0] = StateVector(t1, tol);
  images_[1] = StateVector(t2, tol);

  gram_residual_ = std::abs(t1.dot(t2) - s);

  // Images of the orthonormalized domain basis
  // {v1, (v2 - s*v1)/sqrt(1-|s|^2)} with v_i = psi_i (x) w (x) P0.
  const double comp = 1.0 - std::norm(s);
  isometry_ = Matrix(space_.total_dim(), 2);
  isometry_.col(0) = t1;
  isometry_.col(1) = (t2 - s * t1) / std::sqrt(comp);
  const Matrix gram = isometry_.adjoint() * isometry_;
  isometry_residual_ = (gram - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff();

  projection_residual_ = 0.0;
  for (int i = 1; i <= 2; ++i) {
    if (success_weight(i) > 0.0) {
      const Vector gap = post_success_state(i).amplitudes() -
                         success_[i - 1].amplitudes();
      projection_residual_ =
          std::max(projection_residual_, gap.cwiseAbs().maxCoeff());
    }
  }
}

int ProbCloneMachine::check_index(int which) const {
  if (which != 1 && which != 2) {
    throw ArgumentError("machine input selector must be 1 or 2");
  }
  return which - 1;
}

const StateVector& ProbCloneMachine::input(int which) const {
  return inputs_[check_index(which)];
}

const StateVector& ProbCloneMachine::image(int which) const {
  return images_[check_index(which)];
}

const StateVector& ProbCloneMachine::success_target(int which) const {
  return success_[check_index(which)];
}

double ProbCloneMachine::success_weight(int which) const {
  const int i = check_index(which);
  const Vector& t = images_[i].amplitudes();
  double w = 0.0;
  for (long long g = kProbeSuccess; g < t.size(); g += kProbeDim) {
    w += std::norm(t(g));
  }
  return w;
}

StateVector ProbCloneMachine::post_success_state(int which) const {
  const int i = check_index(which);
  const Vector& t = images_[i].amplitudes();
  Vector block(t.size() / kProbeDim);
  for (long long g = 0; g < block.size(); ++g) {
    block(g) = t(g * kProbeDim + kProbeSuccess);
  }
  const double n = block.norm();
  if (n <= 0.0) {
    throw ArgumentError("machine has no success branch to project onto");
  }
  return StateVector(block / n);
}

ProbCloneMachine build_prob_clone_machine(const StateVector& psi1,
                                          const StateVector& psi2,
                                          double success_probability,
                                          const Tolerances& tol) {
  return ProbCloneMachine(psi1, psi2, success_probability, tol);
}

SampleReport sample_prob_clone(const ProbCloneMachine& machine, int which,
                               long long trials, std::uint64_t seed) {
  if (which != 1 && which != 2) {
    throw ArgumentError("machine input selector must be 1 or 2");
  }
  if (trials < 1) throw ArgumentError("trial count must be at least 1");

  SampleReport report;
  report.trials = trials;
  const double w = machine.success_weight(which);
  if (w > 0.0) {
    const Vector gap = machine.post_success_state(which).amplitudes() -
                       machine.success_target(which).amplitudes();
    report.post_state_residual = gap.cwiseAbs().maxCoeff();
  }

  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (long long i = 0; i < trials; ++i) {
    if (unif(gen) < w) ++report.successes;
  }
  report.rate = static_cast<double>(report.successes) /
                static_cast<double>(trials);
  return report;
}

// ---------------------------------------------------------------------------
// Cyclic evolution

UnitaryMatrix periodic_qubit_step(int period, double mixing_angle) {
  if (period < 1) throw ArgumentError("period must be at least 1");
  const UnitaryMatrix v = UnitaryMatrix::rotation2(mixing_angle);
  const UnitaryMatrix d =
      UnitaryMatrix::diagonal_phases({0.0, 2.0 * kPi / period});
  return v.compose(d).compose(v.adjoint());
}

std::vector<std::pair<int, double>> cyclic_replication_demo(
    const UnitaryMatrix& step, int period, const StateVector& psi0,
    const BasisCloner& cloner, int steps, const Tolerances& tol) {
  if (period < 1) throw ArgumentError("period must be at least 1");
  if (steps < 0) throw ArgumentError("step count must be nonnegative");
  if (step.dim() != psi0.dim() || psi0.dim() != cloner.dim()) {
    throw DimensionError("step, state, and replicator dimensions must agree");
  }
  const Matrix id = Matrix::Identity(step.dim(), step.dim());
  const double period_dev =
      (step.power(period).entries() - id).cwiseAbs().maxCoeff();
  if (period_dev > tol.periodicity) {
    throw ArgumentError("step unitary does not return to identity after " +
                        std::to_string(period) + " steps");
  }
  double max_amp = 0.0;
  for (int k = 0; k < psi0.dim(); ++k) {
    max_amp = std::max(max_amp, std::abs(psi0.amplitude(k)));
  }
  if (max_amp < 1.0 - tol.periodicity) {
    throw ArgumentError("initial state must be a basis state");
  }

  std::vector<std::pair<int, double>> series;
  series.reserve(steps + 1);
  StateVector psi = psi0;
  for (int t = 0; t <= steps; ++t) {
    series.emplace_back(t, clone_gap(cloner, psi).fidelity);
    if (t < steps) psi = step.apply(psi);
  }
  return series;
}

}  // namespace qspecies
