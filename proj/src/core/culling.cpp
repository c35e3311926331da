#include "core/culling.hpp"

#include <cmath>
#include <string>

namespace qspecies {

// ---------------------------------------------------------------------------
// BasisCuller

namespace {

Matrix culler_images(int dim, const std::vector<StateVector>& blanks,
                     int ancilla_dim,
                     const std::vector<StateVector>* offdiag_targets) {
  const long long total =
      static_cast<long long>(dim) * dim * ancilla_dim;
  if (total > kMaxTotalDim) {
    throw CapacityError("culler target dimension exceeds the cap");
  }
  if (offdiag_targets == nullptr && ancilla_dim < 2) {
    throw CapacityError(
        "ancilla dimension must be at least 2 to host the reserved "
        "off-diagonal targets");
  }
  if (offdiag_targets != nullptr &&
      offdiag_targets->size() != static_cast<size_t>(dim) * (dim - 1)) {
    throw DimensionError("need exactly dim*(dim-1) off-diagonal targets");
  }

  // Column order matches the pair basis: column k*dim + l for input |k, l, r>.
  Matrix images = Matrix::Zero(total, static_cast<long long>(dim) * dim);
  size_t off_index = 0;
  for (int k = 0; k < dim; ++k) {
    for (int l = 0; l < dim; ++l) {
      const long long col = static_cast<long long>(k) * dim + l;
      if (k == l) {
        // |k, w_k, pad> with pad the ancilla reference |0>.
        for (int j = 0; j < dim; ++j) {
          const long long row =
              (static_cast<long long>(k) * dim + j) * ancilla_dim;
          images(row, col) = blanks[k].amplitude(j);
        }
      } else if (offdiag_targets == nullptr) {
        // Reserved vector |k, l, 1>.
        const long long row =
            (static_cast<long long>(k) * dim + l) * ancilla_dim + 1;
        images(row, col) = 1.0;
      } else {
        const StateVector& target = (*offdiag_targets)[off_index++];
        if (target.dim() != total) {
          throw DimensionError(
              "off-diagonal targets must live in the full culler space");
        }
        images.col(col) = target.amplitudes();
      }
    }
  }
  return images;
}

}  // namespace

BasisCuller::BasisCuller(int dim, StateVector ancilla,
                         std::vector<StateVector> blank_states,
                         const Tolerances& tol)
    : BasisCuller(dim, std::move(ancilla), std::move(blank_states), nullptr,
                  tol) {}

BasisCuller::BasisCuller(int dim, StateVector ancilla,
                         std::vector<StateVector> blank_states,
                         const std::vector<StateVector>& offdiag_targets,
                         const Tolerances& tol)
    : BasisCuller(dim, std::move(ancilla), std::move(blank_states),
                  &offdiag_targets, tol) {}

BasisCuller::BasisCuller(int dim, StateVector ancilla,
                         std::vector<StateVector> blank_states,
                         const std::vector<StateVector>* offdiag_targets,
                         const Tolerances& tol)
    : dim_(dim),
      ancilla_(std::move(ancilla)),
      blanks_(std::move(blank_states)),
      space_([&] {
        if (dim < 2) {
          throw DimensionError("culler needs a species dimension >= 2");
        }
        if (blanks_.size() != static_cast<size_t>(dim)) {
          throw DimensionError("need exactly one blank state per basis index");
        }
        for (const auto& b : blanks_) {
          if (b.dim() != dim) {
            throw DimensionError(
                "blank states must match the species dimension");
          }
        }
        return CompositeSpace({dim, dim, ancilla_.dim()});
      }()),
      map_(culler_images(dim_, blanks_, ancilla_.dim(), offdiag_targets),
           tol) {}

const StateVector& BasisCuller::blank_state(int k) const {
  if (k < 0 || k >= dim_) throw ArgumentError("blank index out of range");
  return blanks_[k];
}

StateVector BasisCuller::apply(const StateVector& psi) const {
  if (psi.dim() != dim_) {
    throw DimensionError("input state dimension does not match culler");
  }
  const Vector pair = detail::kron(psi.amplitudes(), psi.amplitudes());
  return StateVector(map_.apply(pair));
}

StateVector BasisCuller::input_state(const StateVector& psi) const {
  if (psi.dim() != dim_) {
    throw DimensionError("input state dimension does not match culler");
  }
  return tensor(tensor(psi, psi), ancilla_);
}

StateVector BasisCuller::ideal_output(const StateVector& psi,
                                      const StateVector& blank) const {
  if (psi.dim() != dim_ || blank.dim() != dim_) {
    throw DimensionError("ideal output needs species-dimension states");
  }
  Vector pad = Vector::Zero(ancilla_.dim());
  pad(0) = 1.0;
  return StateVector(detail::kron(
      detail::kron(psi.amplitudes(), blank.amplitudes()), pad));
}

StateVector BasisCuller::recover(const StateVector& culled) const {
  if (culled.dim() != space_.total_dim()) {
    throw DimensionError("culled state does not live in the culler space");
  }
  const Vector coeffs = map_.recover(culled.amplitudes());
  return StateVector(detail::kron(coeffs, ancilla_.amplitudes()));
}

// ---------------------------------------------------------------------------
// cull_gap

CullGapReport cull_gap(const BasisCuller& culler, const StateVector& psi,
                       const StateVector& ideal_blank) {
  const StateVector actual = culler.apply(psi);
  const StateVector ideal = culler.ideal_output(psi, ideal_blank);

  CullGapReport report;
  report.fidelity =
      std::norm(ideal.amplitudes().dot(actual.amplitudes()));
  for (int k = 0; k < psi.dim(); ++k) {
    const double wk = std::norm(psi.amplitude(k));
    report.diagonal_weight += wk * wk;
  }
  for (int k = 0; k < psi.dim(); ++k) {
    for (int l = 0; l < psi.dim(); ++l) {
      if (k == l) continue;
      report.offdiag_weight +=
          std::norm(psi.amplitude(k)) * std::norm(psi.amplitude(l));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Gram feasibility

namespace {

// Appends canonical basis vectors (orthogonalized) until `basis` spans the
// whole space.
void complete_basis(std::vector<Vector>& basis, int dim) {
  for (int j = 0; j < dim && static_cast<int>(basis.size()) < dim; ++j) {
    Vector v = Vector::Zero(dim);
    v(j) = 1.0;
    for (const Vector& b : basis) v -= b.dot(v) * b;
    const double n = v.norm();
    if (n > 1e-8) basis.push_back(v / n);
  }
}

// Unitary transporting each a_k to psi_k, valid when the two families share
// their Gram matrix. Built by running one modified Gram-Schmidt pass on the
// ancillas and replaying the same coefficients on the species states, then
// polishing the assembled matrix back onto the unitary group via QR.
UnitaryMatrix build_transport(const std::vector<StateVector>& states,
                              const std::vector<StateVector>& ancillas) {
  const int dim = states[0].dim();
  std::vector<Vector> basis_a;
  std::vector<Vector> basis_s;
  for (size_t k = 0; k < ancillas.size(); ++k) {
    Vector ua = ancillas[k].amplitudes();
    Vector us = states[k].amplitudes();
    for (size_t i = 0; i < basis_a.size(); ++i) {
      const Complex c = basis_a[i].dot(ua);
      ua -= c * basis_a[i];
      us -= c * basis_s[i];
    }
    const double na = ua.norm();
    if (na > 1e-8) {
      basis_a.push_back(ua / na);
      basis_s.push_back(us / us.norm());
    }
  }
  complete_basis(basis_a, dim);
  complete_basis(basis_s, dim);

  Matrix w = Matrix::Zero(dim, dim);
  for (size_t i = 0; i < basis_a.size(); ++i) {
    w += basis_s[i] * basis_a[i].adjoint();
  }
  // Small Gram residuals leave w slightly off the unitary group; snap back.
  Eigen::HouseholderQR<Matrix> qr(w);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
  }
  return UnitaryMatrix(std::move(q));
}

}  // namespace

GramFeasibility jozsa_clonability_check(
    const std::vector<StateVector>& states,
    const std::vector<StateVector>& ancillas,
    const Tolerances& tol) {
  if (states.size() < 2) {
    throw ArgumentError("feasibility check needs at least two species states");
  }
  if (states.size() != ancillas.size()) {
    throw ArgumentError("species and ancilla lists must have equal lengths");
  }
  const int dim = states[0].dim();
  for (const auto& s : states) {
    if (s.dim() != dim) {
      throw DimensionError("species states must share a dimension");
    }
  }
  for (const auto& a : ancillas) {
    if (a.dim() != dim) {
      throw DimensionError(
          "ancilla states must match the species dimension");
    }
  }
  const size_t n = states.size();
  for (size_t k = 0; k < n; ++k) {
    for (size_t l = k + 1; l < n; ++l) {
      if (std::abs(inner_product(states[k], states[l])) <= tol.gram) {
        throw DomainError(
            "species family contains an orthogonal pair; the criterion "
            "assumes none");
      }
    }
  }

  GramFeasibility out;
  out.residuals = Eigen::MatrixXd::Zero(n, n);
  for (size_t k = 0; k < n; ++k) {
    for (size_t l = 0; l < n; ++l) {
      if (k == l) continue;
      const Complex gap = inner_product(ancillas[k], ancillas[l]) -
                          inner_product(states[k], states[l]);
      out.residuals(k, l) = std::abs(gap);
      out.max_residual = std::max(out.max_residual, out.residuals(k, l));
    }
  }
  out.feasible = out.max_residual <= tol.gram;

  if (out.feasible) {
    const UnitaryMatrix w = build_transport(states, ancillas);
    double worst = 0.0;
    for (size_t k = 0; k < n; ++k) {
      const Vector gap =
          w.entries() * ancillas[k].amplitudes() - states[k].amplitudes();
      worst = std::max(worst, gap.norm());
    }
    out.transport = w;
    out.construction_residual = worst;
  }
  return out;
}

}  // namespace qspecies
