#include "core/mutation.hpp"

#include <cmath>
#include <string>

namespace qspecies {

StateVector entangled_mutation_state(const StateVector& psi,
                                     const UnitaryMatrix& u, int copies) {
  if (copies < 2) {
    throw ArgumentError("entangled mutation state needs at least 2 copies");
  }
  if (u.dim() != psi.dim()) {
    throw DimensionError("mutation unitary does not match state dimension");
  }
  const double log_total =
      copies * std::log2(static_cast<double>(psi.dim()));
  if (log_total > std::log2(static_cast<double>(kMaxTotalDim)) + 1e-9) {
    throw CapacityError("copy count " + std::to_string(copies) +
                        " exceeds the total-dimension cap");
  }

  const StateVector base = tensor_power(psi, copies);
  const CompositeSpace space(std::vector<int>(copies, psi.dim()));
  Vector sum = Vector::Zero(base.dim());
  for (int j = 0; j < copies; ++j) {
    sum += apply_on_factor(u, base, space, j).amplitudes();
  }
  return StateVector::normalized(std::move(sum));
}

double overlap_entangled_closed_form(const StateVector& psi,
                                     const UnitaryMatrix& u, long long copies) {
  if (copies < 1) throw ArgumentError("copy count must be at least 1");
  const double s2 = overlap_unentangled(psi, u);
  const double m = static_cast<double>(copies);
  return m * s2 / (1.0 + (m - 1.0) * s2);
}

double overlap_unentangled(const StateVector& psi, const UnitaryMatrix& u) {
  if (u.dim() != psi.dim()) {
    throw DimensionError("mutation unitary does not match state dimension");
  }
  return std::norm(inner_product(psi, u.apply(psi)));
}

MutationReport mutation_report(const StateVector& psi, const UnitaryMatrix& u,
                               long long copies) {
  if (copies < 1) throw ArgumentError("copy count must be at least 1");
  MutationReport report;
  report.copies = copies;
  report.s2 = overlap_unentangled(psi, u);
  report.overlap_entangled = overlap_entangled_closed_form(psi, u, copies);
  report.overlap_unentangled = report.s2;
  const double m = static_cast<double>(copies);
  report.normalization = 1.0 / std::sqrt(m + m * (m - 1.0) * report.s2);
  report.gain = m / (1.0 + (m - 1.0) * report.s2);
  return report;
}

std::vector<MutationReport> paradox_sweep(const StateVector& psi,
                                          const UnitaryMatrix& u,
                                          const std::vector<long long>& copies) {
  if (copies.empty()) throw ArgumentError("copy list must be nonempty");
  for (size_t i = 0; i < copies.size(); ++i) {
    if (copies[i] < 1) {
      throw ArgumentError("copy counts must be at least 1");
    }
    if (i > 0 && copies[i] <= copies[i - 1]) {
      throw ArgumentError("copy counts must be strictly ascending");
    }
  }
  std::vector<MutationReport> out;
  out.reserve(copies.size());
  for (long long m : copies) out.push_back(mutation_report(psi, u, m));
  return out;
}

namespace {

double symmetric_normalization(const StateVector& psi, const UnitaryMatrix& u) {
  const double s2 = std::norm(inner_product(psi, u.apply(psi)));
  return 1.0 / std::sqrt(2.0 * (1.0 + s2));
}

}  // namespace

EntanglingResidual entangling_unitarity_residual(const StateVector& psi,
                                                 const StateVector& phi,
                                                 const UnitaryMatrix& u) {
  if (psi.dim() != phi.dim()) {
    throw DimensionError("residual check needs equal state dimensions");
  }
  if (u.dim() != psi.dim()) {
    throw DimensionError("mutation unitary does not match state dimension");
  }
  const Complex s = inner_product(psi, phi);
  const double n_psi = symmetric_normalization(psi, u);
  const double n_phi = symmetric_normalization(phi, u);

  EntanglingResidual out;
  out.lhs = s * s;
  out.cross = inner_product(psi, u.apply(phi)) *
              inner_product(psi, u.adjoint().apply(phi));
  out.rhs = 2.0 * n_psi * n_phi * (s * s + out.cross);
  out.residual = std::abs(out.lhs - out.rhs);
  out.residual_phase_min = std::abs(std::abs(out.lhs) - std::abs(out.rhs));
  return out;
}

EntanglingResidual qubit_orthogonal_example(Complex a, Complex b) {
  const double unit_dev = std::abs(std::norm(a) + std::norm(b) - 1.0);
  if (unit_dev > 1e-10) {
    throw ArgumentError("|a|^2 + |b|^2 must equal 1");
  }
  Matrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = -std::conj(b);
  m(1, 0) = b;
  m(1, 1) = std::conj(a);
  const UnitaryMatrix u(std::move(m));
  return entangling_unitarity_residual(StateVector::basis(2, 0),
                                       StateVector::basis(2, 1), u);
}

}  // namespace qspecies
