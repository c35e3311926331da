#include "qspecies.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "core/culling.hpp"
#include "core/hilbert.hpp"
#include "core/mutation.hpp"
#include "core/random.hpp"
#include "core/replication.hpp"

using namespace qspecies;

struct qsp_state {
  StateVector value;
};
struct qsp_unitary {
  UnitaryMatrix value;
};
struct qsp_cloner {
  BasisCloner value;
};
struct qsp_machine {
  ProbCloneMachine value;
};
struct qsp_culler {
  BasisCuller value;
};

namespace {

thread_local std::string g_last_error;

// Process-wide tolerance configuration used by every C-API entry point.
Tolerances g_tolerances;

void set_error(const char* message) { g_last_error = message; }

qsp_status to_status(const std::exception& e) {
  g_last_error = e.what();
  if (dynamic_cast<const DimensionError*>(&e)) return QSP_ERR_DIMENSION;
  if (dynamic_cast<const CapacityError*>(&e)) return QSP_ERR_CAPACITY;
  if (dynamic_cast<const IsometryError*>(&e)) return QSP_ERR_ISOMETRY;
  if (dynamic_cast<const DegenerateInputError*>(&e)) return QSP_ERR_DEGENERATE;
  if (dynamic_cast<const InfeasibleError*>(&e)) return QSP_ERR_INFEASIBLE;
  if (dynamic_cast<const DomainError*>(&e)) return QSP_ERR_DOMAIN;
  if (dynamic_cast<const ArgumentError*>(&e)) return QSP_ERR_ARGUMENT;
  return QSP_ERR_INTERNAL;
}

// Runs `body` (returning qsp_status) with exception-to-status translation.
template <typename Fn>
qsp_status guarded(Fn&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return to_status(e);
  } catch (...) {
    set_error("unknown failure");
    return QSP_ERR_INTERNAL;
  }
}

Vector to_vector(int dim, const double* interleaved) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = Complex(interleaved[2 * i], interleaved[2 * i + 1]);
  }
  return v;
}

Matrix to_matrix(int dim, const double* interleaved) {
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const int base = 2 * (i * dim + j);
      m(i, j) = Complex(interleaved[base], interleaved[base + 1]);
    }
  }
  return m;
}

std::vector<int> to_int_vector(const int* data, int n) {
  return std::vector<int>(data, data + n);
}

std::vector<StateVector> to_state_vector(const qsp_state* const* states,
                                         int count) {
  std::vector<StateVector> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    if (states[i] == nullptr) throw ArgumentError("state list contains NULL");
    out.push_back(states[i]->value);
  }
  return out;
}

bool any_null(std::initializer_list<const void*> ptrs) {
  for (const void* p : ptrs) {
    if (p == nullptr) return true;
  }
  return false;
}

qsp_status null_error() {
  set_error("required pointer argument was NULL");
  return QSP_ERR_NULL;
}

}  // namespace

/* ------------------------------------------------------------------ */

const char* qsp_version(void) { return QSPECIES_VERSION; }

const char* qsp_status_name(qsp_status status) {
  switch (status) {
    case QSP_OK:
      return "ok";
    case QSP_ERR_ARGUMENT:
      return "argument";
    case QSP_ERR_DIMENSION:
      return "dimension";
    case QSP_ERR_CAPACITY:
      return "capacity";
    case QSP_ERR_ISOMETRY:
      return "isometry";
    case QSP_ERR_DEGENERATE:
      return "degenerate";
    case QSP_ERR_INFEASIBLE:
      return "infeasible";
    case QSP_ERR_DOMAIN:
      return "domain";
    case QSP_ERR_NULL:
      return "null";
    case QSP_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* qsp_last_error(void) { return g_last_error.c_str(); }

qsp_status qsp_tolerance_set(const char* name, double value) {
  if (name == nullptr) return null_error();
  if (!g_tolerances.set(name, value)) {
    set_error("unknown tolerance name");
    return QSP_ERR_ARGUMENT;
  }
  return QSP_OK;
}

qsp_status qsp_tolerance_get(const char* name, double* value) {
  if (any_null({name, value})) return null_error();
  const auto v = g_tolerances.get(name);
  if (!v) {
    set_error("unknown tolerance name");
    return QSP_ERR_ARGUMENT;
  }
  *value = *v;
  return QSP_OK;
}

long long qsp_max_total_dim(void) { return kMaxTotalDim; }

/* ------------------------------------------------------------------ */
/* States                                                             */

qsp_status qsp_state_new(int dim, const double* interleaved, qsp_state** out) {
  if (any_null({interleaved, out})) return null_error();
  return guarded([&] {
    if (dim < 1) throw DimensionError("state dimension must be at least 1");
    *out = new qsp_state{StateVector(to_vector(dim, interleaved), g_tolerances)};
    return QSP_OK;
  });
}

qsp_status qsp_state_new_normalized(int dim, const double* interleaved,
                                    qsp_state** out) {
  if (any_null({interleaved, out})) return null_error();
  return guarded([&] {
    if (dim < 1) throw DimensionError("state dimension must be at least 1");
    *out = new qsp_state{StateVector::normalized(to_vector(dim, interleaved))};
    return QSP_OK;
  });
}

qsp_status qsp_state_basis(int dim, int index, qsp_state** out) {
  if (out == nullptr) return null_error();
  return guarded([&] {
    *out = new qsp_state{StateVector::basis(dim, index)};
    return QSP_OK;
  });
}

qsp_status qsp_state_random(int dim, unsigned long long seed, qsp_state** out) {
  if (out == nullptr) return null_error();
  return guarded([&] {
    *out = new qsp_state{random_state(dim, seed)};
    return QSP_OK;
  });
}

void qsp_state_free(qsp_state* s) { delete s; }

int qsp_state_dim(const qsp_state* s) {
  return (s == nullptr) ? 0 : s->value.dim();
}

qsp_status qsp_state_amplitudes(const qsp_state* s, double* interleaved) {
  if (any_null({s, interleaved})) return null_error();
  const Vector& v = s->value.amplitudes();
  for (int i = 0; i < s->value.dim(); ++i) {
    interleaved[2 * i] = v(i).real();
    interleaved[2 * i + 1] = v(i).imag();
  }
  return QSP_OK;
}

qsp_status qsp_state_inner(const qsp_state* a, const qsp_state* b, double* re,
                           double* im) {
  if (any_null({a, b, re, im})) return null_error();
  return guarded([&] {
    const Complex ip = inner_product(a->value, b->value);
    *re = ip.real();
    *im = ip.imag();
    return QSP_OK;
  });
}

qsp_status qsp_state_tensor(const qsp_state* a, const qsp_state* b,
                            qsp_state** out) {
  if (any_null({a, b, out})) return null_error();
  return guarded([&] {
    *out = new qsp_state{tensor(a->value, b->value)};
    return QSP_OK;
  });
}

qsp_status qsp_state_tensor_power(const qsp_state* s, int m, qsp_state** out) {
  if (any_null({s, out})) return null_error();
  return guarded([&] {
    *out = new qsp_state{tensor_power(s->value, m)};
    return QSP_OK;
  });
}

qsp_status qsp_state_reduced_purity(const qsp_state* s, const int* factor_dims,
                                    int n_factors, const int* keep, int n_keep,
                                    double* out) {
  if (any_null({s, factor_dims, keep, out})) return null_error();
  return guarded([&] {
    if (n_factors < 1 || n_keep < 1) {
      throw ArgumentError("factor and keep counts must be at least 1");
    }
    const CompositeSpace space(to_int_vector(factor_dims, n_factors));
    *out = purity(partial_trace(s->value, space, to_int_vector(keep, n_keep)));
    return QSP_OK;
  });
}

qsp_status qsp_state_entropy_bits(const qsp_state* s, const int* factor_dims,
                                  int n_factors, const int* keep, int n_keep,
                                  double* out) {
  if (any_null({s, factor_dims, keep, out})) return null_error();
  return guarded([&] {
    if (n_factors < 1 || n_keep < 1) {
      throw ArgumentError("factor and keep counts must be at least 1");
    }
    const CompositeSpace space(to_int_vector(factor_dims, n_factors));
    *out = entanglement_entropy_bits(s->value, space,
                                     to_int_vector(keep, n_keep));
    return QSP_OK;
  });
}

/* ------------------------------------------------------------------ */
/* Unitaries                                                          */

qsp_status qsp_unitary_new(int dim, const double* interleaved,
                           qsp_unitary** out) {
  if (any_null({interleaved, out})) return null_error();
  return guarded([&] {
    if (dim < 1) throw DimensionError("unitary dimension must be at least 1");
    *out = new qsp_unitary{
        UnitaryMatrix(to_matrix(dim, interleaved), g_tolerances)};
    return QSP_OK;
  });
}

qsp_status qsp_unitary_identity(int dim, qsp_unitary** out) {
  if (out == nullptr) return null_error();
  return guarded([&] {
    *out = new qsp_unitary{UnitaryMatrix::identity(dim)};
    return QSP_OK;
  });
}

qsp_status qsp_unitary_random(int dim, unsigned long long seed,
                              qsp_unitary** out) {
  if (out == nullptr) return null_error();
  return guarded([&] {
    *out = new qsp_unitary{random_unitary(dim, seed)};
    return QSP_OK;
  });
}

qsp_status qsp_unitary_rotation2(double angle, qsp_unitary** out) {
  if (out == nullptr) return null_error();
  return guarded([&] {
    *out = new qsp_unitary{UnitaryMatrix::rotation2(angle)};
    return QSP_OK;
  });
}

qsp_status qsp_unitary_periodic_qubit_step(int period, double mixing_angle,
                                           qsp_unitary** out) {
  if (out == nullptr) return null_error();
  return guarded([&] {
    *out = new qsp_unitary{periodic_qubit_step(period, mixing_angle)};
    return QSP_OK;
  });
}

void qsp_unitary_free(qsp_unitary* u) { delete u; }

int qsp_unitary_dim(const qsp_unitary* u) {
  return (u == nullptr) ? 0 : u->value.dim();
}

qsp_status qsp_unitary_entries(const qsp_unitary* u, double* interleaved) {
  if (any_null({u, interleaved})) return null_error();
  const Matrix& m = u->value.entries();
  const int d = u->value.dim();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const int base = 2 * (i * d + j);
      interleaved[base] = m(i, j).real();
      interleaved[base + 1] = m(i, j).imag();
    }
  }
  return QSP_OK;
}

qsp_status qsp_unitary_apply(const qsp_unitary* u, const qsp_state* s,
                             qsp_state** out) {
  if (any_null({u, s, out})) return null_error();
  return guarded([&] {
    *out = new qsp_state{u->value.apply(s->value)};
    return QSP_OK;
  });
}

/* ------------------------------------------------------------------ */
/* Replication                                                        */

qsp_status qsp_wigner_count_eval(long long organism_dim, long long rejected_dim,
                                 qsp_wigner_count* out) {
  if (out == nullptr) return null_error();
  return guarded([&] {
    const WignerCount w = wigner_count(organism_dim, rejected_dim);
    out->organism_dim = w.organism_dim;
    out->rejected_dim = w.rejected_dim;
    out->equations = w.equations;
    out->unknowns = w.unknowns;
    out->deficit = w.deficit;
    return QSP_OK;
  });
}

qsp_status qsp_cloner_new(int dim, const qsp_state* nutrient,
                          const qsp_state* const* rejected, int n_rejected,
                          qsp_cloner** out) {
  if (any_null({nutrient, rejected, out})) return null_error();
  return guarded([&] {
    if (n_rejected < 1) {
      throw DimensionError("need at least one rejected state");
    }
    *out = new qsp_cloner{BasisCloner(dim, nutrient->value,
                                      to_state_vector(rejected, n_rejected),
                                      g_tolerances)};
    return QSP_OK;
  });
}

void qsp_cloner_free(qsp_cloner* c) { delete c; }

qsp_status qsp_clone_gap(const qsp_cloner* c, const qsp_state* psi,
                         int ideal_rejected_index, qsp_clone_gap_report* out) {
  if (any_null({c, psi, out})) return null_error();
  return guarded([&] {
    const CloneGapReport r = clone_gap(c->value, psi->value,
                                       ideal_rejected_index);
    out->fidelity = r.fidelity;
    out->ideal_overlap = r.ideal_overlap;
    out->reduced_purity = r.reduced_purity;
    out->entropy_bits = r.entropy_bits;
    return QSP_OK;
  });
}

qsp_status qsp_nonorthogonal_violation(const qsp_state* psi1,
                                       const qsp_state* psi2, double* out) {
  if (any_null({psi1, psi2, out})) return null_error();
  return guarded([&] {
    *out = nonorthogonal_unitarity_violation(psi1->value, psi2->value);
    return QSP_OK;
  });
}

qsp_status qsp_duan_guo_max_probability(const qsp_state* psi1,
                                        const qsp_state* psi2, double* out) {
  if (any_null({psi1, psi2, out})) return null_error();
  return guarded([&] {
    *out = duan_guo_max_probability(psi1->value, psi2->value, g_tolerances);
    return QSP_OK;
  });
}

qsp_status qsp_machine_new(const qsp_state* psi1, const qsp_state* psi2,
                           double success_probability, qsp_machine** out) {
  if (any_null({psi1, psi2, out})) return null_error();
  return guarded([&] {
    *out = new qsp_machine{build_prob_clone_machine(
        psi1->value, psi2->value, success_probability, g_tolerances)};
    return QSP_OK;
  });
}

void qsp_machine_free(qsp_machine* m) { delete m; }

qsp_status qsp_machine_validate(const qsp_machine* m, qsp_machine_report* out) {
  if (any_null({m, out})) return null_error();
  out->success_probability = m->value.success_probability();
  out->gram_residual = m->value.gram_residual();
  out->projection_residual = m->value.projection_residual();
  out->isometry_residual = m->value.isometry_residual();
  return QSP_OK;
}

qsp_status qsp_machine_sample(const qsp_machine* m, int which, long long trials,
                              unsigned long long seed, qsp_sample_report* out) {
  if (any_null({m, out})) return null_error();
  return guarded([&] {
    const SampleReport r = sample_prob_clone(m->value, which, trials, seed);
    out->trials = r.trials;
    out->successes = r.successes;
    out->rate = r.rate;
    out->post_state_residual = r.post_state_residual;
    return QSP_OK;
  });
}

qsp_status qsp_cyclic_fidelities(const qsp_unitary* step, int period,
                                 const qsp_state* psi0, const qsp_cloner* c,
                                 int steps, double* fidelities) {
  if (any_null({step, psi0, c, fidelities})) return null_error();
  return guarded([&] {
    const auto series = cyclic_replication_demo(
        step->value, period, psi0->value, c->value, steps, g_tolerances);
    for (const auto& [t, fid] : series) fidelities[t] = fid;
    return QSP_OK;
  });
}

/* ------------------------------------------------------------------ */
/* Culling                                                            */

qsp_status qsp_culler_new(int dim, const qsp_state* ancilla,
                          const qsp_state* const* blanks, int n_blanks,
                          qsp_culler** out) {
  if (any_null({ancilla, blanks, out})) return null_error();
  return guarded([&] {
    if (n_blanks < 1) throw DimensionError("need at least one blank state");
    *out = new qsp_culler{BasisCuller(dim, ancilla->value,
                                      to_state_vector(blanks, n_blanks),
                                      g_tolerances)};
    return QSP_OK;
  });
}

void qsp_culler_free(qsp_culler* c) { delete c; }

qsp_status qsp_cull_gap(const qsp_culler* c, const qsp_state* psi,
                        const qsp_state* ideal_blank,
                        qsp_cull_gap_report* out) {
  if (any_null({c, psi, ideal_blank, out})) return null_error();
  return guarded([&] {
    const CullGapReport r = cull_gap(c->value, psi->value, ideal_blank->value);
    out->fidelity = r.fidelity;
    out->diagonal_weight = r.diagonal_weight;
    out->offdiag_weight = r.offdiag_weight;
    return QSP_OK;
  });
}

qsp_status qsp_cull_recovery_residual(const qsp_culler* c, const qsp_state* psi,
                                      double* out) {
  if (any_null({c, psi, out})) return null_error();
  return guarded([&] {
    const StateVector culled = c->value.apply(psi->value);
    const StateVector rebuilt = c->value.recover(culled);
    const StateVector expected = c->value.input_state(psi->value);
    *out = (rebuilt.amplitudes() - expected.amplitudes())
               .cwiseAbs()
               .maxCoeff();
    return QSP_OK;
  });
}

qsp_status qsp_jozsa_check(const qsp_state* const* states,
                           const qsp_state* const* ancillas, int count,
                           qsp_gram_feasibility* out, double* residual_matrix) {
  if (any_null({states, ancillas, out})) return null_error();
  return guarded([&] {
    if (count < 1) throw ArgumentError("state count must be at least 1");
    const GramFeasibility r = jozsa_clonability_check(
        to_state_vector(states, count), to_state_vector(ancillas, count),
        g_tolerances);
    out->feasible = r.feasible ? 1 : 0;
    out->max_residual = r.max_residual;
    out->construction_residual = r.construction_residual;
    if (residual_matrix != nullptr) {
      for (int k = 0; k < count; ++k) {
        for (int l = 0; l < count; ++l) {
          residual_matrix[k * count + l] = r.residuals(k, l);
        }
      }
    }
    return QSP_OK;
  });
}

/* ------------------------------------------------------------------ */
/* Mutation                                                           */

qsp_status qsp_mutation_report_eval(const qsp_state* psi, const qsp_unitary* u,
                                    long long copies,
                                    qsp_mutation_report* out) {
  if (any_null({psi, u, out})) return null_error();
  return guarded([&] {
    const MutationReport r = mutation_report(psi->value, u->value, copies);
    out->copies = r.copies;
    out->s2 = r.s2;
    out->overlap_entangled = r.overlap_entangled;
    out->overlap_unentangled = r.overlap_unentangled;
    out->normalization = r.normalization;
    out->gain = r.gain;
    return QSP_OK;
  });
}

qsp_status qsp_entangled_mutation_state(const qsp_state* psi,
                                        const qsp_unitary* u, int copies,
                                        qsp_state** out) {
  if (any_null({psi, u, out})) return null_error();
  return guarded([&] {
    *out = new qsp_state{entangled_mutation_state(psi->value, u->value, copies)};
    return QSP_OK;
  });
}

namespace {

void fill_residual(const EntanglingResidual& r, qsp_entangling_residual* out) {
  out->lhs_re = r.lhs.real();
  out->lhs_im = r.lhs.imag();
  out->rhs_re = r.rhs.real();
  out->rhs_im = r.rhs.imag();
  out->cross_re = r.cross.real();
  out->cross_im = r.cross.imag();
  out->residual = r.residual;
  out->residual_phase_min = r.residual_phase_min;
}

}  // namespace

qsp_status qsp_entangling_residual_eval(const qsp_state* psi,
                                        const qsp_state* phi,
                                        const qsp_unitary* u,
                                        qsp_entangling_residual* out) {
  if (any_null({psi, phi, u, out})) return null_error();
  return guarded([&] {
    fill_residual(entangling_unitarity_residual(psi->value, phi->value,
                                                u->value),
                  out);
    return QSP_OK;
  });
}

qsp_status qsp_qubit_orthogonal_example(double a_re, double a_im, double b_re,
                                        double b_im,
                                        qsp_entangling_residual* out) {
  if (out == nullptr) return null_error();
  return guarded([&] {
    fill_residual(qubit_orthogonal_example(Complex(a_re, a_im),
                                           Complex(b_re, b_im)),
                  out);
    return QSP_OK;
  });
}
