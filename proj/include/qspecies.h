/*
 * qspecies — C API for quantum-species replication, culling, and mutation
 * numerics.
 *
 * All functions return qsp_status; outputs go through pointer parameters.
 * Objects are opaque handles created by qsp_*_new-style constructors and
 * released with the matching qsp_*_free. On failure the out-parameters are
 * left untouched and qsp_last_error() describes the problem (the message is
 * thread-local and valid until the next failing call on the same thread).
 *
 * Complex data crosses the boundary as interleaved doubles
 * [re0, im0, re1, im1, ...]; matrices are row-major.
 */

#ifndef QSPECIES_H
#define QSPECIES_H

#ifdef __cplusplus
extern "C" {
#endif

#define QSPECIES_VERSION "0.1.0"

typedef enum qsp_status {
  QSP_OK = 0,
  QSP_ERR_ARGUMENT = 1,   /* invalid argument value */
  QSP_ERR_DIMENSION = 2,  /* mismatched or invalid dimensions */
  QSP_ERR_CAPACITY = 3,   /* total dimension above the cap */
  QSP_ERR_ISOMETRY = 4,   /* image set fails orthonormality */
  QSP_ERR_DEGENERATE = 5, /* linearly dependent state pair */
  QSP_ERR_INFEASIBLE = 6, /* success probability above the feasible maximum */
  QSP_ERR_DOMAIN = 7,     /* hypothesis of the check violated */
  QSP_ERR_NULL = 8,       /* required pointer was NULL */
  QSP_ERR_INTERNAL = 9
} qsp_status;

typedef struct qsp_state qsp_state;
typedef struct qsp_unitary qsp_unitary;
typedef struct qsp_cloner qsp_cloner;
typedef struct qsp_machine qsp_machine;
typedef struct qsp_culler qsp_culler;

/* ------------------------------------------------------------------ */
/* Library info and configuration                                     */

const char *qsp_version(void);
const char *qsp_status_name(qsp_status status);
const char *qsp_last_error(void);

/* Overrides a named numerical tolerance (norm, unitary, density,
 * density_eigen_floor, isometry, gram, psd_floor, entropy_zero,
 * periodicity, machine) for subsequently created objects and calls.
 * Not thread-safe against concurrent API calls. */
qsp_status qsp_tolerance_set(const char *name, double value);
qsp_status qsp_tolerance_get(const char *name, double *value);

/* Maximum number of complex amplitudes any operation may allocate. */
long long qsp_max_total_dim(void);

/* ------------------------------------------------------------------ */
/* States                                                             */

/* Validates unit norm. */
qsp_status qsp_state_new(int dim, const double *interleaved, qsp_state **out);
/* Rescales an arbitrary nonzero vector. */
qsp_status qsp_state_new_normalized(int dim, const double *interleaved,
                                    qsp_state **out);
qsp_status qsp_state_basis(int dim, int index, qsp_state **out);
qsp_status qsp_state_random(int dim, unsigned long long seed, qsp_state **out);
void qsp_state_free(qsp_state *s);

int qsp_state_dim(const qsp_state *s);
/* Writes 2*dim doubles. */
qsp_status qsp_state_amplitudes(const qsp_state *s, double *interleaved);
qsp_status qsp_state_inner(const qsp_state *a, const qsp_state *b, double *re,
                           double *im);
qsp_status qsp_state_tensor(const qsp_state *a, const qsp_state *b,
                            qsp_state **out);
qsp_status qsp_state_tensor_power(const qsp_state *s, int m, qsp_state **out);

/* Reduced purity and entanglement entropy (bits) of the factors listed in
 * keep (ascending), for a state living in the composite space described by
 * factor_dims. */
qsp_status qsp_state_reduced_purity(const qsp_state *s, const int *factor_dims,
                                    int n_factors, const int *keep, int n_keep,
                                    double *out);
qsp_status qsp_state_entropy_bits(const qsp_state *s, const int *factor_dims,
                                  int n_factors, const int *keep, int n_keep,
                                  double *out);

/* ------------------------------------------------------------------ */
/* Unitaries                                                          */

/* Row-major interleaved entries; validates unitarity. */
qsp_status qsp_unitary_new(int dim, const double *interleaved,
                           qsp_unitary **out);
qsp_status qsp_unitary_identity(int dim, qsp_unitary **out);
qsp_status qsp_unitary_random(int dim, unsigned long long seed,
                              qsp_unitary **out);
/* Real 2x2 rotation by `angle`. */
qsp_status qsp_unitary_rotation2(double angle, qsp_unitary **out);
/* Qubit step with exact entrywise period `period` (see qsp_cyclic_fidelities). */
qsp_status qsp_unitary_periodic_qubit_step(int period, double mixing_angle,
                                           qsp_unitary **out);
void qsp_unitary_free(qsp_unitary *u);

int qsp_unitary_dim(const qsp_unitary *u);
/* Writes 2*dim*dim doubles, row-major. */
qsp_status qsp_unitary_entries(const qsp_unitary *u, double *interleaved);
qsp_status qsp_unitary_apply(const qsp_unitary *u, const qsp_state *s,
                             qsp_state **out);

/* ------------------------------------------------------------------ */
/* Replication                                                        */

typedef struct qsp_wigner_count {
  long long organism_dim;
  long long rejected_dim;
  long long equations; /* 2 * n^2 * r */
  long long unknowns;  /* 2 * (n + r + n*r) */
  long long deficit;   /* equations - unknowns */
} qsp_wigner_count;

qsp_status qsp_wigner_count_eval(long long organism_dim, long long rejected_dim,
                                 qsp_wigner_count *out);

/* Basis replicator |k>|w> -> |k>|k>|r_k> extended linearly. nutrient must
 * have dimension dim * rejected_dim; `rejected` lists dim states of one
 * common dimension. */
qsp_status qsp_cloner_new(int dim, const qsp_state *nutrient,
                          const qsp_state *const *rejected, int n_rejected,
                          qsp_cloner **out);
void qsp_cloner_free(qsp_cloner *c);

typedef struct qsp_clone_gap_report {
  double fidelity;       /* reduced-state fidelity against psi (x) psi */
  double ideal_overlap;  /* |<psi psi r | output>|^2, fixed rejected state */
  double reduced_purity; /* organism factor after tracing the rest */
  double entropy_bits;   /* across the organism | copy+rejected cut */
} qsp_clone_gap_report;

qsp_status qsp_clone_gap(const qsp_cloner *c, const qsp_state *psi,
                         int ideal_rejected_index, qsp_clone_gap_report *out);

/* v = |s| - |s|^2 with s = <psi1|psi2>. */
qsp_status qsp_nonorthogonal_violation(const qsp_state *psi1,
                                       const qsp_state *psi2, double *out);

/* Largest feasible symmetric success probability, 1/(1 + |<psi1|psi2>|). */
qsp_status qsp_duan_guo_max_probability(const qsp_state *psi1,
                                        const qsp_state *psi2, double *out);

qsp_status qsp_machine_new(const qsp_state *psi1, const qsp_state *psi2,
                           double success_probability, qsp_machine **out);
void qsp_machine_free(qsp_machine *m);

typedef struct qsp_machine_report {
  double success_probability;
  double gram_residual;       /* |<T1|T2> - <psi1|psi2>| */
  double projection_residual; /* post-success state vs target, sup norm */
  double isometry_residual;   /* orthonormality of the machine isometry */
} qsp_machine_report;

qsp_status qsp_machine_validate(const qsp_machine *m, qsp_machine_report *out);

typedef struct qsp_sample_report {
  long long trials;
  long long successes;
  double rate;
  double post_state_residual;
} qsp_sample_report;

/* Monte Carlo probe measurement for input `which` (1 or 2). */
qsp_status qsp_machine_sample(const qsp_machine *m, int which, long long trials,
                              unsigned long long seed, qsp_sample_report *out);

/* Clone fidelity along psi(t) = step^t psi0 for t = 0..steps; requires
 * step^period = I entrywise and a basis-state psi0. Writes steps+1 doubles. */
qsp_status qsp_cyclic_fidelities(const qsp_unitary *step, int period,
                                 const qsp_state *psi0, const qsp_cloner *c,
                                 int steps, double *fidelities);

/* ------------------------------------------------------------------ */
/* Culling                                                            */

/* Basis culler |k>|k>|r> -> |k>|w_k>|pad> with reserved off-diagonal
 * targets. `blanks` lists dim states of the species dimension; the ancilla
 * needs dimension >= 2. */
qsp_status qsp_culler_new(int dim, const qsp_state *ancilla,
                          const qsp_state *const *blanks, int n_blanks,
                          qsp_culler **out);
void qsp_culler_free(qsp_culler *c);

typedef struct qsp_cull_gap_report {
  double fidelity;        /* |<psi blank pad | output>|^2 */
  double diagonal_weight; /* sum_k |psi_k|^4 */
  double offdiag_weight;  /* 1 - diagonal_weight */
} qsp_cull_gap_report;

qsp_status qsp_cull_gap(const qsp_culler *c, const qsp_state *psi,
                        const qsp_state *ideal_blank,
                        qsp_cull_gap_report *out);

/* Sup-norm gap between psi (x) psi (x) r and the inverse isometry applied to
 * the culler output. */
qsp_status qsp_cull_recovery_residual(const qsp_culler *c, const qsp_state *psi,
                                      double *out);

typedef struct qsp_gram_feasibility {
  int feasible;
  double max_residual;          /* worst |<a_k|a_l> - <psi_k|psi_l>| */
  double construction_residual; /* worst ||W a_k - psi_k||, feasible case */
} qsp_gram_feasibility;

/* State-dependent replication feasibility: possible exactly when the ancilla
 * Gram matrix matches the species Gram matrix. Requires a family with no
 * orthogonal species pair. residual_matrix, when non-NULL, receives
 * count*count doubles (row-major). */
qsp_status qsp_jozsa_check(const qsp_state *const *states,
                           const qsp_state *const *ancillas, int count,
                           qsp_gram_feasibility *out, double *residual_matrix);

/* ------------------------------------------------------------------ */
/* Mutation                                                           */

typedef struct qsp_mutation_report {
  long long copies;
  double s2; /* |<psi|U|psi>|^2 */
  double overlap_entangled;
  double overlap_unentangled;
  double normalization;
  double gain;
} qsp_mutation_report;

qsp_status qsp_mutation_report_eval(const qsp_state *psi, const qsp_unitary *u,
                                    long long copies, qsp_mutation_report *out);

/* Normalized symmetric one-mutation state over `copies` tensor factors. */
qsp_status qsp_entangled_mutation_state(const qsp_state *psi,
                                        const qsp_unitary *u, int copies,
                                        qsp_state **out);

typedef struct qsp_entangling_residual {
  double lhs_re, lhs_im;
  double rhs_re, rhs_im;
  double cross_re, cross_im;
  double residual;
  double residual_phase_min;
} qsp_entangling_residual;

qsp_status qsp_entangling_residual_eval(const qsp_state *psi,
                                        const qsp_state *phi,
                                        const qsp_unitary *u,
                                        qsp_entangling_residual *out);

qsp_status qsp_qubit_orthogonal_example(double a_re, double a_im, double b_re,
                                        double b_im,
                                        qsp_entangling_residual *out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QSPECIES_H */
