// Shared plumbing for the qspecies command-line tool: RAII wrappers over the
// C API handles, the amplitude-list grammar, tolerance overrides, and the
// experiment-record output layer (text / json / csv).
#pragma once

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qspecies.h"

namespace qcli {

using json = nlohmann::ordered_json;
using Complex = std::complex<double>;

// Command-line misuse (bad grammar, missing flags, out-of-range options).
// Mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Failure reported by the library. Carries the status so main can map it to
// the documented exit codes.
struct ApiError : std::runtime_error {
  qsp_status status;
  ApiError(qsp_status st, const std::string &msg)
      : std::runtime_error(msg), status(st) {}
};

// Throws ApiError (with qsp_last_error) unless st == QSP_OK.
void check(qsp_status st);

// 0 success, 2 usage, 3 infeasible/domain/degenerate, 4 capacity, 1 other.
int exit_code_for(qsp_status st);

struct StateDeleter {
  void operator()(qsp_state *p) const { qsp_state_free(p); }
};
struct UnitaryDeleter {
  void operator()(qsp_unitary *p) const { qsp_unitary_free(p); }
};
struct ClonerDeleter {
  void operator()(qsp_cloner *p) const { qsp_cloner_free(p); }
};
struct MachineDeleter {
  void operator()(qsp_machine *p) const { qsp_machine_free(p); }
};
struct CullerDeleter {
  void operator()(qsp_culler *p) const { qsp_culler_free(p); }
};

using StatePtr = std::unique_ptr<qsp_state, StateDeleter>;
using UnitaryPtr = std::unique_ptr<qsp_unitary, UnitaryDeleter>;
using ClonerPtr = std::unique_ptr<qsp_cloner, ClonerDeleter>;
using MachinePtr = std::unique_ptr<qsp_machine, MachineDeleter>;
using CullerPtr = std::unique_ptr<qsp_culler, CullerDeleter>;

StatePtr make_basis_state(int dim, int index);
StatePtr make_random_state(int dim, unsigned long long seed);
// Rescales to unit norm; warns on stderr when the input norm deviates from 1
// by more than 1e-6.
StatePtr make_state_normalized(const std::vector<Complex> &amps);
StatePtr make_state_exact(const std::vector<Complex> &amps);
UnitaryPtr make_rotation2(double angle);
UnitaryPtr make_random_unitary(int dim, unsigned long long seed);
StatePtr applied(const qsp_unitary *u, const qsp_state *s);
StatePtr tensor_power(const qsp_state *s, int m);
Complex inner(const qsp_state *a, const qsp_state *b);

std::vector<Complex> amplitudes_of(const qsp_state *s);
json state_to_json(const qsp_state *s);

// One amplitude token: `re`, `imj`, `re+imj`, or `re-imj` (examples: `1`,
// `0.5-0.5j`, `-0.3j`).
Complex parse_amplitude(const std::string &token);
// Comma-separated amplitude tokens.
std::vector<Complex> parse_amplitude_list(const std::string &text);

// printf-style into a std::string.
std::string fmt(const char *f, ...) __attribute__((format(printf, 1, 2)));

// Options common to every subcommand.
struct OutputOptions {
  std::string format = "text";
  std::string path;  // empty: stdout
  std::vector<std::string> tolerance_overrides;
  unsigned long long seed = 0;
  bool seed_given = false;
};

// Applies `name=value` pairs via qsp_tolerance_set; bad names or values are
// usage errors.
void apply_tolerance_overrides(const std::vector<std::string> &overrides);

// Machine-readable output of a randomized run must be reproducible by
// construction, so json/csv demand an explicit --seed.
void require_seed_for_machine_readable(const OutputOptions &out);

// {"subcommand", "params", "results", "version", "timestamp"}.
json make_record(const std::string &subcommand, json params, json results);

// Writes the payload to --output (resolved against QSPECIES_OUTPUT_DIR when
// relative) or stdout.
void emit_payload(const OutputOptions &out, const std::string &payload);

}  // namespace qcli
