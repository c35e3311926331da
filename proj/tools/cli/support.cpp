#include "support.hpp"

#include <cerrno>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>

namespace qcli {

void check(qsp_status st) {
  if (st != QSP_OK) throw ApiError(st, qsp_last_error());
}

int exit_code_for(qsp_status st) {
  switch (st) {
    case QSP_OK:
      return 0;
    case QSP_ERR_ARGUMENT:
    case QSP_ERR_DIMENSION:
    case QSP_ERR_NULL:
      return 2;
    case QSP_ERR_DEGENERATE:
    case QSP_ERR_INFEASIBLE:
    case QSP_ERR_DOMAIN:
      return 3;
    case QSP_ERR_CAPACITY:
      return 4;
    default:
      return 1;
  }
}

StatePtr make_basis_state(int dim, int index) {
  qsp_state *s = nullptr;
  check(qsp_state_basis(dim, index, &s));
  return StatePtr(s);
}

StatePtr make_random_state(int dim, unsigned long long seed) {
  qsp_state *s = nullptr;
  check(qsp_state_random(dim, seed, &s));
  return StatePtr(s);
}

static std::vector<double> interleave(const std::vector<Complex> &amps) {
  std::vector<double> flat(2 * amps.size());
  for (size_t i = 0; i < amps.size(); ++i) {
    flat[2 * i] = amps[i].real();
    flat[2 * i + 1] = amps[i].imag();
  }
  return flat;
}

StatePtr make_state_normalized(const std::vector<Complex> &amps) {
  double norm2 = 0.0;
  for (const Complex &a : amps) norm2 += std::norm(a);
  const double deviation = std::abs(std::sqrt(norm2) - 1.0);
  if (deviation > 1e-6) {
    std::fprintf(stderr,
                 "warning: input state norm deviates from 1 by %.3g; "
                 "normalizing\n",
                 deviation);
  }
  const std::vector<double> flat = interleave(amps);
  qsp_state *s = nullptr;
  check(qsp_state_new_normalized(static_cast<int>(amps.size()), flat.data(),
                                 &s));
  return StatePtr(s);
}

StatePtr make_state_exact(const std::vector<Complex> &amps) {
  const std::vector<double> flat = interleave(amps);
  qsp_state *s = nullptr;
  check(qsp_state_new(static_cast<int>(amps.size()), flat.data(), &s));
  return StatePtr(s);
}

UnitaryPtr make_rotation2(double angle) {
  qsp_unitary *u = nullptr;
  check(qsp_unitary_rotation2(angle, &u));
  return UnitaryPtr(u);
}

UnitaryPtr make_random_unitary(int dim, unsigned long long seed) {
  qsp_unitary *u = nullptr;
  check(qsp_unitary_random(dim, seed, &u));
  return UnitaryPtr(u);
}

StatePtr applied(const qsp_unitary *u, const qsp_state *s) {
  qsp_state *out = nullptr;
  check(qsp_unitary_apply(u, s, &out));
  return StatePtr(out);
}

StatePtr tensor_power(const qsp_state *s, int m) {
  qsp_state *out = nullptr;
  check(qsp_state_tensor_power(s, m, &out));
  return StatePtr(out);
}

Complex inner(const qsp_state *a, const qsp_state *b) {
  double re = 0.0, im = 0.0;
  check(qsp_state_inner(a, b, &re, &im));
  return {re, im};
}

std::vector<Complex> amplitudes_of(const qsp_state *s) {
  const int dim = qsp_state_dim(s);
  std::vector<double> flat(2 * static_cast<size_t>(dim));
  check(qsp_state_amplitudes(s, flat.data()));
  std::vector<Complex> amps(dim);
  for (int i = 0; i < dim; ++i) amps[i] = {flat[2 * i], flat[2 * i + 1]};
  return amps;
}

json state_to_json(const qsp_state *s) {
  json arr = json::array();
  for (const Complex &a : amplitudes_of(s)) {
    arr.push_back(json::array({a.real(), a.imag()}));
  }
  return arr;
}

static std::string trim(const std::string &s) {
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

Complex parse_amplitude(const std::string &token) {
  const std::string t = trim(token);
  if (t.empty()) throw UsageError("empty amplitude token");
  const char *begin = t.c_str();
  char *end = nullptr;
  errno = 0;
  const double first = std::strtod(begin, &end);
  if (end == begin) {
    throw UsageError("malformed amplitude '" + t + "' (expected re+imj)");
  }
  if (*end == '\0') return {first, 0.0};
  if (*end == 'j' && end[1] == '\0') return {0.0, first};
  if (*end == '+' || *end == '-') {
    char *end2 = nullptr;
    const double second = std::strtod(end, &end2);
    if (end2 == end || *end2 != 'j' || end2[1] != '\0') {
      throw UsageError("malformed amplitude '" + t + "' (expected re+imj)");
    }
    return {first, second};
  }
  throw UsageError("malformed amplitude '" + t + "' (expected re+imj)");
}

std::vector<Complex> parse_amplitude_list(const std::string &text) {
  std::vector<Complex> amps;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t comma = text.find(',', start);
    const size_t stop = comma == std::string::npos ? text.size() : comma;
    amps.push_back(parse_amplitude(text.substr(start, stop - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (amps.empty()) throw UsageError("empty amplitude list");
  return amps;
}

std::string fmt(const char *f, ...) {
  va_list args;
  va_start(args, f);
  va_list copy;
  va_copy(copy, args);
  const int n = std::vsnprintf(nullptr, 0, f, copy);
  va_end(copy);
  std::string out(n > 0 ? static_cast<size_t>(n) : 0, '\0');
  std::vsnprintf(out.data(), out.size() + 1, f, args);
  va_end(args);
  return out;
}

void apply_tolerance_overrides(const std::vector<std::string> &overrides) {
  for (const std::string &entry : overrides) {
    const size_t eq = entry.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == entry.size()) {
      throw UsageError("--tol expects name=value, got '" + entry + "'");
    }
    const std::string name = entry.substr(0, eq);
    char *end = nullptr;
    const std::string value_text = entry.substr(eq + 1);
    const double value = std::strtod(value_text.c_str(), &end);
    if (end == value_text.c_str() || *end != '\0') {
      throw UsageError("--tol value is not a number in '" + entry + "'");
    }
    if (qsp_tolerance_set(name.c_str(), value) != QSP_OK) {
      throw UsageError(std::string("unknown or invalid tolerance: ") +
                       qsp_last_error());
    }
  }
}

void require_seed_for_machine_readable(const OutputOptions &out) {
  if (out.format != "text" && !out.seed_given) {
    throw UsageError(
        "randomized runs with --format json/csv require an explicit --seed "
        "so the output is reproducible");
  }
}

static std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

json make_record(const std::string &subcommand, json params, json results) {
  json record;
  record["subcommand"] = subcommand;
  record["params"] = std::move(params);
  record["results"] = std::move(results);
  record["version"] = qsp_version();
  record["timestamp"] = timestamp_utc();
  return record;
}

void emit_payload(const OutputOptions &out, const std::string &payload) {
  if (out.path.empty()) {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    return;
  }
  std::filesystem::path target(out.path);
  if (target.is_relative()) {
    if (const char *dir = std::getenv("QSPECIES_OUTPUT_DIR")) {
      target = std::filesystem::path(dir) / target;
    }
  }
  if (target.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(target.parent_path(), ec);
  }
  std::ofstream stream(target, std::ios::binary);
  if (!stream) {
    throw UsageError("cannot open output file: " + target.string());
  }
  stream.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

}  // namespace qcli
