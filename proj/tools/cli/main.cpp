// Command-line front end for the qspecies library. Every demonstration is a
// subcommand producing an experiment record in text, json, or csv form.
//
// Exit codes: 0 success, 2 usage error, 3 infeasible/domain error,
// 4 capacity error.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "support.hpp"

namespace {

using qcli::ApiError;
using qcli::check;
using qcli::Complex;
using qcli::json;
using qcli::OutputOptions;
using qcli::StatePtr;
using qcli::UsageError;

std::string amp_text(const Complex &a) {
  return qcli::fmt("%.10g%+.10gj", a.real(), a.imag());
}

std::string state_text(const qsp_state *s) {
  std::string out;
  for (const Complex &a : qcli::amplitudes_of(s)) {
    if (!out.empty()) out += ", ";
    out += amp_text(a);
  }
  return out;
}

void finish(const OutputOptions &out, const std::string &subcommand,
            json params, json results, const std::string &text,
            const std::string &csv) {
  if (out.format == "json") {
    const json record = qcli::make_record(subcommand, std::move(params),
                                          std::move(results));
    qcli::emit_payload(out, record.dump(2) + "\n");
  } else if (out.format == "csv") {
    qcli::emit_payload(out, csv);
  } else {
    qcli::emit_payload(out, text);
  }
}

/* ------------------------------------------------------------------ */
/* wigner-count                                                       */

int run_wigner_count(const OutputOptions &out, bool has_n, long long n,
                     bool has_r, long long r, const std::string &grid) {
  std::vector<std::pair<long long, long long>> cells;
  json params;
  if (!grid.empty()) {
    if (has_n || has_r) {
      throw UsageError("--grid excludes --n/--r");
    }
    long long n_lo = 0, n_hi = 0, r_lo = 0, r_hi = 0;
    char tail = '\0';
    if (std::sscanf(grid.c_str(), "%lld:%lld,%lld:%lld%c", &n_lo, &n_hi, &r_lo,
                    &r_hi, &tail) != 4 ||
        n_lo < 1 || r_lo < 1 || n_lo > n_hi || r_lo > r_hi) {
      throw UsageError("--grid expects N1:N2,R1:R2 with 1 <= N1 <= N2 and "
                       "1 <= R1 <= R2");
    }
    for (long long nn = n_lo; nn <= n_hi; ++nn) {
      for (long long rr = r_lo; rr <= r_hi; ++rr) cells.emplace_back(nn, rr);
    }
    params = {{"grid", {{"n_lo", n_lo}, {"n_hi", n_hi}, {"r_lo", r_lo},
                        {"r_hi", r_hi}}}};
  } else {
    if (!has_n || !has_r) {
      throw UsageError("wigner-count needs --n and --r, or --grid");
    }
    cells.emplace_back(n, r);
    params = {{"n", n}, {"r", r}};
  }

  json rows = json::array();
  std::string text =
      "replication parameter count\n"
      "   n   r  equations  unknowns  deficit\n";
  std::string csv = "n,r,equations,unknowns,deficit\n";
  for (const auto &[nn, rr] : cells) {
    qsp_wigner_count wc;
    check(qsp_wigner_count_eval(nn, rr, &wc));
    rows.push_back({{"n", wc.organism_dim},
                    {"r", wc.rejected_dim},
                    {"equations", wc.equations},
                    {"unknowns", wc.unknowns},
                    {"deficit", wc.deficit}});
    text += qcli::fmt("%4lld%4lld%11lld%10lld%9lld\n", wc.organism_dim,
                      wc.rejected_dim, wc.equations, wc.unknowns, wc.deficit);
    csv += qcli::fmt("%lld,%lld,%lld,%lld,%lld\n", wc.organism_dim,
                     wc.rejected_dim, wc.equations, wc.unknowns, wc.deficit);
  }
  finish(out, "wigner-count", std::move(params), {{"rows", std::move(rows)}},
         text, csv);
  return 0;
}

/* ------------------------------------------------------------------ */
/* clone-demo / cull-demo share the species-state plumbing            */

StatePtr load_species_state(const OutputOptions &out, int &dim, bool dim_given,
                            const std::string &psi_spec, bool use_random) {
  if (use_random == !psi_spec.empty()) {
    throw UsageError("give exactly one of --psi or --random");
  }
  if (use_random) {
    qcli::require_seed_for_machine_readable(out);
    return qcli::make_random_state(dim, out.seed);
  }
  const std::vector<Complex> amps = qcli::parse_amplitude_list(psi_spec);
  if (dim_given && static_cast<int>(amps.size()) != dim) {
    throw UsageError(qcli::fmt("--psi lists %zu amplitudes but --dim is %d",
                               amps.size(), dim));
  }
  dim = static_cast<int>(amps.size());
  return qcli::make_state_normalized(amps);
}

json species_params(int dim, const std::string &psi_spec, bool use_random,
                    const OutputOptions &out) {
  json params = {{"dim", dim}};
  if (use_random) {
    params["random"] = true;
    params["seed"] = out.seed;
  } else {
    params["psi"] = psi_spec;
  }
  return params;
}

int run_clone_demo(const OutputOptions &out, int dim, bool dim_given,
                   const std::string &psi_spec, bool use_random,
                   const std::string &rejected_mode, int ideal_index) {
  if (rejected_mode == "random") qcli::require_seed_for_machine_readable(out);
  StatePtr psi = load_species_state(out, dim, dim_given, psi_spec, use_random);

  int rejected_dim = 2;
  std::vector<StatePtr> store;
  std::vector<const qsp_state *> rejected;
  if (rejected_mode == "shared") {
    store.push_back(qcli::make_basis_state(2, 0));
    rejected.assign(dim, store.back().get());
  } else if (rejected_mode == "orthogonal") {
    rejected_dim = dim;
    for (int k = 0; k < dim; ++k) {
      store.push_back(qcli::make_basis_state(dim, k));
      rejected.push_back(store.back().get());
    }
  } else {
    for (int k = 0; k < dim; ++k) {
      store.push_back(qcli::make_random_state(2, out.seed + 1 + k));
      rejected.push_back(store.back().get());
    }
  }
  const StatePtr nutrient = qcli::make_basis_state(dim * rejected_dim, 0);

  qsp_cloner *raw = nullptr;
  check(qsp_cloner_new(dim, nutrient.get(), rejected.data(),
                       static_cast<int>(rejected.size()), &raw));
  const qcli::ClonerPtr cloner(raw);
  qsp_clone_gap_report rep;
  check(qsp_clone_gap(cloner.get(), psi.get(), ideal_index, &rep));

  json params = species_params(dim, psi_spec, use_random, out);
  params["rejected"] = rejected_mode;
  params["ideal_rejected_index"] = ideal_index;
  if (rejected_mode == "random") params["seed"] = out.seed;
  const json results = {{"psi", qcli::state_to_json(psi.get())},
                        {"fidelity", rep.fidelity},
                        {"ideal_overlap", rep.ideal_overlap},
                        {"reduced_purity", rep.reduced_purity},
                        {"entropy_bits", rep.entropy_bits}};
  const std::string text = qcli::fmt(
      "basis replicator gap\n"
      "  dim                %d\n"
      "  rejected mode      %s\n"
      "  input |psi>        %s\n"
      "  fidelity           %.10g\n"
      "  ideal overlap      %.10g\n"
      "  reduced purity     %.10g\n"
      "  entropy (bits)     %.10g\n",
      dim, rejected_mode.c_str(), state_text(psi.get()).c_str(), rep.fidelity,
      rep.ideal_overlap, rep.reduced_purity, rep.entropy_bits);
  const std::string csv = qcli::fmt(
      "dim,rejected,ideal_rejected_index,fidelity,ideal_overlap,"
      "reduced_purity,entropy_bits\n%d,%s,%d,%.12g,%.12g,%.12g,%.12g\n",
      dim, rejected_mode.c_str(), ideal_index, rep.fidelity, rep.ideal_overlap,
      rep.reduced_purity, rep.entropy_bits);
  finish(out, "clone-demo", std::move(params), results, text, csv);
  return 0;
}

/* ------------------------------------------------------------------ */
/* prob-clone                                                         */

int run_prob_clone(const OutputOptions &out, double s, double theta,
                   long long trials, int which) {
  if (!(s >= 0.0 && s < 1.0)) {
    throw UsageError("--s must lie in [0, 1)");
  }
  if (trials < 0) throw UsageError("--trials must be >= 0");
  if (which != 1 && which != 2) throw UsageError("--which must be 1 or 2");
  if (trials > 0) qcli::require_seed_for_machine_readable(out);

  const StatePtr psi1 = qcli::make_basis_state(2, 0);
  const StatePtr psi2 = qcli::make_state_exact(
      {std::polar(s, theta), std::sqrt(1.0 - s * s)});

  double p_max = 0.0;
  check(qsp_duan_guo_max_probability(psi1.get(), psi2.get(), &p_max));
  const double bound = 1.0 / (1.0 + s);

  qsp_machine *raw = nullptr;
  check(qsp_machine_new(psi1.get(), psi2.get(), p_max, &raw));
  const qcli::MachinePtr machine(raw);
  qsp_machine_report mrep;
  check(qsp_machine_validate(machine.get(), &mrep));

  qsp_sample_report srep{0, 0, 0.0, 0.0};
  if (trials > 0) {
    check(qsp_machine_sample(machine.get(), which, trials, out.seed, &srep));
  }

  json params = {{"s", s}, {"theta", theta}, {"which", which},
                 {"trials", trials}};
  if (trials > 0) params["seed"] = out.seed;
  json results = {{"p_max", p_max},
                  {"bound", bound},
                  {"machine",
                   {{"gram_residual", mrep.gram_residual},
                    {"projection_residual", mrep.projection_residual},
                    {"isometry_residual", mrep.isometry_residual}}}};
  results["sample"] =
      trials > 0 ? json{{"trials", srep.trials},
                        {"successes", srep.successes},
                        {"rate", srep.rate},
                        {"post_state_residual", srep.post_state_residual}}
                 : json(nullptr);

  std::string text = qcli::fmt(
      "probabilistic replication at the feasibility bound\n"
      "  overlap |s|          %.10g\n"
      "  searched p_max       %.10g\n"
      "  bound 1/(1+|s|)      %.10g\n"
      "  gram residual        %.10g\n"
      "  projection residual  %.10g\n"
      "  isometry residual    %.10g\n",
      s, p_max, bound, mrep.gram_residual, mrep.projection_residual,
      mrep.isometry_residual);
  if (trials > 0) {
    text += qcli::fmt(
        "  sampled input        %d\n"
        "  trials               %lld\n"
        "  successes            %lld\n"
        "  empirical rate       %.10g\n"
        "  post-state residual  %.10g\n",
        which, srep.trials, srep.successes, srep.rate,
        srep.post_state_residual);
  }
  std::string csv =
      "s,theta,p_max,bound,gram_residual,projection_residual,"
      "isometry_residual,which,trials,successes,rate,post_state_residual\n";
  csv += qcli::fmt("%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%d,%lld,%lld,",
                   s, theta, p_max, bound, mrep.gram_residual,
                   mrep.projection_residual, mrep.isometry_residual, which,
                   srep.trials, srep.successes);
  csv += trials > 0 ? qcli::fmt("%.12g,%.12g\n", srep.rate,
                                srep.post_state_residual)
                    : ",\n";
  finish(out, "prob-clone", std::move(params), std::move(results), text, csv);
  return 0;
}

/* ------------------------------------------------------------------ */
/* cull-demo                                                          */

int run_cull_demo(const OutputOptions &out, int dim, bool dim_given,
                  const std::string &psi_spec, bool use_random,
                  const std::string &blank_mode, int ideal_index) {
  if (blank_mode == "random") qcli::require_seed_for_machine_readable(out);
  StatePtr psi = load_species_state(out, dim, dim_given, psi_spec, use_random);

  std::vector<StatePtr> store;
  std::vector<const qsp_state *> blanks;
  if (blank_mode == "shared") {
    store.push_back(qcli::make_basis_state(dim, 0));
    blanks.assign(dim, store.back().get());
  } else if (blank_mode == "orthogonal") {
    for (int k = 0; k < dim; ++k) {
      store.push_back(qcli::make_basis_state(dim, k));
      blanks.push_back(store.back().get());
    }
  } else {
    for (int k = 0; k < dim; ++k) {
      store.push_back(qcli::make_random_state(dim, out.seed + 1 + k));
      blanks.push_back(store.back().get());
    }
  }
  if (ideal_index < 0 || ideal_index >= static_cast<int>(blanks.size())) {
    throw UsageError("--ideal-blank-index out of range");
  }
  const StatePtr ancilla = qcli::make_basis_state(2, 0);

  qsp_culler *raw = nullptr;
  check(qsp_culler_new(dim, ancilla.get(), blanks.data(),
                       static_cast<int>(blanks.size()), &raw));
  const qcli::CullerPtr culler(raw);
  qsp_cull_gap_report rep;
  check(qsp_cull_gap(culler.get(), psi.get(), blanks[ideal_index], &rep));
  double recovery = 0.0;
  check(qsp_cull_recovery_residual(culler.get(), psi.get(), &recovery));

  json params = species_params(dim, psi_spec, use_random, out);
  params["blank"] = blank_mode;
  params["ideal_blank_index"] = ideal_index;
  if (blank_mode == "random") params["seed"] = out.seed;
  const json results = {{"psi", qcli::state_to_json(psi.get())},
                        {"fidelity", rep.fidelity},
                        {"diagonal_weight", rep.diagonal_weight},
                        {"offdiag_weight", rep.offdiag_weight},
                        {"recovery_residual", recovery}};
  const std::string text = qcli::fmt(
      "basis culler gap\n"
      "  dim                %d\n"
      "  blank mode         %s\n"
      "  input |psi>        %s\n"
      "  fidelity           %.10g\n"
      "  diagonal weight    %.10g\n"
      "  off-diag weight    %.10g\n"
      "  recovery residual  %.10g\n",
      dim, blank_mode.c_str(), state_text(psi.get()).c_str(), rep.fidelity,
      rep.diagonal_weight, rep.offdiag_weight, recovery);
  const std::string csv = qcli::fmt(
      "dim,blank,ideal_blank_index,fidelity,diagonal_weight,offdiag_weight,"
      "recovery_residual\n%d,%s,%d,%.12g,%.12g,%.12g,%.12g\n",
      dim, blank_mode.c_str(), ideal_index, rep.fidelity, rep.diagonal_weight,
      rep.offdiag_weight, recovery);
  finish(out, "cull-demo", std::move(params), results, text, csv);
  return 0;
}

/* ------------------------------------------------------------------ */
/* paradox-sweep                                                      */

int run_paradox_sweep(const OutputOptions &out, double s2,
                      const std::string &m_list, long long m_max,
                      bool no_oracle) {
  if (!(s2 >= 0.0 && s2 <= 1.0)) {
    throw UsageError("--s2 must lie in [0, 1]");
  }
  std::vector<long long> copies;
  if (!m_list.empty()) {
    size_t start = 0;
    while (start <= m_list.size()) {
      const size_t comma = m_list.find(',', start);
      const size_t stop = comma == std::string::npos ? m_list.size() : comma;
      char *end = nullptr;
      const std::string tok = m_list.substr(start, stop - start);
      const long long m = std::strtoll(tok.c_str(), &end, 10);
      if (end == tok.c_str() || *end != '\0' || m < 1 ||
          (!copies.empty() && m <= copies.back())) {
        throw UsageError(
            "--m-list expects strictly increasing positive integers");
      }
      copies.push_back(m);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  } else {
    if (m_max < 1) throw UsageError("--m-max must be >= 1");
    for (long long m = 1; m <= m_max; m *= 2) copies.push_back(m);
  }

  // A qubit pair realizing the requested squared overlap: psi = |0> and a
  // mutation rotating |0> by acos(sqrt(s2)).
  const double theta = std::acos(std::min(1.0, std::sqrt(s2)));
  const StatePtr psi = qcli::make_basis_state(2, 0);
  const qcli::UnitaryPtr mutation = qcli::make_rotation2(theta);

  json rows = json::array();
  std::string text = qcli::fmt(
      "mutation overlap sweep (s2 = %.10g)\n"
      "  copies     entangled       unentangled     normalization   gain"
      "            oracle          |delta|\n",
      s2);
  std::string csv =
      "copies,s2,overlap_entangled,overlap_unentangled,normalization,gain,"
      "oracle_overlap,oracle_deviation\n";
  for (const long long m : copies) {
    qsp_mutation_report rep;
    check(qsp_mutation_report_eval(psi.get(), mutation.get(), m, &rep));
    json row = {{"copies", rep.copies},
                {"overlap_entangled", rep.overlap_entangled},
                {"overlap_unentangled", rep.overlap_unentangled},
                {"normalization", rep.normalization},
                {"gain", rep.gain}};
    std::string oracle_text = "-";
    std::string oracle_csv = ",";
    // Brute-force tensor oracle whenever the 2^m-dimensional product space
    // fits comfortably: overlap of the one-mutation entangled state with
    // the original unmutated population.
    if (!no_oracle && m >= 2 && m <= 20) {
      qsp_state *raw = nullptr;
      check(qsp_entangled_mutation_state(psi.get(), mutation.get(),
                                         static_cast<int>(m), &raw));
      const StatePtr entangled(raw);
      const StatePtr product = qcli::tensor_power(psi.get(),
                                                  static_cast<int>(m));
      const double oracle =
          std::norm(qcli::inner(product.get(), entangled.get()));
      const double deviation = std::abs(oracle - rep.overlap_entangled);
      row["oracle_overlap"] = oracle;
      row["oracle_deviation"] = deviation;
      oracle_text = qcli::fmt("%-15.10g %.3g", oracle, deviation);
      oracle_csv = qcli::fmt("%.12g,%.12g", oracle, deviation);
    } else {
      row["oracle_overlap"] = nullptr;
      row["oracle_deviation"] = nullptr;
    }
    rows.push_back(std::move(row));
    text += qcli::fmt("%8lld   %-15.10g %-15.10g %-15.10g %-15.10g %s\n",
                      rep.copies, rep.overlap_entangled,
                      rep.overlap_unentangled, rep.normalization, rep.gain,
                      oracle_text.c_str());
    csv += qcli::fmt("%lld,%.12g,%.12g,%.12g,%.12g,%.12g,%s\n", rep.copies,
                     rep.s2, rep.overlap_entangled, rep.overlap_unentangled,
                     rep.normalization, rep.gain, oracle_csv.c_str());
  }

  json params = {{"s2", s2}, {"m_list", copies},
                 {"oracle", !no_oracle}};
  finish(out, "paradox-sweep", std::move(params),
         {{"s2", s2}, {"rows", std::move(rows)}}, text, csv);
  return 0;
}

/* ------------------------------------------------------------------ */
/* check-entangling                                                   */

json residual_to_json(const qsp_entangling_residual &res) {
  return {{"lhs", json::array({res.lhs_re, res.lhs_im})},
          {"rhs", json::array({res.rhs_re, res.rhs_im})},
          {"cross", json::array({res.cross_re, res.cross_im})},
          {"residual", res.residual},
          {"residual_phase_min", res.residual_phase_min}};
}

int run_check_entangling(const OutputOptions &out, const std::string &mode,
                         long long trials, int dim, double threshold,
                         const std::string &a_text,
                         const std::string &b_text) {
  if (mode == "qubit-example") {
    if (a_text.empty() || b_text.empty()) {
      throw UsageError("qubit-example mode requires --a and --b");
    }
    const Complex a = qcli::parse_amplitude(a_text);
    const Complex b = qcli::parse_amplitude(b_text);
    qsp_entangling_residual res;
    check(qsp_qubit_orthogonal_example(a.real(), a.imag(), b.real(), b.imag(),
                                       &res));
    const json params = {{"mode", mode},
                         {"a", json::array({a.real(), a.imag()})},
                         {"b", json::array({b.real(), b.imag()})}};
    const std::string text = qcli::fmt(
        "orthogonal-complement mutation check\n"
        "  a                    %s\n"
        "  b                    %s\n"
        "  lhs                  %s\n"
        "  rhs                  %s\n"
        "  cross term           %s\n"
        "  residual             %.10g\n"
        "  phase-min residual   %.10g\n",
        amp_text(a).c_str(), amp_text(b).c_str(),
        amp_text({res.lhs_re, res.lhs_im}).c_str(),
        amp_text({res.rhs_re, res.rhs_im}).c_str(),
        amp_text({res.cross_re, res.cross_im}).c_str(), res.residual,
        res.residual_phase_min);
    const std::string csv = qcli::fmt(
        "a_re,a_im,b_re,b_im,cross_re,cross_im,residual,residual_phase_min\n"
        "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
        a.real(), a.imag(), b.real(), b.imag(), res.cross_re, res.cross_im,
        res.residual, res.residual_phase_min);
    finish(out, "check-entangling", params, residual_to_json(res), text, csv);
    return 0;
  }

  if (mode != "random") {
    throw UsageError("--mode must be random or qubit-example");
  }
  if (trials < 1) throw UsageError("--trials must be >= 1");
  if (dim < 2) throw UsageError("--dim must be >= 2");
  qcli::require_seed_for_machine_readable(out);

  json rows = json::array();
  std::string csv = "trial,overlap_abs,residual,residual_phase_min\n";
  long long above = 0;
  long long phase_above = 0;
  double min_res = 0.0, max_res = 0.0, sum_res = 0.0;
  for (long long t = 0; t < trials; ++t) {
    const StatePtr psi = qcli::make_random_state(dim, out.seed + 3 * t);
    const StatePtr phi = qcli::make_random_state(dim, out.seed + 3 * t + 1);
    const qcli::UnitaryPtr u =
        qcli::make_random_unitary(dim, out.seed + 3 * t + 2);
    qsp_entangling_residual res;
    check(qsp_entangling_residual_eval(psi.get(), phi.get(), u.get(), &res));
    const double overlap = std::abs(qcli::inner(psi.get(), phi.get()));
    rows.push_back({{"trial", t},
                    {"overlap_abs", overlap},
                    {"residual", res.residual},
                    {"residual_phase_min", res.residual_phase_min}});
    csv += qcli::fmt("%lld,%.12g,%.12g,%.12g\n", t, overlap, res.residual,
                     res.residual_phase_min);
    if (res.residual > threshold) ++above;
    if (res.residual_phase_min > threshold) ++phase_above;
    min_res = t == 0 ? res.residual : std::min(min_res, res.residual);
    max_res = std::max(max_res, res.residual);
    sum_res += res.residual;
  }
  const json params = {{"mode", mode},
                       {"dim", dim},
                       {"trials", trials},
                       {"threshold", threshold},
                       {"seed", out.seed}};
  const json results = {
      {"trials", trials},
      {"threshold", threshold},
      {"fraction_residual_above", static_cast<double>(above) / trials},
      {"fraction_phase_min_above", static_cast<double>(phase_above) / trials},
      {"min_residual", min_res},
      {"mean_residual", sum_res / trials},
      {"max_residual", max_res},
      {"rows", std::move(rows)}};
  const std::string text = qcli::fmt(
      "entangling-evolution residual over seeded trials\n"
      "  dim                       %d\n"
      "  trials                    %lld\n"
      "  threshold                 %.10g\n"
      "  residual > threshold      %.10g\n"
      "  phase-min > threshold     %.10g\n"
      "  min residual              %.10g\n"
      "  mean residual             %.10g\n"
      "  max residual              %.10g\n",
      dim, trials, threshold, static_cast<double>(above) / trials,
      static_cast<double>(phase_above) / trials, min_res, sum_res / trials,
      max_res);
  finish(out, "check-entangling", params, results, text, csv);
  return 0;
}

/* ------------------------------------------------------------------ */
/* jozsa-check                                                        */

std::vector<StatePtr> load_state_list(const json &arr, const char *label) {
  if (!arr.is_array() || arr.empty()) {
    throw UsageError(std::string("states file: '") + label +
                     "' must be a non-empty array of states");
  }
  std::vector<StatePtr> states;
  for (const json &entry : arr) {
    if (!entry.is_array() || entry.empty()) {
      throw UsageError(std::string("states file: each state in '") + label +
                       "' must be a non-empty array of [re, im] pairs");
    }
    std::vector<Complex> amps;
    for (const json &pair : entry) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
          !pair[1].is_number()) {
        throw UsageError(std::string("states file: amplitudes in '") + label +
                         "' must be [re, im] number pairs");
      }
      amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    states.push_back(qcli::make_state_normalized(amps));
  }
  return states;
}

int run_jozsa_check(const OutputOptions &out, const std::string &path) {
  std::ifstream stream(path);
  if (!stream) throw UsageError("cannot read states file: " + path);
  json doc;
  try {
    stream >> doc;
  } catch (const json::parse_error &e) {
    throw UsageError(std::string("states file is not valid JSON: ") +
                     e.what());
  }
  if (!doc.is_object() || !doc.contains("states") ||
      !doc.contains("ancillas")) {
    throw UsageError(
        "states file must be an object with 'states' and 'ancillas' arrays");
  }
  const std::vector<StatePtr> states = load_state_list(doc["states"],
                                                       "states");
  const std::vector<StatePtr> ancillas = load_state_list(doc["ancillas"],
                                                         "ancillas");
  if (states.size() != ancillas.size()) {
    throw UsageError(qcli::fmt(
        "states file lists %zu states but %zu ancillas", states.size(),
        ancillas.size()));
  }
  const int count = static_cast<int>(states.size());
  std::vector<const qsp_state *> sp, ap;
  for (const StatePtr &s : states) sp.push_back(s.get());
  for (const StatePtr &a : ancillas) ap.push_back(a.get());

  qsp_gram_feasibility feas;
  std::vector<double> resmat(static_cast<size_t>(count) * count);
  check(qsp_jozsa_check(sp.data(), ap.data(), count, &feas, resmat.data()));

  json matrix = json::array();
  for (int i = 0; i < count; ++i) {
    json row = json::array();
    for (int j = 0; j < count; ++j) row.push_back(resmat[i * count + j]);
    matrix.push_back(std::move(row));
  }
  const json params = {{"states_file", path},
                       {"count", count},
                       {"dim", qsp_state_dim(sp[0])}};
  const json results = {
      {"feasible", feas.feasible != 0},
      {"max_residual", feas.max_residual},
      {"construction_residual",
       feas.feasible ? json(feas.construction_residual) : json(nullptr)},
      {"residual_matrix", std::move(matrix)}};
  std::string text = qcli::fmt(
      "state-dependent replication feasibility\n"
      "  species              %d states of dim %d\n"
      "  feasible             %s\n"
      "  max gram residual    %.10g\n",
      count, qsp_state_dim(sp[0]), feas.feasible ? "yes" : "no",
      feas.max_residual);
  if (feas.feasible) {
    text += qcli::fmt("  transport residual   %.10g\n",
                      feas.construction_residual);
  }
  text += "  residual matrix\n";
  for (int i = 0; i < count; ++i) {
    text += "   ";
    for (int j = 0; j < count; ++j) {
      text += qcli::fmt(" %9.3e", resmat[i * count + j]);
    }
    text += "\n";
  }
  std::string csv = "feasible,max_residual,construction_residual\n";
  csv += qcli::fmt("%d,%.12g,", feas.feasible ? 1 : 0, feas.max_residual);
  csv += feas.feasible ? qcli::fmt("%.12g\n", feas.construction_residual)
                       : "\n";
  finish(out, "jozsa-check", params, results, text, csv);
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Replication, culling, and mutation limits for quantum "
               "species"};
  app.require_subcommand(1);
  OutputOptions common;
  int rc = 0;

  // Option targets must outlive app.parse(), so every subcommand keeps its
  // argument holders here at function scope.
  struct {
    long long n = 0, r = 0;
    std::string grid;
  } wigner;
  struct {
    int dim = 2, ideal_index = 0;
    std::string psi, rejected = "shared";
    bool random = false;
  } clone;
  struct {
    double s = 0.0, theta = 0.0;
    long long trials = 100000;
    int which = 1;
  } prob;
  struct {
    int dim = 2, ideal_index = 0;
    std::string psi, blank = "shared";
    bool random = false;
  } cull;
  struct {
    double s2 = 0.0;
    std::string m_list;
    long long m_max = 1024;
    bool no_oracle = false;
  } paradox;
  struct {
    std::string mode = "random", a, b;
    long long trials = 1000;
    int dim = 2;
    double threshold = 1e-6;
  } entangling;
  struct {
    std::string path;
  } jozsa;

  const auto add_common = [&common](CLI::App *sub) {
    sub->add_option("--format", common.format,
                    "Output format: text, json, or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    sub->add_option("--output", common.path,
                    "Write the report to this file instead of stdout; a "
                    "relative path resolves against $QSPECIES_OUTPUT_DIR");
    sub->add_option("--tol", common.tolerance_overrides,
                    "Tolerance override name=value (repeatable)");
  };
  const auto add_seed = [&common](CLI::App *sub) {
    return sub->add_option(
        "--seed", common.seed,
        "Random seed (json/csv output of randomized runs requires it)");
  };
  const auto overrides = [&common]() {
    qcli::apply_tolerance_overrides(common.tolerance_overrides);
  };

  {
    CLI::App *sub = app.add_subcommand(
        "wigner-count", "Equation/unknown deficit of exact replication");
    add_common(sub);
    const CLI::Option *n_opt =
        sub->add_option("--n", wigner.n, "Organism dimension (>= 1)");
    const CLI::Option *r_opt =
        sub->add_option("--r", wigner.r, "Rejected-state dimension (>= 1)");
    sub->add_option("--grid", wigner.grid,
                    "Grid N1:N2,R1:R2 instead of --n/--r");
    sub->callback([&, n_opt, r_opt]() {
      overrides();
      rc = run_wigner_count(common, n_opt->count() > 0, wigner.n,
                            r_opt->count() > 0, wigner.r, wigner.grid);
    });
  }

  {
    CLI::App *sub = app.add_subcommand(
        "clone-demo", "Basis-replicator fidelity gap for one species state");
    add_common(sub);
    const CLI::Option *seed_opt = add_seed(sub);
    const CLI::Option *dim_opt =
        sub->add_option("--dim", clone.dim, "Species dimension")
            ->capture_default_str();
    sub->add_option("--psi", clone.psi,
                    "Species amplitudes, e.g. 0.6,0.8 or 0.5+0.5j,...");
    sub->add_flag("--random", clone.random,
                  "Draw the species state from the seeded "
                  "unitary-invariant ensemble");
    sub->add_option("--rejected", clone.rejected,
                    "Rejected-state family: shared, orthogonal, or random")
        ->check(CLI::IsMember({"shared", "orthogonal", "random"}))
        ->capture_default_str();
    sub->add_option("--ideal-r-index", clone.ideal_index,
                    "Rejected state the ideal-output overlap compares "
                    "against")
        ->capture_default_str();
    sub->callback([&, seed_opt, dim_opt]() {
      overrides();
      common.seed_given = seed_opt->count() > 0;
      rc = run_clone_demo(common, clone.dim, dim_opt->count() > 0, clone.psi,
                          clone.random, clone.rejected, clone.ideal_index);
    });
  }

  {
    CLI::App *sub = app.add_subcommand(
        "prob-clone",
        "Probabilistic replication of a nonorthogonal qubit pair");
    add_common(sub);
    const CLI::Option *seed_opt = add_seed(sub);
    sub->add_option("--s", prob.s, "Overlap magnitude in [0, 1)")->required();
    sub->add_option("--theta", prob.theta, "Overlap phase in radians")
        ->capture_default_str();
    sub->add_option("--trials", prob.trials,
                    "Monte Carlo probe measurements (0 disables sampling)")
        ->capture_default_str();
    sub->add_option("--which", prob.which, "Input sampled: 1 or 2")
        ->capture_default_str();
    sub->callback([&, seed_opt]() {
      overrides();
      common.seed_given = seed_opt->count() > 0;
      rc = run_prob_clone(common, prob.s, prob.theta, prob.trials,
                          prob.which);
    });
  }

  {
    CLI::App *sub = app.add_subcommand(
        "cull-demo", "Basis-culler fidelity gap and inverse recovery");
    add_common(sub);
    const CLI::Option *seed_opt = add_seed(sub);
    const CLI::Option *dim_opt =
        sub->add_option("--dim", cull.dim, "Species dimension")
            ->capture_default_str();
    sub->add_option("--psi", cull.psi, "Species amplitudes");
    sub->add_flag("--random", cull.random,
                  "Draw the species state from the seeded "
                  "unitary-invariant ensemble");
    sub->add_option("--blank", cull.blank,
                    "Blank-state family: shared, orthogonal, or random")
        ->check(CLI::IsMember({"shared", "orthogonal", "random"}))
        ->capture_default_str();
    sub->add_option("--ideal-blank-index", cull.ideal_index,
                    "Blank state the ideal-output overlap compares against")
        ->capture_default_str();
    sub->callback([&, seed_opt, dim_opt]() {
      overrides();
      common.seed_given = seed_opt->count() > 0;
      rc = run_cull_demo(common, cull.dim, dim_opt->count() > 0, cull.psi,
                         cull.random, cull.blank, cull.ideal_index);
    });
  }

  {
    CLI::App *sub = app.add_subcommand(
        "paradox-sweep",
        "Entangled-mutation overlap as the number of copies grows");
    add_common(sub);
    sub->add_option("--s2", paradox.s2, "Squared mutation overlap in [0, 1]")
        ->required();
    sub->add_option("--m-list", paradox.m_list,
                    "Comma-separated copy counts (strictly increasing)");
    sub->add_option("--m-max", paradox.m_max,
                    "Doubling sweep 1,2,4,... up to this bound")
        ->capture_default_str();
    sub->add_flag("--no-oracle", paradox.no_oracle,
                  "Skip the brute-force tensor-product check column");
    sub->callback([&]() {
      overrides();
      rc = run_paradox_sweep(common, paradox.s2, paradox.m_list,
                             paradox.m_max, paradox.no_oracle);
    });
  }

  {
    CLI::App *sub = app.add_subcommand(
        "check-entangling",
        "Consistency residual of mutation via entangling evolution");
    add_common(sub);
    const CLI::Option *seed_opt = add_seed(sub);
    sub->add_option("--mode", entangling.mode, "random or qubit-example")
        ->check(CLI::IsMember({"random", "qubit-example"}))
        ->capture_default_str();
    sub->add_option("--trials", entangling.trials,
                    "Seeded trials in random mode")
        ->capture_default_str();
    sub->add_option("--dim", entangling.dim, "State dimension in random mode")
        ->capture_default_str();
    sub->add_option("--threshold", entangling.threshold,
                    "Residual threshold for the summary fractions")
        ->capture_default_str();
    sub->add_option("--a", entangling.a,
                    "Qubit-example amplitude a (re+imj)");
    sub->add_option("--b", entangling.b,
                    "Qubit-example amplitude b (re+imj)");
    sub->callback([&, seed_opt]() {
      overrides();
      common.seed_given = seed_opt->count() > 0;
      rc = run_check_entangling(common, entangling.mode, entangling.trials,
                                entangling.dim, entangling.threshold,
                                entangling.a, entangling.b);
    });
  }

  {
    CLI::App *sub = app.add_subcommand(
        "jozsa-check",
        "Gram-matrix feasibility of state-dependent replication");
    add_common(sub);
    sub->add_option("--states-file", jozsa.path,
                    "JSON file with 'states' and 'ancillas' amplitude lists")
        ->required();
    sub->callback([&]() {
      overrides();
      rc = run_jozsa_check(common, jozsa.path);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ApiError &e) {
    std::fprintf(stderr, "error: %s [%s]\n", e.what(),
                 qsp_status_name(e.status));
    return qcli::exit_code_for(e.status);
  }
  return rc;
}
