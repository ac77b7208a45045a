#include "ncrat/cli.h"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "ncrat/error.h"
#include "ncrat/expr.h"
#include "ncrat/fock.h"
#include "ncrat/fock_checks.h"
#include "ncrat/hankel.h"
#include "ncrat/realize.h"
#include "ncrat/wfa.h"

namespace ncrat {

namespace {

constexpr int kDefaultKmax = 4;
constexpr int kDefaultMmax = 40;
constexpr double kSeriesTol = 1e-8;
constexpr double kRealizeTol = 1e-6;

template <typename T>
const T& require(const std::optional<T>& value, const char* flag) {
  if (!value) throw Error(ErrorKind::kInvalidArgument, std::string("missing ") + flag);
  return *value;
}

int positive(std::optional<int> value, int fallback, const char* flag) {
  const int v = value.value_or(fallback);
  if (v < 0) throw Error(ErrorKind::kInvalidArgument, std::string(flag) + " must be >= 0");
  return v;
}

Json word_json(const Word& w) { return format_word(w); }

Json status(bool ok, const char* yes, const char* no) { return ok ? yes : no; }

JobResult finish(Json report, bool ok) {
  return JobResult{ok ? kExitCertified : kExitNegative, std::move(report)};
}

// ---------------------------------------------------------------- rank

JobResult run_rank(const JobSpec& job) {
  const SeriesTable z = series_from_json(read_json_file(require(job.series, "--series")));
  const int kmax = positive(job.kmax, kDefaultKmax, "--kmax");
  const RankCertificate cert =
      certify_finite_rank(z, kmax, job.numeric ? RankMode::kNumeric : RankMode::kExact,
                          job.rel_tol.value_or(kDefaultRelTol));
  Json report = certificate_to_json(cert);
  report["kmax"] = kmax;
  report["L"] = z.degree_bound();
  return finish(std::move(report), cert.stabilized);
}

// ---------------------------------------------------------------- minimize

JobResult run_minimize(const JobSpec& job) {
  const LinearRepresentation r =
      representation_from_json(read_json_file(require(job.rep, "--rep")));
  r.validate();
  const LinearRepresentation m = minimize(r);
  Json report{{"status", "minimized"},
              {"dim_in", r.dim()},
              {"dim_out", m.dim()},
              {"representation", representation_to_json(m)}};
  return finish(std::move(report), true);
}

// ---------------------------------------------------------------- learn

JobResult run_learn(const JobSpec& job) {
  const SeriesTable z = series_from_json(read_json_file(require(job.series, "--series")));
  const int k = positive(job.kmax, kDefaultKmax, "--kmax");
  const LearnResult learned = learn_from_hankel(z, k);
  if (const auto* fail = std::get_if<NotLowRank>(&learned)) {
    Json report{{"status", "not_low_rank"}, {"rank_k", fail->rank_k}, {"rank_k1", fail->rank_k1}};
    if (fail->mismatch) report["mismatch"] = word_json(*fail->mismatch);
    return finish(std::move(report), false);
  }
  const auto& r = std::get<LinearRepresentation>(learned);
  Json report{{"status", "learned"},
              {"k", k},
              {"dim", r.dim()},
              {"representation", representation_to_json(r)}};
  return finish(std::move(report), true);
}

// ---------------------------------------------------------------- realize

struct RealizeOutcome {
  Json report;
  bool ok = false;
};

// Neumann reconstruction of r against its own coefficients on |w| <= N.
RealizeOutcome realize_report(const LinearRepresentation& r, int n, int m_max, double tol,
                              bool direct = false) {
  const FockBasis basis(r.d, n);
  RealizeOutcome out;
  try {
    const ReconstructReport rec = neumann_reconstruct(r, basis, m_max, tol);
    double residual = 0.0;
    SeriesTable recovered(r.d, n);
    for (FockIndex idx = 0; idx < basis.dim(); ++idx) {
      const Word w = basis.word(idx);
      const double c = rec.coefficient(w);
      residual = std::max(residual, std::abs(c - to_double(eval(r, w))));
      if (c != 0.0) recovered.set(w, from_double(c));
    }
    out.ok = rec.converged && residual < tol;
    out.report = Json{{"status", status(out.ok, "converged", "not_converged")},
                      {"N", n},
                      {"m_max", m_max},
                      {"c_fit", rec.c_fit},
                      {"m_fit", rec.m_fit},
                      {"tail_bound", rec.tail_bound},
                      {"residual", residual},
                      {"level_norm_estimates", rec.level_norm_estimates},
                      {"coefficients", series_to_json(recovered)}};
    if (direct) {
      const std::map<FockIndex, double> solved = neumann_reconstruct_direct(r, basis);
      double gap = 0.0;
      for (FockIndex idx = 0; idx < basis.dim(); ++idx) {
        auto it = solved.find(idx);
        const double x = it == solved.end() ? 0.0 : it->second;
        gap = std::max(gap, std::abs(x - rec.coefficient(basis.word(idx))));
      }
      out.report["direct_max_difference"] = gap;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNotConverging) throw;
    out.report = Json{{"status", "not_converging"}, {"message", e.what()}};
  }
  return out;
}

JobResult run_realize(const JobSpec& job) {
  const LinearRepresentation input =
      representation_from_json(read_json_file(require(job.rep, "--rep")));
  input.validate();
  // Reconstruction runs on the minimal representation of the series.
  const LinearRepresentation r = minimize(input);
  RealizeOutcome out = realize_report(r, positive(job.N, 12, "--N"),
                                      positive(job.mmax, kDefaultMmax, "--mmax"),
                                      job.tol.value_or(kRealizeTol), job.direct);
  out.report["input_dim"] = input.dim();
  out.report["minimal_dim"] = r.dim();
  out.report["input_minimal"] = input.dim() == r.dim();
  return finish(std::move(out.report), out.ok);
}

// ---------------------------------------------------------------- fock-verify

JobResult run_fock_verify(const JobSpec& job) {
  const int d = positive(job.d, 2, "--d");
  const int n = positive(job.N, 6, "--N");
  const FockBasis basis(d, n);
  bool ok = true;

  std::size_t identity_failures = 0;
  for (const Word& v : enumerate_words(d, n)) {
    const FockVector e = FockVector::basis_vector(basis, v);
    if (chebyshev_operator(basis, v).apply(FockVector::basis_vector(basis, Word())).entries !=
        e.entries) {
      ++identity_failures;
    }
  }
  std::size_t dual_checked = 0, dual_failures = 0;
  for (int i = 1; i <= d; ++i) {
    for (int j = 1; j <= d; ++j) {
      for (int k = 1; k <= n - 1; ++k) {
        ++dual_checked;
        if (!dual_system_check(i, j, k, basis)) ++dual_failures;
      }
    }
  }
  std::size_t action_checked = 0, action_failures = 0;
  for (int i = 1; i <= d; ++i) {
    for (const Word& v : enumerate_words(d, n - 1)) {
      ++action_checked;
      if (!action_formula_check(i, v, basis)) ++action_failures;
    }
  }
  ok = identity_failures == 0 && dual_failures == 0 && action_failures == 0;
  Json report{{"d", d},
              {"N", n},
              {"chebyshev_identity", {{"checked", basis.dim()}, {"failures", identity_failures}}},
              {"dual_system", {{"checked", dual_checked}, {"failures", dual_failures}}},
              {"action_formula", {{"checked", action_checked}, {"failures", action_failures}}}};

  if (job.expr) {
    const RationalExpr a = parse_expr(*job.expr);
    if (a.has_inverse()) {
      throw Error(ErrorKind::kInvalidArgument, "fock-verify --expr takes a polynomial");
    }
    std::vector<bool> anti;
    for (int i = 1; i <= d; ++i) anti.push_back(creation_antisymmetry_check(i, a, basis));
    const CommutatorRanks at_n = polynomial_commutator_ranks(a, basis);
    const CommutatorRanks at_n1 = polynomial_commutator_ranks(a, FockBasis(d, n + 1));
    const bool stable = at_n.ranks == at_n1.ranks;
    const bool anti_ok = std::all_of(anti.begin(), anti.end(), [](bool b) { return b; });
    ok = ok && stable && anti_ok;
    report["expr"] = a.to_string();
    report["antisymmetry"] = anti;
    report["commutator_ranks"] = {{"N", at_n.ranks},
                                  {"N+1", at_n1.ranks},
                                  {"margin", at_n.margin},
                                  {"stable", stable},
                                  {"shift_span", at_n.shift_span}};
  }
  report["status"] = status(ok, "verified", "failed");
  return finish(std::move(report), ok);
}

// ---------------------------------------------------------------- kronecker1d

JobResult run_kronecker1d(const JobSpec& job) {
  const std::vector<Rational> coeffs =
      coefficients_from_json(read_json_file(require(job.coeffs, "--coeffs")));
  if (coeffs.empty()) throw Error(ErrorKind::kInsufficientData, "no coefficients");
  const ClassicalHankel h(coeffs);
  const ClassicalRationality cr = classical_rationality(coeffs);
  Json report{{"status", status(cr.recursion.has_value(), "rational", "full_rank")},
              {"rank", cr.rank},
              {"size", h.size()}};
  if (cr.recursion) {
    Json rec = Json::array();
    for (const Rational& x : *cr.recursion) rec.push_back(rational_to_json(x));
    report["recursion"] = std::move(rec);
    report["pole_moduli"] = cr.pole_moduli;
  }
  return finish(std::move(report), cr.recursion.has_value());
}

// ---------------------------------------------------------------- haagerup

JobResult run_haagerup(const JobSpec& job) {
  const SeriesTable z = series_from_json(read_json_file(require(job.series, "--series")));
  std::map<int, LevelFamily> levels;
  for (const auto& [v, a] : z.terms()) levels[static_cast<int>(v.size())][v] = to_double(a);
  bool ok = true;
  Json rows = Json::array();
  for (const auto& [m, family] : levels) {
    const int n = job.N ? std::max(*job.N, m) : m + 4;
    const FockBasis basis(z.d(), n);
    const HaagerupReport scalar = haagerup_check(family, basis);
    const HaagerupReport matrix = haagerup_matrix_check(family, basis);
    ok = ok && scalar.ok && matrix.ok;
    rows.push_back(Json{{"m", m},
                        {"N", n},
                        {"scalar", {{"lhs", scalar.lhs}, {"rhs", scalar.rhs}, {"ok", scalar.ok}}},
                        {"matrix", {{"lhs", matrix.lhs}, {"rhs", matrix.rhs}, {"ok", matrix.ok}}}});
  }
  Json report{{"status", status(ok, "bounded", "violated")}, {"levels", std::move(rows)}};
  return finish(std::move(report), ok);
}

// ---------------------------------------------------------------- pipeline

// Replaces each approximate coefficient by the simplest rational within the
// reported error bound.
SeriesTable snap(const SeriesTable& z, double bound) {
  SeriesTable out(z.d(), z.degree_bound());
  const Rational radius = from_double(bound);
  for (const auto& [v, a] : z.terms()) {
    out.set(v, simplest_rational_between(a - radius, a + radius));
  }
  return out;
}

JobResult run_pipeline(const JobSpec& job) {
  const RationalExpr a = parse_expr(require(job.expr, "--expr"));
  const int d = positive(job.d, std::max(1, a.max_letter()), "--d");
  const int n = positive(job.N, 12, "--N");
  const int kmax = positive(job.kmax, kDefaultKmax, "--kmax");
  const int L = positive(job.L, 2 * kmax + 2, "--L");
  const int m_max = positive(job.mmax, kDefaultMmax, "--mmax");
  const double series_tol = kSeriesTol;
  const double realize_tol = job.tol.value_or(kRealizeTol);
  const double rel_tol = job.rel_tol.value_or(kDefaultRelTol);

  Json report{{"expr", a.to_string()}, {"d", d}, {"N", n}, {"L", L}, {"kmax", kmax}};
  Json stages = Json::object();
  auto done = [&](bool ok) {
    report["stages"] = std::move(stages);
    report["status"] = status(ok, "certified", "not_certified");
    return finish(std::move(report), ok);
  };

  // Series.
  const SeriesResult series = expr_to_series(a, d, L, std::max(2 * L + 10, n), series_tol);
  const bool series_ok = series.exact || series.trusted;
  const SeriesTable z = series.exact ? series.series : snap(series.series, series.error_bound);
  stages["series"] = {{"ok", series_ok},
                      {"exact", series.exact},
                      {"working_n", series.working_n},
                      {"error_bound", series.error_bound},
                      {"trusted_degree", series.trusted_degree},
                      {"residual", series.residual},
                      {"table", series_to_json(z)}};
  if (!series_ok) return done(false);

  // Hankel certificate.
  const RankCertificate cert = certify_finite_rank(z, kmax);
  stages["hankel"] = certificate_to_json(cert);
  stages["hankel"]["ok"] = cert.stabilized;
  if (!cert.stabilized) return done(false);

  // Learned and minimized representation.
  const LearnResult learned = learn_from_hankel(z, cert.at_depth);
  if (const auto* fail = std::get_if<NotLowRank>(&learned)) {
    stages["learn"] = {{"ok", false}, {"rank_k", fail->rank_k}, {"rank_k1", fail->rank_k1}};
    if (fail->mismatch) stages["learn"]["mismatch"] = word_json(*fail->mismatch);
    return done(false);
  }
  const auto& rep = std::get<LinearRepresentation>(learned);
  const std::size_t minimal_dim = minimize(rep).dim();
  const bool learn_ok = rep.dim() == cert.rank && minimal_dim == rep.dim();
  stages["learn"] = {{"ok", learn_ok},
                     {"k", cert.at_depth},
                     {"dim", rep.dim()},
                     {"minimized_dim", minimal_dim},
                     {"representation", representation_to_json(rep)}};

  // Neumann reconstruction.
  RealizeOutcome realized = realize_report(rep, n, m_max, realize_tol);
  realized.report["ok"] = realized.ok;
  stages["realize"] = std::move(realized.report);

  // Commutator ranks.
  bool comm_ok = false;
  if (!a.has_inverse()) {
    const CommutatorRanks at_n = polynomial_commutator_ranks(a, FockBasis(d, n));
    const CommutatorRanks at_n1 = polynomial_commutator_ranks(a, FockBasis(d, n + 1));
    comm_ok = at_n.ranks == at_n1.ranks && at_n.shift_span == cert.rank;
    stages["commutators"] = {{"ok", comm_ok},
                             {"mode", "exact"},
                             {"ranks", at_n.ranks},
                             {"ranks_next", at_n1.ranks},
                             {"margin", at_n.margin},
                             {"shift_span", at_n.shift_span}};
  } else {
    const FockBasis basis(d, series.working_n);
    const int cols = std::min(4, series.working_n / 4);
    const int rows = series.working_n / 2;
    const NumericCommutatorRanks wide = action_commutator_ranks(a, basis, cols, rows, rel_tol);
    const NumericCommutatorRanks narrow =
        action_commutator_ranks(a, basis, cols - 1, rows, rel_tol);
    comm_ok = wide.ranks == narrow.ranks;
    stages["commutators"] = {{"ok", comm_ok},
                             {"mode", "numeric"},
                             {"ranks", wide.ranks},
                             {"ranks_fewer_columns", narrow.ranks},
                             {"max_column_length", cols},
                             {"max_row_length", rows}};
  }
  return done(series_ok && cert.stabilized && learn_ok && realized.ok && comm_ok);
}

}  // namespace

JobResult execute(const JobSpec& job) {
  try {
    if (job.command == "rank") return run_rank(job);
    if (job.command == "minimize") return run_minimize(job);
    if (job.command == "learn") return run_learn(job);
    if (job.command == "realize") return run_realize(job);
    if (job.command == "fock-verify") return run_fock_verify(job);
    if (job.command == "kronecker1d") return run_kronecker1d(job);
    if (job.command == "haagerup") return run_haagerup(job);
    if (job.command == "pipeline") return run_pipeline(job);
    throw Error(ErrorKind::kInvalidArgument, "unknown command \"" + job.command + "\"");
  } catch (const Error& e) {
    return JobResult{kExitError, Json{{"status", "error"},
                                      {"command", job.command},
                                      {"error", std::string(to_string(e.kind()))},
                                      {"message", e.what()}}};
  } catch (const std::exception& e) {
    return JobResult{kExitError, Json{{"status", "error"},
                                      {"command", job.command},
                                      {"error", "Internal"},
                                      {"message", e.what()}}};
  }
}

int run(const JobSpec& job) {
  JobResult result = execute(job);
  if (job.out) {
    try {
      write_json_file(*job.out, result.report);
    } catch (const Error& e) {
      std::cerr << e.what() << '\n';
      return kExitError;
    }
  } else {
    std::cout << result.report.dump(2) << '\n';
  }
  if (result.exit_code == kExitError) {
    std::cerr << result.report.value("message", std::string("error")) << '\n';
  }
  return result.exit_code;
}

}  // namespace ncrat
