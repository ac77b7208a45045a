#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ncrat/cli.h"

int main(int argc, char** argv) {
  CLI::App app{"ncrat: rationality certificates for operators in free semicirculars"};
  app.require_subcommand(1);

  ncrat::JobSpec job;
  std::string series, rep, coeffs, out;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--series", series, "Series table (JSON)");
    sub->add_option("--rep", rep, "Linear representation (JSON)");
    sub->add_option("--coeffs", coeffs, "One-variable coefficients (JSON)");
    sub->add_option("--expr", job.expr, "Rational expression, e.g. \"(5/2 - s1)^-1\"");
    sub->add_option("--d", job.d, "Alphabet size");
    sub->add_option("--N", job.N, "Fock truncation length");
    sub->add_option("--L", job.L, "Series degree bound");
    sub->add_option("--kmax", job.kmax, "Largest Hankel depth");
    sub->add_option("--mmax", job.mmax, "Neumann partial-sum length");
    sub->add_option("--tol", job.tol, "Absolute tolerance");
    sub->add_option("--rel-tol", job.rel_tol, "Relative SVD tolerance");
    sub->add_flag("--numeric", job.numeric, "Numeric Hankel ranks");
    sub->add_flag("--direct", job.direct, "Cross-check realize with a sparse LU solve");
    sub->add_option("--out", out, "Report path (stdout when omitted)");
  };

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"rank", "Certify finite Hankel rank of a series"},
      {"minimize", "Minimize a linear representation"},
      {"learn", "Learn a representation from Hankel data"},
      {"realize", "Neumann reconstruction of a representation on the Fock space"},
      {"fock-verify", "Check the Fock-space identities at one truncation"},
      {"kronecker1d", "Classical Hankel rank, recursion and poles"},
      {"haagerup", "Haagerup bounds on the levels of a series"},
      {"pipeline", "Expression to series, certificate, realization and commutators"},
  };
  for (const auto& [name, help] : commands) {
    add_common(app.add_subcommand(name, help));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ncrat::kExitError;
  }

  job.command = app.get_subcommands().front()->get_name();
  if (!series.empty()) job.series = series;
  if (!rep.empty()) job.rep = rep;
  if (!coeffs.empty()) job.coeffs = coeffs;
  if (!out.empty()) job.out = out;
  return ncrat::run(job);
}
