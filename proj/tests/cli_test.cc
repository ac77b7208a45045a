#include <gtest/gtest.h>

#include <filesystem>

#include "ncrat/cli.h"
#include "ncrat/io.h"

using ncrat::JobSpec;

namespace {

const std::filesystem::path kData = NCRAT_DATA_DIR;

JobSpec job(std::string command) {
  JobSpec j;
  j.command = std::move(command);
  return j;
}

}  // namespace

GTEST_TEST(CliTest, RankOnResolvent) {
  JobSpec j = job("rank");
  j.series = kData / "resolvent.json";
  j.kmax = 4;
  const auto r = ncrat::execute(j);
  EXPECT_EQ(r.exit_code, ncrat::kExitCertified);
  EXPECT_EQ(r.report["status"], "stabilized");
  EXPECT_EQ(r.report["rank"], 1);
  EXPECT_EQ(r.report["at_depth"], 1);
}

GTEST_TEST(CliTest, RankOnGrowingSeriesIsNegative) {
  // d = 1 table of 1/n!, too short to stabilize.
  const auto tmp = std::filesystem::temp_directory_path() / "ncrat_cli_growing.json";
  ncrat::SeriesTable z(1, 10);
  ncrat::Rational f = 1;
  for (int n = 0; n <= 10; ++n) {
    if (n > 1) f /= n;
    z.set(ncrat::Word(std::vector<int>(n, 1)), f);
  }
  ncrat::write_json_file(tmp, ncrat::series_to_json(z));
  JobSpec j = job("rank");
  j.series = tmp;
  j.kmax = 4;
  const auto r = ncrat::execute(j);
  std::filesystem::remove(tmp);
  EXPECT_EQ(r.exit_code, ncrat::kExitNegative);
  EXPECT_EQ(r.report["status"], "growing");
}

GTEST_TEST(CliTest, LearnAndMinimize) {
  JobSpec learn = job("learn");
  learn.series = kData / "resolvent.json";
  learn.kmax = 4;
  const auto l = ncrat::execute(learn);
  EXPECT_EQ(l.exit_code, 0);
  EXPECT_EQ(l.report["dim"], 1);

  JobSpec min = job("minimize");
  min.rep = kData / "word_length.json";
  const auto m = ncrat::execute(min);
  EXPECT_EQ(m.exit_code, 0);
  EXPECT_EQ(m.report["dim_in"], 2);
  EXPECT_EQ(m.report["dim_out"], 2);
}

GTEST_TEST(CliTest, RealizeOutcomes) {
  JobSpec good = job("realize");
  good.rep = kData / "resolvent_rep.json";
  good.direct = true;
  const auto g = ncrat::execute(good);
  EXPECT_EQ(g.exit_code, 0);
  EXPECT_EQ(g.report["status"], "converged");
  EXPECT_LT(g.report["residual"].get<double>(), 1e-6);
  EXPECT_LT(g.report["c_fit"].get<double>(), 0.6);
  EXPECT_TRUE(g.report.contains("direct_max_difference"));

  // alpha grows with the word length: no convergence.
  JobSpec bad = job("realize");
  bad.rep = kData / "word_length.json";
  const auto b = ncrat::execute(bad);
  EXPECT_EQ(b.exit_code, ncrat::kExitNegative);
  EXPECT_EQ(b.report["status"], "not_converging");
}

GTEST_TEST(CliTest, Kronecker1d) {
  JobSpec ones = job("kronecker1d");
  ones.coeffs = kData / "ones.json";
  const auto o = ncrat::execute(ones);
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.report["rank"], 1);
  EXPECT_NEAR(o.report["pole_moduli"][0].get<double>(), 1.0, 1e-12);

  JobSpec fact = job("kronecker1d");
  fact.coeffs = kData / "inverse_factorials.json";
  const auto f = ncrat::execute(fact);
  EXPECT_EQ(f.exit_code, ncrat::kExitNegative);
  EXPECT_EQ(f.report["status"], "full_rank");
}

GTEST_TEST(CliTest, FockVerifyAndHaagerup) {
  JobSpec fv = job("fock-verify");
  fv.d = 2;
  fv.N = 5;
  fv.expr = "s1*s2 + s2*s1";
  const auto v = ncrat::execute(fv);
  EXPECT_EQ(v.exit_code, 0);
  EXPECT_EQ(v.report["status"], "verified");
  EXPECT_EQ(v.report["commutator_ranks"]["shift_span"], 4);

  JobSpec h = job("haagerup");
  h.series = kData / "resolvent.json";
  const auto hr = ncrat::execute(h);
  EXPECT_EQ(hr.exit_code, 0);
  EXPECT_EQ(hr.report["status"], "bounded");
  EXPECT_EQ(hr.report["levels"].size(), 11u);
}

GTEST_TEST(CliTest, Pipeline) {
  JobSpec p = job("pipeline");
  p.expr = "(5/2 - s1)^-1";
  p.d = 2;
  p.N = 12;
  const auto r = ncrat::execute(p);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.report["status"], "certified");

  JobSpec poly = job("pipeline");
  poly.expr = "s1*s1*s2 - 3*s2";
  poly.d = 2;
  const auto pr = ncrat::execute(poly);
  EXPECT_EQ(pr.exit_code, 0);
  EXPECT_EQ(pr.report["stages"]["hankel"]["rank"], 4);
}

GTEST_TEST(CliTest, ErrorsBecomeReports) {
  JobSpec missing = job("rank");
  missing.series = kData / "no_such_file.json";
  const auto m = ncrat::execute(missing);
  EXPECT_EQ(m.exit_code, ncrat::kExitError);
  EXPECT_EQ(m.report["status"], "error");

  JobSpec singular = job("pipeline");
  singular.expr = "(s1)^-1";
  singular.d = 2;
  const auto s = ncrat::execute(singular);
  EXPECT_EQ(s.exit_code, ncrat::kExitError);
  EXPECT_EQ(s.report["error"], "NotInvertible");

  JobSpec parse = job("pipeline");
  parse.expr = "s1 +";
  EXPECT_EQ(ncrat::execute(parse).report["error"], "ParseError");

  EXPECT_EQ(ncrat::execute(job("bogus")).exit_code, ncrat::kExitError);
}
