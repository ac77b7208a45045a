#include <gtest/gtest.h>

#include "ncrat/error.h"
#include "ncrat/expr.h"
#include "ncrat/fock.h"
#include "ncrat/fock_checks.h"
#include "oracle.h"

using ncrat::FockBasis;
using ncrat::parse_expr;
using ncrat::Word;

namespace {

Word w(std::string_view text) { return ncrat::parse_word(text); }

// Rank of [r_i^*, a] on e_w for |w| <= max_len, on the full space.
std::size_t oracle_commutator_rank(const ncrat::RationalExpr& a, int i, int d, int max_len) {
  std::vector<oracle::Vec> cols;
  for (const auto& u : oracle::words(d, max_len)) {
    const oracle::Vec e = oracle::basis(u);
    oracle::Vec c = oracle::r_star(i, oracle::evaluate(a, e));
    oracle::add(c, -1, oracle::evaluate(a, oracle::r_star(i, e)));
    cols.push_back(c);
  }
  return oracle::rank(cols);
}

std::size_t oracle_shift_span(const ncrat::RationalExpr& a, int d, int max_len) {
  std::vector<oracle::Vec> cols{oracle::evaluate(a, oracle::basis({}))};
  for (int i = 1; i <= d; ++i) {
    for (const auto& u : oracle::words(d, max_len)) {
      const oracle::Vec e = oracle::basis(u);
      oracle::Vec c = oracle::r_star(i, oracle::evaluate(a, e));
      oracle::add(c, -1, oracle::evaluate(a, oracle::r_star(i, e)));
      cols.push_back(c);
    }
  }
  return oracle::rank(cols);
}

}  // namespace

GTEST_TEST(CommutatorTest, Examples) {
  const FockBasis b(2, 6);
  const auto s1 = ncrat::build_operator(b, ncrat::OperatorKind::kSemicircular, 1);
  EXPECT_EQ(ncrat::interior_rank(ncrat::commutator(1, s1), 1), 1u);
  EXPECT_EQ(ncrat::interior_rank(ncrat::commutator(2, s1), 1), 0u);
  const auto u2 = ncrat::chebyshev_operator(b, w("1 1"));
  EXPECT_EQ(ncrat::interior_rank(ncrat::commutator(1, u2), 2), 2u);
  EXPECT_THROW(ncrat::interior_rank(ncrat::commutator(1, u2), 0), ncrat::Error);
  EXPECT_THROW(ncrat::interior_rank(ncrat::commutator(1, u2), 6), ncrat::Error);
}

GTEST_TEST(CommutatorTest, ChebyshevCommutatorMatchesFullSpace) {
  const FockBasis b(2, 6);
  for (const Word& v : ncrat::enumerate_words(2, 3)) {
    for (int i = 1; i <= 2; ++i) {
      const auto c = ncrat::commutator(i, ncrat::chebyshev_operator(b, v));
      const int limit = b.N() - 1 - static_cast<int>(v.size());
      for (ncrat::FockIndex j = 0; j < b.offset(limit + 1); ++j) {
        const oracle::Vec e = oracle::basis(b.word(j).letters());
        oracle::Vec expected = oracle::r_star(i, oracle::chebyshev(v.letters(), e));
        oracle::add(expected, -1, oracle::chebyshev(v.letters(), oracle::r_star(i, e)));
        oracle::Vec got;
        for (const auto& [idx, x] : c.column(j)) got.emplace(b.word(idx).letters(), x);
        ASSERT_EQ(got, expected) << ncrat::display_word(v) << " i=" << i;
      }
    }
  }
}

GTEST_TEST(CommutatorTest, DualSystemAndActionFormula) {
  for (int d : {1, 2, 3}) {
    const FockBasis b(d, d == 3 ? 5 : 6);
    for (int i = 1; i <= d; ++i) {
      for (int j = 1; j <= d; ++j) {
        for (int k = 1; k <= b.N() - 1; ++k) ASSERT_TRUE(ncrat::dual_system_check(i, j, k, b));
      }
      EXPECT_THROW(ncrat::dual_system_check(i, i, 0, b), ncrat::Error);
      for (const Word& v : ncrat::enumerate_words(d, b.N() - 1)) {
        ASSERT_TRUE(ncrat::action_formula_check(i, v, b)) << ncrat::display_word(v);
      }
    }
    EXPECT_THROW(ncrat::action_formula_check(1, Word(std::vector<int>(b.N(), 1)), b),
                 ncrat::Error);
  }
}

GTEST_TEST(CommutatorTest, CreationAntisymmetry) {
  const FockBasis b(2, 6);
  for (const char* text : {"s1", "s1*s2 + s2*s1", "s1*s1*s2 - 3*s2", "2", "s2*s1*s2*s2"}) {
    for (int i = 1; i <= 2; ++i) ASSERT_TRUE(ncrat::creation_antisymmetry_check(i, parse_expr(text), b));
  }
}

GTEST_TEST(CommutatorTest, AffiliatedExamples) {
  const FockBasis b(2, 6);
  const auto one = parse_expr("1");
  const auto s1 = parse_expr("s1");
  const auto zero = ncrat::affiliated_rank_check(one, one, one, one, 1, b);
  EXPECT_EQ(zero.rank, 0u);
  EXPECT_TRUE(zero.stable);
  // s1 r_1^* - r_1^* s1 = -[r_1^*, s1].
  const auto rank_one = ncrat::affiliated_rank_check(s1, one, one, s1, 1, b);
  EXPECT_EQ(rank_one.rank, 1u);
  EXPECT_EQ(rank_one.rank_next, 1u);
  EXPECT_EQ(rank_one.margin, 1);
  EXPECT_EQ(ncrat::affiliated_rank_check(s1, one, one, s1, 2, b).rank, 0u);
}

GTEST_TEST(CommutatorTest, PolynomialRanksMatchFullSpace) {
  const int n = 6;
  const FockBasis b(2, n);
  for (const char* text : {"s1", "s1*s2 + s2*s1", "s1*s1*s2 - 3*s2", "s1*s2*s1 + s2", "4"}) {
    const auto a = parse_expr(text);
    const auto ranks = ncrat::polynomial_commutator_ranks(a, b);
    const int interior = n - a.degree() - 1;
    ASSERT_EQ(ranks.ranks.size(), 2u);
    for (int i = 1; i <= 2; ++i) {
      ASSERT_EQ(ranks.ranks[i - 1], oracle_commutator_rank(a, i, 2, interior)) << text;
    }
    ASSERT_EQ(ranks.shift_span, oracle_shift_span(a, 2, interior)) << text;
  }
  const auto sym = ncrat::polynomial_commutator_ranks(parse_expr("s1*s2 + s2*s1"), b);
  EXPECT_EQ(sym.ranks, (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(sym.shift_span, 4u);
}

GTEST_TEST(CommutatorTest, NumericRanksForInverses) {
  const FockBasis b(2, 24);
  const auto res = ncrat::action_commutator_ranks(parse_expr("(5/2 - s1)^-1"), b, 4, 12);
  EXPECT_EQ(res.ranks, (std::vector<std::size_t>{1, 0}));
  // Agrees with the exact count on polynomials.
  const FockBasis small(2, 8);
  const auto poly = ncrat::action_commutator_ranks(parse_expr("s1*s2 + s2*s1"), small, 3, 6);
  EXPECT_EQ(poly.ranks, (std::vector<std::size_t>{2, 2}));
}
