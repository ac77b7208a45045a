#include <gtest/gtest.h>

#include <random>

#include "ncrat/error.h"
#include "ncrat/word.h"
#include "oracle.h"

using ncrat::Word;

namespace {

Word w(std::string_view text) { return ncrat::parse_word(text); }

}  // namespace

GTEST_TEST(WordTest, ConcatExamples) {
  EXPECT_EQ(ncrat::concat(Word(), w("1")), w("1"));
  EXPECT_EQ(ncrat::concat(w("1 2"), w("2")), w("1 2 2"));
  EXPECT_EQ(ncrat::concat(w("1"), w("2 1")), w("1 2 1"));
}

GTEST_TEST(WordTest, RightQuotientExamples) {
  EXPECT_EQ(ncrat::right_quotient(w("1 2"), w("2")), w("1"));
  EXPECT_EQ(ncrat::right_quotient(w("1 2"), w("1")), std::nullopt);
  EXPECT_EQ(ncrat::right_quotient(Word(), Word()), Word());
}

GTEST_TEST(WordTest, LeftQuotientExamples) {
  EXPECT_EQ(ncrat::left_quotient(w("1"), w("1 2")), w("2"));
  EXPECT_EQ(ncrat::left_quotient(w("2"), w("1 2")), std::nullopt);
  EXPECT_EQ(ncrat::left_quotient(Word(), w("2 1")), w("2 1"));
}

GTEST_TEST(WordTest, TransposeExamples) {
  EXPECT_EQ(ncrat::transpose(w("1 1 2")), w("2 1 1"));
  EXPECT_EQ(ncrat::transpose(Word()), Word());
  EXPECT_EQ(ncrat::transpose(w("1")), w("1"));
}

GTEST_TEST(WordTest, EnumerateExamples) {
  EXPECT_EQ(ncrat::enumerate_words(2, 1), (std::vector<Word>{Word(), w("1"), w("2")}));
  EXPECT_EQ(ncrat::enumerate_words(2, 2).size(), 7u);
  EXPECT_EQ(ncrat::enumerate_words(1, 3),
            (std::vector<Word>{Word(), w("1"), w("1 1"), w("1 1 1")}));
}

GTEST_TEST(WordTest, EnumerationMatchesOracleOrderAndCount) {
  for (int d = 1; d <= 3; ++d) {
    for (int n = 0; n <= 5; ++n) {
      const auto words = ncrat::enumerate_words(d, n);
      const auto expected = oracle::words(d, n);
      ASSERT_EQ(words.size(), expected.size());
      ASSERT_EQ(words.size(), ncrat::count_words(d, n));
      // Oracle lists each length in lex order, shortest first.
      for (std::size_t k = 0; k < words.size(); ++k) {
        EXPECT_EQ(words[k].letters(), expected[k]);
      }
      EXPECT_TRUE(std::is_sorted(words.begin(), words.end()));
    }
  }
}

GTEST_TEST(WordTest, QuotientConcatConsistencyExhaustive) {
  const auto words = ncrat::enumerate_words(2, 6);
  std::mt19937 rng(11);
  // Every pair with |u| + |w| <= 6.
  for (const Word& u : words) {
    for (const Word& v : words) {
      if (u.size() + v.size() > 6) continue;
      const Word uv = ncrat::concat(u, v);
      ASSERT_EQ(ncrat::right_quotient(uv, v), u);
      ASSERT_EQ(ncrat::left_quotient(u, uv), v);
      ASSERT_EQ(ncrat::transpose(uv), ncrat::concat(ncrat::transpose(v), ncrat::transpose(u)));
    }
  }
}

GTEST_TEST(WordTest, TransposeIsInvolution) {
  for (const Word& u : ncrat::enumerate_words(3, 4)) {
    EXPECT_EQ(ncrat::transpose(ncrat::transpose(u)), u);
  }
}

GTEST_TEST(WordTest, ZeroIsAbsorbing) {
  const ncrat::QuotientResult zero = std::nullopt;
  for (const Word& u : ncrat::enumerate_words(2, 3)) {
    EXPECT_EQ(ncrat::right_quotient(zero, u), std::nullopt);
    EXPECT_EQ(ncrat::left_quotient(u, zero), std::nullopt);
  }
}

GTEST_TEST(WordTest, RunsAndText) {
  const Word v = w("1 1 2 1 1 1");
  EXPECT_EQ(v.runs(), (std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {1, 3}}));
  EXPECT_EQ(ncrat::format_word(v), "1 1 2 1 1 1");
  EXPECT_EQ(ncrat::format_word(Word()), "");
  EXPECT_EQ(ncrat::display_word(Word()), "Ω");
  EXPECT_EQ(w("  12 3 "), (Word{12, 3}));
  EXPECT_THROW(w("1 x"), ncrat::Error);
  EXPECT_THROW(w("0"), ncrat::Error);
}

GTEST_TEST(WordTest, LengthLexOrder) {
  EXPECT_LT(w("2"), w("1 1"));
  EXPECT_LT(w("1 2"), w("2 1"));
  EXPECT_LT(Word(), w("1"));
}
