#include <gtest/gtest.h>

#include "ncrat/error.h"
#include "ncrat/expr.h"

using ncrat::parse_expr;
using ncrat::RationalExpr;

GTEST_TEST(ExprTest, ParsesGrammar) {
  const RationalExpr a = parse_expr("(5/2 - s1)^-1");
  EXPECT_TRUE(a.has_inverse());
  EXPECT_EQ(a.kind(), RationalExpr::Kind::kInverse);
  EXPECT_EQ(a.max_letter(), 1);

  const RationalExpr b = parse_expr("  s1*s2+ s2 * s1 - 3 ");
  EXPECT_FALSE(b.has_inverse());
  EXPECT_EQ(b.degree(), 2);
  EXPECT_EQ(b.max_letter(), 2);

  EXPECT_EQ(parse_expr("-s1").kind(), RationalExpr::Kind::kNegation);
  EXPECT_EQ(parse_expr("0.5").value(), ncrat::Rational(1, 2));
  EXPECT_EQ(parse_expr("s1*s1*s1 + 1").degree(), 3);
  EXPECT_EQ(parse_expr("7").degree(), 0);
  EXPECT_EQ(parse_expr("(1)^-1^-1").kind(), RationalExpr::Kind::kInverse);
}

GTEST_TEST(ExprTest, RejectsMalformed) {
  for (const char* bad : {"", "s", "s0", "(s1", "s1 +", "s1 ^ 2", "1/0", "s1)", "x1"}) {
    EXPECT_THROW(parse_expr(bad), ncrat::Error) << bad;
  }
  EXPECT_THROW(parse_expr("(2 - s1)^-1").degree(), ncrat::Error);
}

GTEST_TEST(ExprTest, OperatorsBuildTrees) {
  const RationalExpr s1 = RationalExpr::generator(1);
  const RationalExpr two = RationalExpr::constant(2);
  const RationalExpr e = (two - s1).inverse() * s1 + -s1;
  EXPECT_TRUE(e.has_inverse());
  EXPECT_EQ(e.max_letter(), 1);
  // to_string round-trips through the parser.
  EXPECT_EQ(parse_expr(e.to_string()).to_string(), e.to_string());
}
