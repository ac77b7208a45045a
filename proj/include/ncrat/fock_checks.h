#pragma once

#include <cstddef>
#include <vector>

#include "ncrat/expr.h"
#include "ncrat/fock.h"
#include "ncrat/hankel.h"

namespace ncrat {

/// x a - a x. Column limits and exactness follow the product rules.
FockOperator commute(const FockOperator& x, const FockOperator& a);

/// [r_i^*, a] = r_i^* a - a r_i^*.
FockOperator commutator(int i, const FockOperator& a);

/// Stored columns of c for words of length <= N - margin - 1. Throws
/// MarginTooSmall when margin is below the up-shift of c, when no column
/// remains, or when those columns are not truncation-exact.
std::vector<SparseVec> interior_columns(const FockOperator& c, int margin);

/// Exact rank of c restricted to the interior columns.
std::size_t interior_rank(const FockOperator& c, int margin);

/// Exact rank of a set of sparse vectors.
std::size_t span_rank(const std::vector<SparseVec>& vectors);

/// [r_i^*, U_k(s_j)] against delta_ij sum_{l=1}^{k} U_{l-1}(s_j) P_Ω U_{k-l}(s_j)
/// on columns of length <= N - k - 1.
bool dual_system_check(int i, int j, int k, const FockBasis& basis);

/// [r_i^*, U_v] e_w = e_{v (i w^t)^{-1}} (zero when the quotient is Zero) for
/// every w with |v| + |w| <= N - 1.
bool action_formula_check(int i, const Word& v, const FockBasis& basis);

/// [r_i, a] + [r_i^*, a] vanishes on columns of length <= N - deg(a) - 1.
bool creation_antisymmetry_check(int i, const RationalExpr& a, const FockBasis& basis);

struct AffiliatedRank {
  std::size_t rank = 0;       // at N
  std::size_t rank_next = 0;  // at N + 1
  bool stable = false;
  int margin = 0;
};

/// Interior rank of f r_i^* b - a r_i^* g for polynomials f, a, b, g with
/// margin max(deg f + deg b, deg a + deg g), at N and N + 1.
AffiliatedRank affiliated_rank_check(const RationalExpr& f, const RationalExpr& a,
                                     const RationalExpr& b, const RationalExpr& g, int i,
                                     const FockBasis& basis);

struct CommutatorRanks {
  /// Interior rank of [r_i^*, a] for i = 1..d.
  std::vector<std::size_t> ranks;
  /// Rank of the union of all interior commutator columns and aΩ: the
  /// dimension of the span of all right shifts of the series of a.
  std::size_t shift_span = 0;
  int margin = 0;
};

/// Exact commutator ranks of a polynomial with margin deg(a).
CommutatorRanks polynomial_commutator_ranks(const RationalExpr& a, const FockBasis& basis);

struct NumericCommutatorRanks {
  std::vector<std::size_t> ranks;
  int max_column_length = 0;
  int max_row_length = 0;
};

/// Ranks of [r_i^*, a] for any expression through its action on basis
/// vectors e_w, |w| <= max_column_length, evaluated at the truncation of
/// basis. Rows are cut at max_row_length. Singular values count when they
/// exceed rel_tol times the larger of the top singular value and the largest
/// column norm of a on the window.
NumericCommutatorRanks action_commutator_ranks(const RationalExpr& a, const FockBasis& basis,
                                               int max_column_length, int max_row_length,
                                               double rel_tol = kDefaultRelTol);

}  // namespace ncrat
