#pragma once

#include <Eigen/SparseCore>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ncrat/expr.h"
#include "ncrat/rational.h"
#include "ncrat/series.h"
#include "ncrat/word.h"

namespace ncrat {

using FockIndex = std::int64_t;

/// Words of length <= N over {1..d}, indexed in length-lex order:
/// index(v) = offset(|v|) + sum_p (v_p - 1) d^{|v| - 1 - p}.
class FockBasis {
 public:
  FockBasis(int d, int N);

  int d() const { return d_; }
  int N() const { return n_; }
  FockIndex dim() const { return offset_[n_ + 1]; }

  /// Number of words of length < len.
  FockIndex offset(int len) const { return offset_[len]; }

  /// Throws WordTooLong when |v| > N and AlphabetMismatch on bad letters.
  FockIndex index(const Word& v) const;
  Word word(FockIndex idx) const;
  int length(FockIndex idx) const;

  /// Index of i v, or nullopt when the result is longer than N.
  std::optional<FockIndex> prepend(int i, FockIndex idx) const;
  std::optional<FockIndex> append(int i, FockIndex idx) const;
  /// Index of v with a leading (trailing) i removed, or nullopt (Zero).
  std::optional<FockIndex> strip_front(int i, FockIndex idx) const;
  std::optional<FockIndex> strip_back(int i, FockIndex idx) const;

  friend bool operator==(const FockBasis& a, const FockBasis& b) {
    return a.d_ == b.d_ && a.n_ == b.n_;
  }

 private:
  int d_;
  int n_;
  std::vector<FockIndex> pow_;     // d^k
  std::vector<FockIndex> offset_;  // offset_[len], len = 0..N+1
};

/// Sparse exact vector keyed by basis index; zeros are never stored.
using SparseVec = std::map<FockIndex, Rational>;

void add_scaled(SparseVec& acc, const Rational& c, const SparseVec& x);

struct FockVector {
  FockBasis basis;
  SparseVec entries;

  Rational coefficient(const Word& v) const;
  static FockVector basis_vector(const FockBasis& basis, const Word& v);
  /// Coefficients of words up to degree_bound (clamped to N) as a series.
  SeriesTable to_series(int degree_bound) const;
};

/// Length change bounds: a nonzero entry (u, v) has -down <= |u| - |v| <= up.
struct ShiftProfile {
  int up = 0;
  int down = 0;
};

/// Sparse operator on the truncated Fock space, stored by columns.
///
/// Only columns of words with length <= column_limit are stored. Columns of
/// length <= exact_limit equal the compression P_N X P_N of the operator on
/// the full space; longer stored columns may carry truncation artifacts.
class FockOperator {
 public:
  FockOperator(const FockBasis& basis, ShiftProfile profile, int column_limit,
               int exact_limit);

  static FockOperator identity(const FockBasis& basis);
  static FockOperator zero(const FockBasis& basis);

  const FockBasis& basis() const { return basis_; }
  ShiftProfile profile() const { return profile_; }
  int column_limit() const { return column_limit_; }
  int exact_limit() const { return exact_limit_; }
  /// Number of stored columns.
  FockIndex num_columns() const;

  const SparseVec& column(FockIndex j) const;
  void set_column(FockIndex j, SparseVec col);
  Rational entry(FockIndex row, FockIndex col) const;

  /// Throws InvalidArgument when x has support beyond the stored columns.
  SparseVec apply(const SparseVec& x) const;
  FockVector apply(const FockVector& x) const;

  /// Same operator with fewer stored columns.
  FockOperator restricted(int column_limit) const;
  FockOperator transpose() const;

  friend FockOperator operator+(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator-(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator*(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator*(const Rational& c, const FockOperator& a);

  /// Exact equality of the stored columns of length <= limit.
  bool equal_on_columns(const FockOperator& other, int limit) const;

  /// Stored columns as a double matrix (dim x dim).
  Eigen::SparseMatrix<double> to_eigen() const;

 private:
  FockBasis basis_;
  ShiftProfile profile_;
  int column_limit_;
  int exact_limit_;
  std::vector<SparseVec> columns_;
};

enum class OperatorKind {
  kLCreate,
  kLAnnihilate,
  kRCreate,
  kRAnnihilate,
  kSemicircular,
  kVacuumProjection,
};

/// Word action of l_i, l_i^*, r_i, r_i^*, s_i = l_i + l_i^* or P_Ω. Creation
/// drops images longer than N. column_limit defaults to N.
FockOperator build_operator(const FockBasis& basis, OperatorKind kind, int letter = 0,
                            std::optional<int> column_limit = std::nullopt);

/// U_v through the sum sum_k l_{v_1..v_k} l^*_{v_{k+1}..v_m}: the exact
/// compression. Throws WordTooLong when |v| > N.
FockOperator chebyshev_operator(const FockBasis& basis, const Word& v);

/// Row indices of the nonzero entries (all equal to 1) of column j of the
/// compressed U_v, one per surviving term of the sum formula.
std::vector<FockIndex> chebyshev_column(const FockBasis& basis, const Word& v, FockIndex j);

/// U_v as the product U_{k_1}(s_{i_1}) ... U_{k_n}(s_{i_n}) of truncated
/// matrices, each built from U_{n+1} = s U_n - U_{n-1}. Agrees with
/// chebyshev_operator on columns of length <= N - |v|.
FockOperator chebyshev_operator_by_products(const FockBasis& basis, const Word& v);

/// Matrix of an inverse-free expression with columns up to column_limit
/// (default N). Throws InvalidArgument for expressions with inverses.
FockOperator expr_operator(const RationalExpr& expr, const FockBasis& basis,
                           std::optional<int> column_limit = std::nullopt);

/// expr Ω for an inverse-free expression. Exact; entries of degree
/// <= N - deg are independent of N. Throws DegreeTooHigh when deg > N.
FockVector apply_to_vacuum(const RationalExpr& expr, const FockBasis& basis);

struct SolveReport {
  FockVector vector;
  /// Sizes of the exact systems solved, one per inverse evaluation.
  std::vector<std::size_t> system_sizes;
  /// Largest max-norm residual of the solved systems operand * y = rhs,
  /// computed in exact arithmetic and then rounded.
  double residual = 0.0;
};

/// expr x with every generator replaced by its compression P_N s_i P_N, so
/// the expression is evaluated in the matrix algebra of the truncation. Each
/// inverse solves A y = b exactly on the smallest coordinate set that holds
/// the support of b and that A maps into itself. Throws NotInvertible when
/// that system is singular (the truncated operand is then singular too).
SparseVec apply_expr(const RationalExpr& expr, const FockBasis& basis, const SparseVec& x);

/// expr Ω with a residual report.
SolveReport solve_on_vacuum(const RationalExpr& expr, const FockBasis& basis);

/// Entry (Ω, Ω).
Rational vacuum_expectation(const FockOperator& a);

struct SeriesResult {
  SeriesTable series;
  bool exact = true;
  /// Uniform bound on coefficient errors up to degree L (0 when exact).
  double error_bound = 0.0;
  /// Truncation used for the evaluation.
  int working_n = 0;
  /// Largest degree whose coefficients are within tol; L when exact.
  int trusted_degree = 0;
  bool trusted = true;
  double residual = 0.0;
};

/// Chebyshev coefficients of expr Ω up to degree L. Inverse-free trees are
/// evaluated exactly at N = max(L, deg). Otherwise the truncated solve at
/// working_n (default 2L + 10, at least 8) carries the bound M c^{N - L}, with
/// (M, c) fitted to the level sums of the computed vector up to N / 2.
SeriesResult expr_to_series(const RationalExpr& expr, int d, int L,
                            std::optional<int> working_n = std::nullopt,
                            double tol = 1e-8);

}  // namespace ncrat
