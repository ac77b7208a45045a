#include "ncrat/fock_checks.h"

#include <algorithm>
#include <cmath>

#include "ncrat/error.h"
#include "ncrat/linalg.h"

namespace ncrat {

FockOperator commute(const FockOperator& x, const FockOperator& a) {
  return x * a - a * x;
}

FockOperator commutator(int i, const FockOperator& a) {
  return commute(build_operator(a.basis(), OperatorKind::kRAnnihilate, i), a);
}

std::vector<SparseVec> interior_columns(const FockOperator& c, int margin) {
  const int limit = c.basis().N() - margin - 1;
  if (margin < c.profile().up) {
    throw Error(ErrorKind::kMarginTooSmall,
                "margin " + std::to_string(margin) + " below up-shift " +
                    std::to_string(c.profile().up));
  }
  if (limit < 0) {
    throw Error(ErrorKind::kMarginTooSmall,
                "margin " + std::to_string(margin) + " leaves no interior at N=" +
                    std::to_string(c.basis().N()));
  }
  if (limit > c.exact_limit()) {
    throw Error(ErrorKind::kMarginTooSmall,
                "interior columns up to length " + std::to_string(limit) +
                    " are not truncation-exact (exact up to " +
                    std::to_string(c.exact_limit()) + ")");
  }
  std::vector<SparseVec> out;
  const FockIndex end = c.basis().offset(limit + 1);
  for (FockIndex j = 0; j < end; ++j) out.push_back(c.column(j));
  return out;
}

std::size_t span_rank(const std::vector<SparseVec>& vectors) {
  std::map<FockIndex, std::size_t> rows;
  std::vector<const SparseVec*> nonzero;
  for (const SparseVec& v : vectors) {
    if (v.empty()) continue;
    nonzero.push_back(&v);
    for (const auto& entry : v) rows.emplace(entry.first, 0);
  }
  if (nonzero.empty()) return 0;
  std::size_t r = 0;
  for (auto& [idx, pos] : rows) pos = r++;
  // Vectors as rows: rank is the same and rows are contiguous.
  QMatrix m(nonzero.size(), rows.size());
  for (std::size_t k = 0; k < nonzero.size(); ++k) {
    for (const auto& [idx, v] : *nonzero[k]) m(k, rows.at(idx)) = v;
  }
  return exact_rank(m);
}

std::size_t interior_rank(const FockOperator& c, int margin) {
  return span_rank(interior_columns(c, margin));
}

bool dual_system_check(int i, int j, int k, const FockBasis& basis) {
  if (k < 1 || k > basis.N() - 1) {
    throw Error(ErrorKind::kInvalidArgument, "dual system check needs 1 <= k <= N - 1");
  }
  auto u = [&](int n) {
    return chebyshev_operator(basis, Word(std::vector<int>(n, j)));
  };
  const FockOperator lhs = commutator(i, u(k));
  FockOperator rhs = FockOperator::zero(basis);
  if (i == j) {
    const FockOperator p = build_operator(basis, OperatorKind::kVacuumProjection);
    for (int l = 1; l <= k; ++l) rhs = rhs + u(l - 1) * (p * u(k - l));
  }
  const int limit = basis.N() - k - 1;
  if (limit > lhs.exact_limit() || limit > rhs.exact_limit()) {
    throw Error(ErrorKind::kMarginTooSmall, "dual system interior is not exact");
  }
  return lhs.equal_on_columns(rhs, limit);
}

bool action_formula_check(int i, const Word& v, const FockBasis& basis) {
  const int limit = basis.N() - 1 - static_cast<int>(v.size());
  if (limit < 0) {
    throw Error(ErrorKind::kWordTooLong, "action formula needs |v| <= N - 1");
  }
  const FockOperator c = commutator(i, chebyshev_operator(basis, v));
  if (limit > c.exact_limit()) {
    throw Error(ErrorKind::kMarginTooSmall, "action formula interior is not exact");
  }
  for (FockIndex j = 0; j < basis.offset(limit + 1); ++j) {
    const Word w = basis.word(j);
    SparseVec expected;
    if (auto q = right_quotient(v, concat(Word{i}, transpose(w)))) {
      expected.emplace(basis.index(*q), 1);
    }
    if (c.column(j) != expected) return false;
  }
  return true;
}

bool creation_antisymmetry_check(int i, const RationalExpr& a, const FockBasis& basis) {
  const int g = a.degree();
  const int limit = basis.N() - g - 1;
  if (limit < 0) {
    throw Error(ErrorKind::kMarginTooSmall, "degree leaves no interior");
  }
  const FockOperator op = expr_operator(a, basis, std::min(basis.N(), limit + 1));
  const FockOperator sum =
      commute(build_operator(basis, OperatorKind::kRCreate, i), op) +
      commute(build_operator(basis, OperatorKind::kRAnnihilate, i), op);
  if (limit > sum.exact_limit()) {
    throw Error(ErrorKind::kMarginTooSmall, "antisymmetry interior is not exact");
  }
  return sum.equal_on_columns(FockOperator::zero(basis), limit);
}

namespace {

// f r_i^* b with columns up to limit.
FockOperator sandwich(const RationalExpr& f, const RationalExpr& b, int i,
                      const FockBasis& basis, int limit) {
  const FockOperator right = expr_operator(b, basis, limit);
  const FockOperator middle =
      build_operator(basis, OperatorKind::kRAnnihilate, i) * right;
  const int f_limit = std::min(basis.N(), limit + middle.profile().up);
  return expr_operator(f, basis, f_limit) * middle;
}

std::size_t affiliated_rank_at(const RationalExpr& f, const RationalExpr& a,
                               const RationalExpr& b, const RationalExpr& g, int i,
                               const FockBasis& basis, int margin) {
  const int limit = basis.N() - margin - 1;
  if (limit < 0) throw Error(ErrorKind::kMarginTooSmall, "margin leaves no interior");
  const FockOperator x = sandwich(f, b, i, basis, limit) - sandwich(a, g, i, basis, limit);
  return interior_rank(x, std::max(margin, x.profile().up));
}

}  // namespace

AffiliatedRank affiliated_rank_check(const RationalExpr& f, const RationalExpr& a,
                                     const RationalExpr& b, const RationalExpr& g, int i,
                                     const FockBasis& basis) {
  AffiliatedRank out;
  out.margin = std::max(f.degree() + b.degree(), a.degree() + g.degree());
  out.rank = affiliated_rank_at(f, a, b, g, i, basis, out.margin);
  out.rank_next =
      affiliated_rank_at(f, a, b, g, i, FockBasis(basis.d(), basis.N() + 1), out.margin);
  out.stable = out.rank == out.rank_next;
  return out;
}

CommutatorRanks polynomial_commutator_ranks(const RationalExpr& a, const FockBasis& basis) {
  CommutatorRanks out;
  out.margin = a.degree();
  const int limit = basis.N() - out.margin - 1;
  if (limit < 0) throw Error(ErrorKind::kMarginTooSmall, "degree leaves no interior");
  const FockOperator op = expr_operator(a, basis, limit);
  std::vector<SparseVec> all;
  for (int i = 1; i <= basis.d(); ++i) {
    std::vector<SparseVec> cols = interior_columns(commutator(i, op), out.margin);
    out.ranks.push_back(span_rank(cols));
    all.insert(all.end(), cols.begin(), cols.end());
  }
  all.push_back(apply_to_vacuum(a, basis).entries);
  out.shift_span = span_rank(all);
  return out;
}

NumericCommutatorRanks action_commutator_ranks(const RationalExpr& a, const FockBasis& basis,
                                               int max_column_length, int max_row_length,
                                               double rel_tol) {
  if (max_column_length < 0 || max_row_length > basis.N() ||
      max_column_length > basis.N() - 1) {
    throw Error(ErrorKind::kInvalidArgument, "commutator window outside the truncation");
  }
  NumericCommutatorRanks out;
  out.max_column_length = max_column_length;
  out.max_row_length = max_row_length;
  const FockIndex cols = basis.offset(max_column_length + 1);
  const FockIndex rows = basis.offset(max_row_length + 1);
  // a e_w for every column word, shared by all letters.
  std::vector<SparseVec> images;
  for (FockIndex j = 0; j < cols; ++j) {
    images.push_back(apply_expr(a, basis, SparseVec{{j, Rational(1)}}));
  }
  // Singular values count against the size of a on the window, so a
  // commutator made of rounding noise has rank 0.
  double scale = 0.0;
  for (const SparseVec& image : images) {
    double norm2 = 0.0;
    for (const auto& [idx, v] : image) {
      if (idx < rows) norm2 += to_double(v) * to_double(v);
    }
    scale = std::max(scale, std::sqrt(norm2));
  }
  for (int i = 1; i <= basis.d(); ++i) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
    for (FockIndex j = 0; j < cols; ++j) {
      // r_i^* (a e_w)
      for (const auto& [idx, v] : images[j]) {
        auto stripped = basis.strip_back(i, idx);
        if (stripped && *stripped < rows) m(*stripped, j) += to_double(v);
      }
      // a (r_i^* e_w)
      if (auto stripped = basis.strip_back(i, j)) {
        for (const auto& [idx, v] : images[*stripped]) {
          if (idx < rows) m(idx, j) -= to_double(v);
        }
      }
    }
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
    const double threshold = rel_tol * std::max(scale, sv.size() > 0 ? sv(0) : 0.0);
    out.ranks.push_back(static_cast<std::size_t>((sv.array() > threshold).count()));
  }
  return out;
}

}  // namespace ncrat
