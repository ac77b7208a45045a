#include "ncrat/fock.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_map>

#include "ncrat/error.h"
#include "ncrat/linalg.h"

namespace ncrat {

FockBasis::FockBasis(int d, int N) : d_(d), n_(N) {
  if (d < 1) throw Error(ErrorKind::kInvalidArgument, "alphabet size must be >= 1");
  if (N < 0) throw Error(ErrorKind::kInvalidArgument, "truncation must be >= 0");
  constexpr FockIndex kMax = std::numeric_limits<FockIndex>::max() / 4;
  pow_.push_back(1);
  offset_.push_back(0);
  for (int len = 0; len <= N; ++len) {
    if (pow_[len] > kMax / d || offset_[len] > kMax - pow_[len]) {
      throw Error(ErrorKind::kInvalidArgument,
                  "Fock space with d=" + std::to_string(d) + ", N=" + std::to_string(N) +
                      " is too large to index");
    }
    offset_.push_back(offset_[len] + pow_[len]);
    pow_.push_back(pow_[len] * d);
  }
}

FockIndex FockBasis::index(const Word& v) const {
  if (static_cast<int>(v.size()) > n_) {
    throw Error(ErrorKind::kWordTooLong, "word '" + format_word(v) +
                                             "' longer than N=" + std::to_string(n_));
  }
  if (!word_in_alphabet(v, d_)) {
    throw Error(ErrorKind::kAlphabetMismatch, "word '" + format_word(v) +
                                                  "' outside alphabet of size " +
                                                  std::to_string(d_));
  }
  FockIndex rem = 0;
  for (int a : v.letters()) rem = rem * d_ + (a - 1);
  return offset_[v.size()] + rem;
}

int FockBasis::length(FockIndex idx) const {
  if (idx < 0 || idx >= dim()) {
    throw Error(ErrorKind::kInvalidArgument, "Fock index out of range");
  }
  auto it = std::upper_bound(offset_.begin(), offset_.end(), idx);
  return static_cast<int>(it - offset_.begin()) - 1;
}

Word FockBasis::word(FockIndex idx) const {
  const int len = length(idx);
  FockIndex rem = idx - offset_[len];
  std::vector<int> letters(len);
  for (int p = len - 1; p >= 0; --p) {
    letters[p] = static_cast<int>(rem % d_) + 1;
    rem /= d_;
  }
  return Word(std::move(letters));
}

std::optional<FockIndex> FockBasis::prepend(int i, FockIndex idx) const {
  const int len = length(idx);
  if (len == n_) return std::nullopt;
  return offset_[len + 1] + (i - 1) * pow_[len] + (idx - offset_[len]);
}

std::optional<FockIndex> FockBasis::append(int i, FockIndex idx) const {
  const int len = length(idx);
  if (len == n_) return std::nullopt;
  return offset_[len + 1] + (idx - offset_[len]) * d_ + (i - 1);
}

std::optional<FockIndex> FockBasis::strip_front(int i, FockIndex idx) const {
  const int len = length(idx);
  if (len == 0) return std::nullopt;
  const FockIndex rem = idx - offset_[len];
  if (rem / pow_[len - 1] + 1 != i) return std::nullopt;
  return offset_[len - 1] + rem % pow_[len - 1];
}

std::optional<FockIndex> FockBasis::strip_back(int i, FockIndex idx) const {
  const int len = length(idx);
  if (len == 0) return std::nullopt;
  const FockIndex rem = idx - offset_[len];
  if (rem % d_ + 1 != i) return std::nullopt;
  return offset_[len - 1] + rem / d_;
}

void add_scaled(SparseVec& acc, const Rational& c, const SparseVec& x) {
  if (c == 0) return;
  for (const auto& [j, v] : x) {
    auto [it, inserted] = acc.try_emplace(j, c * v);
    if (!inserted) {
      it->second += c * v;
      if (it->second == 0) acc.erase(it);
    }
  }
}

Rational FockVector::coefficient(const Word& v) const {
  auto it = entries.find(basis.index(v));
  return it == entries.end() ? Rational(0) : it->second;
}

FockVector FockVector::basis_vector(const FockBasis& basis, const Word& v) {
  return FockVector{basis, SparseVec{{basis.index(v), Rational(1)}}};
}

SeriesTable FockVector::to_series(int degree_bound) const {
  SeriesTable out(basis.d(), degree_bound);
  const FockIndex end = basis.offset(std::min(degree_bound, basis.N()) + 1);
  for (const auto& [j, v] : entries) {
    if (j >= end) break;
    out.set(basis.word(j), v);
  }
  return out;
}

FockOperator::FockOperator(const FockBasis& basis, ShiftProfile profile,
                           int column_limit, int exact_limit)
    : basis_(basis),
      profile_(profile),
      column_limit_(std::clamp(column_limit, -1, basis.N())),
      exact_limit_(std::min(exact_limit, column_limit_)),
      columns_(static_cast<std::size_t>(num_columns())) {}

FockIndex FockOperator::num_columns() const {
  return column_limit_ < 0 ? 0 : basis_.offset(column_limit_ + 1);
}

FockOperator FockOperator::identity(const FockBasis& basis) {
  FockOperator out(basis, {0, 0}, basis.N(), basis.N());
  for (FockIndex j = 0; j < out.num_columns(); ++j) out.columns_[j] = {{j, Rational(1)}};
  return out;
}

FockOperator FockOperator::zero(const FockBasis& basis) {
  return FockOperator(basis, {0, 0}, basis.N(), basis.N());
}

const SparseVec& FockOperator::column(FockIndex j) const {
  if (j < 0 || j >= num_columns()) {
    throw Error(ErrorKind::kInvalidArgument,
                "column " + std::to_string(j) + " is not stored (column limit " +
                    std::to_string(column_limit_) + ")");
  }
  return columns_[j];
}

void FockOperator::set_column(FockIndex j, SparseVec col) {
  if (j < 0 || j >= num_columns()) {
    throw Error(ErrorKind::kInvalidArgument, "column index beyond column limit");
  }
  std::erase_if(col, [](const auto& e) { return e.second == 0; });
  columns_[j] = std::move(col);
}

Rational FockOperator::entry(FockIndex row, FockIndex col) const {
  const SparseVec& c = column(col);
  auto it = c.find(row);
  return it == c.end() ? Rational(0) : it->second;
}

SparseVec FockOperator::apply(const SparseVec& x) const {
  SparseVec out;
  for (const auto& [j, v] : x) add_scaled(out, v, column(j));
  return out;
}

FockVector FockOperator::apply(const FockVector& x) const {
  if (!(x.basis == basis_)) {
    throw Error(ErrorKind::kInvalidArgument, "vector and operator bases differ");
  }
  return FockVector{basis_, apply(x.entries)};
}

FockOperator FockOperator::restricted(int column_limit) const {
  if (column_limit > column_limit_) {
    throw Error(ErrorKind::kInvalidArgument, "cannot widen a column-limited operator");
  }
  FockOperator out(basis_, profile_, column_limit, exact_limit_);
  for (FockIndex j = 0; j < out.num_columns(); ++j) out.columns_[j] = columns_[j];
  return out;
}

FockOperator FockOperator::transpose() const {
  if (column_limit_ < basis_.N()) {
    throw Error(ErrorKind::kInvalidArgument, "transpose needs every column stored");
  }
  FockOperator out(basis_, {profile_.down, profile_.up}, basis_.N(),
                   exact_limit_ == basis_.N() ? basis_.N() : -1);
  for (FockIndex j = 0; j < num_columns(); ++j) {
    for (const auto& [i, v] : columns_[j]) out.columns_[i].emplace(j, v);
  }
  return out;
}

namespace {

void check_same_basis(const FockOperator& a, const FockOperator& b) {
  if (!(a.basis() == b.basis())) {
    throw Error(ErrorKind::kInvalidArgument, "operators on different Fock bases");
  }
}

}  // namespace

FockOperator operator+(const FockOperator& a, const FockOperator& b) {
  check_same_basis(a, b);
  FockOperator out(a.basis_,
                   {std::max(a.profile_.up, b.profile_.up),
                    std::max(a.profile_.down, b.profile_.down)},
                   std::min(a.column_limit_, b.column_limit_),
                   std::min(a.exact_limit_, b.exact_limit_));
  for (FockIndex j = 0; j < out.num_columns(); ++j) {
    out.columns_[j] = a.columns_[j];
    add_scaled(out.columns_[j], 1, b.columns_[j]);
  }
  return out;
}

FockOperator operator-(const FockOperator& a, const FockOperator& b) {
  return a + Rational(-1) * b;
}

FockOperator operator*(const Rational& c, const FockOperator& a) {
  FockOperator out(a.basis_, a.profile_, a.column_limit_, a.exact_limit_);
  if (c == 0) return out;
  for (FockIndex j = 0; j < out.num_columns(); ++j) {
    out.columns_[j] = a.columns_[j];
    for (auto& [i, v] : out.columns_[j]) v *= c;
  }
  return out;
}

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  check_same_basis(a, b);
  const int n = a.basis_.N();
  const int up = b.profile_.up;
  // Column w of AB needs columns of A up to |w| + up.
  const int column_limit = a.column_limit_ >= n
                               ? b.column_limit_
                               : std::min(b.column_limit_, a.column_limit_ - up);
  const int exact = std::min({b.exact_limit_, n - up, a.exact_limit_ - up});
  FockOperator out(a.basis_,
                   {a.profile_.up + b.profile_.up, a.profile_.down + b.profile_.down},
                   column_limit, exact);
  for (FockIndex j = 0; j < out.num_columns(); ++j) {
    out.columns_[j] = a.apply(b.columns_[j]);
  }
  return out;
}

bool FockOperator::equal_on_columns(const FockOperator& other, int limit) const {
  if (limit > column_limit_ || limit > other.column_limit_) {
    throw Error(ErrorKind::kInvalidArgument, "comparison beyond stored columns");
  }
  const FockIndex end = limit < 0 ? 0 : basis_.offset(limit + 1);
  for (FockIndex j = 0; j < end; ++j) {
    if (columns_[j] != other.columns_[j]) return false;
  }
  return true;
}

Eigen::SparseMatrix<double> FockOperator::to_eigen() const {
  std::vector<Eigen::Triplet<double>> triplets;
  for (FockIndex j = 0; j < num_columns(); ++j) {
    for (const auto& [i, v] : columns_[j]) triplets.emplace_back(i, j, to_double(v));
  }
  Eigen::SparseMatrix<double> out(basis_.dim(), basis_.dim());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

FockOperator build_operator(const FockBasis& basis, OperatorKind kind, int letter,
                            std::optional<int> column_limit) {
  if (kind != OperatorKind::kVacuumProjection && (letter < 1 || letter > basis.d())) {
    throw Error(ErrorKind::kAlphabetMismatch,
                "letter " + std::to_string(letter) + " outside 1.." + std::to_string(basis.d()));
  }
  ShiftProfile profile;
  switch (kind) {
    case OperatorKind::kLCreate:
    case OperatorKind::kRCreate:
      profile = {1, 0};
      break;
    case OperatorKind::kLAnnihilate:
    case OperatorKind::kRAnnihilate:
      profile = {0, 1};
      break;
    case OperatorKind::kSemicircular:
      profile = {1, 1};
      break;
    case OperatorKind::kVacuumProjection:
      profile = {0, 0};
      break;
  }
  const int limit = column_limit.value_or(basis.N());
  FockOperator out(basis, profile, limit, limit);
  for (FockIndex j = 0; j < out.num_columns(); ++j) {
    SparseVec col;
    auto put = [&col](std::optional<FockIndex> i) {
      if (i) col.emplace(*i, Rational(1));
    };
    switch (kind) {
      case OperatorKind::kLCreate:
        put(basis.prepend(letter, j));
        break;
      case OperatorKind::kLAnnihilate:
        put(basis.strip_front(letter, j));
        break;
      case OperatorKind::kRCreate:
        put(basis.append(letter, j));
        break;
      case OperatorKind::kRAnnihilate:
        put(basis.strip_back(letter, j));
        break;
      case OperatorKind::kSemicircular:
        put(basis.prepend(letter, j));
        put(basis.strip_front(letter, j));
        break;
      case OperatorKind::kVacuumProjection:
        if (j == 0) put(0);
        break;
    }
    out.set_column(j, std::move(col));
  }
  return out;
}

namespace {

void check_word_fits(const FockBasis& basis, const Word& v) {
  if (static_cast<int>(v.size()) > basis.N()) {
    throw Error(ErrorKind::kWordTooLong, "word '" + format_word(v) +
                                             "' longer than N=" + std::to_string(basis.N()));
  }
  if (!word_in_alphabet(v, basis.d())) {
    throw Error(ErrorKind::kAlphabetMismatch, "word '" + format_word(v) + "' outside alphabet");
  }
}

}  // namespace

std::vector<FockIndex> chebyshev_column(const FockBasis& basis, const Word& v, FockIndex j) {
  const int m = static_cast<int>(v.size());
  std::vector<FockIndex> rows;
  for (int k = 0; k <= m; ++k) {
    // l^*_{v_{k+1}} ... l^*_{v_m} strips v_m, ..., v_{k+1} from the front.
    std::optional<FockIndex> idx = j;
    for (int p = m - 1; p >= k && idx; --p) idx = basis.strip_front(v[p], *idx);
    for (int p = k - 1; p >= 0 && idx; --p) idx = basis.prepend(v[p], *idx);
    if (idx) rows.push_back(*idx);
  }
  return rows;
}

FockOperator chebyshev_operator(const FockBasis& basis, const Word& v) {
  check_word_fits(basis, v);
  const int m = static_cast<int>(v.size());
  FockOperator out(basis, {m, m}, basis.N(), basis.N());
  for (FockIndex j = 0; j < out.num_columns(); ++j) {
    SparseVec col;
    // Terms land on distinct lengths, so no two rows coincide.
    for (FockIndex i : chebyshev_column(basis, v, j)) col.emplace(i, Rational(1));
    out.set_column(j, std::move(col));
  }
  return out;
}

FockOperator chebyshev_operator_by_products(const FockBasis& basis, const Word& v) {
  check_word_fits(basis, v);
  FockOperator out = FockOperator::identity(basis);
  for (const auto& [letter, power] : v.runs()) {
    const FockOperator s = build_operator(basis, OperatorKind::kSemicircular, letter);
    FockOperator prev = FockOperator::identity(basis);
    FockOperator cur = s;
    for (int n = 1; n < power; ++n) {
      FockOperator next = s * cur - prev;
      prev = std::move(cur);
      cur = std::move(next);
    }
    out = out * cur;
  }
  return out;
}

namespace {

FockOperator build_expr(const RationalExpr& e, const FockBasis& basis, int limit) {
  using Kind = RationalExpr::Kind;
  switch (e.kind()) {
    case Kind::kConstant:
      return e.value() * FockOperator::identity(basis).restricted(limit);
    case Kind::kGenerator:
      return build_operator(basis, OperatorKind::kSemicircular, e.letter(), limit);
    case Kind::kSum:
      return build_expr(e.children()[0], basis, limit) +
             build_expr(e.children()[1], basis, limit);
    case Kind::kNegation:
      return Rational(-1) * build_expr(e.children()[0], basis, limit);
    case Kind::kProduct: {
      FockOperator b = build_expr(e.children()[1], basis, limit);
      const int a_limit = std::min(basis.N(), limit + b.profile().up);
      return build_expr(e.children()[0], basis, a_limit) * b;
    }
    case Kind::kInverse:
      break;
  }
  throw Error(ErrorKind::kInvalidArgument, "operator matrices need inverse-free expressions");
}

void check_expr_alphabet(const RationalExpr& expr, int d) {
  if (expr.max_letter() > d) {
    throw Error(ErrorKind::kAlphabetMismatch,
                "expression uses s" + std::to_string(expr.max_letter()) +
                    " but d=" + std::to_string(d));
  }
}

// Expression evaluated at the truncated generators P_N s_i P_N.
class Evaluator {
 public:
  explicit Evaluator(const FockBasis& basis) : basis_(basis) {}

  SparseVec apply(const RationalExpr& e, const SparseVec& x) {
    using Kind = RationalExpr::Kind;
    switch (e.kind()) {
      case Kind::kConstant: {
        SparseVec out;
        add_scaled(out, e.value(), x);
        return out;
      }
      case Kind::kGenerator:
        return semicircular(e.letter(), x);
      case Kind::kSum: {
        SparseVec out = apply(e.children()[0], x);
        add_scaled(out, 1, apply(e.children()[1], x));
        return out;
      }
      case Kind::kNegation: {
        SparseVec out;
        add_scaled(out, -1, apply(e.children()[0], x));
        return out;
      }
      case Kind::kProduct:
        return apply(e.children()[0], apply(e.children()[1], x));
      case Kind::kInverse:
        return solve(e.children()[0], x);
    }
    return {};
  }

  std::vector<std::size_t> sizes;
  double residual = 0.0;

 private:
  static constexpr std::size_t kMaxSystem = 4096;

  SparseVec semicircular(int i, const SparseVec& x) const {
    SparseVec out;
    for (const auto& [j, v] : x) {
      if (auto p = basis_.prepend(i, j)) add_scaled(out, v, SparseVec{{*p, Rational(1)}});
      if (auto q = basis_.strip_front(i, j)) add_scaled(out, v, SparseVec{{*q, Rational(1)}});
    }
    return out;
  }

  // Solves A y = b on the smallest coordinate set W containing supp(b) with
  // A e_j supported in W for every j in W.
  SparseVec solve(const RationalExpr& a, const SparseVec& b) {
    std::map<FockIndex, SparseVec> columns;
    std::deque<FockIndex> queue;
    std::map<FockIndex, std::size_t> position;
    auto visit = [&](FockIndex j) {
      if (position.count(j)) return;
      if (position.size() >= kMaxSystem) {
        throw Error(ErrorKind::kInvalidArgument,
                    "inverse needs a system larger than " + std::to_string(kMaxSystem) +
                        " words; lower N");
      }
      position.emplace(j, position.size());
      queue.push_back(j);
    };
    for (const auto& entry : b) visit(entry.first);
    if (b.empty()) visit(0);
    while (!queue.empty()) {
      const FockIndex j = queue.front();
      queue.pop_front();
      SparseVec col = apply(a, SparseVec{{j, Rational(1)}});
      for (const auto& entry : col) visit(entry.first);
      columns.emplace(j, std::move(col));
    }
    const std::size_t n = position.size();
    QMatrix m(n, n);
    QVector rhs(n);
    for (const auto& [j, col] : columns) {
      for (const auto& [i, v] : col) m(position.at(i), position.at(j)) = v;
    }
    for (const auto& [i, v] : b) rhs[position.at(i)] = v;
    const std::size_t rank = exact_rank(m);
    if (rank < n) {
      throw Error(ErrorKind::kNotInvertible,
                  "truncated operand " + a.to_string() + " is singular at N=" +
                      std::to_string(basis_.N()) + " (rank " + std::to_string(rank) +
                      " on an invariant subspace of dimension " + std::to_string(n) + ")");
    }
    const QVector y = *ncrat::solve(m, rhs);
    sizes.push_back(n);
    // Exact residual of the defining equation.
    const QVector check = m * y;
    Rational worst = 0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, Rational(abs(check[i] - rhs[i])));
    residual = std::max(residual, to_double(worst));
    SparseVec out;
    for (const auto& [j, p] : position) {
      if (y[p] != 0) out.emplace(j, y[p]);
    }
    return out;
  }

  const FockBasis& basis_;
};

}  // namespace

FockOperator expr_operator(const RationalExpr& expr, const FockBasis& basis,
                           std::optional<int> column_limit) {
  check_expr_alphabet(expr, basis.d());
  if (expr.has_inverse()) {
    throw Error(ErrorKind::kInvalidArgument, "operator matrices need inverse-free expressions");
  }
  return build_expr(expr, basis, column_limit.value_or(basis.N()));
}

FockVector apply_to_vacuum(const RationalExpr& expr, const FockBasis& basis) {
  check_expr_alphabet(expr, basis.d());
  const int degree = expr.degree();
  if (degree > basis.N()) {
    throw Error(ErrorKind::kDegreeTooHigh, "degree " + std::to_string(degree) +
                                               " exceeds N=" + std::to_string(basis.N()));
  }
  Evaluator eval(basis);
  return FockVector{basis, eval.apply(expr, SparseVec{{0, Rational(1)}})};
}

SparseVec apply_expr(const RationalExpr& expr, const FockBasis& basis, const SparseVec& x) {
  check_expr_alphabet(expr, basis.d());
  Evaluator eval(basis);
  return eval.apply(expr, x);
}

SolveReport solve_on_vacuum(const RationalExpr& expr, const FockBasis& basis) {
  check_expr_alphabet(expr, basis.d());
  Evaluator eval(basis);
  SolveReport report{FockVector{basis, eval.apply(expr, SparseVec{{0, Rational(1)}})},
                     eval.sizes, eval.residual};
  return report;
}

Rational vacuum_expectation(const FockOperator& a) { return a.entry(0, 0); }

SeriesResult expr_to_series(const RationalExpr& expr, int d, int L,
                            std::optional<int> working_n, double tol) {
  check_expr_alphabet(expr, d);
  if (L < 0) throw Error(ErrorKind::kInvalidArgument, "degree bound must be >= 0");
  SeriesResult out{SeriesTable(d, L)};
  if (!expr.has_inverse()) {
    const int n = std::max(L, expr.degree());
    out.series = apply_to_vacuum(expr, FockBasis(d, n)).to_series(L);
    out.working_n = n;
    out.trusted_degree = L;
    return out;
  }
  const int n = working_n.value_or(2 * L + 10);
  if (n < L || n < 8) {
    throw Error(ErrorKind::kInvalidArgument, "working N must be >= max(L, 8)");
  }
  const FockBasis basis(d, n);
  SolveReport solved = solve_on_vacuum(expr, basis);
  out.series = solved.vector.to_series(L);
  out.exact = false;
  out.working_n = n;
  out.residual = solved.residual;
  try {
    // Levels above N / 2 carry the boundary modes of the truncated system;
    // the envelope is fitted on the lower half, where exact recursion
    // detection would pick up those modes.
    std::vector<double> sigma;
    for (const Rational& s : level_square_sums(solved.vector.to_series(n / 2))) {
      sigma.push_back(to_double(s));
    }
    const DecayEstimate decay = fitted_decay_estimate(sigma);
    out.error_bound = decay.M * std::pow(decay.c, n - L);
    int trusted = -1;
    for (int l = 0; l <= L; ++l) {
      if (decay.M * std::pow(decay.c, n - l) < tol) trusted = l;
    }
    out.trusted_degree = trusted;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNotDecaying) throw;
    out.error_bound = std::numeric_limits<double>::infinity();
    out.trusted_degree = -1;
  }
  out.trusted = out.error_bound < tol;
  return out;
}

}  // namespace ncrat
