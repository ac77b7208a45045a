#include "ncrat/realize.h"

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "ncrat/error.h"

namespace ncrat {

BlockVector SBlock::apply(const BlockVector& x) const {
  BlockVector out(2 * d);
  for (int r = 0; r < 2 * d; ++r) {
    for (int c = 0; c < 2 * d; ++c) {
      if (entries[r][c] && !x[c].empty()) add_scaled(out[r], 1, entries[r][c]->apply(x[c]));
    }
  }
  return out;
}

SBlock build_sblock(const FockBasis& basis, int i) {
  if (i < 1 || i > basis.d()) {
    throw Error(ErrorKind::kAlphabetMismatch, "S block letter outside alphabet");
  }
  const int d = basis.d();
  SBlock out;
  out.d = d;
  out.i = i;
  out.entries.assign(2 * d, std::vector<std::optional<FockOperator>>(2 * d));
  const FockOperator s = build_operator(basis, OperatorKind::kSemicircular, i);
  const FockOperator one = FockOperator::identity(basis);
  const FockOperator minus_one = Rational(-1) * one;
  const int col = 2 * (i - 1);
  for (int j = 0; j < d; ++j) {
    out.entries[2 * j][col] = s;
    out.entries[2 * j][col + 1] = minus_one;
    if (j == i - 1) out.entries[2 * j + 1][col] = one;
  }
  return out;
}

bool corner_identity_check(const Word& v, const FockBasis& basis) {
  const FockOperator u = chebyshev_operator(basis, v);
  std::vector<std::optional<SBlock>> blocks(basis.d() + 1);
  for (int a : v.letters()) {
    if (!blocks[a]) blocks[a] = build_sblock(basis, a);
  }
  const int limit = basis.N() - static_cast<int>(v.size());
  for (FockIndex j = 0; j < basis.offset(limit + 1); ++j) {
    BlockVector x(2 * basis.d());
    for (int k = 0; k < basis.d(); ++k) x[2 * k] = {{j, Rational(1)}};
    for (std::size_t p = v.size(); p-- > 0;) x = blocks[v[p]]->apply(x);
    if (x[0] != u.column(j)) return false;
  }
  return true;
}

namespace {

struct BigLayout {
  int m;
  int d;
  FockIndex fock_dim;

  FockIndex slot(int k, int j, int c) const { return (static_cast<FockIndex>(k) * d + j) * 2 + c; }
  FockIndex index(int k, int j, int c, FockIndex idx) const {
    return slot(k, j, c) * fock_dim + idx;
  }
};

// Column (k, j, c, idx) of mu-weighted S blocks: only letter i = j + 1 reads
// block j.
SparseVec v_column(const LinearRepresentation& r, const FockBasis& basis, const BigLayout& lay,
                   int k, int j, int c, FockIndex idx) {
  const int i = j + 1;
  const QMatrix& mu = r.mu_of(i);
  SparseVec col;
  for (int kp = 0; kp < lay.m; ++kp) {
    const Rational& w = mu(kp, k);
    if (w == 0) continue;
    for (int jp = 0; jp < lay.d; ++jp) {
      if (c == 0) {
        if (auto p = basis.prepend(i, idx)) add_scaled(col, w, {{lay.index(kp, jp, 0, *p), 1}});
        if (auto q = basis.strip_front(i, idx)) {
          add_scaled(col, w, {{lay.index(kp, jp, 0, *q), 1}});
        }
      } else {
        add_scaled(col, -w, {{lay.index(kp, jp, 0, idx), 1}});
      }
    }
    if (c == 0) add_scaled(col, w, {{lay.index(kp, i - 1, 1, idx), 1}});
  }
  return col;
}

void check_rep_basis(const LinearRepresentation& r, const FockBasis& basis) {
  r.validate();
  if (r.d != basis.d()) {
    throw Error(ErrorKind::kAlphabetMismatch,
                "representation over d=" + std::to_string(r.d) + " but Fock basis d=" +
                    std::to_string(basis.d()));
  }
}

}  // namespace

SparseVec BigOperator::apply(const SparseVec& x) const {
  SparseVec out;
  for (const auto& [j, v] : x) add_scaled(out, v, columns.at(j));
  return out;
}

BigOperator operator*(const BigOperator& a, const BigOperator& b) {
  BigOperator out{a.m, a.d, a.basis, {}};
  out.columns.reserve(b.columns.size());
  for (const SparseVec& col : b.columns) out.columns.push_back(a.apply(col));
  return out;
}

Eigen::SparseMatrix<double> BigOperator::to_eigen() const {
  std::vector<Eigen::Triplet<double>> triplets;
  for (FockIndex j = 0; j < static_cast<FockIndex>(columns.size()); ++j) {
    for (const auto& [i, v] : columns[j]) triplets.emplace_back(i, j, to_double(v));
  }
  Eigen::SparseMatrix<double> out(dim(), dim());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

BigOperator build_V(const LinearRepresentation& r, const FockBasis& basis) {
  check_rep_basis(r, basis);
  const int m = static_cast<int>(r.dim());
  BigOperator out{m, r.d, basis, {}};
  const BigLayout lay{m, r.d, basis.dim()};
  out.columns.resize(out.dim());
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < r.d; ++j) {
      for (int c = 0; c < 2; ++c) {
        for (FockIndex idx = 0; idx < basis.dim(); ++idx) {
          out.columns[lay.index(k, j, c, idx)] = v_column(r, basis, lay, k, j, c, idx);
        }
      }
    }
  }
  return out;
}

BigOperator build_V_squared_by_words(const LinearRepresentation& r, const FockBasis& basis) {
  check_rep_basis(r, basis);
  const int m = static_cast<int>(r.dim());
  const int d = r.d;
  BigOperator out{m, d, basis, {}};
  const BigLayout lay{m, d, basis.dim()};
  out.columns.resize(out.dim());
  std::vector<SBlock> blocks;
  for (int a = 1; a <= d; ++a) blocks.push_back(build_sblock(basis, a));
  for (int a = 1; a <= d; ++a) {
    for (int b = 1; b <= d; ++b) {
      const QMatrix weight = r.mu_of(a) * r.mu_of(b);
      // Entry (row, col) of S_a S_b as a sum of operator products.
      for (int col = 0; col < 2 * d; ++col) {
        for (int row = 0; row < 2 * d; ++row) {
          std::optional<FockOperator> entry;
          for (int t = 0; t < 2 * d; ++t) {
            const auto& x = blocks[a - 1].entries[row][t];
            const auto& y = blocks[b - 1].entries[t][col];
            if (!x || !y) continue;
            FockOperator term = *x * *y;
            entry = entry ? *entry + term : term;
          }
          if (!entry) continue;
          for (int k = 0; k < m; ++k) {
            for (int kp = 0; kp < m; ++kp) {
              if (weight(kp, k) == 0) continue;
              for (FockIndex idx = 0; idx < basis.dim(); ++idx) {
                SparseVec shifted;
                for (const auto& [i, v] : entry->column(idx)) {
                  shifted.emplace(lay.index(kp, row / 2, row % 2, i), weight(kp, k) * v);
                }
                add_scaled(out.columns[lay.index(k, col / 2, col % 2, idx)], 1, shifted);
              }
            }
          }
        }
      }
    }
  }
  return out;
}

bool power_identity_check(const LinearRepresentation& r, int m, const FockBasis& basis) {
  check_rep_basis(r, basis);
  if (m < 0 || m > basis.N()) {
    throw Error(ErrorKind::kInvalidArgument, "power must lie in 0..N");
  }
  const int dim = static_cast<int>(r.dim());
  const BigLayout lay{dim, r.d, basis.dim()};
  const BigOperator v = build_V(r, basis);
  std::vector<std::pair<Rational, FockOperator>> terms;
  for (const Word& w : enumerate_words_of_length(r.d, m)) {
    Rational a = eval(r, w);
    if (a != 0) terms.emplace_back(a, chebyshev_operator(basis, w));
  }
  for (FockIndex j = 0; j < basis.offset(basis.N() - m + 1); ++j) {
    SparseVec x;
    for (int k = 0; k < dim; ++k) {
      if (r.gamma[k] == 0) continue;
      for (int jj = 0; jj < r.d; ++jj) x.emplace(lay.index(k, jj, 0, j), r.gamma[k]);
    }
    for (int t = 0; t < m; ++t) x = v.apply(x);
    SparseVec corner;
    for (const auto& [i, val] : x) {
      const FockIndex slot = i / lay.fock_dim;
      if (slot % (2 * r.d) != 0) continue;  // block 1, row 0
      const int k = static_cast<int>(slot / (2 * r.d));
      add_scaled(corner, r.lambda[k] * val, {{i % lay.fock_dim, 1}});
    }
    SparseVec expected;
    for (const auto& [a, u] : terms) add_scaled(expected, a, u.column(j));
    if (corner != expected) return false;
  }
  return true;
}

double ReconstructReport::coefficient(const Word& v) const {
  auto it = coefficients.find(basis.index(v));
  return it == coefficients.end() ? 0.0 : it->second;
}

double weighted_geometric_tail(double c, int n) {
  if (c <= 0.0) return n == 0 ? 1.0 : 0.0;
  if (c >= 1.0) return std::numeric_limits<double>::infinity();
  const double one_minus = 1.0 - c;
  return std::pow(c, n) * ((n + 1) / one_minus + c / (one_minus * one_minus));
}

namespace {

struct SlotWord {
  int slot;
  Word word;
  friend bool operator==(const SlotWord&, const SlotWord&) = default;
};

struct SlotWordHash {
  std::size_t operator()(const SlotWord& k) const {
    return WordHash{}(k.word) * 31 + static_cast<std::size_t>(k.slot);
  }
};

using WordVector = std::unordered_map<SlotWord, double, SlotWordHash>;

// Exact sigma_m = sum_{|v| = m} alpha_v^2 for m = 0..m_max.
std::vector<Rational> exact_level_sums(const LinearRepresentation& r, int m_max) {
  QMatrix t(r.dim() * r.dim(), r.dim() * r.dim());
  for (const QMatrix& a : r.mu) t = t + kron(a, a);
  const QVector left = kron(r.lambda, r.lambda);
  QVector right = kron(r.gamma, r.gamma);
  std::vector<Rational> out;
  for (int m = 0; m <= m_max; ++m) {
    out.push_back(dot(left, right));
    right = t * right;
  }
  return out;
}

}  // namespace

ReconstructReport neumann_reconstruct(const LinearRepresentation& r, const FockBasis& basis,
                                      int m_max, double tol) {
  check_rep_basis(r, basis);
  if (m_max < 1) throw Error(ErrorKind::kInvalidArgument, "m_max must be >= 1");
  const int dim = static_cast<int>(r.dim());
  const int d = r.d;
  const int n = basis.N();
  ReconstructReport report{basis, {}, {}, {}};

  // Level envelope 4 d^2 (m + 1) sqrt(sigma_m) and its fit.
  const std::vector<Rational> sigma = exact_level_sums(r, m_max);
  for (int m = 0; m <= m_max; ++m) {
    report.level_norm_estimates.push_back(4.0 * d * d * (m + 1) * std::sqrt(to_double(sigma[m])));
  }
  const int first = (m_max + 1) / 2;
  double cnt = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int m = first; m <= m_max; ++m) {
    const double e = report.level_norm_estimates[m];
    if (!(e > 0.0)) continue;
    const double y = std::log(e / (m + 1));
    cnt += 1;
    sx += m;
    sy += y;
    sxx += static_cast<double>(m) * m;
    sxy += m * y;
  }
  const bool zero_tail =
      report.level_norm_estimates[m_max] == 0.0 && report.level_norm_estimates[m_max - 1] == 0.0;
  if (zero_tail) {
    // Finite support seen in the data: c' = M' = 0.
  } else if (cnt >= 2 && cnt * sxx - sx * sx != 0.0) {
    report.c_fit = std::exp((cnt * sxy - sx * sy) / (cnt * sxx - sx * sx));
    if (report.c_fit >= 1.0) {
      throw Error(ErrorKind::kNotConverging,
                  "fitted level ratio c' = " + std::to_string(report.c_fit) + " is not below 1");
    }
    // Envelope constant: the fitted line shifted up to dominate the window.
    for (int m = first; m <= m_max; ++m) {
      report.m_fit = std::max(report.m_fit, report.level_norm_estimates[m] /
                                                ((m + 1) * std::pow(report.c_fit, m)));
    }
  } else {
    throw Error(ErrorKind::kNotConverging, "too few nonzero levels to fit the decay");
  }
  const int window = std::min(5, m_max);
  bool non_decreasing = report.level_norm_estimates[m_max] > 0.0;
  for (int m = m_max - window + 1; m <= m_max && non_decreasing; ++m) {
    if (report.level_norm_estimates[m] < report.level_norm_estimates[m - 1]) non_decreasing = false;
  }
  if (non_decreasing) {
    throw Error(ErrorKind::kNotConverging, "level norms do not decrease over the last " +
                                               std::to_string(window) + " levels");
  }
  report.tail_bound =
      report.c_fit > 0.0 ? report.m_fit * weighted_geometric_tail(report.c_fit, m_max + 1) : 0.0;

  std::vector<std::vector<double>> mu(d);
  for (int a = 1; a <= d; ++a) {
    mu[a - 1].resize(dim * dim);
    for (int i = 0; i < dim; ++i) {
      for (int k = 0; k < dim; ++k) mu[a - 1][i * dim + k] = to_double(r.mu_of(a)(i, k));
    }
  }
  auto slot = [d](int k, int j, int c) { return (k * d + j) * 2 + c; };

  WordVector y;
  for (int k = 0; k < dim; ++k) {
    const double g = to_double(r.gamma[k]);
    if (g == 0.0) continue;
    for (int j = 0; j < d; ++j) y[{slot(k, j, 0), Word()}] = g;
  }
  auto harvest = [&](const WordVector& x) {
    std::map<FockIndex, double> level;
    for (const auto& [key, v] : x) {
      if (key.slot % (2 * d) != 0 || static_cast<int>(key.word.size()) > n) continue;
      const double l = to_double(r.lambda[key.slot / (2 * d)]);
      if (l != 0.0) level[basis.index(key.word)] += l * v;
    }
    double norm2 = 0.0;
    for (const auto& [idx, v] : level) {
      report.coefficients[idx] += v;
      norm2 += v * v;
    }
    report.level_vector_norms.push_back(std::sqrt(norm2));
  };
  harvest(y);

  // Steps of the truncated V_N. The corner of S_N^v on Ω is e_v for |v| <= N,
  // so levels up to N are exact; level m > N only has words of length m.
  const int steps = std::min(m_max, n);
  for (int step = 1; step <= steps; ++step) {
    WordVector next;
    auto put = [&](int s, Word w, double v) {
      if (static_cast<int>(w.size()) > n || v == 0.0) return;
      next[{s, std::move(w)}] += v;
    };
    for (const auto& [key, v] : y) {
      const int c = key.slot % 2;
      const int j = (key.slot / 2) % d;
      const int k = key.slot / (2 * d);
      const int i = j + 1;
      for (int kp = 0; kp < dim; ++kp) {
        const double w = mu[i - 1][kp * dim + k] * v;
        if (w == 0.0) continue;
        if (c == 0) {
          Word prepended = concat(Word{i}, key.word);
          std::optional<Word> stripped;
          if (!key.word.empty() && key.word.front() == i) {
            stripped = key.word.suffix(key.word.size() - 1);
          }
          for (int jp = 0; jp < d; ++jp) {
            put(slot(kp, jp, 0), prepended, w);
            if (stripped) put(slot(kp, jp, 0), *stripped, w);
          }
          put(slot(kp, i - 1, 1), key.word, w);
        } else {
          for (int jp = 0; jp < d; ++jp) put(slot(kp, jp, 0), key.word, -w);
        }
      }
    }
    y = std::move(next);
    harvest(y);
  }
  for (int step = steps + 1; step <= m_max; ++step) report.level_vector_norms.push_back(0.0);
  std::erase_if(report.coefficients, [](const auto& e) { return e.second == 0.0; });
  report.converged = report.tail_bound < tol;
  return report;
}

std::map<FockIndex, double> neumann_reconstruct_direct(const LinearRepresentation& r,
                                                       const FockBasis& basis) {
  const BigOperator v = build_V(r, basis);
  const BigLayout lay{v.m, v.d, basis.dim()};
  Eigen::SparseMatrix<double> a = -v.to_eigen();
  for (FockIndex i = 0; i < v.dim(); ++i) a.coeffRef(i, i) += 1.0;
  a.makeCompressed();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(v.dim());
  for (int k = 0; k < v.m; ++k) {
    for (int j = 0; j < v.d; ++j) rhs(lay.index(k, j, 0, 0)) = to_double(r.gamma[k]);
  }
  std::map<FockIndex, double> out;
  if (v.dim() == 0) return out;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) {
    throw Error(ErrorKind::kNotInvertible, "I - V is singular at N=" + std::to_string(basis.N()));
  }
  const Eigen::VectorXd x = lu.solve(rhs);
  for (int k = 0; k < v.m; ++k) {
    const double l = to_double(r.lambda[k]);
    if (l == 0.0) continue;
    for (FockIndex idx = 0; idx < basis.dim(); ++idx) {
      const double val = l * x(lay.index(k, 0, 0, idx));
      if (val != 0.0) out[idx] += val;
    }
  }
  return out;
}

double operator_norm(const Eigen::SparseMatrix<double>& a) {
  if (a.cols() == 0 || a.nonZeros() == 0) return 0.0;
  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> normal;
  Eigen::VectorXd x(a.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = normal(rng);
  x.normalize();
  const Eigen::SparseMatrix<double> at = a.transpose();
  double estimate = 0.0;
  for (int iter = 0; iter < 10000; ++iter) {
    const Eigen::VectorXd ax = a * x;
    const double next = ax.norm();
    Eigen::VectorXd z = at * ax;
    const double zn = z.norm();
    if (zn == 0.0) return next;
    x = z / zn;
    if (std::abs(next - estimate) <= 1e-10 * next) {
      estimate = next;
      break;
    }
    estimate = next;
  }
  return std::max(estimate, (a * x).norm());
}

namespace {

int family_level(const LevelFamily& alpha, const FockBasis& basis) {
  if (alpha.empty()) return 0;
  const int m = static_cast<int>(alpha.begin()->first.size());
  for (const auto& [v, a] : alpha) {
    if (static_cast<int>(v.size()) != m) {
      throw Error(ErrorKind::kInvalidArgument, "family is not homogeneous");
    }
    if (!word_in_alphabet(v, basis.d())) {
      throw Error(ErrorKind::kAlphabetMismatch, "family word outside alphabet");
    }
  }
  if (m > basis.N()) {
    throw Error(ErrorKind::kWordTooLong, "family level exceeds N");
  }
  return m;
}

double l2_norm(const LevelFamily& alpha) {
  double s = 0.0;
  for (const auto& [v, a] : alpha) s += a * a;
  return std::sqrt(s);
}

void add_chebyshev(std::vector<Eigen::Triplet<double>>& triplets, const FockBasis& basis,
                   const Word& v, double coeff, FockIndex row0, FockIndex col0) {
  for (FockIndex j = 0; j < basis.dim(); ++j) {
    for (FockIndex i : chebyshev_column(basis, v, j)) {
      triplets.emplace_back(row0 + i, col0 + j, coeff);
    }
  }
}

}  // namespace

Eigen::SparseMatrix<double> compressed_chebyshev_sum(const LevelFamily& alpha,
                                                     const FockBasis& basis) {
  family_level(alpha, basis);
  std::vector<Eigen::Triplet<double>> triplets;
  for (const auto& [v, a] : alpha) {
    if (a != 0.0) add_chebyshev(triplets, basis, v, a, 0, 0);
  }
  Eigen::SparseMatrix<double> out(basis.dim(), basis.dim());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

Eigen::SparseMatrix<double> compressed_s_sum(const LevelFamily& alpha, const FockBasis& basis) {
  family_level(alpha, basis);
  const int d = basis.d();
  const FockIndex dim = basis.dim();
  std::vector<Eigen::Triplet<double>> triplets;
  for (const auto& [v, a] : alpha) {
    if (a == 0.0) continue;
    if (v.empty()) {
      for (FockIndex i = 0; i < 2 * d * dim; ++i) triplets.emplace_back(i, i, a);
      continue;
    }
    // S^v = E_{i1,in} (x) [[U_v, -U_{v in^-1}], [U_{i1^-1 v}, -U_{i1^-1 v in^-1}]]
    //     + sum_{j != i1} E_{j,in} (x) [[U_v, -U_{v in^-1}], [0, 0]]
    const int first = v.front();
    const int last = v.back();
    const Word head = *right_quotient(v, Word{last});
    const Word tail = *left_quotient(Word{first}, v);
    const QuotientResult middle = right_quotient(tail, Word{last});
    const FockIndex col0 = static_cast<FockIndex>(2 * (last - 1)) * dim;
    const FockIndex col1 = col0 + dim;
    for (int j = 0; j < d; ++j) {
      const FockIndex row0 = static_cast<FockIndex>(2 * j) * dim;
      add_chebyshev(triplets, basis, v, a, row0, col0);
      add_chebyshev(triplets, basis, head, -a, row0, col1);
      if (j == first - 1) {
        add_chebyshev(triplets, basis, tail, a, row0 + dim, col0);
        if (middle) add_chebyshev(triplets, basis, *middle, -a, row0 + dim, col1);
      }
    }
  }
  Eigen::SparseMatrix<double> out(2 * d * dim, 2 * d * dim);
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

HaagerupReport haagerup_check(const LevelFamily& alpha, const FockBasis& basis) {
  HaagerupReport out;
  out.m = family_level(alpha, basis);
  out.lhs = operator_norm(compressed_chebyshev_sum(alpha, basis));
  out.rhs = (out.m + 1) * l2_norm(alpha);
  out.ok = out.lhs <= out.rhs + 1e-9;
  return out;
}

HaagerupReport haagerup_matrix_check(const LevelFamily& alpha, const FockBasis& basis) {
  HaagerupReport out;
  out.m = family_level(alpha, basis);
  const int d = basis.d();
  out.lhs = operator_norm(compressed_s_sum(alpha, basis));
  out.rhs = 4.0 * d * d * (out.m + 1) * l2_norm(alpha);
  out.ok = out.lhs <= out.rhs + 1e-9;
  return out;
}

}  // namespace ncrat
