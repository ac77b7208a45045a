#include "ncrat/wfa.h"

#include <algorithm>
#include <deque>

#include "ncrat/error.h"
#include "ncrat/hankel.h"

namespace ncrat {

void LinearRepresentation::validate() const {
  const std::size_t m = lambda.size();
  if (d < 1) throw Error(ErrorKind::kInvalidArgument, "alphabet size must be >= 1");
  if (gamma.size() != m) {
    throw Error(ErrorKind::kInvalidArgument, "lambda and gamma sizes differ");
  }
  if (mu.size() != static_cast<std::size_t>(d)) {
    throw Error(ErrorKind::kInvalidArgument,
                "expected " + std::to_string(d) + " letter matrices, got " +
                    std::to_string(mu.size()));
  }
  for (const QMatrix& a : mu) {
    if (a.rows() != m || a.cols() != m) {
      throw Error(ErrorKind::kInvalidArgument, "letter matrix is not " +
                                                   std::to_string(m) + "x" +
                                                   std::to_string(m));
    }
  }
}

LinearRepresentation zero_representation(int d) {
  LinearRepresentation r;
  r.d = d;
  r.mu.assign(d, QMatrix());
  return r;
}

LinearRepresentation unit_representation(int d) {
  LinearRepresentation r;
  r.d = d;
  r.lambda = {1};
  r.gamma = {1};
  r.mu.assign(d, QMatrix(1, 1));
  return r;
}

LinearRepresentation all_ones_representation(int d) {
  LinearRepresentation r = unit_representation(d);
  for (QMatrix& a : r.mu) a(0, 0) = 1;
  return r;
}

LinearRepresentation monomial_representation(int d, const Word& v) {
  if (!word_in_alphabet(v, d)) {
    throw Error(ErrorKind::kAlphabetMismatch, "monomial letter outside alphabet");
  }
  const std::size_t m = v.size() + 1;
  LinearRepresentation r;
  r.d = d;
  r.lambda.assign(m, 0);
  r.gamma.assign(m, 0);
  r.lambda[0] = 1;
  r.gamma[m - 1] = 1;
  r.mu.assign(d, QMatrix(m, m));
  for (std::size_t k = 0; k < v.size(); ++k) r.mu[v[k] - 1](k, k + 1) = 1;
  return r;
}

QMatrix mu_of_word(const LinearRepresentation& r, const Word& v) {
  QMatrix out = QMatrix::identity(r.dim());
  for (int a : v.letters()) out = out * r.mu_of(a);
  return out;
}

Rational eval(const LinearRepresentation& r, const Word& v) {
  if (!word_in_alphabet(v, r.d)) {
    throw Error(ErrorKind::kAlphabetMismatch, "word '" + format_word(v) +
                                                  "' outside alphabet");
  }
  QVector row = r.lambda;
  for (int a : v.letters()) row = row * r.mu_of(a);
  return dot(row, r.gamma);
}

SeriesTable tabulate(const LinearRepresentation& r, int degree_bound) {
  r.validate();
  SeriesTable out(r.d, degree_bound);
  // Rows lambda^t mu(u) for the current level, in length-lex order.
  std::vector<std::pair<Word, QVector>> level = {{Word(), r.lambda}};
  for (int len = 0; len <= degree_bound; ++len) {
    std::vector<std::pair<Word, QVector>> next;
    for (const auto& [u, row] : level) {
      out.set(u, dot(row, r.gamma));
      if (len == degree_bound || is_zero(row)) continue;
      for (int a = 1; a <= r.d; ++a) {
        Word ua = u;
        ua.push_back(a);
        next.emplace_back(std::move(ua), row * r.mu_of(a));
      }
    }
    level = std::move(next);
  }
  return out;
}

namespace {

void check_alphabets(const LinearRepresentation& a, const LinearRepresentation& b) {
  if (a.d != b.d) {
    throw Error(ErrorKind::kAlphabetMismatch,
                "representations over alphabets of size " + std::to_string(a.d) +
                    " and " + std::to_string(b.d));
  }
}

QVector concat_vectors(const QVector& a, const QVector& b) {
  QVector out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Copies src into dst with its top-left corner at (r0, c0).
void put_block(QMatrix& dst, const QMatrix& src, std::size_t r0, std::size_t c0) {
  for (std::size_t i = 0; i < src.rows(); ++i) {
    for (std::size_t j = 0; j < src.cols(); ++j) dst(r0 + i, c0 + j) = src(i, j);
  }
}

QMatrix outer(const QVector& a, const QVector& b) {
  QMatrix out(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out(i, j) = a[i] * b[j];
  }
  return out;
}

LinearRepresentation transpose_rep(const LinearRepresentation& r) {
  LinearRepresentation out;
  out.d = r.d;
  out.lambda = r.gamma;
  out.gamma = r.lambda;
  for (const QMatrix& a : r.mu) out.mu.push_back(a.transpose());
  return out;
}

// Restricts r to span{lambda^t mu(v)}: with F the basis rows,
// F mu(a) = mu'(a) F, lambda^t = lambda'^t F and gamma' = F gamma.
LinearRepresentation forward_reduce(const LinearRepresentation& r) {
  const std::size_t m = r.dim();
  EchelonBasis basis(m);
  std::deque<QVector> queue;
  if (basis.insert(r.lambda)) queue.push_back(r.lambda);
  while (!queue.empty()) {
    QVector row = std::move(queue.front());
    queue.pop_front();
    for (int a = 1; a <= r.d; ++a) {
      QVector next = row * r.mu_of(a);
      if (basis.insert(next)) queue.push_back(std::move(next));
    }
  }
  const std::vector<QVector>& rows = basis.inserted();
  const std::size_t k = rows.size();
  LinearRepresentation out;
  out.d = r.d;
  out.lambda.assign(k, 0);
  if (k > 0) out.lambda[0] = 1;
  out.gamma.resize(k);
  for (std::size_t i = 0; i < k; ++i) out.gamma[i] = dot(rows[i], r.gamma);
  for (int a = 1; a <= r.d; ++a) {
    QMatrix ma(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      std::optional<QVector> coords = basis.coordinates(rows[i] * r.mu_of(a));
      for (std::size_t j = 0; j < k; ++j) ma(i, j) = (*coords)[j];
    }
    out.mu.push_back(std::move(ma));
  }
  return out;
}

}  // namespace

LinearRepresentation sum(const LinearRepresentation& a, const LinearRepresentation& b) {
  check_alphabets(a, b);
  const std::size_t m1 = a.dim();
  const std::size_t m2 = b.dim();
  LinearRepresentation out;
  out.d = a.d;
  out.lambda = concat_vectors(a.lambda, b.lambda);
  out.gamma = concat_vectors(a.gamma, b.gamma);
  for (int i = 1; i <= a.d; ++i) {
    QMatrix m(m1 + m2, m1 + m2);
    put_block(m, a.mu_of(i), 0, 0);
    put_block(m, b.mu_of(i), m1, m1);
    out.mu.push_back(std::move(m));
  }
  return out;
}

LinearRepresentation product(const LinearRepresentation& a, const LinearRepresentation& b) {
  check_alphabets(a, b);
  const std::size_t m1 = a.dim();
  const std::size_t m2 = b.dim();
  const Rational a_empty = dot(a.lambda, a.gamma);
  LinearRepresentation out;
  out.d = a.d;
  QVector scaled = b.lambda;
  for (auto& x : scaled) x *= a_empty;
  out.lambda = concat_vectors(a.lambda, scaled);
  out.gamma = concat_vectors(QVector(m1), b.gamma);
  const QMatrix link = outer(a.gamma, b.lambda);
  for (int i = 1; i <= a.d; ++i) {
    QMatrix m(m1 + m2, m1 + m2);
    put_block(m, a.mu_of(i), 0, 0);
    put_block(m, a.mu_of(i) * link, 0, m1);
    put_block(m, b.mu_of(i), m1, m1);
    out.mu.push_back(std::move(m));
  }
  return out;
}

LinearRepresentation scalar_mul(const Rational& c, const LinearRepresentation& r) {
  LinearRepresentation out = r;
  for (auto& x : out.lambda) x *= c;
  return out;
}

LinearRepresentation star(const LinearRepresentation& r) {
  if (dot(r.lambda, r.gamma) != 0) {
    throw Error(ErrorKind::kNotProper, "star needs a zero constant term");
  }
  // Z+ = Z + Z^2 + ...: every time a factor ends, the next one restarts.
  LinearRepresentation plus = r;
  const QMatrix restart = QMatrix::identity(r.dim()) + outer(r.gamma, r.lambda);
  for (QMatrix& a : plus.mu) a = restart * a;
  return sum(unit_representation(r.d), plus);
}

LinearRepresentation hadamard(const LinearRepresentation& a, const LinearRepresentation& b) {
  check_alphabets(a, b);
  LinearRepresentation out;
  out.d = a.d;
  out.lambda = kron(a.lambda, b.lambda);
  out.gamma = kron(a.gamma, b.gamma);
  for (int i = 1; i <= a.d; ++i) out.mu.push_back(kron(a.mu_of(i), b.mu_of(i)));
  return out;
}

LinearRepresentation minimize(const LinearRepresentation& r) {
  r.validate();
  LinearRepresentation reachable = forward_reduce(r);
  return transpose_rep(forward_reduce(transpose_rep(reachable)));
}

LearnResult learn_from_hankel(const SeriesTable& z, int k) {
  if (k < 0) throw Error(ErrorKind::kInvalidArgument, "k must be >= 0");
  if (z.degree_bound() < 2 * k + 2) {
    throw Error(ErrorKind::kInsufficientData,
                "learning at depth " + std::to_string(k) + " needs L >= " +
                    std::to_string(2 * k + 2));
  }
  const HankelBlock hk = build_block(z, k, k);
  const HankelBlock hk1 = build_block(z, k + 1, k + 1);
  const std::size_t rank_k = exact_rank(hk);
  const std::size_t rank_k1 = exact_rank(hk1);
  if (rank_k != rank_k1) return NotLowRank{rank_k, rank_k1, std::nullopt};

  const std::vector<std::size_t> rows = independent_rows(hk.entries);
  std::vector<std::size_t> all_cols(hk.suffixes.size());
  for (std::size_t j = 0; j < all_cols.size(); ++j) all_cols[j] = j;
  const std::vector<std::size_t> cols =
      independent_cols(hk.entries.select(rows, all_cols));
  const std::size_t r = rows.size();

  std::vector<Word> u, w;
  for (std::size_t i : rows) u.push_back(hk.prefixes[i]);
  for (std::size_t j : cols) w.push_back(hk.suffixes[j]);
  const QMatrix f = hk.entries.select(rows, cols);
  const QMatrix f_inv = *inverse(f);

  LinearRepresentation out;
  out.d = z.d();
  QVector top(r);
  for (std::size_t j = 0; j < r; ++j) top[j] = z.coefficient(w[j]);
  out.lambda = top * f_inv;
  out.gamma.resize(r);
  for (std::size_t i = 0; i < r; ++i) out.gamma[i] = z.coefficient(u[i]);
  for (int a = 1; a <= z.d(); ++a) {
    QMatrix shifted(r, r);
    for (std::size_t i = 0; i < r; ++i) {
      Word ua = u[i];
      ua.push_back(a);
      for (std::size_t j = 0; j < r; ++j) shifted(i, j) = z.coefficient(concat(ua, w[j]));
    }
    out.mu.push_back(shifted * f_inv);
  }

  const SeriesTable learned = tabulate(out, z.degree_bound());
  for (const Word& v : enumerate_words(z.d(), z.degree_bound())) {
    if (learned.coefficient(v) != z.coefficient(v)) {
      return NotLowRank{rank_k, rank_k1, v};
    }
  }
  return out;
}

MinimalCoeffReport check_minimal_coeff_property(const LinearRepresentation& r,
                                                const SeriesTable& z) {
  r.validate();
  if (r.d != z.d()) {
    throw Error(ErrorKind::kAlphabetMismatch, "representation and series alphabets differ");
  }
  const std::size_t m = r.dim();
  MinimalCoeffReport report;
  if (m == 0) {
    report.ok = true;
    return report;
  }
  // Reachability and observability saturate by length m - 1.
  const int depth = std::min(static_cast<int>(m) - 1, z.degree_bound() / 2);
  const HankelBlock block = build_block(z, depth, depth);
  const std::vector<std::size_t> rows = independent_rows(block.entries);
  if (rows.size() < m) {
    throw Error(ErrorKind::kNotMinimal,
                "Hankel data has rank " + std::to_string(rows.size()) +
                    " below the dimension " + std::to_string(m));
  }
  std::vector<std::size_t> all_cols(block.suffixes.size());
  for (std::size_t j = 0; j < all_cols.size(); ++j) all_cols[j] = j;
  std::vector<std::size_t> picked_rows(rows.begin(), rows.begin() + m);
  std::vector<std::size_t> cols =
      independent_cols(block.entries.select(picked_rows, all_cols));
  if (cols.size() < m) {
    throw Error(ErrorKind::kNotMinimal, "no invertible Hankel block of full size");
  }
  cols.resize(m);
  for (std::size_t i : picked_rows) report.u.push_back(block.prefixes[i]);
  for (std::size_t j : cols) report.w.push_back(block.suffixes[j]);

  QMatrix p(m, m), q(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    const QVector row = r.lambda * mu_of_word(r, report.u[k]);
    const QVector col = mu_of_word(r, report.w[k]) * r.gamma;
    for (std::size_t j = 0; j < m; ++j) {
      p(k, j) = row[j];
      q(j, k) = col[j];
    }
  }
  std::optional<QMatrix> p_inv = inverse(p);
  std::optional<QMatrix> q_inv = inverse(q);
  if (!p_inv || !q_inv) {
    throw Error(ErrorKind::kNotMinimal,
                "representation does not realize an invertible block on the chosen words");
  }
  report.p_inv = *p_inv;
  report.q_inv = *q_inv;

  std::size_t max_u = 0, max_w = 0;
  for (const Word& x : report.u) max_u = std::max(max_u, x.size());
  for (const Word& x : report.w) max_w = std::max(max_w, x.size());
  report.max_checked_length =
      z.degree_bound() - static_cast<int>(max_u) - static_cast<int>(max_w);
  report.ok = true;
  for (const Word& v : enumerate_words(z.d(), report.max_checked_length)) {
    QMatrix hv(m, m);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t l = 0; l < m; ++l) {
        hv(k, l) = z.coefficient(concat(concat(report.u[k], v), report.w[l]));
      }
    }
    ++report.checked;
    if (report.p_inv * hv * report.q_inv != mu_of_word(r, v)) {
      report.ok = false;
      report.first_failure = v;
      break;
    }
  }
  return report;
}

}  // namespace ncrat
