#include "ncrat/hankel.h"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <complex>

#include "ncrat/error.h"

namespace ncrat {

HankelBlock build_block(const SeriesTable& z, int max_prefix, int max_suffix) {
  if (max_prefix < 0 || max_suffix < 0 ||
      max_prefix + max_suffix > z.degree_bound()) {
    throw Error(ErrorKind::kInsufficientDepth,
                "Hankel block depths " + std::to_string(max_prefix) + "+" +
                    std::to_string(max_suffix) + " exceed degree bound " +
                    std::to_string(z.degree_bound()));
  }
  return build_block(z, enumerate_words(z.d(), max_prefix),
                     enumerate_words(z.d(), max_suffix));
}

HankelBlock build_block(const SeriesTable& z, std::vector<Word> prefixes,
                        std::vector<Word> suffixes) {
  HankelBlock block;
  block.entries = QMatrix(prefixes.size(), suffixes.size());
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    for (std::size_t j = 0; j < suffixes.size(); ++j) {
      block.entries(i, j) = z.coefficient(concat(prefixes[i], suffixes[j]));
    }
  }
  block.prefixes = std::move(prefixes);
  block.suffixes = std::move(suffixes);
  return block;
}

std::size_t exact_rank(const HankelBlock& block) {
  return exact_rank(block.entries);
}

std::size_t numeric_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (!(rel_tol > 0)) {
    throw Error(ErrorKind::kInvalidArgument, "rel_tol must be positive");
  }
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double threshold = rel_tol * sv(0);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++rank;
  }
  return rank;
}

Eigen::MatrixXd to_eigen(const QMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  }
  return out;
}

RankCertificate certify_finite_rank(const SeriesTable& z, int k_max,
                                    RankMode mode, double rel_tol) {
  if (k_max < 1) {
    throw Error(ErrorKind::kInvalidArgument, "k_max must be at least 1");
  }
  if (z.degree_bound() < 2 * k_max + 2) {
    throw Error(ErrorKind::kInsufficientDepth,
                "certification to depth " + std::to_string(k_max) +
                    " needs L >= " + std::to_string(2 * k_max + 2));
  }
  auto rank_at = [&](int k) {
    HankelBlock block = build_block(z, k, k);
    return mode == RankMode::kExact ? exact_rank(block)
                                    : numeric_rank(to_eigen(block.entries), rel_tol);
  };
  RankCertificate cert;
  cert.mode = mode;
  std::size_t current = rank_at(1);
  for (int k = 1; k <= k_max; ++k) {
    cert.ranks.push_back(current);
    std::size_t next = rank_at(k + 1);
    if (next == current) {
      cert.ranks.push_back(next);
      cert.stabilized = true;
      cert.rank = current;
      cert.at_depth = k;
      return cert;
    }
    current = next;
  }
  cert.rank = cert.ranks.back();
  return cert;
}

ClassicalHankel::ClassicalHankel(std::vector<Rational> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw Error(ErrorKind::kInsufficientData, "classical Hankel needs coefficients");
  }
  size_ = (coeffs_.size() - 1) / 2 + 1;
}

QMatrix ClassicalHankel::leading(std::size_t n) const {
  QMatrix out(n, n);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) out(m, k) = coeffs_[m + k];
  }
  return out;
}

QMatrix ClassicalHankel::matrix() const { return leading(size_); }

std::size_t classical_rank(const ClassicalHankel& h) {
  return exact_rank(h.matrix());
}

std::vector<std::complex<double>> polynomial_roots(const QVector& poly) {
  if (poly.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "zero polynomial has no roots");
  }
  std::size_t degree = poly.size() - 1;
  while (degree > 0 && poly[degree] == 0) --degree;
  if (poly[degree] == 0) {
    throw Error(ErrorKind::kInvalidArgument, "zero polynomial has no roots");
  }
  std::vector<std::complex<double>> out;
  if (degree == 0) return out;
  // Companion matrix of the monic polynomial.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  const double lead = to_double(poly[degree]);
  for (std::size_t i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < degree; ++i) {
    companion(i, degree - 1) = -to_double(poly[i]) / lead;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    out.push_back(solver.eigenvalues()(i));
  }
  std::stable_sort(out.begin(), out.end(), [](auto a, auto b) {
    return std::abs(a) > std::abs(b);
  });
  return out;
}

std::vector<double> root_moduli(const QVector& poly) {
  std::vector<double> out;
  for (const auto& z : polynomial_roots(poly)) out.push_back(std::abs(z));
  return out;
}

ClassicalRationality classical_rationality(const std::vector<Rational>& coeffs) {
  ClassicalRationality out;
  out.rank = classical_rank(ClassicalHankel(coeffs));
  const std::size_t n = coeffs.size();
  // Smallest order q whose recursion is consistent with all data.
  for (std::size_t q = 0; 2 * q + 2 <= n; ++q) {
    const std::size_t equations = n - q;
    QMatrix a(equations, q);
    QVector rhs(equations);
    for (std::size_t row = 0; row < equations; ++row) {
      for (std::size_t k = 0; k < q; ++k) a(row, k) = coeffs[row + k];
      rhs[row] = -coeffs[row + q];
    }
    std::optional<QVector> lambda = solve(a, rhs);
    if (!lambda) continue;
    lambda->push_back(1);
    out.pole_moduli = root_moduli(*lambda);
    out.recursion = std::move(lambda);
    break;
  }
  return out;
}

}  // namespace ncrat
