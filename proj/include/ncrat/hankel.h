#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "ncrat/linalg.h"
#include "ncrat/series.h"
#include "ncrat/word.h"

namespace ncrat {

/// Hankel block of a series: entries(i, j) = alpha_{prefixes[i] suffixes[j]}.
struct HankelBlock {
  std::vector<Word> prefixes;
  std::vector<Word> suffixes;
  QMatrix entries;
};

/// Prefixes are all words of length <= max_prefix and suffixes all words of
/// length <= max_suffix, both in length-lex order. Throws InsufficientDepth
/// when max_prefix + max_suffix > L.
HankelBlock build_block(const SeriesTable& z, int max_prefix, int max_suffix);

/// Block on explicit word lists. Every product must lie within the table.
HankelBlock build_block(const SeriesTable& z, std::vector<Word> prefixes,
                        std::vector<Word> suffixes);

std::size_t exact_rank(const HankelBlock& block);

inline constexpr double kDefaultRelTol = 1e-9;

/// Number of singular values above rel_tol times the largest one.
std::size_t numeric_rank(const Eigen::MatrixXd& m, double rel_tol = kDefaultRelTol);

Eigen::MatrixXd to_eigen(const QMatrix& m);

enum class RankMode { kExact, kNumeric };

struct RankCertificate {
  RankMode mode = RankMode::kExact;
  /// Ranks of the square blocks at depths 1, 2, ..., ending with the
  /// confirming rank(at_depth + 1) when stabilized.
  std::vector<std::size_t> ranks;
  bool stabilized = false;
  /// Stabilized rank, or the last computed rank when growing.
  std::size_t rank = 0;
  /// First depth k with rank(k) == rank(k + 1); 0 when growing.
  int at_depth = 0;
};

/// Ranks of square blocks at depths k = 1..k_max. Stabilized at the first k
/// with rank(k) == rank(k + 1). This is a certificate under the
/// stabilization promise, not a proof of finite rank.
/// Throws InsufficientDepth when L < 2 k_max + 2.
RankCertificate certify_finite_rank(const SeriesTable& z, int k_max,
                                    RankMode mode = RankMode::kExact,
                                    double rel_tol = kDefaultRelTol);

/// One-variable Hankel matrix H[m][n] = alpha_{m+n}, 0 <= m, n <= K, built
/// from alpha_0 .. alpha_{2K}.
class ClassicalHankel {
 public:
  /// Uses the longest odd-length prefix of coeffs.
  explicit ClassicalHankel(std::vector<Rational> coeffs);

  std::size_t size() const { return size_; }
  QMatrix matrix() const;
  /// Leading (n x n) block.
  QMatrix leading(std::size_t n) const;

 private:
  std::vector<Rational> coeffs_;
  std::size_t size_;
};

std::size_t classical_rank(const ClassicalHankel& h);

struct ClassicalRationality {
  std::size_t rank = 0;
  /// Minimal recursion sum_{k=0}^{q} lambda_k alpha_{n+k} = 0 with
  /// lambda_q = 1, when one is supported by the data.
  std::optional<QVector> recursion;
  /// Moduli of the roots of Q(z) = sum_k lambda_k z^k, largest first.
  std::vector<double> pole_moduli;
};

/// Rank of the largest square classical Hankel block the data supports, the
/// minimal linear recursion (accepted only when at least 2q + 2 coefficients
/// back a recursion of order q), and its pole moduli.
ClassicalRationality classical_rationality(const std::vector<Rational>& coeffs);

/// Roots of sum_k poly[k] z^k as companion-matrix eigenvalues, ordered by
/// decreasing modulus. Trailing zero coefficients are dropped first.
std::vector<std::complex<double>> polynomial_roots(const QVector& poly);
std::vector<double> root_moduli(const QVector& poly);

}  // namespace ncrat
