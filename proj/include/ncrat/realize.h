#pragma once

#include <Eigen/SparseCore>

#include <map>
#include <optional>
#include <vector>

#include "ncrat/fock.h"
#include "ncrat/wfa.h"

namespace ncrat {

/// Block vector on C^d (x) C^2 (x) Fock: slot 2 j + c holds block j, row c.
using BlockVector = std::vector<SparseVec>;

/// S_i = E_ii (x) [[s_i, -1], [1, 0]] + sum_{j != i} E_ji (x) [[s_i, -1], [0, 0]]
/// with operator entries; absent entries are zero.
struct SBlock {
  int d = 1;
  int i = 1;
  /// entries[row][col] over slots 0..2d-1.
  std::vector<std::vector<std::optional<FockOperator>>> entries;

  BlockVector apply(const BlockVector& x) const;
};

SBlock build_sblock(const FockBasis& basis, int i);

/// (1 0)(e_1^t (x) I_2) S^v (e (x) I_2)(1 0)^t against U_v, column by column
/// for every column of length <= N - |v|. Exact. Throws WordTooLong.
bool corner_identity_check(const Word& v, const FockBasis& basis);

/// V = sum_i mu(i) (x) S_i on C^m (x) C^d (x) C^2 (x) Fock_N, exact, stored by
/// columns. Index ((k d + j) 2 + c) D + idx.
struct BigOperator {
  int m = 0;
  int d = 1;
  FockBasis basis;
  std::vector<SparseVec> columns;

  FockIndex dim() const { return static_cast<FockIndex>(m) * d * 2 * basis.dim(); }
  SparseVec apply(const SparseVec& x) const;
  friend BigOperator operator*(const BigOperator& a, const BigOperator& b);
  Eigen::SparseMatrix<double> to_eigen() const;
};

BigOperator build_V(const LinearRepresentation& r, const FockBasis& basis);

/// Sum over a, b of mu(a) mu(b) (x) S_a S_b with the block products taken
/// entry by entry; equals V^2 built from the same truncated blocks.
BigOperator build_V_squared_by_words(const LinearRepresentation& r, const FockBasis& basis);

/// Corner of lambda^t V^m gamma against sum_{|v| = m} alpha_v U_v on columns
/// of length <= N - m. Exact.
bool power_identity_check(const LinearRepresentation& r, int m, const FockBasis& basis);

struct ReconstructReport {
  FockBasis basis;
  /// Coefficients of lambda^t (sum_{m <= m_max} V^m) gamma corner applied to
  /// Ω, for words of length <= N.
  std::map<FockIndex, double> coefficients;
  /// l2 norm of each level's contribution to the vector.
  std::vector<double> level_vector_norms;
  /// 4 d^2 (m + 1) sqrt(sigma_m): the operator-norm envelope of level m.
  std::vector<double> level_norm_estimates;
  double m_fit = 0.0;
  double c_fit = 0.0;
  double tail_bound = 0.0;
  bool converged = false;

  double coefficient(const Word& v) const;
};

/// Neumann partial sum applied to Ω, restricted to words of length <= N.
/// Runs the truncated V_N for min(N, m_max) steps: by the corner identity
/// those levels are exact, and level m > N has no words of length <= N.
/// Throws NotConverging when the fitted c' >= 1 or the level envelope does
/// not decrease over the last levels. A zero envelope on the last two levels
/// gives c' = M' = 0.
ReconstructReport neumann_reconstruct(const LinearRepresentation& r, const FockBasis& basis,
                                      int m_max, double tol);

/// Corner of (I - V_N)^{-1} applied to Ω with a sparse LU solve of the
/// truncated system. Cross-validation only: truncation perturbs the
/// coefficients near length N.
std::map<FockIndex, double> neumann_reconstruct_direct(const LinearRepresentation& r,
                                                       const FockBasis& basis);

/// sum_{t >= n} (t + 1) c^t.
double weighted_geometric_tail(double c, int n);

/// Largest singular value by power iteration on A^t A (relative change
/// 1e-10, at most 10^4 iterations, fixed-seed start).
double operator_norm(const Eigen::SparseMatrix<double>& a);

struct HaagerupReport {
  int m = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

/// Homogeneous family: all words share one length m <= N.
using LevelFamily = std::map<Word, double>;

/// Compressed sum_v alpha_v U_v as a double matrix.
Eigen::SparseMatrix<double> compressed_chebyshev_sum(const LevelFamily& alpha,
                                                     const FockBasis& basis);
/// Compressed sum_v alpha_v S^v on C^d (x) C^2 (x) Fock_N.
Eigen::SparseMatrix<double> compressed_s_sum(const LevelFamily& alpha, const FockBasis& basis);

/// ||sum alpha_v U_v|| <= (m + 1) ||alpha||_2.
HaagerupReport haagerup_check(const LevelFamily& alpha, const FockBasis& basis);
/// ||sum alpha_v S^v|| <= 4 d^2 (m + 1) ||alpha||_2.
HaagerupReport haagerup_matrix_check(const LevelFamily& alpha, const FockBasis& basis);

}  // namespace ncrat
