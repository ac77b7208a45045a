#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "ncrat/linalg.h"
#include "ncrat/series.h"
#include "ncrat/word.h"

namespace ncrat {

/// Weighted automaton (lambda, mu, gamma) with alpha_v = lambda^t mu(v) gamma.
/// mu[i - 1] is the matrix of letter i.
struct LinearRepresentation {
  int d = 1;
  QVector lambda;
  std::vector<QMatrix> mu;
  QVector gamma;

  std::size_t dim() const { return lambda.size(); }
  const QMatrix& mu_of(int letter) const { return mu.at(letter - 1); }

  /// Throws InvalidArgument when the shapes are inconsistent.
  void validate() const;

  friend bool operator==(const LinearRepresentation&,
                         const LinearRepresentation&) = default;
};

LinearRepresentation zero_representation(int d);
/// The unit series 1: dimension 1, lambda = gamma = 1, mu = 0.
LinearRepresentation unit_representation(int d);
/// alpha_v = 1 for every word.
LinearRepresentation all_ones_representation(int d);
/// The monomial X^v, dimension |v| + 1.
LinearRepresentation monomial_representation(int d, const Word& v);

/// mu(v) = mu(v_1) ... mu(v_n); the identity for Ω.
QMatrix mu_of_word(const LinearRepresentation& r, const Word& v);

Rational eval(const LinearRepresentation& r, const Word& v);

/// All coefficients up to degree L, sharing prefix products.
SeriesTable tabulate(const LinearRepresentation& r, int degree_bound);

LinearRepresentation sum(const LinearRepresentation& a, const LinearRepresentation& b);
/// Cauchy product: coefficient at v is sum over v = u w of alpha_u beta_w.
LinearRepresentation product(const LinearRepresentation& a, const LinearRepresentation& b);
LinearRepresentation scalar_mul(const Rational& c, const LinearRepresentation& r);
/// 1 + Z + Z^2 + ... for a proper series. Throws NotProper when
/// lambda^t gamma != 0.
LinearRepresentation star(const LinearRepresentation& r);
/// Tensor construction for the coefficient-wise product.
LinearRepresentation hadamard(const LinearRepresentation& a, const LinearRepresentation& b);

/// Restriction to the forward reachable space span{lambda^t mu(v)} followed
/// by the backward observable space span{mu(v) gamma}. Both bases are grown
/// breadth-first in length-lex order over exact rationals.
LinearRepresentation minimize(const LinearRepresentation& r);

struct NotLowRank {
  std::size_t rank_k = 0;
  std::size_t rank_k1 = 0;
  /// Set when the ranks agree but the learned automaton misses this word.
  std::optional<Word> mismatch;
};

using LearnResult = std::variant<LinearRepresentation, NotLowRank>;

/// Extracts a representation from Hankel data when the blocks at depths k
/// and k + 1 have equal rank. Basis words are picked greedily in length-lex
/// order; the result is verified against every tabulated coefficient.
/// Throws InsufficientData when L < 2k + 2.
LearnResult learn_from_hankel(const SeriesTable& z, int k);

struct MinimalCoeffReport {
  std::vector<Word> u;
  std::vector<Word> w;
  /// c_{ij}^{kl} = p_inv(i, k) * q_inv(l, j).
  QMatrix p_inv;
  QMatrix q_inv;
  /// Words v checked, all of length <= max_checked_length.
  std::size_t checked = 0;
  int max_checked_length = 0;
  bool ok = false;
  std::optional<Word> first_failure;
};

/// Finds words u_k, w_l with H[u_k, w_l] invertible and checks
/// mu(v)_{ij} = sum_{kl} c_{ij}^{kl} alpha_{u_k v w_l} for all words the table
/// supports. Throws NotMinimal when no invertible m x m block exists.
MinimalCoeffReport check_minimal_coeff_property(const LinearRepresentation& r,
                                                const SeriesTable& z);

}  // namespace ncrat
