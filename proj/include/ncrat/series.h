#pragma once

#include <map>
#include <vector>

#include "ncrat/rational.h"
#include "ncrat/word.h"

namespace ncrat {

/// Noncommutative power series sum_v alpha_v X^v tabulated for |v| <= L.
/// Absent words have coefficient zero; zeros are never stored.
class SeriesTable {
 public:
  SeriesTable(int d, int degree_bound);

  int d() const { return d_; }
  int degree_bound() const { return degree_bound_; }

  /// Stored coefficient or 0. Throws DegreeOutOfRange when |v| > L.
  Rational coefficient(const Word& v) const;

  /// Overwrites a coefficient; setting zero erases the entry.
  void set(const Word& v, const Rational& value);
  void add(const Word& v, const Rational& value);

  const std::map<Word, Rational>& terms() const { return terms_; }

  /// Same coefficients restricted to |v| <= degree_bound.
  SeriesTable truncated(int degree_bound) const;

  friend bool operator==(const SeriesTable&, const SeriesTable&) = default;

 private:
  void check_word(const Word& v) const;

  int d_;
  int degree_bound_;
  std::map<Word, Rational> terms_;
};

/// alpha_v = 1 for every |v| <= L.
SeriesTable all_ones_series(int d, int degree_bound);

/// alpha_v beta_v; the degree bound is min(L1, L2).
SeriesTable hadamard(const SeriesTable& a, const SeriesTable& b);

/// sigma_m = sum_{|v| = m} alpha_v^2, exactly, for m = 0..L.
std::vector<Rational> level_square_sums(const SeriesTable& z);

/// sqrt(sigma_m) in floating point, m = 0..L.
std::vector<double> level_l2_norms(const SeriesTable& z);

/// Geometric envelope sigma_m <= M c^m of the level sums.
struct DecayEstimate {
  double M = 0.0;
  double c = 0.0;
  /// False when (M, c) come from the linear recursion of the level sums;
  /// true when a least-squares fit of log(sigma_m) was used.
  bool fitted = false;
  /// Order of the detected recursion, or -1 when none was found.
  int recursion_order = -1;
};

/// Envelope of the level sums of z. Runs the one-variable Kronecker analysis
/// on sum_m sigma_m t^m first and falls back to a log-linear fit.
/// Throws InsufficientData when L < 4 and NotDecaying when c >= 1.
DecayEstimate decay_estimate(const SeriesTable& z);
DecayEstimate decay_estimate_from_level_sums(const std::vector<Rational>& sigma);
/// Least-squares fit of log sigma_m = log M + m log c on the positive levels,
/// with M raised until M c^m dominates every level. Throws NotDecaying when
/// c >= 1 and InsufficientData with fewer than two positive levels.
DecayEstimate fitted_decay_estimate(const std::vector<double>& sigma);

}  // namespace ncrat
