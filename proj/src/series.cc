#include "ncrat/series.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

#include "ncrat/error.h"
#include "ncrat/hankel.h"

namespace ncrat {

SeriesTable::SeriesTable(int d, int degree_bound)
    : d_(d), degree_bound_(degree_bound) {
  if (d < 1) throw Error(ErrorKind::kInvalidArgument, "alphabet size must be >= 1");
  if (degree_bound < 0) {
    throw Error(ErrorKind::kInvalidArgument, "degree bound must be >= 0");
  }
}

void SeriesTable::check_word(const Word& v) const {
  if (static_cast<int>(v.size()) > degree_bound_) {
    throw Error(ErrorKind::kDegreeOutOfRange,
                "word '" + format_word(v) + "' exceeds degree bound " +
                    std::to_string(degree_bound_));
  }
  if (!word_in_alphabet(v, d_)) {
    throw Error(ErrorKind::kAlphabetMismatch,
                "word '" + format_word(v) + "' uses letters outside 1.." +
                    std::to_string(d_));
  }
}

Rational SeriesTable::coefficient(const Word& v) const {
  check_word(v);
  auto it = terms_.find(v);
  return it == terms_.end() ? Rational(0) : it->second;
}

void SeriesTable::set(const Word& v, const Rational& value) {
  check_word(v);
  if (value == 0) {
    terms_.erase(v);
  } else {
    terms_[v] = value;
  }
}

void SeriesTable::add(const Word& v, const Rational& value) {
  if (value == 0) return;
  check_word(v);
  auto [it, inserted] = terms_.try_emplace(v, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) terms_.erase(it);
  }
}

SeriesTable SeriesTable::truncated(int degree_bound) const {
  SeriesTable out(d_, degree_bound);
  for (const auto& [v, a] : terms_) {
    if (static_cast<int>(v.size()) <= degree_bound) out.terms_.emplace(v, a);
  }
  return out;
}

SeriesTable all_ones_series(int d, int degree_bound) {
  SeriesTable out(d, degree_bound);
  for (const Word& v : enumerate_words(d, degree_bound)) out.set(v, 1);
  return out;
}

SeriesTable hadamard(const SeriesTable& a, const SeriesTable& b) {
  if (a.d() != b.d()) {
    throw Error(ErrorKind::kAlphabetMismatch, "hadamard of series over different alphabets");
  }
  SeriesTable out(a.d(), std::min(a.degree_bound(), b.degree_bound()));
  for (const auto& [v, x] : a.terms()) {
    if (static_cast<int>(v.size()) > out.degree_bound()) continue;
    auto it = b.terms().find(v);
    if (it != b.terms().end()) out.set(v, x * it->second);
  }
  return out;
}

std::vector<Rational> level_square_sums(const SeriesTable& z) {
  std::vector<Rational> sigma(z.degree_bound() + 1);
  for (const auto& [v, a] : z.terms()) sigma[v.size()] += a * a;
  return sigma;
}

std::vector<double> level_l2_norms(const SeriesTable& z) {
  std::vector<double> out;
  for (const Rational& s : level_square_sums(z)) out.push_back(std::sqrt(to_double(s)));
  return out;
}

DecayEstimate decay_estimate(const SeriesTable& z) {
  if (z.degree_bound() < 4) {
    throw Error(ErrorKind::kInsufficientData, "decay estimate needs L >= 4");
  }
  return decay_estimate_from_level_sums(level_square_sums(z));
}

namespace {

double max_ratio(const std::vector<double>& sigma, double c) {
  double m = 0.0;
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    m = std::max(m, sigma[k] / std::pow(c, static_cast<double>(k)));
  }
  return m;
}

// Sum of |A_j| for sigma_m = sum_j A_j r_j^m, fitted on the first q levels.
// Returns a negative value when the roots are too close to separate.
double vandermonde_amplitude(const std::vector<std::complex<double>>& roots,
                             const std::vector<double>& sigma) {
  const Eigen::Index q = static_cast<Eigen::Index>(roots.size());
  for (Eigen::Index a = 0; a < q; ++a) {
    for (Eigen::Index b = a + 1; b < q; ++b) {
      if (std::abs(roots[a] - roots[b]) < 1e-8) return -1.0;
    }
  }
  Eigen::MatrixXcd v(q, q);
  Eigen::VectorXcd rhs(q);
  for (Eigen::Index m = 0; m < q; ++m) {
    for (Eigen::Index j = 0; j < q; ++j) {
      v(m, j) = m == 0 ? std::complex<double>(1.0) : std::pow(roots[j], static_cast<double>(m));
    }
    rhs(m) = sigma[m];
  }
  Eigen::VectorXcd amps = v.fullPivLu().solve(rhs);
  if (!amps.allFinite()) return -1.0;
  return amps.cwiseAbs().sum();
}

}  // namespace

DecayEstimate fitted_decay_estimate(const std::vector<double>& sigma) {
  DecayEstimate out;
  out.fitted = true;
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t m = 0; m < sigma.size(); ++m) {
    if (!(sigma[m] > 0.0)) continue;
    const double x = static_cast<double>(m);
    const double y = std::log(sigma[m]);
    n += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (n < 2 || denom == 0.0) {
    throw Error(ErrorKind::kInsufficientData, "too few nonzero levels to fit decay");
  }
  out.c = std::exp((n * sxy - sx * sy) / denom);
  if (out.c >= 1.0) {
    throw Error(ErrorKind::kNotDecaying,
                "fitted level-sum ratio " + std::to_string(out.c) + " is not below 1");
  }
  out.M = max_ratio(sigma, out.c);
  return out;
}

DecayEstimate decay_estimate_from_level_sums(const std::vector<Rational>& sigma) {
  if (sigma.size() < 5) {
    throw Error(ErrorKind::kInsufficientData, "decay estimate needs L >= 4");
  }
  std::vector<double> values;
  for (const Rational& s : sigma) values.push_back(to_double(s));
  const double max_sigma = *std::max_element(values.begin(), values.end());

  DecayEstimate out;
  ClassicalRationality kron = classical_rationality(sigma);
  if (kron.recursion) {
    out.recursion_order = static_cast<int>(kron.recursion->size()) - 1;
    out.c = kron.pole_moduli.empty() ? 0.0 : kron.pole_moduli.front();
    if (out.c >= 1.0) {
      throw Error(ErrorKind::kNotDecaying,
                  "level sums have a pole of modulus " + std::to_string(out.c));
    }
    if (out.c == 0.0) {
      out.M = max_sigma;
      return out;
    }
    const double amplitude =
        vandermonde_amplitude(polynomial_roots(*kron.recursion), values);
    out.M = std::max(amplitude, max_ratio(values, out.c));
    return out;
  }

  // Finite support seen in the data: zero tail.
  if (values.back() == 0.0 && values[values.size() - 2] == 0.0) {
    out.M = max_sigma;
    return out;
  }

  return fitted_decay_estimate(values);
}

}  // namespace ncrat
