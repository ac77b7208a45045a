#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ncrat/rational.h"

namespace ncrat {

using QVector = std::vector<Rational>;

/// Dense row-major matrix over the rationals. Sized for the small blocks
/// that show up in Hankel analysis and automaton reduction.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  QVector row(std::size_t i) const;
  QVector col(std::size_t j) const;
  QMatrix transpose() const;
  bool is_zero() const;

  /// Rows/columns picked by index, in the given order.
  QMatrix select(const std::vector<std::size_t>& row_idx,
                 const std::vector<std::size_t>& col_idx) const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator*(const Rational& c, const QMatrix& a);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

QVector operator*(const QMatrix& a, const QVector& x);
/// Row vector times matrix.
QVector operator*(const QVector& x, const QMatrix& a);
Rational dot(const QVector& a, const QVector& b);
bool is_zero(const QVector& v);

/// Kronecker products.
QMatrix kron(const QMatrix& a, const QMatrix& b);
QVector kron(const QVector& a, const QVector& b);

/// Rank over Q. Rows are cleared of denominators and reduced with
/// fraction-free (Bareiss) elimination; pivots are taken leftmost-first.
std::size_t exact_rank(const QMatrix& a);

/// Some solution of a x = b, or nullopt when the system is inconsistent.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<QMatrix> inverse(const QMatrix& a);

/// Indices of the rows kept by a greedy left-to-right scan that keeps a row
/// whenever it is independent of the rows kept so far.
std::vector<std::size_t> independent_rows(const QMatrix& a);
std::vector<std::size_t> independent_cols(const QMatrix& a);

/// Incrementally grown span of vectors in Q^dim, kept in reduced row echelon
/// form together with the change of basis back to the inserted vectors.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  /// Inserts v if it is independent of the current span; returns whether it
  /// was inserted.
  bool insert(const QVector& v);

  /// Coefficients c with v = sum_k c[k] * inserted[k], or nullopt when v is
  /// outside the span.
  std::optional<QVector> coordinates(const QVector& v) const;

  bool contains(const QVector& v) const { return coordinates(v).has_value(); }

  std::size_t size() const { return inserted_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<QVector>& inserted() const { return inserted_; }

 private:
  std::size_t dim_;
  std::vector<QVector> inserted_;
  std::vector<QVector> reduced_;     // RREF rows, pivot entry 1
  std::vector<std::size_t> pivots_;  // pivot column of each reduced row
  std::vector<QVector> transform_;   // reduced_[k] = sum_j transform_[k][j] inserted_[j]
};

}  // namespace ncrat
