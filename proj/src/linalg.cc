#include "ncrat/linalg.h"

#include <utility>

#include "ncrat/error.h"

namespace ncrat {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows,
                           std::size_t cols) {
  QMatrix out(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

QVector QMatrix::row(std::size_t i) const {
  return QVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

QVector QMatrix::col(std::size_t j) const {
  QVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

QMatrix QMatrix::transpose() const {
  QMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

bool QMatrix::is_zero() const {
  for (const auto& x : data_) {
    if (x != 0) return false;
  }
  return true;
}

QMatrix QMatrix::select(const std::vector<std::size_t>& row_idx,
                        const std::vector<std::size_t>& col_idx) const {
  QMatrix out(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i) {
    for (std::size_t j = 0; j < col_idx.size(); ++j) {
      out(i, j) = (*this)(row_idx[i], col_idx[j]);
    }
  }
  return out;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::kInvalidArgument, "matrix product shape mismatch");
  }
  QMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j) != 0) out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  QMatrix out = a;
  for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  QMatrix out = a;
  for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

QMatrix operator*(const Rational& c, const QMatrix& a) {
  QMatrix out = a;
  for (auto& x : out.data_) x *= c;
  return out;
}

QVector operator*(const QMatrix& a, const QVector& x) {
  QVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0 && x[j] != 0) out[i] += a(i, j) * x[j];
    }
  }
  return out;
}

QVector operator*(const QVector& x, const QMatrix& a) {
  QVector out(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0) out[j] += x[i] * a(i, j);
    }
  }
  return out;
}

Rational dot(const QVector& a, const QVector& b) {
  Rational out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) out += a[i] * b[i];
  }
  return out;
}

bool is_zero(const QVector& v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

QMatrix kron(const QMatrix& a, const QMatrix& b) {
  QMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

QVector kron(const QVector& a, const QVector& b) {
  QVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = a[i] * b[k];
  }
  return out;
}

std::size_t exact_rank(const QMatrix& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  if (rows == 0 || cols == 0) return 0;
  // Clear denominators row by row.
  std::vector<std::vector<Integer>> m(rows, std::vector<Integer>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    Integer scale = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      if (a(i, j) != 0) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(),
                                a(i, j).get_den_mpz_t());
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (a(i, j) != 0) m[i][j] = a(i, j).get_num() * (scale / a(i, j).get_den());
    }
  }
  // Bareiss: every intermediate division is exact.
  Integer prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    const Integer& p = m[rank][c];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const Integer factor = m[i][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer value = p * m[i][j] - factor * m[rank][j];
        mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = std::move(value);
      }
      m[i][c] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  QMatrix aug(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug(i, j) = a(i, j);
    aug(i, cols) = b[i];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && aug(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j <= cols; ++j) std::swap(aug(p, j), aug(r, j));
    }
    const Rational inv = 1 / aug(r, c);
    for (std::size_t j = c; j <= cols; ++j) aug(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || aug(i, c) == 0) continue;
      const Rational factor = aug(i, c);
      for (std::size_t j = c; j <= cols; ++j) {
        if (aug(r, j) != 0) aug(i, j) -= factor * aug(r, j);
      }
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (aug(i, cols) != 0) return std::nullopt;
  }
  QVector x(cols);
  for (std::size_t k = 0; k < pivot_cols.size(); ++k) x[pivot_cols[k]] = aug(k, cols);
  return x;
}

std::optional<QMatrix> inverse(const QMatrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::kInvalidArgument, "inverse of non-square matrix");
  }
  const std::size_t n = a.rows();
  QMatrix work = a;
  QMatrix inv = QMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && work(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work(p, j), work(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    const Rational scale = 1 / work(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      work(c, j) *= scale;
      inv(c, j) *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || work(i, c) == 0) continue;
      const Rational factor = work(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (work(c, j) != 0) work(i, j) -= factor * work(c, j);
        if (inv(c, j) != 0) inv(i, j) -= factor * inv(c, j);
      }
    }
  }
  return inv;
}

std::vector<std::size_t> independent_rows(const QMatrix& a) {
  EchelonBasis basis(a.cols());
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (basis.insert(a.row(i))) kept.push_back(i);
    if (basis.size() == a.cols()) break;
  }
  return kept;
}

std::vector<std::size_t> independent_cols(const QMatrix& a) {
  return independent_rows(a.transpose());
}

bool EchelonBasis::insert(const QVector& v) {
  if (v.size() != dim_) {
    throw Error(ErrorKind::kInvalidArgument, "EchelonBasis dimension mismatch");
  }
  QVector residual = v;
  QVector combo(inserted_.size() + 1);
  combo.back() = 1;
  for (std::size_t k = 0; k < reduced_.size(); ++k) {
    const Rational coeff = residual[pivots_[k]];
    if (coeff == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (reduced_[k][j] != 0) residual[j] -= coeff * reduced_[k][j];
    }
    for (std::size_t j = 0; j < transform_[k].size(); ++j) {
      if (transform_[k][j] != 0) combo[j] -= coeff * transform_[k][j];
    }
  }
  std::size_t pivot = 0;
  while (pivot < dim_ && residual[pivot] == 0) ++pivot;
  if (pivot == dim_) return false;

  const Rational inv = 1 / residual[pivot];
  for (auto& x : residual) x *= inv;
  for (auto& x : combo) x *= inv;
  // Keep the echelon form fully reduced.
  for (std::size_t k = 0; k < reduced_.size(); ++k) {
    const Rational coeff = reduced_[k][pivot];
    if (coeff == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (residual[j] != 0) reduced_[k][j] -= coeff * residual[j];
    }
    transform_[k].resize(combo.size());
    for (std::size_t j = 0; j < combo.size(); ++j) {
      if (combo[j] != 0) transform_[k][j] -= coeff * combo[j];
    }
  }
  inserted_.push_back(v);
  reduced_.push_back(std::move(residual));
  pivots_.push_back(pivot);
  transform_.push_back(std::move(combo));
  return true;
}

std::optional<QVector> EchelonBasis::coordinates(const QVector& v) const {
  QVector residual = v;
  QVector coords(inserted_.size());
  for (std::size_t k = 0; k < reduced_.size(); ++k) {
    const Rational coeff = residual[pivots_[k]];
    if (coeff == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (reduced_[k][j] != 0) residual[j] -= coeff * reduced_[k][j];
    }
    for (std::size_t j = 0; j < transform_[k].size(); ++j) {
      if (transform_[k][j] != 0) coords[j] += coeff * transform_[k][j];
    }
  }
  if (!is_zero(residual)) return std::nullopt;
  return coords;
}

}  // namespace ncrat
