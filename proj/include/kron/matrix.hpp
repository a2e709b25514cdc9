#pragma once

// Dense row-major matrices over a Field.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kron/field.hpp"

namespace kron {

class Matrix {
 public:
  Matrix() : field_(Field::rational()) {}

  /// rows x cols zero matrix.
  Matrix(Field f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), data_(rows * cols, f.zero()) {}

  static Matrix zero(Field f, std::size_t n) { return Matrix(f, n, n); }
  static Matrix zero(Field f, std::size_t rows, std::size_t cols) { return Matrix(f, rows, cols); }

  static Matrix identity(Field f, std::size_t n) {
    Matrix m(f, n, n);
    const auto one = f.one();
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  /// E_ij of size rows x cols, 1-based indices.
  static Matrix basis_unit(Field f, std::size_t i, std::size_t j, std::size_t rows, std::size_t cols) {
    if (i < 1 || j < 1 || i > rows || j > cols)
      throw Error(Errc::index_out_of_range, "E_" + std::to_string(i) + "," + std::to_string(j) + " outside " +
                                                std::to_string(rows) + "x" + std::to_string(cols));
    Matrix m(f, rows, cols);
    m(i - 1, j - 1) = f.one();
    return m;
  }
  static Matrix basis_unit(Field f, std::size_t i, std::size_t j, std::size_t n) { return basis_unit(f, i, j, n, n); }

  /// J: every entry one.
  static Matrix all_ones(Field f, std::size_t rows, std::size_t cols) {
    Matrix m(f, rows, cols);
    std::fill(m.data_.begin(), m.data_.end(), f.one());
    return m;
  }

  static Matrix from_rows(Field f, std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<std::vector<long long>> v;
    for (const auto& r : rows) v.emplace_back(r);
    return from_rows(f, v);
  }

  static Matrix from_rows(Field f, const std::vector<std::vector<long long>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.front().size() : 0;
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw Error(Errc::dimension_mismatch, "ragged row list");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(rows[i][j]);
    }
    return m;
  }

  static Matrix from_strings(Field f, const std::vector<std::vector<std::string>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.front().size() : 0;
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw Error(Errc::dimension_mismatch, "ragged row list");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = f.parse(rows[i][j]);
    }
    return m;
  }

  static Matrix diagonal(Field f, const std::vector<long long>& d) {
    Matrix m(f, d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = f.from_int(d[i]);
    return m;
  }

  /// Column vector.
  static Matrix column(Field f, const std::vector<long long>& v) {
    Matrix m(f, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = f.from_int(v[i]);
    return m;
  }

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  /// 0-based unchecked access.
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// 1-based checked access.
  const Scalar& at(std::size_t i, std::size_t j) const {
    if (i < 1 || j < 1 || i > rows_ || j > cols_) throw Error(Errc::index_out_of_range, "entry index out of range");
    return (*this)(i - 1, j - 1);
  }

  const std::vector<Scalar>& data() const noexcept { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "addition");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "subtraction");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const Scalar& k) {
    require_same_field(field_, k.field());
    for (auto& x : data_) x *= k;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& k) { return a *= k; }
  friend Matrix operator*(const Scalar& k, Matrix a) { return a *= k; }
  Matrix operator-() const {
    Matrix r(field_, rows_, cols_);
    r -= *this;
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_field(a.field_, b.field_);
    if (a.cols_ != b.rows_)
      throw Error(Errc::dimension_mismatch, "product of " + a.shape() + " and " + b.shape());
    Matrix r(a.field_, a.rows_, b.cols_);
    const bool exact = a.field_.is_exact();
    // nonzero pattern of b's rows; exact zeros contribute nothing
    std::vector<std::vector<std::size_t>> nz(b.rows_);
    for (std::size_t k = 0; k < b.rows_; ++k)
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!exact || !b(k, j).is_zero()) nz[k].push_back(j);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& x = a(i, k);
        if (exact && x.is_zero()) continue;
        for (std::size_t j : nz[k]) r(i, j) += x * b(k, j);
      }
    return r;
  }

  /// Exact equality; entrywise |a-b| <= eps over real64. Shapes must match.
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.field_ != b.field_ || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (a.data_[k] != b.data_[k]) return false;
    return true;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Scalar trace() const {
    require_square("trace");
    Scalar s = field_.zero();
    for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
    return s;
  }

  Matrix transpose() const {
    Matrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  /// Row-echelon rank; exact fields only.
  std::size_t rank() const {
    require_exact("rank");
    Matrix w = *this;
    return w.eliminate(nullptr);
  }

  /// Solves A x = y for square invertible A over an exact field; y may have
  /// several columns.
  Matrix solve(const Matrix& y) const {
    require_exact("linear solve");
    require_square("linear solve");
    require_same_field(field_, y.field_);
    if (y.rows_ != rows_) throw Error(Errc::dimension_mismatch, "right-hand side has " + y.shape());
    Matrix w = *this;
    Matrix rhs = y;
    if (w.eliminate(&rhs) < rows_) throw Error(Errc::singular, "system matrix is singular");
    // w is now reduced row echelon with identity pivots
    return rhs;
  }

  Matrix inverse() const { return solve(identity(field_, rows_)); }

  /// Column-stacking vectorization, so vec(ABC) = (C^T (x) A) vec(B).
  Matrix vec() const {
    Matrix v(field_, rows_ * cols_, 1);
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t i = 0; i < rows_; ++i) v(j * rows_ + i, 0) = (*this)(i, j);
    return v;
  }

  static Matrix unvec(const Matrix& v, std::size_t rows, std::size_t cols) {
    if (v.cols_ != 1 || v.rows_ != rows * cols) throw Error(Errc::dimension_mismatch, "unvec of " + v.shape());
    Matrix m(v.field_, rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = v(j * rows + i, 0);
    return m;
  }

  /// Largest absolute entry of (a - b) as a double.
  friend double max_abs_diff(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b, "comparison");
    double d = 0.0;
    for (std::size_t k = 0; k < a.data_.size(); ++k) d = std::max(d, std::abs((a.data_[k] - b.data_[k]).to_double()));
    return d;
  }

  double max_norm() const {
    double d = 0.0;
    for (const auto& x : data_) d = std::max(d, std::abs(x.to_double()));
    return d;
  }

  /// Copy of the block of shape (r, c) whose top-left entry is (r0, c0).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) const {
    if (r0 + r > rows_ || c0 + c > cols_) throw Error(Errc::index_out_of_range, "block outside matrix");
    Matrix b(field_, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).to_string();
      os << ']';
    }
    os << ']';
    return os.str();
  }

  void require_square(const char* what) const {
    if (!is_square()) throw Error(Errc::not_square, std::string(what) + " needs a square matrix, got " + shape());
  }

 private:
  void require_same_shape(const Matrix& o, const char* what) const {
    require_same_field(field_, o.field_);
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw Error(Errc::dimension_mismatch, std::string(what) + " of " + shape() + " and " + o.shape());
  }
  void require_exact(const char* what) const {
    if (!field_.is_exact()) throw Error(Errc::unsupported_field, std::string(what) + " needs an exact field");
  }

  // Gauss-Jordan with the first nonzero pivot in each column. Applies the
  // same row operations to rhs when given. Returns the rank.
  std::size_t eliminate(Matrix* rhs) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t piv = r;
      while (piv < rows_ && (*this)(piv, c).is_zero()) ++piv;
      if (piv == rows_) continue;
      swap_rows(r, piv);
      if (rhs) rhs->swap_rows(r, piv);
      const Scalar inv = (*this)(r, c).inverse();
      scale_row(r, inv);
      if (rhs) rhs->scale_row(r, inv);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || (*this)(i, c).is_zero()) continue;
        const Scalar f = (*this)(i, c);
        axpy_row(i, r, f);
        if (rhs) rhs->axpy_row(i, r, f);
      }
      ++r;
    }
    return r;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void scale_row(std::size_t a, const Scalar& k) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) *= k;
  }
  // row[a] -= f * row[b]
  void axpy_row(std::size_t a, std::size_t b, const Scalar& f) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) -= f * (*this)(b, j);
  }

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

/// Vec permutation sigma_{m,p}: sigma (A (x) B) sigma^T = B (x) A for A in
/// F_m, B in F_p.
inline Matrix vec_perm_sigma(Field f, std::size_t m, std::size_t p) {
  if (m == 0 || p == 0) throw Error(Errc::invalid_arg, "vec permutation needs positive orders");
  Matrix s(f, m * p, m * p);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < p; ++k) s(k * m + i, i * p + k) = f.one();
  return s;
}

}  // namespace kron
