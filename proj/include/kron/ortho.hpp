#pragma once

// F_m (x) F_n as a left F_m-module under A.X = (A (x) I_n) X, with the
// F_m-valued form (X, Y) = Ptr(X Y^T) and the orthogonality X _|_ Y iff
// (X, Y) = (Y, X) = 0. The blocks X_ij of X = sum X_ij (x) E_ij are
// recovered as (X, I_m (x) E_ij). Complex matrices embed over Q through
// a + ib -> [[a, b], [-b, a]].

#include <optional>
#include <string>
#include <vector>

#include "kron/kron_ops.hpp"
#include "kron/report.hpp"

namespace kron {

inline void require_module_shape(const Matrix& x, std::size_t m, std::size_t n, const char* what) {
  if (!x.is_square() || x.rows() != m * n)
    throw Error(Errc::dimension_mismatch, std::string(what) + " must have order m n = " + std::to_string(m * n) +
                                              ", got " + x.shape());
}

/// (X, Y) = Ptr(X Y^T) with mode split (m, n).
inline Matrix sesq_form(const Matrix& x, const Matrix& y, std::size_t m, std::size_t n) {
  require_same_field(x.field(), y.field());
  require_module_shape(x, m, n, "X");
  require_module_shape(y, m, n, "Y");
  return partial_trace(x * y.transpose(), m, n);
}

inline bool is_perp(const Matrix& x, const Matrix& y, std::size_t m, std::size_t n) {
  return sesq_form(x, y, m, n).is_zero() && sesq_form(y, x, m, n).is_zero();
}

/// A.X = (A (x) I_n) X, so A.(B (x) C) = (AB) (x) C.
inline Matrix module_act(const Matrix& a, const Matrix& x, std::size_t n) {
  require_same_field(a.field(), x.field());
  if (!a.is_square()) throw Error(Errc::not_square, "module action needs a square A");
  require_module_shape(x, a.rows(), n, "X");
  return kron_product(a, Matrix::identity(a.field(), n)) * x;
}

/// I_m (x) E_ij for 1-based (i, j).
inline Matrix ortho_basis_element(const Field& f, std::size_t m, std::size_t n, std::size_t i, std::size_t j) {
  return kron_product(Matrix::identity(f, m), Matrix::basis_unit(f, i, j, n));
}

/// First basis element I_m (x) E_ij on which (X, .) and (Y, .) differ.
inline std::optional<std::pair<std::size_t, std::size_t>> orthocmp_separating_probe(const Matrix& x, const Matrix& y,
                                                                                  std::size_t m, std::size_t n) {
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      const Matrix e = ortho_basis_element(x.field(), m, n, i, j);
      if (sesq_form(x, e, m, n) != sesq_form(y, e, m, n)) return std::make_pair(i, j);
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// exact complex rationals

struct ComplexQ {
  Rational re = 0, im = 0;

  ComplexQ conj() const { return {re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }
  friend ComplexQ operator+(const ComplexQ& a, const ComplexQ& b) { return {a.re + b.re, a.im + b.im}; }
  friend ComplexQ operator-(const ComplexQ& a, const ComplexQ& b) { return {a.re - b.re, a.im - b.im}; }
  friend ComplexQ operator*(const ComplexQ& a, const ComplexQ& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const ComplexQ& a, const ComplexQ& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const ComplexQ& a, const ComplexQ& b) { return !(a == b); }
};

class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix z(n, n);
    for (std::size_t i = 0; i < n; ++i) z(i, i).re = 1;
    return z;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  ComplexQ& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const ComplexQ& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  /// Conjugate transpose.
  ComplexMatrix adjoint() const {
    ComplexMatrix z(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) z(j, i) = (*this)(i, j).conj();
    return z;
  }

  ComplexQ trace() const {
    if (rows_ != cols_) throw Error(Errc::not_square, "trace of a non-square complex matrix");
    ComplexQ t;
    for (std::size_t i = 0; i < rows_; ++i) t = t + (*this)(i, i);
    return t;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(Errc::dimension_mismatch, "complex product shape mismatch");
    ComplexMatrix z(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        for (std::size_t j = 0; j < b.cols_; ++j) z(i, j) = z(i, j) + a(i, k) * b(k, j);
    return z;
  }

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<ComplexQ> data_;
};

/// Hilbert-Schmidt product <A, B> = tr(A B*).
inline ComplexQ hilbert_schmidt(const ComplexMatrix& a, const ComplexMatrix& b) { return (a * b.adjoint()).trace(); }

/// phi(z) = [[re, im], [-im, re]].
inline Matrix mobius_embed(const ComplexQ& z) {
  const Field q = Field::rational();
  Matrix m(q, 2, 2);
  m(0, 0) = Scalar::from_rational(q, z.re);
  m(0, 1) = Scalar::from_rational(q, z.im);
  m(1, 0) = Scalar::from_rational(q, -z.im);
  m(1, 1) = Scalar::from_rational(q, z.re);
  return m;
}

/// phi(sum z_ij E_ij) = sum phi(z_ij) (x) E_ij, of order 2n over Q.
inline Matrix mobius_embed(const ComplexMatrix& z) {
  const Field q = Field::rational();
  const std::size_t r = z.rows(), c = z.cols();
  Matrix out(q, 2 * r, 2 * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      const Matrix b = mobius_embed(z(i, j));
      for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t t = 0; t < 2; ++t) out(s * r + i, t * c + j) = b(s, t);
    }
  return out;
}

inline ComplexMatrix random_complex_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  const Field q = Field::rational();
  ComplexMatrix z(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) z(i, j) = {rng.scalar(q).rational(), rng.scalar(q).rational()};
  return z;
}

/// {"rows", "cols", "entries": [[["re", "im"], ...], ...]}.
inline Json complex_matrix_to_json(const ComplexMatrix& z) {
  Json j = Json::object();
  j["rows"] = z.rows();
  j["cols"] = z.cols();
  Json rows = Json::array();
  for (std::size_t i = 0; i < z.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < z.cols(); ++k) row.push_back(Json::array({z(i, k).re.str(), z(i, k).im.str()}));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

inline ComplexMatrix complex_matrix_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::parse_error, "complex matrix must be a JSON object");
  const std::size_t r = detail::json_size(j, "rows"), c = detail::json_size(j, "cols");
  const Json& e = j.contains("entries") ? j["entries"] : Json();
  if (!e.is_array() || e.size() != r) throw Error(Errc::parse_error, "complex 'entries' must hold " + std::to_string(r) + " rows");
  const Field q = Field::rational();
  ComplexMatrix z(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!e[i].is_array() || e[i].size() != c) throw Error(Errc::parse_error, "complex row " + std::to_string(i) + " has wrong length");
    for (std::size_t k = 0; k < c; ++k) {
      const Json& p = e[i][k];
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
        throw Error(Errc::parse_error, "complex entry must be [\"re\", \"im\"]");
      z(i, k) = {q.parse(p[0].get<std::string>()).rational(), q.parse(p[1].get<std::string>()).rational()};
    }
  }
  return z;
}

// ---------------------------------------------------------------------------
// seeded campaign

inline Report verify_module_laws(const CampaignConfig& cfg) {
  cfg.validate(3);
  const Field f = cfg.field;
  Report rep;
  auto check = [&](const char* name, auto&& body) { rep.add(seeded_check(name, cfg, body)); };
  auto dim = [&](Rng& rng) { return rng.dim(1, cfg.dims); };
  auto el = [&](std::size_t m, std::size_t n, std::size_t i, std::size_t j) { return ortho_basis_element(f, m, n, i, j); };

  check("ortho.sesquilinear", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const Matrix x = rng.matrix(f, m * n), y = rng.matrix(f, m * n), z = rng.matrix(f, m * n), a = rng.matrix(f, m);
    const Scalar k = rng.scalar(f);
    const bool ok = sesq_form(x + k * y, z, m, n) == sesq_form(x, z, m, n) + k * sesq_form(y, z, m, n) &&
                    sesq_form(x, y + k * z, m, n) == sesq_form(x, y, m, n) + k * sesq_form(x, z, m, n) &&
                    sesq_form(module_act(a, x, n), y, m, n) == a * sesq_form(x, y, m, n) &&
                    sesq_form(x, module_act(a, y, n), m, n) == sesq_form(x, y, m, n) * a.transpose();
    if (ok) return std::nullopt;
    return witness_of({{"X", &x}, {"Y", &y}, {"Z", &z}, {"A", &a}});
  });

  // (A.X, B.Y) = A * (X, Y) (.) B with B (.) C = B C^T
  check("ortho.bimodule", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const Matrix x = rng.matrix(f, m * n), y = rng.matrix(f, m * n), a = rng.matrix(f, m), b = rng.matrix(f, m);
    if (sesq_form(module_act(a, x, n), module_act(b, y, n), m, n) == a * sesq_form(x, y, m, n) * b.transpose() &&
        sesq_form(y, x, m, n) == sesq_form(x, y, m, n).transpose())
      return std::nullopt;
    return witness_of({{"X", &x}, {"Y", &y}, {"A", &a}, {"B", &b}});
  });

  check("ortho.involution", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng);
    const Matrix a = rng.matrix(f, m), b = rng.matrix(f, m), c = rng.matrix(f, m);
    if ((a * b * c.transpose()).transpose() == c * b.transpose() * a.transpose()) return std::nullopt;
    return witness_of({{"A", &a}, {"B", &b}, {"C", &c}});
  });

  check("ortho.module_action", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const Matrix a = rng.matrix(f, m), b = rng.matrix(f, m), c = rng.matrix(f, n), x = rng.matrix(f, m * n);
    if (module_act(a, kron_product(b, c), n) == kron_product(a * b, c) &&
        module_act(a, module_act(b, x, n), n) == module_act(a * b, x, n) &&
        module_act(Matrix::identity(f, m), x, n) == x)
      return std::nullopt;
    return witness_of({{"A", &a}, {"B", &b}, {"C", &c}, {"X", &x}});
  });

  // X, Y, Z with disjoint block supports are pairwise orthogonal.
  check("ortho.perp_axioms", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    Matrix x = Matrix::zero(f, m * n), y = x, z = x;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) {
        const Matrix blk = kron_product(rng.matrix(f, m), Matrix::basis_unit(f, i, j, n));
        (rng.coin() ? x : (rng.coin() ? y : z)) += blk;
      }
    const Matrix a = rng.matrix(f, m);
    const bool hyp = is_perp(x, y, m, n) && is_perp(x, z, m, n);
    if (hyp && is_perp(y, x, m, n) && is_perp(x, y + z, m, n) && is_perp(x, module_act(a, y, n), m, n))
      return std::nullopt;
    return witness_of({{"X", &x}, {"Y", &y}, {"Z", &z}, {"A", &a}});
  });

  check("ortho.basis", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const Matrix im = Matrix::identity(f, m), zero = Matrix::zero(f, m);
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j)
        for (std::size_t k = 1; k <= n; ++k)
          for (std::size_t l = 1; l <= n; ++l) {
            const Matrix v = sesq_form(el(m, n, i, j), el(m, n, k, l), m, n);
            if (v != ((i == k && j == l) ? im : zero)) {
              Json w = witness_of({{"form", &v}});
              w["ij"] = {i, j};
              w["kl"] = {k, l};
              return w;
            }
          }
    return std::nullopt;
  });

  // X _|_ every Y iff X = 0: zero X is orthogonal to random Y, and a nonzero
  // X is detected by some basis probe.
  check("ortho.nondegeneracy", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const Matrix x = rng.matrix(f, m * n), y = rng.matrix(f, m * n);
    if (!is_perp(Matrix::zero(f, m * n), y, m, n)) return witness_of({{"Y", &y}});
    const bool detected = orthocmp_separating_probe(x, Matrix::zero(f, m * n), m, n).has_value();
    if (detected != !x.is_zero()) return witness_of({{"X", &x}});
    return std::nullopt;
  });

  check("ortho.nondegeneracy.negative", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    Matrix x = Matrix::zero(f, m * n);
    x(rng.index(m * n), rng.index(m * n)) = rng.nonzero_scalar(f);
    if (orthocmp_separating_probe(x, Matrix::zero(f, m * n), m, n)) return std::nullopt;
    return witness_of({{"X", &x}});
  });

  // X = Y iff the basis probes agree; each probe returns the block X_ij.
  check("ortho.orthocmp", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const Matrix x = rng.matrix(f, m * n);
    Matrix y = x;
    if (rng.coin()) y(rng.index(m * n), rng.index(m * n)) += rng.nonzero_scalar(f);
    if (orthocmp_separating_probe(x, y, m, n).has_value() == (x == y)) return witness_of({{"X", &x}, {"Y", &y}});
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) {
        Matrix blk(f, m, m);
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t c = 0; c < m; ++c) blk(r, c) = x(r * n + i - 1, c * n + j - 1);
        if (sesq_form(x, el(m, n, i, j), m, n) != blk) return witness_of({{"X", &x}});
      }
    return std::nullopt;
  });

  // The embedding lives over Q regardless of the campaign field.
  check("ortho.mobius", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t n = dim(rng);
    const ComplexMatrix a = random_complex_matrix(rng, n, n), b = random_complex_matrix(rng, n, n);
    const Matrix pa = mobius_embed(a), pb = mobius_embed(b);
    if (mobius_embed(hilbert_schmidt(a, b)) == sesq_form(pa, pb, 2, n) && mobius_embed(a * b) == pa * pb &&
        mobius_embed(b.adjoint()) == pb.transpose())
      return std::nullopt;
    Json w = Json::object();
    w["A"] = complex_matrix_to_json(a);
    w["B"] = complex_matrix_to_json(b);
    return w;
  });

  return rep;
}

}  // namespace kron
