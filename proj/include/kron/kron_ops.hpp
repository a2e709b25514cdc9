#pragma once

#include <cmath>
#include <cstddef>

#include "kron/serialize.hpp"

namespace kron {

/// (A (x) B)[i s + p, j s' + q] = A[i, j] B[p, q] for B of shape s x s'.
/// Rectangular operands are allowed.
inline Matrix kron_product(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  const std::size_t s = b.rows(), t = b.cols();
  Matrix r(a.field(), a.rows() * s, a.cols() * t);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& x = a(i, j);
      if (x.is_zero() && a.field().is_exact()) continue;
      for (std::size_t p = 0; p < s; ++p)
        for (std::size_t q = 0; q < t; ++q) r(i * s + p, j * t + q) = x * b(p, q);
    }
  return r;
}

/// A (+) B = A (x) I_n + I_m (x) B.
inline Matrix kron_sum(const Matrix& a, const Matrix& b) {
  a.require_square("Kronecker sum");
  b.require_square("Kronecker sum");
  require_same_field(a.field(), b.field());
  return kron_product(a, Matrix::identity(a.field(), b.rows())) + kron_product(Matrix::identity(a.field(), a.rows()), b);
}

/// j-fold Kronecker product x (x) ... (x) x.
inline Matrix kron_power(const Matrix& x, std::size_t j) {
  if (j == 0) throw Error(Errc::invalid_arg, "Kronecker power needs j >= 1");
  Matrix r = x;
  for (std::size_t k = 1; k < j; ++k) r = kron_product(r, x);
  return r;
}

/// Matrix exponential over real64 by scaling and squaring. The Taylor
/// series of the scaled matrix stops once a term's max-norm is below 1e-18.
inline Matrix matrix_exp(const Matrix& a) {
  if (a.field().kind() != FieldKind::real64)
    throw Error(Errc::unsupported_field, "matrix exponential needs real64, got " + a.field().name());
  a.require_square("matrix exponential");
  const Field f = a.field();
  const std::size_t n = a.rows();
  int squarings = 0;
  double norm = a.max_norm() * static_cast<double>(n);
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  const Matrix x = a * f.from_double(std::ldexp(1.0, -squarings));
  Matrix result = Matrix::identity(f, n);
  Matrix term = Matrix::identity(f, n);
  for (int k = 1; k < 64; ++k) {
    term = (term * x) * f.from_double(1.0 / k);
    result += term;
    if (term.max_norm() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

/// Solves B X + X A^T = Y for X (n x m) through (A (+) B) vec(X) = vec(Y).
inline Matrix sylvester_solve(const Matrix& a, const Matrix& b, const Matrix& y) {
  a.require_square("Sylvester solve");
  b.require_square("Sylvester solve");
  require_same_field(a.field(), b.field());
  require_same_field(a.field(), y.field());
  const std::size_t m = a.rows(), n = b.rows();
  if (y.rows() != n || y.cols() != m)
    throw Error(Errc::dimension_mismatch, "Sylvester right-hand side must be " + std::to_string(n) + "x" +
                                              std::to_string(m) + ", got " + y.shape());
  const Matrix sys = kron_sum(a, b);
  try {
    return Matrix::unvec(sys.solve(y.vec()), n, m);
  } catch (const Error& e) {
    if (e.code() != Errc::singular) throw;
    Json w = Json::object();
    w["system"] = matrix_to_json(sys);
    throw Error(Errc::singular, "A (+) B is singular", w);
  }
}

}  // namespace kron
