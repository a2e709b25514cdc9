#pragma once

// Kronecker-commuting pairs x (x) y = y (x) x: nonzero 2-vectors against
// nonzero q-vectors and trace-one 2x2 against trace-one q x q matrices,
// q prime. Classifiers name the parametric form of a commuting pair; the
// brute-force enumerator over small GF(p) is the oracle they are checked
// against.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kron/kron_ops.hpp"
#include "kron/serialize.hpp"

namespace kron {

enum class FormTag {
  scalar_multiple,  // vectors, q = 2: b = beta a
  e1_aligned,       // a = c (1,0), b = beta c (1,0,...,0)
  eq_aligned,       // a = c (0,1), b = beta c (0,...,0,1)
  all_ones,         // a = c (1,1), b = beta c (1,...,1)
  q2_equal,         // matrices, q = 2: A = B
  half_identity,    // I_2 / 2, I_q / q
  half_allones,     // J_2 / 2, J_q / q
  e11_e11,
  e22_eqq,
  rowspan_top,      // first rows of ones
  rowspan_bottom,   // last rows of ones
  colspan_left,     // first columns of ones
  colspan_right,    // last columns of ones
  non_commuting,
  unclassified,     // commuting but matching no listed form
};

inline const char* form_tag_name(FormTag t) {
  switch (t) {
    case FormTag::scalar_multiple: return "scalar-multiple";
    case FormTag::e1_aligned: return "e1-aligned";
    case FormTag::eq_aligned: return "eq-aligned";
    case FormTag::all_ones: return "all-ones";
    case FormTag::q2_equal: return "q2-equal";
    case FormTag::half_identity: return "half-identity";
    case FormTag::half_allones: return "half-allones";
    case FormTag::e11_e11: return "E11-E11";
    case FormTag::e22_eqq: return "E22-Eqq";
    case FormTag::rowspan_top: return "rowspan-top";
    case FormTag::rowspan_bottom: return "rowspan-bottom";
    case FormTag::colspan_left: return "colspan-left";
    case FormTag::colspan_right: return "colspan-right";
    case FormTag::non_commuting: return "NonCommuting";
    case FormTag::unclassified: return "unclassified";
  }
  return "?";
}

struct Classification {
  FormTag tag = FormTag::non_commuting;
  std::optional<Scalar> beta;  // vector forms only
};

inline bool kron_commutes(const Matrix& x, const Matrix& y) {
  require_same_field(x.field(), y.field());
  return kron_product(x, y) == kron_product(y, x);
}

namespace detail {

inline void require_prime_q(std::size_t q) {
  if (!is_prime(q)) throw Error(Errc::not_prime, "q = " + std::to_string(q) + " is not prime");
}

inline Matrix unit_column(const Field& f, std::size_t k, std::size_t n) { return Matrix::basis_unit(f, k, 1, n, 1); }

/// (A, B) for the q != 2 trace-one forms admissible over f.
struct MatrixForm {
  FormTag tag;
  Matrix a, b;
};

inline std::vector<MatrixForm> trace1_forms(const Field& f, std::size_t q) {
  std::vector<MatrixForm> out;
  if (!f.divides_characteristic(2 * q)) {
    const Scalar h = f.from_ratio(1, 2), iq = f.from_ratio(1, static_cast<long long>(q));
    out.push_back({FormTag::half_identity, h * Matrix::identity(f, 2), iq * Matrix::identity(f, q)});
    out.push_back({FormTag::half_allones, h * Matrix::all_ones(f, 2, 2), iq * Matrix::all_ones(f, q, q)});
  }
  out.push_back({FormTag::e11_e11, Matrix::basis_unit(f, 1, 1, 2), Matrix::basis_unit(f, 1, 1, q)});
  out.push_back({FormTag::e22_eqq, Matrix::basis_unit(f, 2, 2, 2), Matrix::basis_unit(f, q, q, q)});
  // one row (column) of ones in the first or last position
  auto row = [&](std::size_t r, std::size_t n) { return kron_product(unit_column(f, r, n), Matrix::all_ones(f, 1, n)); };
  auto col = [&](std::size_t c, std::size_t n) { return row(c, n).transpose(); };
  out.push_back({FormTag::rowspan_top, row(1, 2), row(1, q)});
  out.push_back({FormTag::rowspan_bottom, row(2, 2), row(q, q)});
  out.push_back({FormTag::colspan_left, col(1, 2), col(1, q)});
  out.push_back({FormTag::colspan_right, col(2, 2), col(q, q)});
  return out;
}

inline std::optional<std::size_t> first_nonzero(const Matrix& v) {
  for (std::size_t i = 0; i < v.rows(); ++i)
    if (!v(i, 0).is_zero()) return i;
  return std::nullopt;
}

}  // namespace detail

/// Vector classification; beta is defined by b = beta c b_0 where a = c a_0
/// and (a_0, b_0) is the normalized form.
inline Classification classify_commuting_vector(const Matrix& a, const Matrix& b, std::size_t q) {
  detail::require_prime_q(q);
  require_same_field(a.field(), b.field());
  if (a.rows() != 2 || a.cols() != 1 || b.rows() != q || b.cols() != 1)
    throw Error(Errc::dimension_mismatch, "expected a 2-vector and a " + std::to_string(q) + "-vector");
  if (a.is_zero() || b.is_zero()) throw Error(Errc::zero_vector, "vectors must be nonzero");
  if (!kron_commutes(a, b)) return {};
  const Field f = a.field();
  if (q == 2) {
    const std::size_t k = *detail::first_nonzero(a);
    return {FormTag::scalar_multiple, b(k, 0) / a(k, 0)};
  }
  const bool a1 = !a(0, 0).is_zero(), a2 = !a(1, 0).is_zero();
  const Matrix ones = Matrix::all_ones(f, q, 1);
  if (a1 && !a2) {
    const Scalar beta = b(0, 0) / a(0, 0);
    if (b == beta * a(0, 0) * detail::unit_column(f, 1, q)) return {FormTag::e1_aligned, beta};
  } else if (!a1 && a2) {
    const Scalar beta = b(q - 1, 0) / a(1, 0);
    if (b == beta * a(1, 0) * detail::unit_column(f, q, q)) return {FormTag::eq_aligned, beta};
  } else if (a(0, 0) == a(1, 0)) {
    const Scalar beta = b(0, 0) / a(0, 0);
    if (b == beta * a(0, 0) * ones) return {FormTag::all_ones, beta};
  }
  return {FormTag::unclassified, std::nullopt};
}

/// Trace-one classification. A non-commuting pair whose A is one of the
/// scaled forms that has no partner in this characteristic reports
/// FormUnavailable.
inline Classification classify_commuting_trace1(const Matrix& a, const Matrix& b, std::size_t q) {
  detail::require_prime_q(q);
  require_same_field(a.field(), b.field());
  if (!a.is_square() || a.rows() != 2 || !b.is_square() || b.rows() != q)
    throw Error(Errc::dimension_mismatch, "expected 2x2 and " + std::to_string(q) + "x" + std::to_string(q) + " matrices");
  const Field f = a.field();
  if (a.trace() != f.one() || b.trace() != f.one()) throw Error(Errc::bad_trace, "both matrices need trace 1");
  const bool commutes = kron_commutes(a, b);
  if (q == 2) return {a == b ? FormTag::q2_equal : FormTag::non_commuting, std::nullopt};
  if (commutes) {
    for (const auto& form : detail::trace1_forms(f, q))
      if (form.a == a && form.b == b) return {form.tag, std::nullopt};
    return {FormTag::unclassified, std::nullopt};
  }
  if (f.divides_characteristic(q) && !f.divides_characteristic(2)) {
    const Scalar h = f.from_ratio(1, 2);
    if (a == h * Matrix::identity(f, 2) || a == h * Matrix::all_ones(f, 2, 2))
      throw Error(Errc::form_unavailable, "the partner (1/q) form needs char(F) != " + std::to_string(q));
  }
  return {};
}

enum class CommutingKind { vectors, trace1_matrices };

inline CommutingKind parse_commuting_kind(std::string_view s) {
  if (s == "vectors") return CommutingKind::vectors;
  if (s == "trace1" || s == "trace1_matrices") return CommutingKind::trace1_matrices;
  throw Error(Errc::invalid_arg, "unknown kind '" + std::string(s) + "', expected vectors or trace1");
}

struct CommutingPair {
  Matrix a, b;
  Classification cls;
};

namespace detail {

inline void require_small_space(const Field& f, std::size_t q, CommutingKind kind) {
  if (f.kind() != FieldKind::prime) throw Error(Errc::unsupported_field, "enumeration runs over GF(p)");
  require_prime_q(q);
  const std::uint64_t p = f.modulus();
  const bool ok = (p == 2 || p == 3) && (kind == CommutingKind::vectors ? (q == 2 || q == 3 || q == 5) : (q == 2 || q == 3));
  if (!ok)
    throw Error(Errc::search_space_too_large, "enumeration bounded to p in {2,3} and q in " +
                                                  std::string(kind == CommutingKind::vectors ? "{2,3,5}" : "{2,3}"));
}

/// Counter over p-ary digit vectors.
inline bool next_digits(std::vector<std::uint64_t>& d, std::uint64_t p) {
  for (auto& x : d) {
    if (++x < p) return true;
    x = 0;
  }
  return false;
}

/// Integer residues of x (x) y and y (x) x compared entrywise; x is r1 x c1
/// and y is r2 x c2, both row-major.
inline bool commute_raw(const std::vector<std::uint64_t>& x, std::size_t r1, std::size_t c1,
                        const std::vector<std::uint64_t>& y, std::size_t r2, std::size_t c2, std::uint64_t p) {
  for (std::size_t i = 0; i < r1; ++i)
    for (std::size_t j = 0; j < c1; ++j)
      for (std::size_t k = 0; k < r2; ++k)
        for (std::size_t l = 0; l < c2; ++l) {
          // (x (x) y)[i r2 + k, j c2 + l]; the same position in y (x) x
          const std::size_t row = i * r2 + k, col = j * c2 + l;
          const std::size_t yi = row / r1, xi = row % r1, yj = col / c1, xj = col % c1;
          if ((x[i * c1 + j] * y[k * c2 + l]) % p != (y[yi * c2 + yj] * x[xi * c1 + xj]) % p) return false;
        }
  return true;
}

inline Matrix from_digits(const Field& f, const std::vector<std::uint64_t>& d, std::size_t r, std::size_t c) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(static_cast<long long>(d[i * c + j]));
  return m;
}

inline std::uint64_t trace_raw(const std::vector<std::uint64_t>& d, std::size_t n, std::uint64_t p) {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < n; ++i) t += d[i * n + i];
  return t % p;
}

/// All p-ary n x n digit matrices with trace one, in counter order.
inline std::vector<std::vector<std::uint64_t>> trace_one_digits(std::size_t n, std::uint64_t p) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> d(n * n, 0);
  do {
    if (trace_raw(d, n, p) == 1 % p) out.push_back(d);
  } while (next_digits(d, p));
  return out;
}

inline std::vector<std::vector<std::uint64_t>> nonzero_digits(std::size_t n, std::uint64_t p) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> d(n, 0);
  while (next_digits(d, p)) out.push_back(d);
  return out;
}

}  // namespace detail

/// Every commuting pair over GF(p), each with its classifier verdict.
inline std::vector<CommutingPair> enumerate_commuting_pairs(const Field& f, std::size_t q, CommutingKind kind) {
  detail::require_small_space(f, q, kind);
  const std::uint64_t p = f.modulus();
  std::vector<CommutingPair> out;
  if (kind == CommutingKind::vectors) {
    const auto as = detail::nonzero_digits(2, p), bs = detail::nonzero_digits(q, p);
    for (const auto& a : as)
      for (const auto& b : bs)
        if (detail::commute_raw(a, 2, 1, b, q, 1, p)) {
          Matrix ma = detail::from_digits(f, a, 2, 1), mb = detail::from_digits(f, b, q, 1);
          Classification c = classify_commuting_vector(ma, mb, q);
          out.push_back({std::move(ma), std::move(mb), std::move(c)});
        }
  } else {
    const auto as = detail::trace_one_digits(2, p), bs = detail::trace_one_digits(q, p);
    for (const auto& a : as)
      for (const auto& b : bs)
        if (detail::commute_raw(a, 2, 2, b, q, q, p)) {
          Matrix ma = detail::from_digits(f, a, 2, 2), mb = detail::from_digits(f, b, q, q);
          Classification c = classify_commuting_trace1(ma, mb, q);
          out.push_back({std::move(ma), std::move(mb), std::move(c)});
        }
  }
  return out;
}

/// The pairs the parametric forms generate over GF(p), independent of the
/// enumerator.
inline std::vector<std::pair<Matrix, Matrix>> parametric_pairs(const Field& f, std::size_t q, CommutingKind kind) {
  detail::require_small_space(f, q, kind);
  const std::uint64_t p = f.modulus();
  std::vector<std::pair<Matrix, Matrix>> out;
  if (kind == CommutingKind::vectors) {
    if (q == 2) {
      for (const auto& a : detail::nonzero_digits(2, p))
        for (std::uint64_t beta = 1; beta < p; ++beta) {
          const Matrix ma = detail::from_digits(f, a, 2, 1);
          out.emplace_back(ma, f.from_int(static_cast<long long>(beta)) * ma);
        }
      return out;
    }
    const Matrix e1 = detail::unit_column(f, 1, 2), e2 = detail::unit_column(f, 2, 2);
    const Matrix b1 = detail::unit_column(f, 1, q), bq = detail::unit_column(f, q, q);
    const Matrix one2 = Matrix::all_ones(f, 2, 1), oneq = Matrix::all_ones(f, q, 1);
    for (std::uint64_t c = 1; c < p; ++c)
      for (std::uint64_t beta = 1; beta < p; ++beta) {
        const Scalar sc = f.from_int(static_cast<long long>(c)), sb = f.from_int(static_cast<long long>(beta)) * sc;
        out.emplace_back(sc * e1, sb * b1);
        out.emplace_back(sc * e2, sb * bq);
        out.emplace_back(sc * one2, sb * oneq);
      }
    return out;
  }
  if (q == 2) {
    for (const auto& a : detail::trace_one_digits(2, p)) {
      const Matrix ma = detail::from_digits(f, a, 2, 2);
      out.emplace_back(ma, ma);
    }
    return out;
  }
  for (auto& form : detail::trace1_forms(f, q)) out.emplace_back(std::move(form.a), std::move(form.b));
  return out;
}

/// Canonical text key of a pair, for set comparison.
inline std::string pair_key(const Matrix& a, const Matrix& b) { return a.to_string() + "|" + b.to_string(); }

struct EnumerationSummary {
  std::size_t enumerated = 0;
  std::size_t predicted = 0;
  std::size_t classified = 0;   // enumerated pairs with a form tag
  std::size_t mismatched = 0;   // symmetric difference of the two sets
  bool agree() const noexcept { return mismatched == 0 && classified == enumerated && enumerated == predicted; }
};

inline EnumerationSummary compare_with_forms(const std::vector<CommutingPair>& pairs,
                                             const std::vector<std::pair<Matrix, Matrix>>& forms) {
  std::set<std::string> e, p;
  EnumerationSummary s;
  for (const auto& cp : pairs) {
    e.insert(pair_key(cp.a, cp.b));
    if (cp.cls.tag != FormTag::non_commuting && cp.cls.tag != FormTag::unclassified) ++s.classified;
  }
  for (const auto& [a, b] : forms) p.insert(pair_key(a, b));
  s.enumerated = e.size();
  s.predicted = p.size();
  for (const auto& k : e) s.mismatched += p.count(k) ? 0 : 1;
  for (const auto& k : p) s.mismatched += e.count(k) ? 0 : 1;
  return s;
}

inline Json commuting_pair_to_json(const CommutingPair& cp) {
  Json j = Json::object();
  j["a"] = matrix_to_json(cp.a);
  j["b"] = matrix_to_json(cp.b);
  j["tag"] = form_tag_name(cp.cls.tag);
  if (cp.cls.beta) j["beta"] = cp.cls.beta->to_string();
  return j;
}

}  // namespace kron
