#pragma once

// Linear Kronecker differences F_{mn} x F_n -> F_m and their alpha-tensor
// representation
//   delta(A, B) = tr_12(alpha^T (A (x) I_m - I_m (x) B (x) I_m)),
//   alpha = sum_ij E_ij (x) upsilon (x) E_ji + gamma,
// with alpha in F_m (x) F_n (x) F_m, tr(upsilon) = 1 and tr_2(gamma) = 0.

#include <mutex>
#include <optional>
#include <utility>

#include "kron/quotient.hpp"

namespace kron {

enum class UpsilonMode { unit_trace_reference, normalized_identity };
enum class Reference { e11, idn };

inline const char* upsilon_mode_name(UpsilonMode m) {
  return m == UpsilonMode::normalized_identity ? "normalized_identity" : "unit_trace_reference";
}

inline UpsilonMode parse_upsilon_mode(std::string_view s) {
  if (s == "unit_trace_reference") return UpsilonMode::unit_trace_reference;
  if (s == "normalized_identity") return UpsilonMode::normalized_identity;
  throw Error(Errc::parse_error, "unknown upsilon mode '" + std::string(s) + "'");
}

inline Reference parse_reference(std::string_view s) {
  if (s == "e11") return Reference::e11;
  if (s == "idn") return Reference::idn;
  throw Error(Errc::parse_error, "unknown reference '" + std::string(s) + "', expected e11 or idn");
}

/// E_11 or (1/n) I_n; the latter needs char(F) not dividing n.
inline Matrix reference_upsilon(const Field& f, std::size_t n, Reference r) {
  if (r == Reference::e11) return Matrix::basis_unit(f, 1, 1, n);
  if (f.divides_characteristic(n))
    throw Error(Errc::characteristic_divides_n,
                "(1/n) I_n needs char(F) not dividing n = " + std::to_string(n) + " over " + f.name());
  return Matrix::identity(f, n) * f.from_int(static_cast<long long>(n)).inverse();
}

/// sum_ij E_ij (x) upsilon (x) E_ji; entry ((a,k,c),(b,l,d)) is
/// upsilon[k,l] [a = d] [b = c].
inline TensorView structured_alpha(const Matrix& upsilon, std::size_t m) {
  upsilon.require_square("structured alpha");
  const std::size_t n = upsilon.rows();
  Matrix r(upsilon.field(), m * n * m, m * n * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) r((a * n + k) * m + c, (c * n + l) * m + a) = upsilon(k, l);
  return TensorView(std::move(r), m, n, m);
}

/// M (-) B = (M - I_m (x) B) (/) I_n for a selector quotient.
inline Matrix induced_difference(const Matrix& mm, const Matrix& b, const QuotientSelector& sel = selector_default) {
  const std::size_t m = detail::outer_order(mm, b, "induced difference");
  const Field f = mm.field();
  return kron_quotient(mm - kron_product(Matrix::identity(f, m), b), Matrix::identity(f, b.rows()), sel);
}

inline BinaryOp induced_difference_op(QuotientSelector sel = selector_default) {
  return [sel = std::move(sel)](const Matrix& mm, const Matrix& b) { return induced_difference(mm, b, sel); };
}

/// Literal evaluation tr_12(alpha^T ((A - I_m (x) B) (x) I_m)) for alpha with
/// modes (m, n, m).
inline Matrix delta_eval_alpha(const TensorView& alpha, const Matrix& a, const Matrix& b) {
  const std::size_t m = alpha.d1(), n = alpha.d2();
  if (alpha.d3() != m) throw Error(Errc::dimension_mismatch, "alpha must have modes (m, n, m)");
  if (!a.is_square() || a.rows() != m * n || !b.is_square() || b.rows() != n)
    throw Error(Errc::dimension_mismatch, "difference of order (" + std::to_string(m) + "," + std::to_string(n) +
                                              ") applied to " + a.shape() + " and " + b.shape());
  const Field f = alpha.field();
  const Matrix im = Matrix::identity(f, m);
  const Matrix x = kron_product(a, im) - kron_product(kron_product(im, b), im);
  return trace_modes(alpha.matrix().transpose() * x, alpha.dims(), {0, 1});
}

class CanonicalDifference {
 public:
  /// Validates tr(upsilon) = 1 and tr_2(gamma) = 0, assembles alpha and
  /// checks tr_12(alpha^T (E_ij (x) I_n (x) I_m)) = E_ij on every E_ij.
  static CanonicalDifference build(const Matrix& upsilon, const TensorView& gamma,
                                   UpsilonMode mode = UpsilonMode::unit_trace_reference) {
    upsilon.require_square("upsilon");
    require_same_field(upsilon.field(), gamma.field());
    const Field f = upsilon.field();
    const std::size_t n = upsilon.rows(), m = gamma.d1();
    if (gamma.d2() != n || gamma.d3() != m)
      throw Error(Errc::dimension_mismatch, "gamma must have modes (m, n, m) with n = " + std::to_string(n));
    if (upsilon.trace() != f.one())
      throw Error(Errc::bad_trace, "tr(upsilon) = " + upsilon.trace().to_string() + ", expected 1",
                  matrix_to_json(upsilon));
    if (mode == UpsilonMode::normalized_identity && upsilon != reference_upsilon(f, n, Reference::idn))
      throw Error(Errc::invalid_arg, "normalized_identity mode needs upsilon = (1/n) I_n");
    const Matrix t2 = tr2(gamma);
    if (!t2.is_zero()) throw Error(Errc::bad_gamma, "tr_2(gamma) != 0", matrix_to_json(t2));
    CanonicalDifference cd(upsilon, gamma, mode);
    cd.check_constraint();
    return cd;
  }

  /// Reference form with gamma = 0.
  static CanonicalDifference reference(const Field& f, std::size_t m, std::size_t n, Reference r) {
    return build(reference_upsilon(f, n, r), TensorView::zero(f, m, n, m),
                 r == Reference::idn ? UpsilonMode::normalized_identity : UpsilonMode::unit_trace_reference);
  }

  std::size_t m() const noexcept { return gamma_.d1(); }
  std::size_t n() const noexcept { return gamma_.d2(); }
  const Field& field() const noexcept { return upsilon_.field(); }
  const TensorView& alpha() const noexcept { return alpha_; }
  const Matrix& upsilon() const noexcept { return upsilon_; }
  const TensorView& gamma() const noexcept { return gamma_; }
  UpsilonMode mode() const noexcept { return mode_; }

  /// beta = -tr_1(alpha), the action on (0, E_kl).
  Matrix beta() const { return -tr1(alpha_); }

  /// Literal tr_12 evaluation.
  Matrix eval(const Matrix& a, const Matrix& b) const { return delta_eval_alpha(alpha_, a, b); }

  /// Entrywise contraction with X = A - I_m (x) B:
  ///   structured part  R[i,j] = sum_{k,l} upsilon[k,l] X[(i,k),(j,l)]
  ///                    (= (1/n)(Ptr(A) - tr(B) I_m) in normalized mode),
  ///   gamma part       R[r,s] = sum gamma[(x, s),(y, r)] X[x, y].
  Matrix eval_closed(const Matrix& a, const Matrix& b) const {
    const std::size_t mm = m(), nn = n();
    if (!a.is_square() || a.rows() != mm * nn || !b.is_square() || b.rows() != nn)
      throw Error(Errc::dimension_mismatch, "difference of order (" + std::to_string(mm) + "," + std::to_string(nn) +
                                                ") applied to " + a.shape() + " and " + b.shape());
    const Field f = field();
    Matrix r(f, mm, mm);
    if (mode_ == UpsilonMode::normalized_identity) {
      if (f.divides_characteristic(nn))
        throw Error(Errc::characteristic_divides_n, "normalized form needs char(F) not dividing n");
      r = f.from_int(static_cast<long long>(nn)).inverse() *
          (partial_trace(a, mm, nn) - b.trace() * Matrix::identity(f, mm));
    } else {
      for (std::size_t i = 0; i < mm; ++i)
        for (std::size_t j = 0; j < mm; ++j) {
          Scalar s = f.zero();
          for (std::size_t k = 0; k < nn; ++k)
            for (std::size_t l = 0; l < nn; ++l) {
              const Scalar& u = upsilon_(k, l);
              if (u.is_zero()) continue;
              Scalar x = a(i * nn + k, j * nn + l);
              if (i == j) x -= b(k, l);
              s += u * x;
            }
          r(i, j) = s;
        }
    }
    if (gamma_zero_) return r;
    const std::size_t q = mm * nn;
    const Matrix& g = gamma_.matrix();
    for (std::size_t x = 0; x < q; ++x)
      for (std::size_t y = 0; y < q; ++y) {
        // X = A - I_m (x) B
        Scalar xv = a(x, y);
        if (x / nn == y / nn) xv -= b(x % nn, y % nn);
        if (xv.is_zero()) continue;
        for (std::size_t rr = 0; rr < mm; ++rr)
          for (std::size_t ss = 0; ss < mm; ++ss) r(rr, ss) += g(x * mm + ss, y * mm + rr) * xv;
      }
    return r;
  }

  Matrix operator()(const Matrix& a, const Matrix& b) const { return eval_closed(a, b); }

  BinaryOp op() const {
    return [cd = *this](const Matrix& a, const Matrix& b) { return cd.eval_closed(a, b); };
  }

  friend bool operator==(const CanonicalDifference& x, const CanonicalDifference& y) {
    return x.mode_ == y.mode_ && x.upsilon_ == y.upsilon_ && x.gamma_ == y.gamma_;
  }

 private:
  CanonicalDifference(Matrix upsilon, TensorView gamma, UpsilonMode mode)
      : upsilon_(std::move(upsilon)), gamma_(std::move(gamma)), mode_(mode) {
    Matrix a = structured_alpha(upsilon_, gamma_.d1()).matrix() + gamma_.matrix();
    alpha_ = TensorView(std::move(a), gamma_.d1(), gamma_.d2(), gamma_.d1());
    gamma_zero_ = gamma_.matrix().is_zero();
  }

  void check_constraint() const {
    const Field f = field();
    const std::size_t mm = m(), nn = n();
    const Matrix inm = Matrix::identity(f, nn * mm);
    const Matrix at = alpha_.matrix().transpose();
    for (std::size_t i = 1; i <= mm; ++i)
      for (std::size_t j = 1; j <= mm; ++j) {
        const Matrix e = Matrix::basis_unit(f, i, j, mm);
        if (trace_modes(at * kron_product(e, inm), alpha_.dims(), {0, 1}) != e)
          throw Error(Errc::not_difference, "alpha violates the difference constraint on E_" + std::to_string(i) +
                                                "," + std::to_string(j));
      }
  }

  Matrix upsilon_;
  TensorView gamma_;
  TensorView alpha_;
  UpsilonMode mode_;
  bool gamma_zero_ = true;
};

inline Matrix delta_eval(const CanonicalDifference& cd, const Matrix& a, const Matrix& b) { return cd.eval(a, b); }
inline Matrix delta_eval_closed(const CanonicalDifference& cd, const Matrix& a, const Matrix& b) {
  return cd.eval_closed(a, b);
}

inline CanonicalDifference build_alpha(const Matrix& upsilon, const TensorView& gamma,
                                       UpsilonMode mode = UpsilonMode::unit_trace_reference) {
  return CanonicalDifference::build(upsilon, gamma, mode);
}

/// Transpose law criterion: T_3(alpha) = T_3(alpha^T).
inline bool d1_criterion(const CanonicalDifference& cd) { return T3(cd.alpha()) == T3(cd.alpha().transposed()); }

/// Same criterion on gamma alone: T_3(gamma) = T_3(gamma^T). Agrees with
/// d1_criterion whenever upsilon is symmetric.
inline bool d1_criterion_gamma(const CanonicalDifference& cd) {
  return T3(cd.gamma()) == T3(cd.gamma().transposed());
}

/// Trace law criterion tr_3(alpha) = (1/n) I_{mn}; in normalized mode this
/// is tr_3(gamma) = 0. Needs char(F) not dividing n.
inline bool d2_criterion(const CanonicalDifference& cd) {
  const Field f = cd.field();
  if (f.divides_characteristic(cd.n()))
    throw Error(Errc::characteristic_divides_n, "trace law needs char(F) not dividing n");
  if (cd.mode() == UpsilonMode::normalized_identity) return tr3(cd.gamma()).is_zero();
  return tr3(cd.alpha()) == Matrix::identity(f, cd.m() * cd.n()) * f.from_int(static_cast<long long>(cd.n())).inverse();
}

struct Decomposition {
  TensorView alpha;
  Matrix beta;
  Matrix upsilon;
  TensorView gamma;
};

struct ExtractOptions {
  std::size_t spot_checks = 8;  // random linear combinations compared against alpha
  std::uint64_t seed = 0;
};

namespace detail {

/// alpha[(i,k,s),(j,l,r)] = delta(E_ij (x) E_kl, 0)[r, s]; validates the
/// difference axiom on the basis and linearity on random combinations.
inline TensorView probe_alpha(const BinaryOp& delta, const Field& f, std::size_t m, std::size_t n,
                              const ExtractOptions& opt, Matrix* beta_out) {
  const std::size_t q = m * n * m;
  Matrix alpha(f, q, q);
  const Matrix zn = Matrix::zero(f, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const Matrix d = delta(kron_product(Matrix::basis_unit(f, i + 1, j + 1, m), Matrix::basis_unit(f, k + 1, l + 1, n)), zn);
          if (d.rows() != m || d.cols() != m) throw Error(Errc::dimension_mismatch, "difference returned " + d.shape());
          for (std::size_t r = 0; r < m; ++r)
            for (std::size_t s = 0; s < m; ++s) alpha((i * n + k) * m + s, (j * n + l) * m + r) = d(r, s);
        }
  TensorView av(std::move(alpha), m, n, m);

  // beta[(k,s),(l,r)] = delta(0, E_kl)[r, s] must equal -tr_1(alpha)
  Matrix beta(f, n * m, n * m);
  const Matrix zmn = Matrix::zero(f, m * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      const Matrix d = delta(zmn, Matrix::basis_unit(f, k + 1, l + 1, n));
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s) beta(k * m + s, l * m + r) = d(r, s);
    }
  const Matrix expect_beta = -tr1(av);
  if (beta != expect_beta) {
    Json w = Json::object();
    w["beta"] = matrix_to_json(beta);
    w["minus_tr1_alpha"] = matrix_to_json(expect_beta);
    throw Error(Errc::not_difference, "delta(I_m (x) E_kl, E_kl) != 0 for some k, l", w);
  }
  const Matrix in = Matrix::identity(f, n);
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      const Matrix e = Matrix::basis_unit(f, i, j, m);
      const Matrix d = delta(kron_product(e, in), zn);
      if (d != e) {
        Json w = Json::object();
        w["A"] = matrix_to_json(kron_product(e, in));
        w["result"] = matrix_to_json(d);
        throw Error(Errc::not_difference, "delta(E_ij (x) I_n, 0) != E_ij", w);
      }
    }

  Rng rng(opt.seed, "extract.linearity", m * 1000 + n);
  for (std::size_t t = 0; t < opt.spot_checks; ++t) {
    const Matrix a = rng.matrix(f, m * n), b = rng.matrix(f, n);
    const Matrix got = delta(a, b), want = delta_eval_alpha(av, a, b);
    if (got != want) throw Error(Errc::not_linear, "delta disagrees with its basis expansion", witness_of({{"A", &a}, {"B", &b}}));
  }
  if (beta_out) *beta_out = std::move(beta);
  return av;
}

}  // namespace detail

/// Probes delta on the basis {(E_ij (x) E_kl, 0), (0, E_kl)} and splits
/// alpha against the given unit-trace reference; tr_2(gamma) = 0 follows.
inline Decomposition extract_decomposition(const BinaryOp& delta, const Field& f, std::size_t m, std::size_t n,
                                           const Matrix& reference, const ExtractOptions& opt = {}) {
  if (reference.rows() != n || !reference.is_square())
    throw Error(Errc::dimension_mismatch, "reference upsilon must be " + std::to_string(n) + "x" + std::to_string(n));
  if (reference.trace() != f.one()) throw Error(Errc::bad_trace, "reference upsilon needs unit trace");
  Matrix beta;
  TensorView alpha = detail::probe_alpha(delta, f, m, n, opt, &beta);
  TensorView gamma(alpha.matrix() - structured_alpha(reference, m).matrix(), m, n, m);
  if (!tr2(gamma).is_zero()) throw Error(Errc::not_difference, "tr_2(gamma) != 0 after extraction");
  return {std::move(alpha), std::move(beta), reference, std::move(gamma)};
}

inline Decomposition extract_decomposition(const CanonicalDifference& cd, const Matrix& reference,
                                           const ExtractOptions& opt = {}) {
  return extract_decomposition(cd.op(), cd.field(), cd.m(), cd.n(), reference, opt);
}

/// Extraction without a reference, for differences whose gamma has
/// vanishing tr_1: then tr_1(alpha) = upsilon (x) I_m, which determines
/// upsilon. Throws PreconditionViolated otherwise.
inline Decomposition extract_uniform_decomposition(const BinaryOp& delta, const Field& f, std::size_t m,
                                                   std::size_t n, const ExtractOptions& opt = {}) {
  Matrix beta;
  TensorView alpha = detail::probe_alpha(delta, f, m, n, opt, &beta);
  const Matrix t1 = tr1(alpha);
  Matrix upsilon(f, n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) upsilon(k, l) = t1(k * m, l * m);
  if (t1 != kron_product(upsilon, Matrix::identity(f, m)))
    throw Error(Errc::precondition_violated, "tr_1(alpha) is not of the form upsilon (x) I_m", matrix_to_json(t1));
  TensorView gamma(alpha.matrix() - structured_alpha(upsilon, m).matrix(), m, n, m);
  return {std::move(alpha), std::move(beta), std::move(upsilon), std::move(gamma)};
}

/// Compares two differences in the tr_1(gamma) = 0 regime: equal parameter
/// pairs must give equal maps on the probing basis, unequal pairs must be
/// separated by some probe.
inline CheckResult uniqueness_check(const CanonicalDifference& x, const CanonicalDifference& y) {
  for (const auto* cd : {&x, &y})
    if (!tr1(cd->gamma()).is_zero())
      throw Error(Errc::precondition_violated, "uniqueness needs tr_1(gamma) = 0", matrix_to_json(tr1(cd->gamma())));
  if (x.m() != y.m() || x.n() != y.n()) throw Error(Errc::dimension_mismatch, "differences of different orders");
  require_same_field(x.field(), y.field());
  const Field f = x.field();
  const std::size_t m = x.m(), n = x.n();
  CheckResult r{"canonical.uniqueness", Status::pass, 0, 0, std::nullopt};
  std::optional<Json> separating;
  auto probe = [&](const Matrix& a, const Matrix& b) {
    ++r.trials;
    if (!separating && x.eval(a, b) != y.eval(a, b)) separating = witness_of({{"A", &a}, {"B", &b}});
  };
  for (std::size_t i = 1; i <= m * n; ++i)
    for (std::size_t j = 1; j <= m * n; ++j) probe(Matrix::basis_unit(f, i, j, m * n), Matrix::zero(f, n));
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t l = 1; l <= n; ++l) probe(Matrix::zero(f, m * n), Matrix::basis_unit(f, k, l, n));
  const bool same_params = x.upsilon() == y.upsilon() && x.gamma() == y.gamma();
  if (same_params == separating.has_value()) {
    r.status = Status::fail;
    r.witness = separating.value_or(Json::object());
  } else if (separating) {
    r.witness = *separating;
  }
  return r;
}

// JSON: {"m", "n", "mode", "upsilon": matrix, "gamma": tensor}
inline Json canonical_to_json(const CanonicalDifference& cd) {
  Json j = Json::object();
  j["m"] = cd.m();
  j["n"] = cd.n();
  j["mode"] = upsilon_mode_name(cd.mode());
  j["upsilon"] = matrix_to_json(cd.upsilon());
  j["gamma"] = tensor_to_json(cd.gamma());
  return j;
}

inline CanonicalDifference canonical_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("upsilon")) throw Error(Errc::parse_error, "canonical difference needs 'upsilon'");
  const Matrix upsilon = matrix_from_json(j["upsilon"]);
  const UpsilonMode mode =
      j.contains("mode") ? parse_upsilon_mode(j["mode"].get<std::string>()) : UpsilonMode::unit_trace_reference;
  std::size_t m = 0;
  if (j.contains("m")) {
    m = detail::json_size(j, "m");
    if (m == 0) throw Error(Errc::parse_error, "'m' must be positive");
  }
  TensorView gamma;
  if (j.contains("gamma") && !j["gamma"].is_null()) {
    gamma = tensor_from_json(j["gamma"]);
    if (m != 0 && gamma.d1() != m) throw Error(Errc::dimension_mismatch, "'m' disagrees with gamma modes");
  } else {
    if (m == 0) throw Error(Errc::parse_error, "canonical difference needs 'm' or 'gamma'");
    gamma = TensorView::zero(upsilon.field(), m, upsilon.rows(), m);
  }
  if (j.contains("n") && detail::json_size(j, "n") != upsilon.rows())
    throw Error(Errc::dimension_mismatch, "'n' disagrees with upsilon");
  return CanonicalDifference::build(upsilon, gamma, mode);
}

}  // namespace kron
