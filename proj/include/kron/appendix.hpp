#pragma once

// Seeded checks of the mode trace and mode transpose lemmata on random
// three-mode tensors. Hypotheses such as tr_2(C) = 0 are enforced by
// projection; the two equality lemmata are exercised in both directions,
// and their negative probes must find a separating basis element.

#include <optional>

#include "kron/kron_ops.hpp"
#include "kron/report.hpp"

namespace kron {

namespace detail {

inline Matrix kron3(const Matrix& a, const Matrix& b, const Matrix& c) { return kron_product(kron_product(a, b), c); }

/// First basis probe E_ij in F_{m n} separating tr_12(A(X (x) I_p)) and
/// tr_12(B(X (x) I_p)), if any.
inline std::optional<Matrix> parttr_separating_probe(const Matrix& a, const Matrix& b, const Dims& dims) {
  const Field f = a.field();
  const std::size_t mn = dims[0] * dims[1], p = dims[2];
  const Matrix ip = Matrix::identity(f, p);
  for (std::size_t i = 1; i <= mn; ++i)
    for (std::size_t j = 1; j <= mn; ++j) {
      const Matrix x = Matrix::basis_unit(f, i, j, mn);
      const Matrix xi = kron_product(x, ip);
      if (trace_modes(a * xi, dims, {0, 1}) != trace_modes(b * xi, dims, {0, 1})) return x;
    }
  return std::nullopt;
}

/// First X = E_kl in F_n with tr((I_m (x) X)A) != tr((I_m (x) X)B), or
/// with Y = E_kl in F_m and (Y (x) I_n) when `partial` is set.
inline std::optional<Matrix> trace_separating_probe(const Matrix& a, const Matrix& b, std::size_t m, std::size_t n,
                                                    bool partial) {
  const Field f = a.field();
  const std::size_t d = partial ? m : n;
  for (std::size_t k = 1; k <= d; ++k)
    for (std::size_t l = 1; l <= d; ++l) {
      const Matrix x = Matrix::basis_unit(f, k, l, d);
      const Matrix w = partial ? kron_product(x, Matrix::identity(f, n)) : kron_product(Matrix::identity(f, m), x);
      if ((w * a).trace() != (w * b).trace()) return x;
    }
  return std::nullopt;
}

}  // namespace detail

inline Report verify_appendix_identities(const CampaignConfig& cfg) {
  cfg.validate(3);
  const Field f = cfg.field;
  if (!f.is_exact()) throw Error(Errc::unsupported_field, "appendix identities run over exact fields");
  Report rep;
  auto check = [&](const char* name, auto&& body) { rep.add(seeded_check(name, cfg, body)); };
  auto dim = [&](Rng& rng) { return rng.dim(1, cfg.dims); };

  check("appendix.tracezero", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const Dims d{m, n, m};
    const Matrix c = random_traceless_tensor(rng, f, m, n, {1}).matrix();
    const Matrix a = rng.matrix(f, m), b = rng.matrix(f, m);
    const Matrix prod = c * detail::kron3(a, Matrix::identity(f, n), b);
    if (trace_modes(c.transpose(), d, {1}).is_zero() && trace_modes(prod, d, {1}).is_zero() &&
        trace_modes(prod, d, {0, 1}).is_zero())
      return std::nullopt;
    return witness_of({{"C", &c}, {"A", &a}, {"B", &b}});
  });

  check("appendix.parttrans1", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const TensorView a(rng.matrix(f, m * n * m), m, n, m);
    const Matrix t = tr12(a).transpose();
    if (t == tr12(T3(a)) && t == tr12(a.transposed()) && tr3(a).transpose() == tr3(T12(a))) return std::nullopt;
    return witness_of({{"A", &a.matrix()}});
  });

  check("appendix.parttrans2", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const TensorView a(rng.matrix(f, m * n * m), m, n, m);
    if (tr12(T12(a)) == tr12(a) && tr3(T3(a)) == tr3(a)) return std::nullopt;
    return witness_of({{"A", &a.matrix()}});
  });

  check("appendix.parttrans3", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const TensorView a(rng.matrix(f, m * n * m), m, n, m);
    const Matrix b = rng.matrix(f, m * n);
    const Matrix bi = kron_product(b, Matrix::identity(f, m));
    const TensorView lhs = T3(TensorView(a.matrix() * bi, m, n, m));
    if (lhs.matrix() == T3(a).matrix() * bi) return std::nullopt;
    return witness_of({{"A", &a.matrix()}, {"B", &b}});
  });

  // Equal probes on every E_ij exactly when the tensors are equal.
  check("appendix.parttrequal", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const Dims d{m, n, m};
    const Matrix a = rng.matrix(f, m * n * m);
    Matrix b = a;
    if (rng.coin()) b += rng.matrix(f, m * n * m);
    const bool probes_agree = !detail::parttr_separating_probe(a, b, d).has_value();
    if (probes_agree == (a == b)) return std::nullopt;
    return witness_of({{"A", &a}, {"B", &b}});
  });

  check("appendix.parttrequal.negative", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const Dims d{m, n, m};
    const Matrix a = rng.matrix(f, m * n * m);
    Matrix b = a;
    b(rng.index(b.rows()), rng.index(b.cols())) += rng.nonzero_scalar(f);
    if (detail::parttr_separating_probe(a, b, d)) return std::nullopt;
    return witness_of({{"A", &a}, {"B", &b}});
  });

  check("appendix.trzidz", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng), p = dim(rng);
    const Dims d{m, n, p};
    const Matrix a = project_trace_free(rng.matrix(f, m * n * p), d, 0);
    const Matrix b = rng.matrix(f, n * p);
    if (trace_modes(a * kron_product(Matrix::identity(f, m), b), d, {0}).is_zero()) return std::nullopt;
    return witness_of({{"A", &a}, {"B", &b}});
  });

  check("appendix.blockpartial", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng), p = dim(rng);
    const Dims d{m, n, p};
    const Matrix a = rng.matrix(f, m * n * p);
    const Matrix b = rng.matrix(f, m), c = rng.matrix(f, n), dd = rng.matrix(f, p);
    const Matrix ip = Matrix::identity(f, p);
    const Matrix bcd = detail::kron3(b, c, dd), bci = detail::kron3(b, c, ip);
    const Matrix right = trace_modes(a * bcd, d, {0, 1});
    const Matrix right1 = trace_modes(a * bci, d, {0, 1}) * dd;
    const Matrix right2 = block_trace(trace_modes(a * bci, d, {1}), m, p) * dd;
    const Matrix right3 = block_trace(trace_modes(a * bci, d, {0}), n, p) * dd;
    const Matrix left = trace_modes(bcd * a, d, {0, 1});
    const Matrix left1 = dd * trace_modes(bci * a, d, {0, 1});
    const Matrix left2 = dd * block_trace(trace_modes(bci * a, d, {0}), n, p);
    const Matrix left3 = dd * block_trace(trace_modes(bci * a, d, {1}), m, p);
    if (right == right1 && right == right2 && right == right3 && left == left1 && left == left2 && left == left3)
      return std::nullopt;
    return witness_of({{"A", &a}, {"B", &b}, {"C", &c}, {"D", &dd}});
  });

  check("appendix.trace_tr12", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng), p = dim(rng);
    const Matrix a = rng.matrix(f, m * n * p);
    if (trace_modes(a, {m, n, p}, {0, 1}).trace() == a.trace()) return std::nullopt;
    return witness_of({{"A", &a}});
  });

  // Probes agree exactly when the block (resp. partial) traces agree.
  check("appendix.Btrequiv", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const Matrix a = rng.matrix(f, m * n);
    for (const bool partial : {false, true}) {
      Matrix pert = rng.matrix(f, m * n);
      if (rng.coin()) pert = project_trace_free(pert, {m, n}, partial ? 1 : 0);
      const Matrix b = a + pert;
      const bool probes_agree = !detail::trace_separating_probe(a, b, m, n, partial).has_value();
      const bool traces_agree = partial ? partial_trace(a, m, n) == partial_trace(b, m, n)
                                        : block_trace(a, m, n) == block_trace(b, m, n);
      if (probes_agree != traces_agree) {
        Json w = witness_of({{"A", &a}, {"B", &b}});
        w["partial"] = partial;
        return w;
      }
    }
    return std::nullopt;
  });

  check("appendix.Btrequiv.negative", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const Matrix a = rng.matrix(f, m * n);
    for (const bool partial : {false, true}) {
      Matrix b = a;
      // perturbing one diagonal entry changes both marginal traces
      const std::size_t k = rng.index(m * n);
      b(k, k) += rng.nonzero_scalar(f);
      if (!detail::trace_separating_probe(a, b, m, n, partial)) {
        Json w = witness_of({{"A", &a}, {"B", &b}});
        w["partial"] = partial;
        return w;
      }
    }
    return std::nullopt;
  });

  check("appendix.blockispartial", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng), p = dim(rng);
    const Dims d{m, n, p};
    const Matrix a = rng.matrix(f, m * n * p);
    const Matrix t12 = trace_modes(a, d, {0, 1});
    if (block_trace(trace_modes(a, d, {0}), n, p) == t12 && block_trace(trace_modes(a, d, {1}), m, p) == t12)
      return std::nullopt;
    return witness_of({{"A", &a}});
  });

  check("appendix.transpose_factorization", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const TensorView a(rng.matrix(f, m * n * m), m, n, m);
    if (T12(T3(a)).matrix() == a.matrix().transpose() && T3(T12(a)).matrix() == a.matrix().transpose())
      return std::nullopt;
    return witness_of({{"A", &a.matrix()}});
  });

  check("appendix.mode_maps_linear", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng), p = dim(rng);
    const Matrix x = rng.matrix(f, m * n * p), y = rng.matrix(f, m * n * p);
    const Scalar k = rng.scalar(f);
    const TensorView tx(x, m, n, p), ty(y, m, n, p), txy(x + k * y, m, n, p);
    for (auto mode : {TraceMode::t1, TraceMode::t2, TraceMode::t3, TraceMode::t12})
      if (mode_trace(txy, mode) != mode_trace(tx, mode) + k * mode_trace(ty, mode)) return witness_of({{"X", &x}, {"Y", &y}});
    for (auto mode : {TransposeMode::bt, TransposeMode::pt, TransposeMode::t3, TransposeMode::t12})
      if (mode_transpose(txy, mode).matrix() != mode_transpose(tx, mode).matrix() + k * mode_transpose(ty, mode).matrix())
        return witness_of({{"X", &x}, {"Y", &y}});
    return std::nullopt;
  });

  return rep;
}

}  // namespace kron
