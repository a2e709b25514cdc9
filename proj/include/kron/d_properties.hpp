#pragma once

// Seeded checks of the difference laws D1-D7 against an arbitrary (possibly
// family-valued) difference.
//
//   restricted    the left argument is replaced by a Kronecker sum, so every
//                 difference must pass;
//   unrestricted  arbitrary arguments; for the linear laws D1, D2 and D5 a
//                 random phase is followed by a basis sweep, which makes a
//                 pass exact;
//   zero_form     D1-0, D2-0, D5-0 and their agreement with the full laws.

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "kron/difference.hpp"

namespace kron {

/// A difference defined for the order pairs (m, n) accepted by `supports`
/// (all pairs when unset).
struct DifferenceOp {
  std::string name;
  Field field;
  BinaryOp apply;
  std::function<bool(std::size_t, std::size_t)> supports;
  std::size_t order_hint = 0;  // largest factor order the op needs when fixed

  bool supported(std::size_t m, std::size_t n) const { return !supports || supports(m, n); }
  Matrix operator()(const Matrix& a, const Matrix& b) const { return apply(a, b); }
};

inline DifferenceOp difference_op(const CanonicalDifference& cd, std::string name = "canonical") {
  const std::size_t m = cd.m(), n = cd.n();
  return {std::move(name), cd.field(), cd.op(), [m, n](std::size_t a, std::size_t b) { return a == m && b == n; },
          std::max(m, n)};
}

inline DifferenceOp induced_op(const Field& f, QuotientSelector sel = selector_default, std::string name = "induced") {
  return {std::move(name), f, induced_difference_op(std::move(sel)), nullptr, 0};
}

/// exact -> real64 entrywise; GF(p) has no embedding.
inline Matrix to_real64(const Matrix& x, const Field& real) {
  if (x.field().kind() == FieldKind::prime) throw Error(Errc::unsupported_field, "GF(p) matrices have no real image");
  Matrix r(real, x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) r(i, j) = real.from_double(x(i, j).to_double());
  return r;
}

enum class GammaKind { zero, generic, uniform, symmetric };

inline const char* gamma_kind_name(GammaKind g) {
  switch (g) {
    case GammaKind::zero: return "zero";
    case GammaKind::generic: return "generic";
    case GammaKind::uniform: return "uniform";
    case GammaKind::symmetric: return "symmetric";
  }
  return "?";
}

/// One canonical difference per (m, n): upsilon from the reference, gamma
/// drawn from (seed, m, n) with tr_2 = 0 and, per kind, tr_1 = 0 or
/// gamma = gamma^T. Members are built on first use and cached.
class CanonicalFamily {
 public:
  CanonicalFamily(Field f, Reference ref, GammaKind kind, std::uint64_t seed)
      : field_(std::move(f)), ref_(ref), kind_(kind), seed_(seed) {}

  bool supports(std::size_t, std::size_t n) const {
    return ref_ == Reference::e11 || !field_.divides_characteristic(n);
  }

  const CanonicalDifference& at(std::size_t m, std::size_t n) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find({m, n});
    if (it == cache_.end()) it = cache_.emplace(std::make_pair(m, n), make(m, n)).first;
    return *it->second;
  }

  const Field& field() const noexcept { return field_; }
  Reference reference() const noexcept { return ref_; }
  GammaKind kind() const noexcept { return kind_; }

 private:
  std::shared_ptr<const CanonicalDifference> make(std::size_t m, std::size_t n) const {
    const Matrix u = reference_upsilon(field_, n, ref_);
    const UpsilonMode mode = ref_ == Reference::idn ? UpsilonMode::normalized_identity : UpsilonMode::unit_trace_reference;
    Rng rng(seed_, "canonical.family", m * 1024 + n);
    TensorView g = TensorView::zero(field_, m, n, m);
    if (kind_ != GammaKind::zero) {
      const Matrix x = rng.matrix(field_, m * n * m);
      const Dims dims{m, n, m};
      Matrix y = project_trace_free(x, dims, kind_ == GammaKind::uniform ? std::vector<std::size_t>{0, 1}
                                                                        : std::vector<std::size_t>{1});
      if (kind_ == GammaKind::symmetric) y = y + y.transpose();
      g = TensorView(std::move(y), m, n, m);
    }
    return std::make_shared<const CanonicalDifference>(CanonicalDifference::build(u, g, mode));
  }

  Field field_;
  Reference ref_;
  GammaKind kind_;
  std::uint64_t seed_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const CanonicalDifference>> cache_;
};

inline DifferenceOp family_op(std::shared_ptr<const CanonicalFamily> fam, std::string name) {
  const Field f = fam->field();
  auto apply = [fam](const Matrix& a, const Matrix& b) {
    const std::size_t m = detail::outer_order(a, b, "family difference");
    return fam->at(m, b.rows()).eval_closed(a, b);
  };
  auto supports = [fam](std::size_t m, std::size_t n) { return fam->supports(m, n); };
  return {std::move(name), f, std::move(apply), std::move(supports), 0};
}

enum class DProp { d1 = 1, d2, d3, d4, d5, d6, d7 };
enum class DMode { restricted, unrestricted, zero_form };

inline const char* dmode_name(DMode m) {
  switch (m) {
    case DMode::restricted: return "restricted";
    case DMode::unrestricted: return "unrestricted";
    case DMode::zero_form: return "zero_form";
  }
  return "?";
}

inline DMode parse_dmode(std::string_view s) {
  if (s == "restricted") return DMode::restricted;
  if (s == "unrestricted") return DMode::unrestricted;
  if (s == "zero_form" || s == "zero-form") return DMode::zero_form;
  throw Error(Errc::invalid_config, "unknown mode '" + std::string(s) + "'");
}

inline const std::vector<DProp>& all_dprops() {
  static const std::vector<DProp> v{DProp::d1, DProp::d2, DProp::d3, DProp::d4, DProp::d5, DProp::d6, DProp::d7};
  return v;
}

/// Applied D5 operands satisfy p n m <= this bound.
inline constexpr std::size_t kD5MaxOrder = 12;


namespace detail {

using Args = std::vector<Matrix>;
using Tuple = std::vector<std::size_t>;
using LawProbe = std::function<std::optional<Json>(const Tuple&, const Args&)>;

inline Json args_witness(const Args& args) {
  static const std::array<const char*, 6> names{"A", "B", "C", "D", "E", "F"};
  Json w = Json::object();
  for (std::size_t i = 0; i < args.size() && i < names.size(); ++i) w[names[i]] = matrix_to_json(args[i]);
  return w;
}

inline Scalar nat(const Field& f, std::size_t k) { return f.from_int(static_cast<long long>(k)); }

/// A law over dimension tuples t; `orders(t)` lists the orders of its square
/// arguments. A 1x1 argument carries a scalar.
struct Law {
  std::size_t arity;
  std::function<bool(const Tuple&)> admissible;
  std::function<std::vector<std::size_t>(const Tuple&)> orders;
  LawProbe probe;
  bool linear = false;  // both sides jointly linear in the arguments
};

inline std::vector<Tuple> tuples(const Law& law, std::size_t top) {
  std::vector<Tuple> out;
  Tuple t(law.arity, 1);
  for (;;) {
    if (law.admissible(t)) out.push_back(t);
    std::size_t k = 0;
    while (k < t.size() && t[k] == top) t[k++] = 1;
    if (k == t.size()) break;
    ++t[k];
  }
  return out;
}

inline std::optional<Json> guarded(const Law& law, const Tuple& t, const Args& args) {
  try {
    return law.probe(t, args);
  } catch (const Error& e) {
    Json w = args_witness(args);
    w["error"] = e.what();
    return w;
  }
}

/// Probes every argument slot with every basis unit, the other slots zero.
/// Exact for linear laws.
inline std::optional<Json> basis_sweep(const Law& law, const Field& f, const std::vector<Tuple>& ts,
                                       std::uint64_t& count) {
  for (const Tuple& t : ts) {
    const std::vector<std::size_t> ord = law.orders(t);
    Args zero;
    for (std::size_t o : ord) zero.push_back(Matrix::zero(f, o));
    for (std::size_t slot = 0; slot < ord.size(); ++slot)
      for (std::size_t i = 1; i <= ord[slot]; ++i)
        for (std::size_t j = 1; j <= ord[slot]; ++j) {
          Args a = zero;
          a[slot] = Matrix::basis_unit(f, i, j, ord[slot]);
          ++count;
          if (auto w = guarded(law, t, a)) {
            (*w)["phase"] = "sweep";
            return w;
          }
        }
  }
  return std::nullopt;
}

inline CheckResult run_law(const std::string& check, const Law& law, const Field& f, const CampaignConfig& cfg,
                           std::size_t top, bool sweep) {
  const std::vector<Tuple> ts = tuples(law, top);
  if (ts.empty()) {
    CheckResult r{check, Status::skip, 0, cfg.seed, Json::object()};
    (*r.witness)["reason"] = "no admissible dimensions";
    return r;
  }
  CheckResult r = run_trials(check, cfg.trials, cfg.seed, [&](std::uint64_t t) -> std::optional<Json> {
    Rng rng(cfg.seed, check, t);
    const Tuple& tu = ts[rng.index(ts.size())];
    Args a;
    for (std::size_t o : law.orders(tu)) a.push_back(rng.matrix(f, o));
    return law.probe(tu, a);
  });
  if (r.status == Status::pass && sweep && law.linear) {
    std::uint64_t count = 0;
    if (auto w = basis_sweep(law, f, ts, count)) {
      r.status = Status::fail;
      r.witness = std::move(w);
    }
    r.trials += count;
  }
  return r;
}

inline std::optional<Json> mismatch(const Args& args, const Matrix& lhs, const Matrix& rhs) {
  if (lhs == rhs) return std::nullopt;
  Json w = args_witness(args);
  w["lhs"] = matrix_to_json(lhs);
  w["rhs"] = matrix_to_json(rhs);
  return w;
}

inline std::optional<Json> mismatch(const Args& args, const Scalar& lhs, const Scalar& rhs) {
  if (lhs == rhs) return std::nullopt;
  Json w = args_witness(args);
  w["lhs"] = lhs.to_string();
  w["rhs"] = rhs.to_string();
  return w;
}

struct LawContext {
  DifferenceOp op;
  std::size_t d5_cap;

  bool pair_ok(const Tuple& t) const { return op.supported(t[0], t[1]); }
  bool trace_ok(const Tuple& t) const { return pair_ok(t) && !op.field.divides_characteristic(t[1]); }
  bool triple_ok(const Tuple& t) const {
    const std::size_t p = t[0], n = t[1], m = t[2];
    return p * n * m <= d5_cap && op.supported(p * n, m) && op.supported(p, n) && op.supported(p, n * m);
  }
};

// D1, D2: t = (m, n), arguments (A in F_mn, B in F_n), or (A) with B = 0.
// D5: t = (p, n, m), arguments (A in F_pnm, B in F_m, C in F_n), or (A).
inline Law linear_law(const LawContext& cx, DProp d, bool zero) {
  const DifferenceOp& op = cx.op;
  const Field f = op.field;
  auto pair_orders = [zero](const Tuple& t) {
    return zero ? std::vector<std::size_t>{t[0] * t[1]} : std::vector<std::size_t>{t[0] * t[1], t[1]};
  };
  auto second = [zero, f](const Args& a, std::size_t n) { return zero ? Matrix::zero(f, n) : a[1]; };
  switch (d) {
    case DProp::d1:
      return {2, [cx](const Tuple& t) { return cx.pair_ok(t); }, pair_orders,
              [op, second](const Tuple& t, const Args& a) {
                const Matrix b = second(a, t[1]);
                return mismatch(a, op(a[0], b).transpose(), op(a[0].transpose(), b.transpose()));
              },
              true};
    case DProp::d2:
      return {2, [cx](const Tuple& t) { return cx.trace_ok(t); }, pair_orders,
              [op, second, f](const Tuple& t, const Args& a) {
                const Matrix b = second(a, t[1]);
                const Scalar rhs = nat(f, t[1]).inverse() * (a[0].trace() - nat(f, t[0]) * b.trace());
                return mismatch(a, op(a[0], b).trace(), rhs);
              },
              true};
    case DProp::d5:
      return {3, [cx](const Tuple& t) { return cx.triple_ok(t); },
              [zero](const Tuple& t) {
                const std::size_t p = t[0], n = t[1], m = t[2];
                return zero ? std::vector<std::size_t>{p * n * m} : std::vector<std::size_t>{p * n * m, m, n};
              },
              [op, zero, f](const Tuple& t, const Args& a) {
                const Matrix b = zero ? Matrix::zero(f, t[2]) : a[1], c = zero ? Matrix::zero(f, t[1]) : a[2];
                return mismatch(a, op(op(a[0], b), c), op(a[0], kron_sum(c, b)));
              },
              true};
    default: break;
  }
  throw Error(Errc::invalid_arg, "law has no linear form");
}

// Restricted forms: the left argument is assembled from Kronecker sums of
// the drawn components.
inline Law restricted_law(const LawContext& cx, DProp d) {
  const DifferenceOp& op = cx.op;
  const Field f = op.field;
  auto pair = [cx](const Tuple& t) { return cx.pair_ok(t); };
  switch (d) {
    case DProp::d1:  // (C, B), A = C (+) B
      return {2, pair, [](const Tuple& t) { return std::vector<std::size_t>{t[0], t[1]}; },
              [op](const Tuple&, const Args& a) {
                const Matrix s = kron_sum(a[0], a[1]);
                return mismatch(a, op(s, a[1]).transpose(), op(s.transpose(), a[1].transpose()));
              }};
    case DProp::d2:
      return {2, [cx](const Tuple& t) { return cx.trace_ok(t); },
              [](const Tuple& t) { return std::vector<std::size_t>{t[0], t[1]}; },
              [op, f](const Tuple& t, const Args& a) {
                const Matrix s = kron_sum(a[0], a[1]);
                const Scalar rhs = nat(f, t[1]).inverse() * (s.trace() - nat(f, t[0]) * a[1].trace());
                return mismatch(a, op(s, a[1]).trace(), rhs);
              }};
    case DProp::d3:  // (C, B, k)
      return {2, pair, [](const Tuple& t) { return std::vector<std::size_t>{t[0], t[1], 1}; },
              [op](const Tuple&, const Args& a) {
                const Scalar k = a[2](0, 0);
                const Matrix s = kron_sum(a[0], a[1]);
                return mismatch(a, op(k * s, k * a[1]), k * op(s, a[1]));
              }};
    case DProp::d4:  // (X, Y, C, D), A = X (+) C, B = Y (+) D
      return {2, pair, [](const Tuple& t) { return std::vector<std::size_t>{t[0], t[0], t[1], t[1]}; },
              [op](const Tuple&, const Args& a) {
                const Matrix aa = kron_sum(a[0], a[2]), bb = kron_sum(a[1], a[3]);
                return mismatch(a, op(aa + bb, a[2] + a[3]), op(aa, a[2]) + op(bb, a[3]));
              }};
    case DProp::d5:  // t = (p, n, m), (W, C, B), A = W (+) (C (+) B)
      return {3, [cx](const Tuple& t) { return cx.triple_ok(t); },
              [](const Tuple& t) { return std::vector<std::size_t>{t[0], t[1], t[2]}; },
              [op](const Tuple&, const Args& a) {
                const Matrix cb = kron_sum(a[1], a[2]);
                const Matrix aa = kron_sum(a[0], cb);
                return mismatch(a, op(op(aa, a[2]), a[1]), op(aa, cb));
              }};
    case DProp::d6:  // (X, Y, B, D), A = X (+) B, C = Y (+) D
      return {2, pair, [](const Tuple& t) { return std::vector<std::size_t>{t[0], t[0], t[1], t[1]}; },
              [op](const Tuple&, const Args& a) {
                const Matrix aa = kron_sum(a[0], a[2]), cc = kron_sum(a[1], a[3]);
                return mismatch(a, commutator(op(aa, a[2]), op(cc, a[3])), op(commutator(aa, cc), commutator(a[2], a[3])));
              }};
    case DProp::d7:  // (C, B), A = C (+) B, real64
      return {2, pair, [](const Tuple& t) { return std::vector<std::size_t>{t[0], t[1]}; },
              [op](const Tuple&, const Args& a) -> std::optional<Json> {
                const Matrix s = kron_sum(a[0], a[1]);
                const double err = max_abs_diff(matrix_exp(op(s, a[1])), kron_quotient(matrix_exp(s), matrix_exp(a[1])));
                if (err <= 1e-9) return std::nullopt;
                Json w = args_witness(a);
                w["max_error"] = err;
                return w;
              }};
  }
  throw Error(Errc::invalid_arg, "unknown law");
}

// Arbitrary-argument forms of D3, D4, D6.
inline Law free_law(const LawContext& cx, DProp d) {
  const DifferenceOp& op = cx.op;
  auto pair = [cx](const Tuple& t) { return cx.pair_ok(t); };
  switch (d) {
    case DProp::d3:  // (A, B, k)
      return {2, pair, [](const Tuple& t) { return std::vector<std::size_t>{t[0] * t[1], t[1], 1}; },
              [op](const Tuple&, const Args& a) {
                const Scalar k = a[2](0, 0);
                return mismatch(a, op(k * a[0], k * a[1]), k * op(a[0], a[1]));
              }};
    case DProp::d4:  // (A, B, C, D)
      return {2, pair, [](const Tuple& t) { return std::vector<std::size_t>{t[0] * t[1], t[0] * t[1], t[1], t[1]}; },
              [op](const Tuple&, const Args& a) {
                return mismatch(a, op(a[0] + a[1], a[2] + a[3]), op(a[0], a[2]) + op(a[1], a[3]));
              }};
    case DProp::d6:  // (A, C, B, D)
      return {2, pair, [](const Tuple& t) { return std::vector<std::size_t>{t[0] * t[1], t[0] * t[1], t[1], t[1]}; },
              [op](const Tuple&, const Args& a) {
                return mismatch(a, commutator(op(a[0], a[2]), op(a[1], a[3])),
                                op(commutator(a[0], a[1]), commutator(a[2], a[3])));
              }};
    default: break;
  }
  throw Error(Errc::invalid_arg, "law has no free form");
}

}  // namespace detail

/// One record per requested law, named differences.<op>.<mode>.D<k>; zero
/// form adds differences.<op>.zero_form.D<k>-0.equivalence, which passes
/// when the zero form and the full law have the same exact verdict.
inline Report check_D_properties(const DifferenceOp& op, const std::vector<DProp>& which, DMode mode,
                                 const CampaignConfig& cfg) {
  cfg.validate(3);
  const Field f = op.field;
  const bool wants_d7 = std::find(which.begin(), which.end(), DProp::d7) != which.end();
  if (mode == DMode::restricted && wants_d7 && f.kind() != FieldKind::real64)
    throw Error(Errc::unsupported_field, "D7 is checked over real64 only");
  const std::size_t top = std::max(cfg.dims, op.order_hint);
  const detail::LawContext cx{op, std::max(kD5MaxOrder, op.order_hint * op.order_hint)};
  const std::string prefix = "differences." + op.name + "." + dmode_name(mode) + ".";
  Report rep;
  for (DProp d : which) {
    const std::string tag = "D" + std::to_string(static_cast<int>(d));
    const bool linear = d == DProp::d1 || d == DProp::d2 || d == DProp::d5;
    switch (mode) {
      case DMode::restricted:
        rep.add(detail::run_law(prefix + tag, detail::restricted_law(cx, d), f, cfg, top, false));
        break;
      case DMode::unrestricted:
        if (d == DProp::d7) {
          CheckResult r{prefix + tag, Status::skip, 0, cfg.seed, Json::object()};
          (*r.witness)["reason"] = "only the A = C (+) B case is asserted";
          rep.add(std::move(r));
        } else if (linear) {
          rep.add(detail::run_law(prefix + tag, detail::linear_law(cx, d, false), f, cfg, top, true));
        } else {
          rep.add(detail::run_law(prefix + tag, detail::free_law(cx, d), f, cfg, top, false));
        }
        break;
      case DMode::zero_form: {
        if (!linear) break;
        const detail::Law zero = detail::linear_law(cx, d, true), full = detail::linear_law(cx, d, false);
        CheckResult r0 = detail::run_law(prefix + tag + "-0", zero, f, cfg, top, true);
        CheckResult eq{prefix + tag + "-0.equivalence", Status::pass, 0, cfg.seed, std::nullopt};
        if (r0.status != Status::skip) {
          std::uint64_t count = 0;
          const bool zero_holds = r0.status == Status::pass;
          const auto full_w = detail::basis_sweep(full, f, detail::tuples(full, top), count);
          eq.trials = count;
          if (zero_holds != !full_w.has_value()) {
            eq.status = Status::fail;
            Json w = Json::object();
            w["zero_form_holds"] = zero_holds;
            w["full_form_holds"] = !full_w.has_value();
            if (full_w) w["full_witness"] = *full_w;
            if (r0.witness) w["zero_witness"] = *r0.witness;
            eq.witness = std::move(w);
          }
        } else {
          eq.status = Status::skip;
        }
        rep.add(std::move(r0));
        rep.add(std::move(eq));
        break;
      }
    }
  }
  return rep;
}

}  // namespace kron
