#pragma once

// Named verification suites behind `verify`. Each suite returns its records
// in a fixed order; run_suites may evaluate suites concurrently but always
// concatenates them in the requested order.

#include <future>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kron/appendix.hpp"
#include "kron/d_properties.hpp"
#include "kron/ortho.hpp"
#include "kron/quotient.hpp"
#include "kron/uniform_family.hpp"
#include "kron/verify_sums.hpp"

namespace kron {

struct SuiteOptions {
  CampaignConfig cfg;
  DMode mode = DMode::restricted;
  std::optional<CanonicalDifference> gamma;  // user difference for the differences suite
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"sums", "quotients", "differences", "canonical", "uniform", "appendix", "ortho"};
  return names;
}

/// Renames records whose check starts with `from` so that they start with `to`.
inline Report with_prefix(const Report& r, std::string_view from, std::string_view to) {
  Report out;
  for (CheckResult c : r.records()) {
    if (c.check.rfind(from, 0) == 0) c.check = std::string(to) + c.check.substr(from.size());
    out.add(std::move(c));
  }
  return out;
}

namespace detail {

/// Single skip record for suites that need an exact field.
inline std::optional<Report> skip_inexact(const CampaignConfig& cfg, const char* suite) {
  if (cfg.field.is_exact()) return std::nullopt;
  CheckResult r{std::string(suite) + ".exact_only", Status::skip, 0, cfg.seed, Json::object()};
  (*r.witness)["reason"] = "needs an exact field";
  Report rep;
  rep.add(std::move(r));
  return rep;
}

inline Report quotients_suite(const SuiteOptions& o) {
  o.cfg.validate(3);
  Report r = verify_quotient_axiom(selector_default, o.cfg);
  r.append(verify_quotient_uniformity(selector_default, o.cfg));
  return r;
}

inline std::vector<DifferenceOp> standard_differences(const Field& f, std::uint64_t seed) {
  auto fam = [&](Reference ref, GammaKind kind, const char* name) {
    return family_op(std::make_shared<const CanonicalFamily>(f, ref, kind, seed), name);
  };
  return {induced_op(f), fam(Reference::e11, GammaKind::zero, "canonical_e11"),
          fam(Reference::idn, GammaKind::zero, "canonical_idn"), fam(Reference::e11, GammaKind::generic, "canonical_generic"),
          fam(Reference::e11, GammaKind::symmetric, "canonical_symmetric")};
}

inline Report differences_suite(const SuiteOptions& o) {
  o.cfg.validate(3);
  const Field f = o.cfg.field;
  std::vector<DProp> which{DProp::d1, DProp::d2, DProp::d3, DProp::d4, DProp::d5, DProp::d6};
  if (f.kind() == FieldKind::real64 || o.mode == DMode::unrestricted) which.push_back(DProp::d7);
  Report rep;
  if (o.gamma) {
    std::vector<DProp> w = which;
    if (o.mode == DMode::restricted && f.kind() != FieldKind::real64) w.assign(which.begin(), which.begin() + 6);
    rep.append(check_D_properties(difference_op(*o.gamma, "gamma"), w, o.mode, o.cfg));
    return rep;
  }
  for (const DifferenceOp& op : standard_differences(f, o.cfg.seed)) rep.append(check_D_properties(op, which, o.mode, o.cfg));
  // D7 involves exp, so exact campaigns add it on real64 copies
  if (o.mode == DMode::restricted && f.kind() != FieldKind::real64) {
    CampaignConfig rc = o.cfg;
    rc.field = Field::real64();
    for (DifferenceOp op : {induced_op(rc.field), standard_differences(rc.field, o.cfg.seed)[1]}) {
      op.name += "_real64";
      rep.append(check_D_properties(op, {DProp::d7}, DMode::restricted, rc));
    }
  }
  return rep;
}

inline Report canonical_suite(const SuiteOptions& o) {
  o.cfg.validate(3);
  const CampaignConfig& cfg = o.cfg;
  const Field f = cfg.field;
  if (auto skip = skip_inexact(cfg, "canonical")) return *skip;
  Report rep;
  auto check = [&](const char* name, auto&& body) { rep.add(seeded_check(name, cfg, body)); };
  auto dim = [&](Rng& rng) { return rng.dim(1, cfg.dims); };
  auto params = [&](const CanonicalDifference& cd) { return witness_of({{"upsilon", &cd.upsilon()}, {"gamma", &cd.gamma().matrix()}}); };

  // tr_1(gamma) = tr_2(gamma) = 0: extraction without a reference is exact
  check("canonical.roundtrip", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const CanonicalDifference cd =
        CanonicalDifference::build(rng.trace_one_matrix(f, n), random_traceless_tensor(rng, f, m, n, {0, 1}));
    const Decomposition d = extract_uniform_decomposition(cd.op(), f, m, n);
    if (d.upsilon == cd.upsilon() && d.gamma == cd.gamma()) return std::nullopt;
    return params(cd);
  });

  // against a fixed reference the pair changes but the map does not
  check("canonical.extract_reference", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const CanonicalDifference cd =
        CanonicalDifference::build(rng.trace_one_matrix(f, n), random_traceless_tensor(rng, f, m, n, {1}));
    const Decomposition d = extract_decomposition(cd, reference_upsilon(f, n, Reference::e11));
    const CanonicalDifference back = CanonicalDifference::build(d.upsilon, d.gamma);
    if (back.alpha() == cd.alpha() && d.alpha == cd.alpha() && d.beta == cd.beta()) return std::nullopt;
    return params(cd);
  });

  check("canonical.routes", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const CanonicalDifference cd =
        CanonicalDifference::build(rng.trace_one_matrix(f, n), random_traceless_tensor(rng, f, m, n, {1}));
    const Matrix a = rng.matrix(f, m * n), b = rng.matrix(f, n);
    const Matrix c = rng.matrix(f, m);
    if (delta_eval(cd, a, b) == delta_eval_closed(cd, a, b) && delta_eval_closed(cd, kron_sum(c, b), b) == c)
      return std::nullopt;
    Json w = params(cd);
    w["A"] = matrix_to_json(a);
    w["B"] = matrix_to_json(b);
    return w;
  });

  // (1/n)(Ptr(A) - tr(B) I_m) for gamma = 0; both routes agree for any gamma
  check("canonical.normalized", [&](Rng& rng) -> std::optional<Json> {
    std::vector<std::size_t> ns;
    for (std::size_t n = 1; n <= cfg.dims; ++n)
      if (!f.divides_characteristic(n)) ns.push_back(n);
    const std::size_t m = dim(rng), n = ns[rng.index(ns.size())];
    const Matrix u = reference_upsilon(f, n, Reference::idn);
    const CanonicalDifference z = CanonicalDifference::reference(f, m, n, Reference::idn);
    const CanonicalDifference g =
        CanonicalDifference::build(u, random_traceless_tensor(rng, f, m, n, {1}), UpsilonMode::normalized_identity);
    const Matrix a = rng.matrix(f, m * n), b = rng.matrix(f, n);
    const Matrix want = f.from_int(static_cast<long long>(n)).inverse() *
                        (partial_trace(a, m, n) - b.trace() * Matrix::identity(f, m));
    if (delta_eval(z, a, b) == want && delta_eval_closed(z, a, b) == want && delta_eval(g, a, b) == delta_eval_closed(g, a, b))
      return std::nullopt;
    Json w = params(g);
    w["A"] = matrix_to_json(a);
    w["B"] = matrix_to_json(b);
    return w;
  });

  // D1 on alpha agrees with the gamma form; D2 on alpha agrees with tr_3(gamma) = 0
  check("canonical.criteria", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    Matrix y = random_traceless_tensor(rng, f, m, n, {0, 1}).matrix();
    if (rng.coin()) y = y + y.transpose();
    if (rng.coin()) y = project_trace_free(y, {m, n, m}, std::vector<std::size_t>{2});
    const TensorView g(project_trace_free(y, {m, n, m}, std::vector<std::size_t>{1}), m, n, m);
    const bool normalized = !f.divides_characteristic(n);
    const CanonicalDifference cd =
        normalized ? CanonicalDifference::build(reference_upsilon(f, n, Reference::idn), g, UpsilonMode::normalized_identity)
                   : CanonicalDifference::build(reference_upsilon(f, n, Reference::e11), g);
    if (d1_criterion(cd) != d1_criterion_gamma(cd)) return params(cd);
    if (normalized) {
      const bool on_alpha = tr3(cd.alpha()) == f.from_int(static_cast<long long>(n)).inverse() *
                                                   Matrix::identity(f, m * n);
      if (d2_criterion(cd) != on_alpha || d2_criterion(cd) != tr3(g).is_zero()) return params(cd);
    }
    return std::nullopt;
  });

  check("canonical.uniqueness", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const CanonicalDifference x =
        CanonicalDifference::build(rng.trace_one_matrix(f, n), random_traceless_tensor(rng, f, m, n, {0, 1}));
    const CanonicalDifference y =
        rng.coin() ? x : CanonicalDifference::build(rng.trace_one_matrix(f, n), random_traceless_tensor(rng, f, m, n, {0, 1}));
    const CheckResult r = uniqueness_check(x, y);
    if (r.passed()) return std::nullopt;
    Json w = Json::object();
    w["x"] = canonical_to_json(x);
    w["y"] = canonical_to_json(y);
    return w;
  });

  check("canonical.json", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = dim(rng);
    const CanonicalDifference cd =
        CanonicalDifference::build(rng.trace_one_matrix(f, n), random_traceless_tensor(rng, f, m, n, {1}));
    if (canonical_from_json(Json::parse(canonical_to_json(cd).dump())) == cd) return std::nullopt;
    return params(cd);
  });
  return rep;
}

inline Matrix scaled_identity(const Field& f, std::size_t n) {
  return f.from_int(static_cast<long long>(n)).inverse() * Matrix::identity(f, n);
}

inline Report uniform_suite(const SuiteOptions& o) {
  o.cfg.validate(3);
  const CampaignConfig& cfg = o.cfg;
  const Field f = cfg.field;
  if (auto skip = skip_inexact(cfg, "uniform")) return *skip;
  const bool invertible6 = !f.divides_characteristic(6);
  Report rep;
  auto family = [&](const std::string& name, const UniformFamily& fam) {
    const std::string pre = "uniform." + name + ".";
    rep.append(with_prefix(verify_uniform_family(fam, cfg), "uniform.", pre));
    for (std::size_t p : {2, 3})
      for (std::size_t q : {2, 3}) rep.append(with_prefix(assoc_necessary_check(fam, p, q), "uniform.", pre));
    for (std::size_t m : {1, 2})
      for (std::size_t q : {2, 3}) rep.append(with_prefix(verify_D5(fam, m, 2, q, cfg.trials, cfg.seed), "uniform.", pre));
  };
  if (invertible6) family("idn", UniformFamily::from_seeds(f, {{2, scaled_identity(f, 2)}, {3, scaled_identity(f, 3)}}));
  family("e11", UniformFamily::from_seeds(f, {{2, Matrix::basis_unit(f, 1, 1, 2)}, {3, Matrix::basis_unit(f, 1, 1, 3)}}));

  // upsilon_6 = J_6 / 6 with E_11 seeds must be rejected by both checks
  CheckResult neg{"uniform.inconsistent.detected", Status::skip, 0, cfg.seed, std::nullopt};
  if (invertible6) {
    const UniformFamily bad(f, {{2, Matrix::basis_unit(f, 1, 1, 2)},
                                {3, Matrix::basis_unit(f, 1, 1, 3)},
                                {6, f.from_int(6).inverse() * Matrix::all_ones(f, 6, 6)}});
    const Report assoc = assoc_necessary_check(bad, 2, 3);
    const Report d5 = verify_D5(bad, 1, 2, 3, cfg.trials, cfg.seed);
    const CheckResult* main = d5.find("uniform.D5.m1p2q3");
    neg.trials = 1;
    neg.status = !assoc.all_passed() && main && main->status == Status::fail && main->witness ? Status::pass : Status::fail;
    if (main && main->witness) neg.witness = *main->witness;
  }
  rep.add(std::move(neg));
  return rep;
}

}  // namespace detail

inline Report run_suite(std::string_view name, const SuiteOptions& o) {
  if (name == "sums") return verify_sum_identities(o.cfg);
  if (name == "quotients") return detail::quotients_suite(o);
  if (name == "differences") return detail::differences_suite(o);
  if (name == "canonical") return detail::canonical_suite(o);
  if (name == "uniform") return detail::uniform_suite(o);
  if (name == "appendix") {
    if (auto skip = detail::skip_inexact(o.cfg, "appendix")) return *skip;
    return verify_appendix_identities(o.cfg);
  }
  if (name == "ortho") return verify_module_laws(o.cfg);
  throw Error(Errc::invalid_config, "unknown suite '" + std::string(name) + "'");
}

/// "all" expands to every suite. With jobs > 1 suites run on worker
/// threads; records are still emitted in suite order.
inline Report run_suites(std::string_view name, const SuiteOptions& o, unsigned jobs = 1) {
  const std::vector<std::string> names = name == "all" ? suite_names() : std::vector<std::string>{std::string(name)};
  Report out;
  if (jobs <= 1 || names.size() == 1) {
    for (const auto& n : names) out.append(run_suite(n, o));
    return out;
  }
  std::vector<std::future<Report>> pending;
  for (const auto& n : names) pending.push_back(std::async(std::launch::async, [n, &o] { return run_suite(n, o); }));
  for (auto& p : pending) out.append(p.get());
  return out;
}

}  // namespace kron
