#pragma once

// Families of canonical differences indexed by (m, n): alpha_{m,n} =
// sum E_ij (x) upsilon_n (x) E_ji + gamma_{m,n}. upsilon_n is stored or
// synthesized from prime seeds as the Kronecker product over the prime
// factorization of n.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "kron/d_properties.hpp"

namespace kron {

/// Prime factors of n in ascending order, with multiplicity; {} for n = 1.
inline std::vector<std::uint64_t> integer_factorize(std::uint64_t n) {
  if (n == 0) throw Error(Errc::invalid_arg, "cannot factorize 0");
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

using SeedMap = std::map<std::size_t, Matrix>;

namespace detail {

inline void validate_seeds(const SeedMap& seeds) {
  for (const auto& [p, s] : seeds) {
    if (!is_prime(p)) throw Error(Errc::not_prime, "seed index " + std::to_string(p) + " is not prime");
    if (!s.is_square() || s.rows() != p)
      throw Error(Errc::dimension_mismatch, "seed for p = " + std::to_string(p) + " must be " + std::to_string(p) + "x" +
                                                std::to_string(p));
    if (s.trace() != s.field().one())
      throw Error(Errc::bad_trace, "seed for p = " + std::to_string(p) + " has trace " + s.trace().to_string());
  }
  for (auto a = seeds.begin(); a != seeds.end(); ++a)
    for (auto b = std::next(a); b != seeds.end(); ++b) {
      require_same_field(a->second.field(), b->second.field());
      if (kron_product(a->second, b->second) != kron_product(b->second, a->second)) {
        Json w = Json::object();
        w["p"] = a->first;
        w["q"] = b->first;
        throw Error(Errc::non_commuting_seeds,
                    "seeds for " + std::to_string(a->first) + " and " + std::to_string(b->first) + " do not commute", w);
      }
    }
}

inline Matrix seed_product(const SeedMap& seeds, const std::vector<std::uint64_t>& primes, const Field& f) {
  Matrix r = Matrix::identity(f, 1);
  for (std::uint64_t p : primes) r = kron_product(r, seeds.at(p));
  return r;
}

}  // namespace detail

/// upsilon_n = pi_{p_1} (x) ... (x) pi_{p_k} over the ascending factorization;
/// the reversed ordering is computed as an order-independence check.
inline Matrix family_from_prime_seeds(const SeedMap& seeds, std::size_t n) {
  if (n == 0) throw Error(Errc::invalid_arg, "n must be positive");
  detail::validate_seeds(seeds);
  const std::vector<std::uint64_t> primes = integer_factorize(n);
  for (std::uint64_t p : primes)
    if (!seeds.count(p)) throw Error(Errc::missing_seed, "no seed for prime factor " + std::to_string(p) + " of " + std::to_string(n));
  if (primes.empty()) {
    if (seeds.empty()) throw Error(Errc::missing_seed, "empty seed map");
    return Matrix::identity(seeds.begin()->second.field(), 1);
  }
  const Field f = seeds.at(primes.front()).field();
  const Matrix fwd = detail::seed_product(seeds, primes, f);
  const std::vector<std::uint64_t> rev(primes.rbegin(), primes.rend());
  if (detail::seed_product(seeds, rev, f) != fwd)
    throw Error(Errc::non_commuting_seeds, "seed products depend on the factor order");
  return fwd;
}

class UniformFamily {
 public:
  using GammaMap = std::map<std::pair<std::size_t, std::size_t>, TensorView>;

  /// Validates every stored matrix eagerly: tr(upsilon_n) = 1,
  /// tr_1(gamma) = tr_2(gamma) = 0, and the seed conditions.
  UniformFamily(Field f, std::map<std::size_t, Matrix> upsilon, GammaMap gamma = {}, SeedMap seeds = {})
      : field_(std::move(f)), upsilon_(std::move(upsilon)), gamma_(std::move(gamma)), seeds_(std::move(seeds)) {
    for (const auto& [n, u] : upsilon_) {
      require_same_field(field_, u.field());
      if (!u.is_square() || u.rows() != n)
        throw Error(Errc::dimension_mismatch, "upsilon_" + std::to_string(n) + " must be " + std::to_string(n) + "x" + std::to_string(n));
      if (u.trace() != field_.one())
        throw Error(Errc::bad_trace, "tr(upsilon_" + std::to_string(n) + ") = " + u.trace().to_string(), matrix_to_json(u));
    }
    for (const auto& [mn, g] : gamma_) {
      require_same_field(field_, g.field());
      if (g.d1() != mn.first || g.d2() != mn.second || g.d3() != mn.first)
        throw Error(Errc::dimension_mismatch, "gamma key disagrees with its modes");
      if (!tr1(g).is_zero() || !tr2(g).is_zero())
        throw Error(Errc::bad_gamma, "gamma_{" + std::to_string(mn.first) + "," + std::to_string(mn.second) +
                                         "} needs tr_1 = tr_2 = 0");
    }
    for (const auto& [p, s] : seeds_) require_same_field(field_, s.field());
    detail::validate_seeds(seeds_);
  }

  /// Family generated by prime seeds only.
  static UniformFamily from_seeds(Field f, SeedMap seeds) { return UniformFamily(std::move(f), {}, {}, std::move(seeds)); }

  const Field& field() const noexcept { return field_; }
  const std::map<std::size_t, Matrix>& stored_upsilon() const noexcept { return upsilon_; }
  const GammaMap& stored_gamma() const noexcept { return gamma_; }
  const SeedMap& seeds() const noexcept { return seeds_; }

  bool has_upsilon(std::size_t n) const {
    if (n == 1 || upsilon_.count(n)) return true;
    if (seeds_.empty()) return false;
    for (std::uint64_t p : integer_factorize(n))
      if (!seeds_.count(p)) return false;
    return true;
  }

  /// Stored, else synthesized from seeds (cached); upsilon_1 = [1].
  Matrix upsilon(std::size_t n) const {
    if (auto it = upsilon_.find(n); it != upsilon_.end()) return it->second;
    if (n == 1) return Matrix::identity(field_, 1);
    if (!has_upsilon(n)) throw Error(Errc::missing_upsilon, "no upsilon_" + std::to_string(n) + " in family");
    std::lock_guard<std::mutex> lock(mu_);
    auto it = synth_.find(n);
    if (it == synth_.end()) it = synth_.emplace(n, family_from_prime_seeds(seeds_, n)).first;
    return it->second;
  }

  TensorView gamma(std::size_t m, std::size_t n) const {
    if (auto it = gamma_.find({m, n}); it != gamma_.end()) return it->second;
    return TensorView::zero(field_, m, n, m);
  }

  const CanonicalDifference& member(std::size_t m, std::size_t n) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (auto it = members_.find({m, n}); it != members_.end()) return *it->second;
    }
    auto cd = std::make_shared<const CanonicalDifference>(CanonicalDifference::build(upsilon(n), gamma(m, n)));
    std::lock_guard<std::mutex> lock(mu_);
    return *members_.emplace(std::make_pair(m, n), std::move(cd)).first->second;
  }

  Matrix operator()(const Matrix& mm, const Matrix& b) const {
    const std::size_t m = detail::outer_order(mm, b, "family difference");
    return member(m, b.rows()).eval_closed(mm, b);
  }

 private:
  Field field_;
  std::map<std::size_t, Matrix> upsilon_;
  GammaMap gamma_;
  SeedMap seeds_;
  mutable std::mutex mu_;
  mutable std::map<std::size_t, Matrix> synth_;
  mutable std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const CanonicalDifference>> members_;
};

inline Matrix family_difference(const UniformFamily& fam, const Matrix& mm, const Matrix& b) { return fam(mm, b); }

inline DifferenceOp uniform_op(std::shared_ptr<const UniformFamily> fam, std::string name = "uniform") {
  const Field f = fam->field();
  auto apply = [fam](const Matrix& a, const Matrix& b) { return (*fam)(a, b); };
  auto supports = [fam](std::size_t, std::size_t n) { return fam->has_upsilon(n); };
  return {std::move(name), f, std::move(apply), std::move(supports), 0};
}

/// Btr(upsilon_pq) = upsilon_q and Ptr(upsilon_pq) = upsilon_p with split (p, q).
inline Report assoc_necessary_check(const UniformFamily& fam, std::size_t p, std::size_t q) {
  const Matrix up = fam.upsilon(p), uq = fam.upsilon(q), upq = fam.upsilon(p * q);
  const std::string base = "uniform.assoc.p" + std::to_string(p) + "q" + std::to_string(q);
  Report rep;
  auto rec = [&](const char* which, const Matrix& got, const Matrix& want) {
    CheckResult r{base + "." + which, got == want ? Status::pass : Status::fail, 1, 0, std::nullopt};
    if (!r.passed()) {
      Json w = Json::object();
      w["upsilon_pq"] = matrix_to_json(upq);
      w["marginal"] = matrix_to_json(got);
      w["expected"] = matrix_to_json(want);
      r.witness = std::move(w);
    }
    rep.add(std::move(r));
  };
  rec("Btr", block_trace(upq, p, q), uq);
  rec("Ptr", partial_trace(upq, p, q), up);
  return rep;
}

/// D5 for X in F_m (x) F_p (x) F_q, Y in F_q, Z in F_p:
/// (X (-) Y) (-) Z = X (-) (Z (+) Y). Random trials, then the exhaustive
/// basis sweep; also the zero form and the restricted form X = W (+) (Z (+) Y).
/// With gamma = 0 a pass forces upsilon_pq = upsilon_p (x) upsilon_q; the
/// swapped campaign (m, q, p) gives upsilon_q (x) upsilon_p.
inline Report verify_D5(const UniformFamily& fam, std::size_t m, std::size_t p, std::size_t q, std::uint64_t trials,
                        std::uint64_t seed) {
  if (m < 1 || p < 1 || q < 1 || m > 2 || p > 3 || q > 3)
    throw Error(Errc::invalid_config, "verify_D5 needs 1 <= m <= 2, 1 <= p <= 3, 1 <= q <= 3");
  if (trials < 1) throw Error(Errc::invalid_config, "trials must be at least 1");
  const Field f = fam.field();
  const std::string base = "uniform.D5.m" + std::to_string(m) + "p" + std::to_string(p) + "q" + std::to_string(q);
  const std::size_t x_ord = m * p * q;
  auto lhs = [&](const Matrix& x, const Matrix& y, const Matrix& z) { return fam(fam(x, y), z); };
  auto rhs = [&](const Matrix& x, const Matrix& y, const Matrix& z) { return fam(x, kron_sum(z, y)); };
  auto probe = [&](const Matrix& x, const Matrix& y, const Matrix& z) -> std::optional<Json> {
    const Matrix l = lhs(x, y, z), r = rhs(x, y, z);
    if (l == r) return std::nullopt;
    Json w = witness_of({{"X", &x}, {"Y", &y}, {"Z", &z}});
    w["lhs"] = matrix_to_json(l);
    w["rhs"] = matrix_to_json(r);
    return w;
  };
  const Matrix x0 = Matrix::zero(f, x_ord), y0 = Matrix::zero(f, q), z0 = Matrix::zero(f, p);
  Report rep;

  auto exhaustive = [&](CheckResult r, bool zero) {
    if (r.status != Status::pass) return r;
    auto sweep = [&](std::size_t slot, std::size_t ord) -> std::optional<Json> {
      for (std::size_t i = 1; i <= ord; ++i)
        for (std::size_t j = 1; j <= ord; ++j) {
          ++r.trials;
          const Matrix e = Matrix::basis_unit(f, i, j, ord);
          auto w = probe(slot == 0 ? e : x0, slot == 1 ? e : y0, slot == 2 ? e : z0);
          if (w) {
            (*w)["phase"] = "sweep";
            return w;
          }
        }
      return std::nullopt;
    };
    std::optional<Json> w = sweep(0, x_ord);
    if (!w && !zero) w = sweep(1, q);
    if (!w && !zero) w = sweep(2, p);
    if (w) {
      r.status = Status::fail;
      r.witness = std::move(w);
    }
    return r;
  };

  rep.add(exhaustive(run_trials(base, trials, seed,
                                [&](std::uint64_t t) {
                                  Rng rng(seed, base, t);
                                  const Matrix x = rng.matrix(f, x_ord), y = rng.matrix(f, q), z = rng.matrix(f, p);
                                  return probe(x, y, z);
                                }),
                     false));
  rep.add(exhaustive(run_trials(base + "-0", trials, seed,
                                [&](std::uint64_t t) {
                                  Rng rng(seed, base + "-0", t);
                                  return probe(rng.matrix(f, x_ord), y0, z0);
                                }),
                     true));
  rep.add(run_trials(base + ".restricted", trials, seed, [&](std::uint64_t t) {
    Rng rng(seed, base + ".restricted", t);
    const Matrix w = rng.matrix(f, m), y = rng.matrix(f, q), z = rng.matrix(f, p);
    return probe(kron_sum(w, kron_sum(z, y)), y, z);
  }));
  return rep;
}

/// Difference axiom and the uniformity clauses for dims with upsilon
/// available. The mixed clause with p > 1 is not implied by the trace
/// conditions on gamma alone; it holds for gamma = 0.
inline Report verify_uniform_family(const UniformFamily& fam, const CampaignConfig& cfg) {
  cfg.validate(3);
  const Field f = fam.field();
  std::vector<std::size_t> ns;
  for (std::size_t n = 1; n <= cfg.dims; ++n)
    if (fam.has_upsilon(n)) ns.push_back(n);
  Report rep;
  auto dim = [&](Rng& rng) { return rng.dim(1, cfg.dims); };
  auto n_of = [&](Rng& rng) { return ns[rng.index(ns.size())]; };

  rep.add(seeded_check("uniform.axiom", cfg, [&](Rng& rng) -> std::optional<Json> {
    const Matrix a = rng.matrix(f, dim(rng)), b = rng.matrix(f, n_of(rng));
    if (fam(kron_sum(a, b), b) == a) return std::nullopt;
    return witness_of({{"A", &a}, {"B", &b}});
  }));
  auto mixed = [&](const char* name, bool p1) {
    rep.add(seeded_check(name, cfg, [&](Rng& rng) -> std::optional<Json> {
      const std::size_t m = dim(rng), n = n_of(rng), p = p1 ? 1 : dim(rng);
      const Matrix a = rng.matrix(f, m), c = rng.matrix(f, p * n), b = rng.matrix(f, n);
      if (fam(kron_sum(a, c), b) == kron_sum(a, fam(c, b))) return std::nullopt;
      return witness_of({{"A", &a}, {"B", &b}, {"C", &c}});
    }));
  };
  mixed("uniform.mixed_p1", true);
  mixed("uniform.mixed", false);
  rep.add(seeded_check("uniform.additive", cfg, [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = n_of(rng);
    const Matrix a = rng.matrix(f, m * n), b = rng.matrix(f, m * n), c = rng.matrix(f, n), d = rng.matrix(f, n);
    if (fam(a + b, c + d) == fam(a, c) + fam(b, d)) return std::nullopt;
    return witness_of({{"A", &a}, {"B", &b}, {"C", &c}, {"D", &d}});
  }));
  rep.add(seeded_check("uniform.scalar", cfg, [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = dim(rng), n = n_of(rng);
    const Matrix a = rng.matrix(f, m * n), c = rng.matrix(f, n);
    const Scalar k = rng.scalar(f);
    if (fam(k * a, k * c) == k * fam(a, c)) return std::nullopt;
    Json w = witness_of({{"A", &a}, {"C", &c}});
    w["k"] = k.to_string();
    return w;
  }));
  return rep;
}

// JSON: {"field", "upsilon": {"n": matrix}, "gamma": {"m,n": tensor}, "seeds": {"p": matrix}}
inline Json family_to_json(const UniformFamily& fam) {
  Json j = Json::object();
  j["field"] = field_to_json(fam.field());
  Json u = Json::object(), g = Json::object(), s = Json::object();
  for (const auto& [n, m] : fam.stored_upsilon()) u[std::to_string(n)] = matrix_to_json(m);
  for (const auto& [mn, t] : fam.stored_gamma()) g[std::to_string(mn.first) + "," + std::to_string(mn.second)] = tensor_to_json(t);
  for (const auto& [p, m] : fam.seeds()) s[std::to_string(p)] = matrix_to_json(m);
  j["upsilon"] = std::move(u);
  j["gamma"] = std::move(g);
  j["seeds"] = std::move(s);
  return j;
}

namespace detail {

inline std::size_t parse_key(const std::string& s) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size() || v == 0) throw Error(Errc::parse_error, "bad family key '" + s + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace detail

inline UniformFamily family_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::parse_error, "family must be a JSON object");
  std::map<std::size_t, Matrix> u;
  UniformFamily::GammaMap g;
  SeedMap s;
  if (j.contains("upsilon"))
    for (const auto& [k, v] : j["upsilon"].items()) u.emplace(detail::parse_key(k), matrix_from_json(v));
  if (j.contains("gamma"))
    for (const auto& [k, v] : j["gamma"].items()) {
      const auto comma = k.find(',');
      if (comma == std::string::npos) throw Error(Errc::parse_error, "gamma key must be 'm,n'");
      g.emplace(std::make_pair(detail::parse_key(k.substr(0, comma)), detail::parse_key(k.substr(comma + 1))),
                tensor_from_json(v));
    }
  if (j.contains("seeds"))
    for (const auto& [k, v] : j["seeds"].items()) s.emplace(detail::parse_key(k), matrix_from_json(v));
  Field f = Field::rational();
  if (j.contains("field")) f = field_from_json(j["field"]);
  else if (!u.empty()) f = u.begin()->second.field();
  else if (!s.empty()) f = s.begin()->second.field();
  return UniformFamily(f, std::move(u), std::move(g), std::move(s));
}

}  // namespace kron
