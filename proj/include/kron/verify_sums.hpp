#pragma once

// Seeded checks of the Kronecker-sum identities S1-S7. S1-S6 run over the
// requested exact field; S7 always runs over real64.

#include <cstdint>
#include <optional>

#include "kron/kron_ops.hpp"
#include "kron/random.hpp"
#include "kron/report.hpp"

namespace kron {

inline Report verify_sum_identities(const CampaignConfig& cfg) {
  cfg.validate(4);
  const Field f = cfg.field;
  Report rep;
  auto trial = [&](const char* name, auto&& body) { rep.add(seeded_check(name, cfg, body)); };

  trial("sums.S1.transpose", [&](Rng& rng) -> std::optional<Json> {
    const Matrix a = rng.matrix(f, rng.dim(1, cfg.dims)), b = rng.matrix(f, rng.dim(1, cfg.dims));
    if (kron_sum(a, b).transpose() == kron_sum(a.transpose(), b.transpose())) return std::nullopt;
    return witness_of({{"A", &a}, {"B", &b}});
  });

  trial("sums.S2.trace", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = rng.dim(1, cfg.dims), n = rng.dim(1, cfg.dims);
    const Matrix a = rng.matrix(f, m), b = rng.matrix(f, n);
    const Scalar rhs = f.from_int(static_cast<long long>(n)) * a.trace() + f.from_int(static_cast<long long>(m)) * b.trace();
    if (kron_sum(a, b).trace() == rhs) return std::nullopt;
    return witness_of({{"A", &a}, {"B", &b}});
  });

  trial("sums.S3.scalar", [&](Rng& rng) -> std::optional<Json> {
    const Matrix a = rng.matrix(f, rng.dim(1, cfg.dims)), b = rng.matrix(f, rng.dim(1, cfg.dims));
    const Scalar k = rng.scalar(f);
    if (kron_sum(k * a, k * b) == k * kron_sum(a, b)) return std::nullopt;
    Json w = witness_of({{"A", &a}, {"B", &b}});
    w["k"] = k.to_string();
    return w;
  });

  trial("sums.S4.additive", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = rng.dim(1, cfg.dims), n = rng.dim(1, cfg.dims);
    const Matrix a = rng.matrix(f, m), b = rng.matrix(f, m), c = rng.matrix(f, n), d = rng.matrix(f, n);
    if (kron_sum(a + b, c + d) == kron_sum(a, c) + kron_sum(b, d)) return std::nullopt;
    return witness_of({{"A", &a}, {"B", &b}, {"C", &c}, {"D", &d}});
  });

  trial("sums.S5.associative", [&](Rng& rng) -> std::optional<Json> {
    const Matrix a = rng.matrix(f, rng.dim(1, cfg.dims)), b = rng.matrix(f, rng.dim(1, cfg.dims)),
                 c = rng.matrix(f, rng.dim(1, cfg.dims));
    if (kron_sum(kron_sum(a, b), c) == kron_sum(a, kron_sum(b, c))) return std::nullopt;
    return witness_of({{"A", &a}, {"B", &b}, {"C", &c}});
  });

  trial("sums.S6.commutator", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = rng.dim(1, cfg.dims), n = rng.dim(1, cfg.dims);
    const Matrix a = rng.matrix(f, m), c = rng.matrix(f, m), b = rng.matrix(f, n), d = rng.matrix(f, n);
    if (commutator(kron_sum(a, b), kron_sum(c, d)) == kron_sum(commutator(a, c), commutator(b, d))) return std::nullopt;
    return witness_of({{"A", &a}, {"B", &b}, {"C", &c}, {"D", &d}});
  });

  const Field real = Field::real64();
  trial("sums.S7.exp", [&](Rng& rng) -> std::optional<Json> {
    const std::size_t m = rng.dim(1, std::min<std::size_t>(cfg.dims, 3)), n = rng.dim(1, std::min<std::size_t>(cfg.dims, 3));
    const Matrix a = rng.matrix(real, m), b = rng.matrix(real, n);
    const double err = max_abs_diff(matrix_exp(kron_sum(a, b)), kron_product(matrix_exp(a), matrix_exp(b)));
    if (err <= 1e-9) return std::nullopt;
    Json w = witness_of({{"A", &a}, {"B", &b}});
    w["max_error"] = err;
    return w;
  });

  return rep;
}

}  // namespace kron
