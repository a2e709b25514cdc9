#pragma once

// Seeded generation of random scalars, matrices and constrained tensors.
// Per-trial seeds depend only on (master, suite, trial), so a trial's data
// does not depend on how trials are scheduled.

#include <cstdint>
#include <random>
#include <string_view>

#include "kron/tensor.hpp"

namespace kron {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t trial_seed(std::uint64_t master, std::string_view suite, std::uint64_t trial) noexcept {
  return splitmix64(splitmix64(master ^ fnv1a(suite)) + trial);
}

/// mt19937_64 with distribution code written out so that draws are
/// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  Rng(std::uint64_t master, std::string_view suite, std::uint64_t trial) : eng_(trial_seed(master, suite, trial)) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform integer in [lo, hi], rejection sampled.
  long long uniform(long long lo, long long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<long long>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return lo + static_cast<long long>(x % span);
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<long long>(n) - 1)); }

  /// Uniform double in [lo, hi).
  double real(double lo, double hi) {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  bool coin() { return (next() & 1U) != 0; }

  /// Small rationals (numerator in [-5, 5], denominator in [1, 3]), uniform
  /// residues, or reals in [-1, 1).
  Scalar scalar(const Field& f) {
    switch (f.kind()) {
      case FieldKind::rational: return f.from_ratio(uniform(-5, 5), uniform(1, 3));
      case FieldKind::prime: return f.from_int(uniform(0, static_cast<long long>(f.modulus()) - 1));
      case FieldKind::real64: return f.from_double(real(-1.0, 1.0));
    }
    return f.zero();
  }

  Scalar nonzero_scalar(const Field& f) {
    for (;;) {
      Scalar s = scalar(f);
      if (!s.is_zero()) return s;
    }
  }

  Matrix matrix(const Field& f, std::size_t rows, std::size_t cols) {
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = scalar(f);
    return m;
  }
  Matrix matrix(const Field& f, std::size_t n) { return matrix(f, n, n); }

  Matrix nonzero_matrix(const Field& f, std::size_t rows, std::size_t cols) {
    for (;;) {
      Matrix m = matrix(f, rows, cols);
      if (!m.is_zero()) return m;
    }
  }
  Matrix nonzero_matrix(const Field& f, std::size_t n) { return nonzero_matrix(f, n, n); }

  /// Exact fields only.
  Matrix invertible_matrix(const Field& f, std::size_t n) {
    for (;;) {
      Matrix m = matrix(f, n);
      if (m.rank() == n) return m;
    }
  }

  /// Random n x n matrix with trace one.
  Matrix trace_one_matrix(const Field& f, std::size_t n) {
    Matrix m = matrix(f, n);
    m(0, 0) += f.one() - m.trace();
    return m;
  }

  /// Integer in [lo, hi] drawn once; convenient for dimensions.
  std::size_t dim(std::size_t lo, std::size_t hi) {
    return static_cast<std::size_t>(uniform(static_cast<long long>(lo), static_cast<long long>(hi)));
  }

 private:
  std::mt19937_64 eng_;
};

/// Projects onto ker tr_k: X - iota_k(tr_k X) with iota_k placing E_11 in
/// mode k. Applying it for several modes in turn zeroes each of their
/// traces, since the projections commute.
inline Matrix project_trace_free(const Matrix& x, const Dims& dims, std::size_t k) {
  Dims rest = dims;
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
  const Matrix t = trace_modes(x, dims, {k});
  return x - insert_mode(t, rest, k, Matrix::basis_unit(x.field(), 1, 1, dims[k]));
}

inline Matrix project_trace_free(Matrix x, const Dims& dims, const std::vector<std::size_t>& modes) {
  for (std::size_t k : modes) x = project_trace_free(x, dims, k);
  return x;
}

/// Random tensor of mode dimensions (m, n, m) whose listed mode traces
/// (0-based modes) vanish.
inline TensorView random_traceless_tensor(Rng& rng, const Field& f, std::size_t m, std::size_t n,
                                          const std::vector<std::size_t>& modes) {
  const Dims dims{m, n, m};
  return TensorView(project_trace_free(rng.matrix(f, m * n * m), dims, modes), m, n, m);
}

}  // namespace kron
