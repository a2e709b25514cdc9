#pragma once

// Scalar fields: exact rationals, prime fields GF(p) and an approximate real
// field used only for the exponential identities.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/gmp.hpp>

#include "kron/error.hpp"

namespace kron {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

enum class FieldKind { rational, prime, real64 };

inline bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

class Scalar;

/// Descriptor of the ambient field. Cheap to copy; compared by value.
class Field {
 public:
  static constexpr double default_eps = 1e-9;

  static Field rational() noexcept { return Field(FieldKind::rational, 0, 0.0); }

  // Residues are multiplied in 128-bit arithmetic; p is capped at 2^32 so
  // that canonical residues always fit comfortably.
  static Field prime(std::uint64_t p) {
    if (!is_prime(p)) throw Error(Errc::not_prime, "GF(p) needs prime p, got " + std::to_string(p));
    if (p >= (std::uint64_t{1} << 32)) throw Error(Errc::invalid_arg, "prime modulus must be < 2^32");
    return Field(FieldKind::prime, p, 0.0);
  }

  static Field real64(double eps = default_eps) {
    if (!(eps > 0.0)) throw Error(Errc::invalid_arg, "real64 tolerance must be positive");
    return Field(FieldKind::real64, 0, eps);
  }

  FieldKind kind() const noexcept { return kind_; }
  std::uint64_t modulus() const noexcept { return p_; }
  double eps() const noexcept { return eps_; }
  bool is_exact() const noexcept { return kind_ != FieldKind::real64; }

  std::uint64_t characteristic() const noexcept { return kind_ == FieldKind::prime ? p_ : 0; }

  /// True iff the characteristic is non-zero and divides n.
  bool divides_characteristic(std::uint64_t n) const noexcept {
    const auto chi = characteristic();
    return chi != 0 && n % chi == 0;
  }

  std::string name() const {
    switch (kind_) {
      case FieldKind::rational: return "rational";
      case FieldKind::prime: return "gf" + std::to_string(p_);
      case FieldKind::real64: return "real64";
    }
    return "?";
  }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long v) const;
  Scalar from_ratio(long long num, long long den) const;
  Scalar from_double(double v) const;
  Scalar parse(std::string_view text) const;

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.kind_ == b.kind_ && a.p_ == b.p_ && a.eps_ == b.eps_;
  }
  friend bool operator!=(const Field& a, const Field& b) noexcept { return !(a == b); }

 private:
  Field(FieldKind kind, std::uint64_t p, double eps) noexcept : kind_(kind), p_(p), eps_(eps) {}

  FieldKind kind_;
  std::uint64_t p_;
  double eps_;
};

inline void require_same_field(const Field& a, const Field& b) {
  if (a != b) throw Error(Errc::field_mismatch, "operands over " + a.name() + " and " + b.name());
}

/// An element of a Field. Residues are kept canonically reduced.
class Scalar {
 public:
  using Value = std::variant<Rational, std::uint64_t, double>;

  Scalar() : field_(Field::rational()), value_(Rational(0)) {}

  static Scalar from_rational(Field f, Rational v) {
    if (f.kind() != FieldKind::rational) throw Error(Errc::field_mismatch, "rational value for " + f.name());
    return Scalar(f, std::move(v));
  }
  static Scalar from_residue(Field f, long long v) {
    if (f.kind() != FieldKind::prime) throw Error(Errc::field_mismatch, "residue for " + f.name());
    const auto p = static_cast<long long>(f.modulus());
    long long r = v % p;
    if (r < 0) r += p;
    return Scalar(f, static_cast<std::uint64_t>(r));
  }
  static Scalar from_real(Field f, double v) {
    if (f.kind() != FieldKind::real64) throw Error(Errc::field_mismatch, "real value for " + f.name());
    return Scalar(f, v);
  }

  const Field& field() const noexcept { return field_; }
  const Value& value() const noexcept { return value_; }

  const Rational& rational() const { return std::get<Rational>(value_); }
  std::uint64_t residue() const { return std::get<std::uint64_t>(value_); }
  double real() const { return std::get<double>(value_); }

  bool is_zero() const {
    switch (field_.kind()) {
      case FieldKind::rational: return rational() == 0;
      case FieldKind::prime: return residue() == 0;
      case FieldKind::real64: return std::abs(real()) <= field_.eps();
    }
    return false;
  }

  bool is_one() const { return *this == field_.one(); }

  double to_double() const {
    switch (field_.kind()) {
      case FieldKind::rational: return rational().convert_to<double>();
      case FieldKind::prime: return static_cast<double>(residue());
      case FieldKind::real64: return real();
    }
    return 0.0;
  }

  Scalar& operator+=(const Scalar& o) {
    require_same_field(field_, o.field_);
    switch (field_.kind()) {
      case FieldKind::rational: std::get<Rational>(value_) += o.rational(); break;
      case FieldKind::prime: {
        auto& r = std::get<std::uint64_t>(value_);
        r = (r + o.residue()) % field_.modulus();
        break;
      }
      case FieldKind::real64: std::get<double>(value_) += o.real(); break;
    }
    return *this;
  }

  Scalar& operator-=(const Scalar& o) {
    require_same_field(field_, o.field_);
    switch (field_.kind()) {
      case FieldKind::rational: std::get<Rational>(value_) -= o.rational(); break;
      case FieldKind::prime: {
        auto& r = std::get<std::uint64_t>(value_);
        r = (r + field_.modulus() - o.residue()) % field_.modulus();
        break;
      }
      case FieldKind::real64: std::get<double>(value_) -= o.real(); break;
    }
    return *this;
  }

  Scalar& operator*=(const Scalar& o) {
    require_same_field(field_, o.field_);
    switch (field_.kind()) {
      case FieldKind::rational: std::get<Rational>(value_) *= o.rational(); break;
      case FieldKind::prime: {
        auto& r = std::get<std::uint64_t>(value_);
        r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * o.residue()) % field_.modulus());
        break;
      }
      case FieldKind::real64: std::get<double>(value_) *= o.real(); break;
    }
    return *this;
  }

  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  /// Multiplicative inverse; throws ZeroInverse on zero. For real64 only an
  /// exact 0.0 is rejected.
  Scalar inverse() const {
    switch (field_.kind()) {
      case FieldKind::rational:
        if (rational() == 0) throw Error(Errc::zero_inverse, "zero has no inverse");
        return Scalar(field_, Rational(1) / rational());
      case FieldKind::prime: {
        if (residue() == 0) throw Error(Errc::zero_inverse, "zero has no inverse");
        // extended Euclid on signed 64-bit; p < 2^32 keeps this in range
        long long a = static_cast<long long>(residue()), m = static_cast<long long>(field_.modulus());
        long long x0 = 1, x1 = 0, r0 = a, r1 = m;
        while (r1 != 0) {
          const long long q = r0 / r1;
          long long t = r0 - q * r1; r0 = r1; r1 = t;
          t = x0 - q * x1; x0 = x1; x1 = t;
        }
        return from_residue(field_, x0);
      }
      case FieldKind::real64:
        if (real() == 0.0) throw Error(Errc::zero_inverse, "zero has no inverse");
        return Scalar(field_, 1.0 / real());
    }
    return *this;
  }

  Scalar operator-() const {
    Scalar z = field_.zero();
    z -= *this;
    return z;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Exact equality for exact kinds, |a - b| <= eps for real64.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.field_ != b.field_) return false;
    switch (a.field_.kind()) {
      case FieldKind::rational: return a.rational() == b.rational();
      case FieldKind::prime: return a.residue() == b.residue();
      case FieldKind::real64: return std::abs(a.real() - b.real()) <= a.field_.eps();
    }
    return false;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// "a/b" (b omitted when 1), decimal residue, or %.17g real.
  std::string to_string() const {
    switch (field_.kind()) {
      case FieldKind::rational: return rational().str();
      case FieldKind::prime: return std::to_string(residue());
      case FieldKind::real64: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", real());
        return buf;
      }
    }
    return "?";
  }

 private:
  friend class Field;
  Scalar(Field f, Value v) : field_(f), value_(std::move(v)) {}

  Field field_;
  Value value_;
};

inline Scalar Field::zero() const { return from_int(0); }
inline Scalar Field::one() const { return from_int(1); }

inline Scalar Field::from_int(long long v) const {
  switch (kind_) {
    case FieldKind::rational: return Scalar(*this, Rational(v));
    case FieldKind::prime: return Scalar::from_residue(*this, v);
    case FieldKind::real64: return Scalar(*this, static_cast<double>(v));
  }
  return Scalar();
}

inline Scalar Field::from_ratio(long long num, long long den) const {
  if (den == 0) throw Error(Errc::zero_inverse, "zero denominator");
  switch (kind_) {
    case FieldKind::rational: return Scalar(*this, Rational(BigInt(num), BigInt(den)));
    case FieldKind::prime: return from_int(num) / from_int(den);
    case FieldKind::real64: return Scalar(*this, static_cast<double>(num) / static_cast<double>(den));
  }
  return Scalar();
}

inline Scalar Field::from_double(double v) const {
  if (kind_ != FieldKind::real64) throw Error(Errc::unsupported_field, "double value for exact field " + name());
  return Scalar(*this, v);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline BigInt parse_bigint(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return BigInt(std::string(s));
}

}  // namespace detail

inline Scalar Field::parse(std::string_view text) const {
  const auto s = detail::trim(text);
  const auto bad = [&] { return Error(Errc::parse_error, "bad " + name() + " scalar '" + std::string(text) + "'"); };
  switch (kind_) {
    case FieldKind::rational: {
      const auto slash = s.find('/');
      const auto num = s.substr(0, slash);
      if (!detail::is_integer_literal(num)) throw bad();
      if (slash == std::string_view::npos) return Scalar(*this, Rational(detail::parse_bigint(num)));
      const auto den = s.substr(slash + 1);
      if (!detail::is_integer_literal(den)) throw bad();
      const BigInt d = detail::parse_bigint(den);
      if (d == 0) throw Error(Errc::parse_error, "zero denominator in '" + std::string(text) + "'");
      return Scalar(*this, Rational(detail::parse_bigint(num), d));
    }
    case FieldKind::prime: {
      if (!detail::is_integer_literal(s)) throw bad();
      BigInt v = detail::parse_bigint(s) % BigInt(p_);
      if (v < 0) v += BigInt(p_);
      return Scalar(*this, v.convert_to<std::uint64_t>());
    }
    case FieldKind::real64: {
      const std::string buf(s);
      char* end = nullptr;
      const double v = std::strtod(buf.c_str(), &end);
      if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(v)) throw bad();
      return Scalar(*this, v);
    }
  }
  throw bad();
}

/// Parses the command-line spelling of a field: "q"/"rational",
/// "gf<p>"/"prime:<p>", or "real"/"real64"[":<eps>"].
inline Field parse_field_name(std::string_view name) {
  if (name == "q" || name == "Q" || name == "rational") return Field::rational();
  if (name == "real" || name == "real64") return Field::real64();
  auto digits = [&](std::string_view rest) -> std::uint64_t {
    if (rest.empty() || !detail::is_integer_literal(rest) || rest.front() == '-')
      throw Error(Errc::parse_error, "bad field '" + std::string(name) + "'");
    return std::stoull(std::string(rest));
  };
  if (name.rfind("gf", 0) == 0) return Field::prime(digits(name.substr(2)));
  if (name.rfind("prime:", 0) == 0) return Field::prime(digits(name.substr(6)));
  if (name.rfind("real64:", 0) == 0) {
    const std::string rest(name.substr(7));
    char* end = nullptr;
    const double eps = std::strtod(rest.c_str(), &end);
    if (rest.empty() || end != rest.c_str() + rest.size()) throw Error(Errc::parse_error, "bad field '" + std::string(name) + "'");
    return Field::real64(eps);
  }
  throw Error(Errc::parse_error, "unknown field '" + std::string(name) + "'");
}

}  // namespace kron
