#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

namespace kron {

using Json = nlohmann::ordered_json;

enum class Errc {
  dimension_mismatch,
  field_mismatch,
  not_square,
  zero_inverse,
  singular,
  unsupported_field,
  index_out_of_range,
  invalid_arg,
  invalid_mode,
  invalid_config,
  zero_divisor,
  char_two,
  characteristic_divides_n,
  bad_trace,
  bad_gamma,
  not_linear,
  not_difference,
  precondition_violated,
  missing_upsilon,
  missing_seed,
  non_commuting_seeds,
  not_prime,
  zero_vector,
  form_unavailable,
  search_space_too_large,
  parse_error,
};

inline const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::field_mismatch: return "FieldMismatch";
    case Errc::not_square: return "NotSquare";
    case Errc::zero_inverse: return "ZeroInverse";
    case Errc::singular: return "Singular";
    case Errc::unsupported_field: return "UnsupportedField";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::invalid_arg: return "InvalidArg";
    case Errc::invalid_mode: return "InvalidMode";
    case Errc::invalid_config: return "InvalidConfig";
    case Errc::zero_divisor: return "ZeroDivisor";
    case Errc::char_two: return "CharTwo";
    case Errc::characteristic_divides_n: return "CharacteristicDividesN";
    case Errc::bad_trace: return "BadTrace";
    case Errc::bad_gamma: return "BadGamma";
    case Errc::not_linear: return "NotLinear";
    case Errc::not_difference: return "NotDifference";
    case Errc::precondition_violated: return "PreconditionViolated";
    case Errc::missing_upsilon: return "MissingUpsilon";
    case Errc::missing_seed: return "MissingSeed";
    case Errc::non_commuting_seeds: return "NonCommutingSeeds";
    case Errc::not_prime: return "NotPrime";
    case Errc::zero_vector: return "ZeroVector";
    case Errc::form_unavailable: return "FormUnavailable";
    case Errc::search_space_too_large: return "SearchSpaceTooLarge";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

/// Library-wide exception. `what()` is "<Kind>: <detail>"; an optional
/// witness carries offending inputs (matrices serialized as JSON).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail, Json witness = nullptr)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code),
        detail_(detail),
        witness_(std::move(witness)) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  const Json& witness() const noexcept { return witness_; }

 private:
  Errc code_;
  std::string detail_;
  Json witness_;
};

}  // namespace kron
