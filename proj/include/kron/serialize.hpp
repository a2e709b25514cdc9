#pragma once

// JSON interchange for fields, matrices and mode-tagged tensors. Entries are
// strings so exact values stay textual:
//   {"field": {"kind": "rational"|"prime"|"real64", "p"?: int, "eps"?: float},
//    "rows": int, "cols": int, "modes"?: [d1, d2, d3], "entries": [[string]]}

#include <string>
#include <vector>

#include "kron/tensor.hpp"

namespace kron {

inline Json field_to_json(const Field& f) {
  Json j = Json::object();
  switch (f.kind()) {
    case FieldKind::rational: j["kind"] = "rational"; break;
    case FieldKind::prime:
      j["kind"] = "prime";
      j["p"] = f.modulus();
      break;
    case FieldKind::real64:
      j["kind"] = "real64";
      j["eps"] = f.eps();
      break;
  }
  return j;
}

inline Field field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw Error(Errc::parse_error, "field object needs a string 'kind'");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "rational") return Field::rational();
  if (kind == "prime") {
    if (!j.contains("p") || !j["p"].is_number_unsigned()) throw Error(Errc::parse_error, "prime field needs integer 'p'");
    return Field::prime(j["p"].get<std::uint64_t>());
  }
  if (kind == "real64") {
    if (!j.contains("eps")) return Field::real64();
    if (!j["eps"].is_number()) throw Error(Errc::parse_error, "'eps' must be a number");
    return Field::real64(j["eps"].get<double>());
  }
  throw Error(Errc::parse_error, "unknown field kind '" + kind + "'");
}

inline Json matrix_to_json(const Matrix& m) {
  Json j = Json::object();
  j["field"] = field_to_json(m.field());
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

inline Json tensor_to_json(const TensorView& t) {
  Json j = matrix_to_json(t.matrix());
  Json out = Json::object();
  out["field"] = j["field"];
  out["rows"] = j["rows"];
  out["cols"] = j["cols"];
  out["modes"] = Json::array({t.d1(), t.d2(), t.d3()});
  out["entries"] = j["entries"];
  return out;
}

namespace detail {

inline std::size_t json_size(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
    throw Error(Errc::parse_error, std::string("object needs non-negative integer '") + key + "'");
  return j[key].get<std::size_t>();
}

}  // namespace detail

/// Parses a matrix; the field comes from the object itself.
inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::parse_error, "matrix must be a JSON object");
  if (!j.contains("field")) throw Error(Errc::parse_error, "matrix object needs 'field'");
  const Field f = field_from_json(j["field"]);
  const std::size_t rows = detail::json_size(j, "rows"), cols = detail::json_size(j, "cols");
  if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].size() != rows)
    throw Error(Errc::parse_error, "'entries' must hold " + std::to_string(rows) + " rows");
  Matrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = j["entries"][r];
    if (!row.is_array() || row.size() != cols)
      throw Error(Errc::parse_error, "row " + std::to_string(r + 1) + " must hold " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_string()) throw Error(Errc::parse_error, "entries must be strings");
      m(r, c) = f.parse(row[c].get<std::string>());
    }
  }
  return m;
}

inline TensorView tensor_from_json(const Json& j) {
  Matrix m = matrix_from_json(j);
  if (!j.contains("modes") || !j["modes"].is_array() || j["modes"].size() != 3)
    throw Error(Errc::parse_error, "tensor object needs 'modes' [d1, d2, d3]");
  const auto& md = j["modes"];
  for (const auto& d : md)
    if (!d.is_number_unsigned() || d.get<std::size_t>() == 0)
      throw Error(Errc::parse_error, "mode dimensions must be positive integers");
  return TensorView(std::move(m), md[0].get<std::size_t>(), md[1].get<std::size_t>(), md[2].get<std::size_t>());
}

}  // namespace kron
