#pragma once

// Mode-structured square matrices. A matrix of order d_0 d_1 ... d_{k-1}
// is read as an element of F_{d_0} (x) ... (x) F_{d_{k-1}}; a row index is
// the mixed-radix number (i_0, ..., i_{k-1}) with i_{k-1} fastest. All maps
// are computed entrywise, never via a pure-tensor decomposition.

#include <array>
#include <cstddef>
#include <numeric>
#include <vector>

#include "kron/matrix.hpp"

namespace kron {

using Dims = std::vector<std::size_t>;

inline std::size_t dims_product(const Dims& d) {
  return std::accumulate(d.begin(), d.end(), std::size_t{1}, std::multiplies<>());
}

namespace detail {

inline void require_order(const Matrix& m, const Dims& dims, const char* what) {
  m.require_square(what);
  if (dims_product(dims) != m.rows())
    throw Error(Errc::dimension_mismatch,
                std::string(what) + ": order " + std::to_string(m.rows()) + " does not match the mode dimensions");
}

inline std::vector<std::size_t> split_index(std::size_t idx, const Dims& dims) {
  std::vector<std::size_t> out(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    out[k] = idx % dims[k];
    idx /= dims[k];
  }
  return out;
}

inline std::size_t join_index(const std::vector<std::size_t>& digits, const Dims& dims) {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
  return idx;
}

inline void require_modes(const Dims& dims, const std::vector<std::size_t>& modes) {
  for (std::size_t k : modes)
    if (k >= dims.size()) throw Error(Errc::invalid_mode, "mode " + std::to_string(k + 1) + " out of range");
}

}  // namespace detail

/// Traces out the listed (0-based) modes. The result carries the remaining
/// modes in their original order.
inline Matrix trace_modes(const Matrix& m, const Dims& dims, const std::vector<std::size_t>& modes) {
  detail::require_order(m, dims, "mode trace");
  detail::require_modes(dims, modes);
  std::vector<bool> traced(dims.size(), false);
  for (std::size_t k : modes) traced[k] = true;
  Dims keep, gone;
  for (std::size_t k = 0; k < dims.size(); ++k) (traced[k] ? gone : keep).push_back(dims[k]);
  const std::size_t out_n = dims_product(keep), sum_n = dims_product(gone);
  Matrix r(m.field(), out_n, out_n);
  std::vector<std::size_t> rd(dims.size()), cd(dims.size());
  for (std::size_t a = 0; a < out_n; ++a) {
    const auto ra = detail::split_index(a, keep);
    for (std::size_t b = 0; b < out_n; ++b) {
      const auto cb = detail::split_index(b, keep);
      Scalar s = m.field().zero();
      for (std::size_t t = 0; t < sum_n; ++t) {
        const auto tt = detail::split_index(t, gone);
        for (std::size_t k = 0, ik = 0, ig = 0; k < dims.size(); ++k) {
          if (traced[k]) {
            rd[k] = cd[k] = tt[ig++];
          } else {
            rd[k] = ra[ik];
            cd[k] = cb[ik++];
          }
        }
        s += m(detail::join_index(rd, dims), detail::join_index(cd, dims));
      }
      r(a, b) = s;
    }
  }
  return r;
}

/// Transposes the listed (0-based) modes: row and column digits of those
/// modes are exchanged.
inline Matrix transpose_modes(const Matrix& m, const Dims& dims, const std::vector<std::size_t>& modes) {
  detail::require_order(m, dims, "mode transpose");
  detail::require_modes(dims, modes);
  std::vector<bool> flip(dims.size(), false);
  for (std::size_t k : modes) flip[k] = true;
  const std::size_t n = m.rows();
  Matrix r(m.field(), n, n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto ra = detail::split_index(a, dims);
    for (std::size_t b = 0; b < n; ++b) {
      auto src_r = ra;
      auto src_c = detail::split_index(b, dims);
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (flip[k]) std::swap(src_r[k], src_c[k]);
      r(a, b) = m(detail::join_index(src_r, dims), detail::join_index(src_c, dims));
    }
  }
  return r;
}

/// Places the d x d factor z into mode k of a tensor whose other modes are
/// given by y (dims without k). insert_mode(Y, {a,b}, 1, Z) = Y_a (x) Z (x) Y_b
/// on pure tensors.
inline Matrix insert_mode(const Matrix& y, const Dims& y_dims, std::size_t k, const Matrix& z) {
  detail::require_order(y, y_dims, "mode insertion");
  z.require_square("mode insertion");
  require_same_field(y.field(), z.field());
  if (k > y_dims.size()) throw Error(Errc::invalid_mode, "insertion mode out of range");
  Dims dims = y_dims;
  dims.insert(dims.begin() + static_cast<std::ptrdiff_t>(k), z.rows());
  const std::size_t n = dims_product(dims);
  Matrix r(y.field(), n, n);
  for (std::size_t a = 0; a < n; ++a) {
    auto ra = detail::split_index(a, dims);
    const std::size_t za = ra[k];
    ra.erase(ra.begin() + static_cast<std::ptrdiff_t>(k));
    const std::size_t ya = detail::join_index(ra, y_dims);
    for (std::size_t b = 0; b < n; ++b) {
      auto cb = detail::split_index(b, dims);
      const std::size_t zb = cb[k];
      cb.erase(cb.begin() + static_cast<std::ptrdiff_t>(k));
      const Scalar& zv = z(za, zb);
      if (zv.is_zero()) continue;
      r(a, b) = y(ya, detail::join_index(cb, y_dims)) * zv;
    }
  }
  return r;
}

// Two-mode maps on F_n (x) F_m.

/// Block trace: sum of the n diagonal m x m blocks. Btr(B (x) C) = tr(B) C.
inline Matrix block_trace(const Matrix& m, std::size_t n, std::size_t mm) { return trace_modes(m, {n, mm}, {0}); }

/// Partial trace: matrix of block traces. Ptr(B (x) C) = tr(C) B.
inline Matrix partial_trace(const Matrix& m, std::size_t n, std::size_t mm) { return trace_modes(m, {n, mm}, {1}); }

/// BT(B (x) C) = B^T (x) C.
inline Matrix block_transpose(const Matrix& m, std::size_t n, std::size_t mm) {
  return transpose_modes(m, {n, mm}, {0});
}

/// PT(B (x) C) = B (x) C^T.
inline Matrix partial_transpose(const Matrix& m, std::size_t n, std::size_t mm) {
  return transpose_modes(m, {n, mm}, {1});
}

enum class TraceMode { t1, t2, t3, t12 };
enum class TransposeMode { bt, pt, t3, t12 };

/// Square matrix of order d1 d2 d3 with three mode dimensions.
class TensorView {
 public:
  TensorView() = default;
  TensorView(Matrix m, std::size_t d1, std::size_t d2, std::size_t d3) : m_(std::move(m)), d_{d1, d2, d3} {
    detail::require_order(m_, dims(), "tensor view");
  }

  static TensorView zero(Field f, std::size_t d1, std::size_t d2, std::size_t d3) {
    return TensorView(Matrix(f, d1 * d2 * d3, d1 * d2 * d3), d1, d2, d3);
  }

  const Matrix& matrix() const noexcept { return m_; }
  const std::array<std::size_t, 3>& modes() const noexcept { return d_; }
  std::size_t d1() const noexcept { return d_[0]; }
  std::size_t d2() const noexcept { return d_[1]; }
  std::size_t d3() const noexcept { return d_[2]; }
  Dims dims() const { return {d_[0], d_[1], d_[2]}; }
  const Field& field() const noexcept { return m_.field(); }

  /// Entry at 0-based mode digits ((i1,i2,i3),(j1,j2,j3)).
  const Scalar& operator()(std::size_t i1, std::size_t i2, std::size_t i3, std::size_t j1, std::size_t j2,
                           std::size_t j3) const {
    return m_((i1 * d_[1] + i2) * d_[2] + i3, (j1 * d_[1] + j2) * d_[2] + j3);
  }

  TensorView transposed() const { return TensorView(m_.transpose(), d_[0], d_[1], d_[2]); }

  friend bool operator==(const TensorView& a, const TensorView& b) { return a.d_ == b.d_ && a.m_ == b.m_; }
  friend bool operator!=(const TensorView& a, const TensorView& b) { return !(a == b); }

 private:
  Matrix m_;
  std::array<std::size_t, 3> d_{1, 1, 1};
};

/// tr_1, tr_2, tr_3 give matrices of order d2 d3, d1 d3, d1 d2; tr_12 gives d3 x d3.
inline Matrix mode_trace(const TensorView& t, TraceMode mode) {
  switch (mode) {
    case TraceMode::t1: return trace_modes(t.matrix(), t.dims(), {0});
    case TraceMode::t2: return trace_modes(t.matrix(), t.dims(), {1});
    case TraceMode::t3: return trace_modes(t.matrix(), t.dims(), {2});
    case TraceMode::t12: return trace_modes(t.matrix(), t.dims(), {0, 1});
  }
  throw Error(Errc::invalid_mode, "unknown trace mode");
}

inline Matrix tr1(const TensorView& t) { return mode_trace(t, TraceMode::t1); }
inline Matrix tr2(const TensorView& t) { return mode_trace(t, TraceMode::t2); }
inline Matrix tr3(const TensorView& t) { return mode_trace(t, TraceMode::t3); }
inline Matrix tr12(const TensorView& t) { return mode_trace(t, TraceMode::t12); }

/// BT and PT read the view as two modes (d1, d2 d3); T3 and T12 use all three.
inline TensorView mode_transpose(const TensorView& t, TransposeMode mode) {
  const auto [d1, d2, d3] = t.modes();
  switch (mode) {
    case TransposeMode::bt: return TensorView(block_transpose(t.matrix(), d1, d2 * d3), d1, d2, d3);
    case TransposeMode::pt: return TensorView(partial_transpose(t.matrix(), d1, d2 * d3), d1, d2, d3);
    case TransposeMode::t3: return TensorView(transpose_modes(t.matrix(), t.dims(), {2}), d1, d2, d3);
    case TransposeMode::t12: return TensorView(transpose_modes(t.matrix(), t.dims(), {0, 1}), d1, d2, d3);
  }
  throw Error(Errc::invalid_mode, "unknown transpose mode");
}

inline TensorView T3(const TensorView& t) { return mode_transpose(t, TransposeMode::t3); }
inline TensorView T12(const TensorView& t) { return mode_transpose(t, TransposeMode::t12); }

inline TraceMode parse_trace_mode(std::string_view s) {
  if (s == "1") return TraceMode::t1;
  if (s == "2") return TraceMode::t2;
  if (s == "3") return TraceMode::t3;
  if (s == "12") return TraceMode::t12;
  throw Error(Errc::invalid_mode, "unknown trace mode '" + std::string(s) + "'");
}

inline TransposeMode parse_transpose_mode(std::string_view s) {
  if (s == "BT" || s == "bt") return TransposeMode::bt;
  if (s == "PT" || s == "pt") return TransposeMode::pt;
  if (s == "T3" || s == "t3") return TransposeMode::t3;
  if (s == "T12" || s == "t12") return TransposeMode::t12;
  throw Error(Errc::invalid_mode, "unknown transpose mode '" + std::string(s) + "'");
}

}  // namespace kron
