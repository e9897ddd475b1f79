// Copyright 2026 The slitdetect Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLITDETECT_LINALG_HPP
#define SLITDETECT_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slitdetect/errors.hpp"

namespace slitdetect {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Absolute comparison threshold used by the projector predicates.
class Tolerance {
 public:
  static constexpr double kDefault = 1e-12;
  /// Integer-valued checks (projector rank from a trace) use a looser bound.
  static constexpr double kTrace = 1e-9;

  constexpr Tolerance() = default;
  explicit Tolerance(double eps) : eps_(eps) {
    if (!(eps >= 0.0) || !std::isfinite(eps))
      throw Error("tolerance must be a finite nonnegative number");
  }

  [[nodiscard]] constexpr double eps() const noexcept { return eps_; }

 private:
  double eps_ = kDefault;
};

class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t dim) : data_(dim, Complex{}) {}
  CVector(std::initializer_list<Complex> values) : data_(values) { validate(); }
  explicit CVector(std::vector<Complex> values) : data_(std::move(values)) {
    validate();
  }

  static CVector basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw DimensionError("basis index out of range");
    CVector v(dim);
    v.data_[index] = 1.0;
    return v;
  }

  [[nodiscard]] std::size_t dim() const noexcept { return data_.size(); }
  [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }

  [[nodiscard]] std::span<const Complex> values() const noexcept { return data_; }
  [[nodiscard]] std::span<Complex> values() noexcept { return data_; }

  CVector& operator+=(const CVector& o) {
    require_same(o);
    for (std::size_t i = 0; i < dim(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  CVector& operator-=(const CVector& o) {
    require_same(o);
    for (std::size_t i = 0; i < dim(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  CVector& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend CVector operator+(CVector a, const CVector& b) { return a += b; }
  friend CVector operator-(CVector a, const CVector& b) { return a -= b; }
  friend CVector operator*(Complex s, CVector v) { return v *= s; }
  friend CVector operator*(CVector v, Complex s) { return v *= s; }

  friend bool operator==(const CVector&, const CVector&) = default;

 private:
  void validate() const {
    for (const auto& z : data_)
      if (!is_finite(z)) throw Error("non-finite vector entry");
  }
  void require_same(const CVector& o) const {
    if (o.dim() != dim()) throw DimensionError("vector dimension mismatch");
  }

  std::vector<Complex> data_;
};

/// Dense row-major complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex{}) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw DimensionError("entry count does not match rows*cols");
    for (const auto& z : data_)
      if (!is_finite(z)) throw Error("non-finite matrix entry");
  }
  /// Nested-list constructor, one initializer list per row.
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged matrix rows");
      for (const auto& z : r) {
        if (!is_finite(z)) throw Error("non-finite matrix entry");
        data_.push_back(z);
      }
    }
  }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static CMatrix diagonal(std::span<const Complex> d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  static CMatrix diagonal(std::initializer_list<Complex> d) {
    return diagonal(std::span<const Complex>(d.begin(), d.size()));
  }
  /// Outer product u v^T (no conjugation).
  static CMatrix outer(const CVector& u, const CVector& v) {
    CMatrix m(u.dim(), v.dim());
    for (std::size_t i = 0; i < u.dim(); ++i)
      for (std::size_t j = 0; j < v.dim(); ++j) m(i, j) = u[i] * v[j];
    return m;
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  [[nodiscard]] std::span<const Complex> values() const noexcept { return data_; }

  CMatrix& operator+=(const CMatrix& o) {
    require_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    require_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  CMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(Complex s, CMatrix m) { return m *= s; }
  friend CMatrix operator*(CMatrix m, Complex s) { return m *= s; }

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  void require_same(const CMatrix& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_)
      throw DimensionError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

inline CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " times " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }

inline CVector apply(const CMatrix& a, const CVector& v) {
  if (a.cols() != v.dim()) throw DimensionError("apply: operator/vector mismatch");
  CVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s{};
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

inline CVector operator*(const CMatrix& a, const CVector& v) { return apply(a, v); }

inline CMatrix adjoint(const CMatrix& a) {
  CMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  if (!a.square() || !b.square() || a.rows() != b.rows())
    throw DimensionError("commutator needs square operators of equal size");
  return matmul(a, b) - matmul(b, a);
}

/// Tensor product; the left factor indexes the coarse blocks, so entry
/// (i*rb + k, j*cb + l) is a(i,j) * b(k,l).
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t rb = b.rows(), cb = b.cols();
  CMatrix k(a.rows() * rb, a.cols() * cb);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t r = 0; r < rb; ++r)
        for (std::size_t c = 0; c < cb; ++c) k(i * rb + r, j * cb + c) = aij * b(r, c);
    }
  return k;
}

inline double frobenius_norm(const CMatrix& a) {
  double s = 0.0;
  for (const auto& z : a.values()) s += std::norm(z);
  return std::sqrt(s);
}

inline double max_abs(const CMatrix& a) {
  double m = 0.0;
  for (const auto& z : a.values()) m = std::max(m, std::abs(z));
  return m;
}

inline Complex trace(const CMatrix& a) {
  if (!a.square()) throw DimensionError("trace of a non-square matrix");
  Complex t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

inline bool is_hermitian(const CMatrix& a, Tolerance tol = {}) {
  if (!a.square()) throw DimensionError("is_hermitian: non-square matrix");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol.eps()) return false;
  return true;
}

inline bool is_idempotent(const CMatrix& a, Tolerance tol = {}) {
  if (!a.square()) throw DimensionError("is_idempotent: non-square matrix");
  return max_abs(matmul(a, a) - a) <= tol.eps();
}

inline bool is_projector(const CMatrix& a, Tolerance tol = {}) {
  return is_hermitian(a, tol) && is_idempotent(a, tol);
}

inline double norm(const CVector& v) {
  double s = 0.0;
  for (const auto& z : v.values()) s += std::norm(z);
  return std::sqrt(s);
}

/// <u|v>, antilinear in the first argument.
inline Complex inner(const CVector& u, const CVector& v) {
  if (u.dim() != v.dim()) throw DimensionError("inner: dimension mismatch");
  Complex s{};
  for (std::size_t i = 0; i < u.dim(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

inline CVector normalized(const CVector& v) {
  const double n = norm(v);
  if (n == 0.0) throw Error("cannot normalize the zero vector");
  return (1.0 / n) * v;
}

/// Vector concatenation, used to assemble block-structured states.
inline CVector concat(std::span<const CVector> parts) {
  std::vector<Complex> out;
  for (const auto& p : parts) out.insert(out.end(), p.values().begin(), p.values().end());
  return CVector(std::move(out));
}

/// Assemble [[a, b], [c, d]] from four blocks.
inline CMatrix block2x2(const CMatrix& a, const CMatrix& b, const CMatrix& c,
                        const CMatrix& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() ||
      b.cols() != d.cols())
    throw DimensionError("block2x2: inconsistent block shapes");
  CMatrix m(a.rows() + c.rows(), a.cols() + b.cols());
  auto put = [&m](const CMatrix& blk, std::size_t r0, std::size_t c0) {
    for (std::size_t i = 0; i < blk.rows(); ++i)
      for (std::size_t j = 0; j < blk.cols(); ++j) m(r0 + i, c0 + j) = blk(i, j);
  };
  put(a, 0, 0);
  put(b, 0, a.cols());
  put(c, a.rows(), 0);
  put(d, a.rows(), a.cols());
  return m;
}

/// Sub-block copy: rows [r0, r0+nr), cols [c0, c0+nc).
inline CMatrix slice(const CMatrix& m, std::size_t r0, std::size_t c0, std::size_t nr,
                     std::size_t nc) {
  if (r0 + nr > m.rows() || c0 + nc > m.cols()) throw DimensionError("slice out of range");
  CMatrix s(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) s(i, j) = m(r0 + i, c0 + j);
  return s;
}

}  // namespace slitdetect

#endif  // SLITDETECT_LINALG_HPP
