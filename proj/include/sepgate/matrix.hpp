// Copyright 2026 The sepgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file matrix.hpp
 * Dense row-major complex matrices, generic over the scalar so the same
 * code runs in double and in double-double precision.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sepgate/double_double.hpp"
#include "sepgate/error.hpp"

namespace sepgate {

using Complex = std::complex<double>;

template <class C>
using real_of = typename C::value_type;

template <class C>
class BasicMatrix {
 public:
  using value_type = C;
  using real_type = real_of<C>;

  BasicMatrix() = default;
  BasicMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, C(0.0)) {}
  BasicMatrix(std::size_t rows, std::size_t cols, std::vector<C> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw DimensionError("matrix data has " + std::to_string(data_.size()) +
                           " entries, expected " +
                           std::to_string(rows_ * cols_));
    }
  }
  /// Row-by-row literal, e.g. {{1, 0}, {0, 1}}.
  BasicMatrix(std::initializer_list<std::initializer_list<C>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static BasicMatrix identity(std::size_t n) {
    BasicMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = C(1.0);
    return m;
  }
  static BasicMatrix column(std::vector<C> v) {
    const std::size_t n = v.size();
    return BasicMatrix(n, 1, std::move(v));
  }
  static BasicMatrix diagonal(const std::vector<C>& d) {
    BasicMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  C& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const C& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  C& operator[](std::size_t i) { return data_[i]; }
  const C& operator[](std::size_t i) const { return data_[i]; }

  std::span<C> data() { return data_; }
  std::span<const C> data() const { return data_; }

  BasicMatrix adjoint() const {
    using std::conj;
    BasicMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = conj((*this)(r, c));
    return out;
  }
  BasicMatrix transpose() const {
    BasicMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  real_type frobenius_norm_squared() const {
    using std::norm;
    real_type acc(0.0);
    for (const auto& z : data_) acc += norm(z);
    return acc;
  }
  real_type frobenius_norm() const {
    using std::sqrt;
    return sqrt(frobenius_norm_squared());
  }

  /// Hilbert-Schmidt inner product <this, other> = sum conj(a) b.
  C frobenius_inner(const BasicMatrix& other) const {
    using std::conj;
    require_same_shape(other, "frobenius_inner");
    C acc(0.0);
    for (std::size_t i = 0; i < data_.size(); ++i) acc += conj(data_[i]) * other.data_[i];
    return acc;
  }

  BasicMatrix& operator+=(const BasicMatrix& o) {
    require_same_shape(o, "+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  BasicMatrix& operator-=(const BasicMatrix& o) {
    require_same_shape(o, "-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  BasicMatrix& operator*=(const C& s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend BasicMatrix operator+(BasicMatrix a, const BasicMatrix& b) { return a += b; }
  friend BasicMatrix operator-(BasicMatrix a, const BasicMatrix& b) { return a -= b; }
  friend BasicMatrix operator*(BasicMatrix a, const C& s) { return a *= s; }
  friend BasicMatrix operator*(const C& s, BasicMatrix a) { return a *= s; }

  friend BasicMatrix operator*(const BasicMatrix& a, const BasicMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionError("matmul: " + a.shape_string() + " * " + b.shape_string());
    }
    BasicMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const C aik = a(i, k);
        if (aik == C(0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  friend bool operator==(const BasicMatrix& a, const BasicMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape_string() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  void require_same_shape(const BasicMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionError(std::string(op) + ": " + shape_string() + " vs " +
                           o.shape_string());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<C> data_;
};

using CMatrix = BasicMatrix<Complex>;
using DDMatrix = BasicMatrix<DDComplex>;

template <class C>
BasicMatrix<C> kron(const BasicMatrix<C>& a, const BasicMatrix<C>& b) {
  BasicMatrix<C> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Entrywise conversion between scalar types (double -> double-double).
template <class To, class From>
BasicMatrix<To> matrix_cast(const BasicMatrix<From>& m) {
  std::vector<To> data;
  data.reserve(m.size());
  for (const auto& z : m.data()) {
    data.emplace_back(real_of<To>(static_cast<double>(real(z))),
                      real_of<To>(static_cast<double>(imag(z))));
  }
  return BasicMatrix<To>(m.rows(), m.cols(), std::move(data));
}

inline CMatrix to_double(const DDMatrix& m) {
  std::vector<Complex> data;
  data.reserve(m.size());
  for (const auto& z : m.data())
    data.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  return CMatrix(m.rows(), m.cols(), std::move(data));
}

inline bool all_finite(const CMatrix& m) {
  for (const auto& z : m.data())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

}  // namespace sepgate
