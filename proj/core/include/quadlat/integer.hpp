// Copyright 2026 The quadlat Authors.
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

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace quadlat {

using Int = mpz_class;
using IntVector = std::vector<Int>;

Int gcd(const Int& a, const Int& b);
Int isqrt(const Int& a);  // floor(sqrt(a)), a >= 0
Int floor_div(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);
// Rounds a/b to the nearest integer, halves toward +infinity. b > 0.
Int round_div(const Int& a, const Int& b);
// p-adic valuation; a != 0, p >= 2.
int valuation(const Int& a, const Int& p);

bool fits_i64(const Int& a);
// Throws CapExhausted when `a` does not fit.
std::int64_t to_i64(const Int& a);

std::string to_string(const Int& a);

// Dense row-major integer matrix. Zero-sized shapes are allowed (a 0 x n
// matrix is the coordinate matrix of the zero sublattice).
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Int> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Int> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  IntVector row_vector(std::size_t i) const;
  void set_row(std::size_t i, std::span<const Int> values);

  IntMatrix transpose() const;
  IntMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  IntMatrix select_rows(std::span<const std::size_t> idx) const;
  void swap_rows(std::size_t a, std::size_t b);
  void negate_row(std::size_t i);
  // row(dst) += k * row(src)
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& k);
  IntMatrix append_rows(const IntMatrix& below) const;

  bool is_symmetric() const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  // Shape first, then row-major entries.
  friend std::strong_ordering operator<=>(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

// x * M for a row vector x.
IntVector row_times(std::span<const Int> x, const IntMatrix& m);
Int dot(std::span<const Int> a, std::span<const Int> b);
// x * G * y^T
Int bilinear(const IntMatrix& g, std::span<const Int> x, std::span<const Int> y);
// A * G * A^T
IntMatrix congruence(const IntMatrix& a, const IntMatrix& g);

// Exact determinant by fraction-free elimination.
Int determinant(const IntMatrix& m);
// All leading principal minors positive (Sylvester).
bool is_positive_definite(const IntMatrix& g);

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

}  // namespace quadlat
