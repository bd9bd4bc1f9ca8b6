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

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "quadlat/error.hpp"
#include "quadlat/integer.hpp"

namespace quadlat::detail {

using i64 = std::int64_t;
using i128 = __int128;

inline i64 narrow(i128 v) {
  if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
    throw CapExhausted("intermediate value exceeds the 64-bit search kernel");
  return static_cast<i64>(v);
}

inline i64 dot(std::span<const i64> a, std::span<const i64> b) {
  i128 s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += static_cast<i128>(a[k]) * b[k];
  return narrow(s);
}

// Row-major int64 matrix for hot search loops.
struct SmallMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<i64> a;

  SmallMatrix() = default;
  SmallMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  explicit SmallMatrix(const IntMatrix& m) : SmallMatrix(m.rows(), m.cols()) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = to_i64(m(i, j));
  }
  i64& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  i64 operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  std::span<const i64> row(std::size_t i) const { return {a.data() + i * cols, cols}; }

  // x * M
  std::vector<i64> left_mul(std::span<const i64> x) const {
    std::vector<i64> out(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      i128 s = 0;
      for (std::size_t k = 0; k < rows; ++k) s += static_cast<i128>(x[k]) * a[k * cols + j];
      out[j] = narrow(s);
    }
    return out;
  }
};

inline std::vector<i64> to_small(std::span<const Int> v) {
  std::vector<i64> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = to_i64(v[k]);
  return out;
}

inline IntVector to_big(std::span<const i64> v) {
  IntVector out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = Int(static_cast<long>(v[k]));
  return out;
}

inline i64 gcd64(i64 a, i64 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace quadlat::detail
