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

#include <optional>
#include <vector>

#include "quadlat/error.hpp"
#include "quadlat/integer.hpp"

namespace quadlat::detail {

inline Int mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (sgn(r) < 0) r += m;
  return r;
}

inline Int inverse_mod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) throw Error("inverse_mod: not a unit");
  return r;
}

// Solutions of a linear system mod p as particular + kernel basis.
struct AffineSpace {
  IntVector particular;
  std::vector<IntVector> kernel;
};

inline std::optional<AffineSpace> solve_mod_p(std::vector<IntVector> rows, std::size_t vars, const Int& p) {
  // rows: coefficients followed by right-hand side.
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < vars && r < rows.size(); ++c) {
    std::size_t k = r;
    while (k < rows.size() && mod(rows[k][c], p) == 0) ++k;
    if (k == rows.size()) continue;
    std::swap(rows[r], rows[k]);
    Int inv = inverse_mod(mod(rows[r][c], p), p);
    for (auto& x : rows[r]) x = mod(x * inv, p);
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == r || mod(rows[o][c], p) == 0) continue;
      Int f = rows[o][c];
      for (std::size_t q = 0; q <= vars; ++q) rows[o][q] = mod(rows[o][q] - f * rows[r][q], p);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t o = r; o < rows.size(); ++o)
    if (mod(rows[o][vars], p) != 0) return std::nullopt;
  AffineSpace out;
  out.particular.assign(vars, 0);
  for (std::size_t i = 0; i < r; ++i) out.particular[pivot_col[i]] = mod(rows[i][vars], p);
  std::vector<bool> is_pivot(vars, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  for (std::size_t f = 0; f < vars; ++f) {
    if (is_pivot[f]) continue;
    IntVector k(vars, 0);
    k[f] = 1;
    for (std::size_t i = 0; i < r; ++i) k[pivot_col[i]] = mod(-rows[i][f], p);
    out.kernel.push_back(std::move(k));
  }
  return out;
}


}  // namespace quadlat::detail
