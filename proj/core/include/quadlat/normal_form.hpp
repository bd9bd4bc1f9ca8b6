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

#include "quadlat/integer.hpp"

namespace quadlat {

struct HermiteResult {
  IntMatrix h;  // row Hermite normal form, zero rows last
  IntMatrix u;  // unimodular, u * m == h
  std::size_t rank = 0;
};

// Row-style HNF: pivots positive, entries above a pivot reduced into
// [0, pivot).
HermiteResult hermite_normal_form(const IntMatrix& m);
// HNF without the transform, zero rows dropped.
IntMatrix hnf_basis(const IntMatrix& m);

std::size_t matrix_rank(const IntMatrix& m);

// Invariant factors d1 | d2 | ... of the Smith normal form; length = rank.
std::vector<Int> elementary_divisors(const IntMatrix& m);
// All elementary divisors equal one (rows span a direct summand).
bool has_unit_divisors(const IntMatrix& m);

// Basis (in HNF) of {u : u * m == 0}.
IntMatrix left_kernel(const IntMatrix& m);
// Basis (in HNF) of (Q-row-span of m) intersected with Z^cols.
IntMatrix saturate_rows(const IntMatrix& m);

// Integer y with y * basis == x, if one exists. Rows of basis independent.
std::optional<IntVector> solve_in_span(const IntMatrix& basis, std::span<const Int> x);
// Integer Y with Y * basis == m, if one exists.
std::optional<IntMatrix> express_in_basis(const IntMatrix& basis, const IntMatrix& m);

// Unimodular n x n matrix whose first rows are `rows`; rows must be primitive.
IntMatrix complete_to_unimodular(const IntMatrix& rows);
IntMatrix inverse_unimodular(const IntMatrix& m);
// det(m) * m^{-1}
IntMatrix adjugate(const IntMatrix& m);

}  // namespace quadlat
