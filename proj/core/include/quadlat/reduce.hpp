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

#include <vector>

#include "quadlat/lattice.hpp"

namespace quadlat {

struct ReducedBasis {
  GramLattice lattice;  // reduced Gram
  IntMatrix transform;  // unimodular; transform * G_in * transform^T == lattice.gram()
  std::vector<Int> mu;  // successive minima mu_1 <= ... <= mu_n
};

// Ranks up to this use greedy Minkowski refinement after LLL.
inline constexpr std::size_t kMinkowskiRankLimit = 6;

// LLL (delta = 0.99) followed, for rank <= kMinkowskiRankLimit, by greedy
// Minkowski reduction: each basis vector is a shortest vector extending the
// previous ones to a primitive system. Signs are normalized so that in every
// column the first nonzero off-diagonal entry is positive.
ReducedBasis reduce(const GramLattice& l);

// mu_i: Q-values of a greedy choice of shortest linearly independent
// vectors. Isometry invariant.
std::vector<Int> successive_minima(const GramLattice& l);

}  // namespace quadlat
