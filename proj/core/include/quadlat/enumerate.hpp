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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "quadlat/lattice.hpp"

namespace quadlat {

// Short vectors of a positive definite lattice, one representative per
// +-pair (first nonzero coordinate positive), sorted by (Q, coordinates).
struct VectorList {
  GramLattice lattice;
  std::vector<IntVector> vectors;
  std::vector<Int> norms;  // Q of each entry of `vectors`
  Int bound;
  bool exact_value = false;  // true: Q == bound; false: Q <= bound

  std::size_t size() const noexcept { return vectors.size(); }
  // Both signs of every vector, in the order v0, -v0, v1, -v1, ...
  std::vector<IntVector> with_signs() const;
};

// Called once per +-pair with coordinates in the input basis and Q(x).
// Returning false stops the enumeration.
using ShortVectorVisitor = std::function<bool(std::span<const std::int64_t>, std::int64_t)>;

// Exact Fincke-Pohst enumeration of all nonzero x with Q(x) <= bound.
// Returns false if the visitor stopped early. Coordinates and bound must fit
// in 64 bits (CapExhausted otherwise); internal arithmetic is exact.
bool enumerate_short_vectors(const IntMatrix& gram, const Int& bound, const ShortVectorVisitor& visit);

VectorList vectors_up_to(const GramLattice& l, const Int& c);
VectorList vectors_with_value(const GramLattice& l, const Int& m);
Int minimum(const GramLattice& l);
VectorList shortest_vectors(const GramLattice& l);

// represented[m] == true iff some x has Q(x) == m, for 0 <= m <= cap.
std::vector<bool> represented_values(const GramLattice& l, std::int64_t cap);
// First x found with Q(x) == m, if any.
std::optional<IntVector> find_vector_with_value(const GramLattice& l, const Int& m);

}  // namespace quadlat
