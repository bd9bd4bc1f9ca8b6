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

#include "quadlat/lattice.hpp"

namespace quadlat {

// phi * G_L * phi^T == G_N.
struct Representation {
  IntMatrix matrix;
  bool primitive = false;
};

// All representations of N by L (or the first `limit` found), each
// re-checked. Full lists are sorted by matrix; limited searches return
// matrices in search order, which is deterministic.
std::vector<Representation> representations(const GramLattice& n, const GramLattice& l,
                                            std::optional<std::size_t> limit = std::nullopt);
std::optional<Representation> find_representation(const GramLattice& n, const GramLattice& l);
bool is_represented(const GramLattice& n, const GramLattice& l);
bool is_primitively_represented(const GramLattice& n, const GramLattice& l);

bool is_isometric(const GramLattice& a, const GramLattice& b);

inline constexpr std::size_t kCanonicalRankLimit = 8;

// Lexicographically least Gram over all greedy Minkowski bases, comparing
// columns by (g_ii, -g_1i, ..., -g_{i-1,i}). Equal output <=> isometric.
// Throws InvalidArgument above kCanonicalRankLimit.
GramLattice canonical_form(const GramLattice& l);

// Eichler's orthogonal decomposition into indecomposable primitive
// sublattices, sorted by canonical form.
std::vector<SublatticeBasis> eichler_decompose(const GramLattice& l);
bool is_indecomposable(const GramLattice& l);

}  // namespace quadlat
