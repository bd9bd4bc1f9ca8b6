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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quadlat/integer.hpp"

namespace quadlat {

// A free Z-lattice given by its integral symmetric Gram matrix
// (entry (i, j) = B(v_i, v_j), diagonal = Q(v_i)). Immutable.
class GramLattice {
 public:
  GramLattice() = default;
  // Throws InvalidArgument unless gram is square, symmetric and (for
  // rank > 0) nondegenerate.
  explicit GramLattice(IntMatrix gram, std::string label = {});

  static GramLattice diagonal(std::initializer_list<long> entries);
  static GramLattice rank_zero() { return GramLattice(); }

  std::size_t rank() const noexcept { return gram_.rows(); }
  const IntMatrix& gram() const noexcept { return gram_; }
  const Int& entry(std::size_t i, std::size_t j) const { return gram_(i, j); }
  const std::string& label() const noexcept { return label_; }
  GramLattice with_label(std::string label) const;

  Int q(std::span<const Int> x) const { return bilinear(gram_, x, x); }
  Int b(std::span<const Int> x, std::span<const Int> y) const { return bilinear(gram_, x, y); }

  bool is_positive_definite() const;
  void require_positive_definite(const char* what) const;

  friend bool operator==(const GramLattice& a, const GramLattice& b) { return a.gram_ == b.gram_; }

 private:
  IntMatrix gram_;
  std::string label_;
};

struct IdealData {
  Int scale;   // gcd of all Gram entries
  Int norm;    // gcd of diagonal and doubled off-diagonal entries
  Int volume;  // det of the Gram matrix
};

// Sublattice of a parent lattice: rows of `coords` are basis vectors in the
// parent's coordinates, linearly independent over Q.
class SublatticeBasis {
 public:
  SublatticeBasis() = default;
  SublatticeBasis(std::shared_ptr<const GramLattice> parent, IntMatrix coords);
  SublatticeBasis(const GramLattice& parent, IntMatrix coords);

  const GramLattice& parent() const { return *parent_; }
  const std::shared_ptr<const GramLattice>& parent_ptr() const { return parent_; }
  const IntMatrix& coords() const noexcept { return coords_; }
  std::size_t rank() const noexcept { return coords_.rows(); }
  // Same parent pointer, new coordinates.
  SublatticeBasis with_coords(IntMatrix coords) const { return {parent_, std::move(coords)}; }
  // Canonical key: HNF of coords (equal key <=> equal sublattice).
  IntMatrix hnf() const;

 private:
  std::shared_ptr<const GramLattice> parent_;
  IntMatrix coords_;
};

GramLattice induced_gram(const SublatticeBasis& s);
Int volume(const GramLattice& l);
IdealData scale_norm(const GramLattice& l);

bool is_primitive(const SublatticeBasis& s);
SublatticeBasis saturation(const SublatticeBasis& s);
// {x in parent : B(x, s) = 0}, always primitive.
SublatticeBasis orthogonal_complement(const SublatticeBasis& s);
// True iff s is an orthogonal summand of its parent. s must be primitive
// and the parent positive definite.
bool splits(const SublatticeBasis& s);
// Index [saturation(s) : s] = product of elementary divisors.
Int index_in_saturation(const SublatticeBasis& s);
bool contains(const SublatticeBasis& big, const SublatticeBasis& small);

GramLattice orthogonal_sum(const std::vector<GramLattice>& parts);

// Every full-rank sublattice of index m, as row-HNF coordinate matrices in
// increasing row-major order.
std::vector<SublatticeBasis> sublattices_of_index(const GramLattice& l, const Int& m);
std::vector<IntMatrix> hnf_matrices_of_determinant(std::size_t n, const Int& m);

}  // namespace quadlat
