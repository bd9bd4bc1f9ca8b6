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

#include "quadlat/reduce.hpp"

#include <algorithm>

#include "quadlat/enumerate.hpp"
#include "quadlat/error.hpp"
#include "quadlat/lll.hpp"
#include "quadlat/normal_form.hpp"

namespace quadlat {
namespace {

Int max_diagonal(const IntMatrix& g) {
  Int m = 0;
  for (std::size_t i = 0; i < g.rows(); ++i) m = std::max(m, Int(g(i, i)));
  return m;
}

// Both signs, sorted by (Q, coordinates).
std::vector<IntVector> signed_vectors_up_to(const GramLattice& l, const Int& bound, std::vector<Int>& norms) {
  VectorList vl = vectors_up_to(l, bound);
  std::vector<std::pair<Int, IntVector>> all;
  all.reserve(2 * vl.size());
  for (std::size_t i = 0; i < vl.size(); ++i) {
    IntVector neg(vl.vectors[i].size());
    for (std::size_t k = 0; k < neg.size(); ++k) neg[k] = -vl.vectors[i][k];
    all.emplace_back(vl.norms[i], vl.vectors[i]);
    all.emplace_back(vl.norms[i], std::move(neg));
  }
  std::sort(all.begin(), all.end());
  std::vector<IntVector> out;
  norms.clear();
  for (auto& [q, v] : all) {
    norms.push_back(q);
    out.push_back(std::move(v));
  }
  return out;
}

// Greedy Minkowski basis of `g`; rows in g's coordinates.
IntMatrix greedy_minkowski(const GramLattice& g) {
  const std::size_t n = g.rank();
  Int bound = max_diagonal(g.gram());
  for (;;) {
    std::vector<Int> norms;
    auto cand = signed_vectors_up_to(g, bound, norms);
    IntMatrix w = IntMatrix::identity(n);
    IntMatrix winv = IntMatrix::identity(n);
    bool complete = true;
    for (std::size_t i = 0; i < n && complete; ++i) {
      bool found = false;
      for (const auto& x : cand) {
        IntVector y = row_times(x, winv);
        Int gg = 0;
        for (std::size_t k = i; k < n; ++k) gg = gcd(gg, y[k]);
        if (gg != 1) continue;
        IntMatrix tail(1, n - i);
        for (std::size_t k = i; k < n; ++k) tail(0, k - i) = y[k];
        IntMatrix v = complete_to_unimodular(tail);
        IntMatrix wt = v * w.submatrix(i, 0, n - i, n);
        for (std::size_t r = 0; r < n - i; ++r) w.set_row(i + r, wt.row(r));
        w.set_row(i, x);
        winv = inverse_unimodular(w);
        found = true;
        break;
      }
      if (!found) complete = false;
    }
    if (complete) return w;
    bound *= 2;
  }
}

void normalize_signs(IntMatrix& basis, const IntMatrix& gram) {
  const std::size_t n = basis.rows();
  for (std::size_t j = 1; j < n; ++j) {
    IntVector gj = row_times(basis.row(j), gram);
    for (std::size_t i = 0; i < j; ++i) {
      Int b = dot(gj, basis.row(i));
      if (sgn(b) == 0) continue;
      if (sgn(b) < 0) basis.negate_row(j);
      break;
    }
  }
}

}  // namespace

ReducedBasis reduce(const GramLattice& l) {
  l.require_positive_definite("reduce");
  const std::size_t n = l.rank();
  if (n == 0) return {l, IntMatrix(0, 0), {}};
  LllResult lll = lll_reduce_gram(l.gram());
  IntMatrix basis = IntMatrix::identity(n);
  if (n <= kMinkowskiRankLimit) basis = greedy_minkowski(GramLattice(lll.gram));
  IntMatrix transform = basis * lll.transform;
  normalize_signs(transform, l.gram());
  GramLattice reduced(congruence(transform, l.gram()), l.label());
  auto mu = successive_minima(l);
  if (mu.front() != minimum(l)) throw Error("reduce: minimum mismatch against enumeration");
  return {std::move(reduced), std::move(transform), std::move(mu)};
}

std::vector<Int> successive_minima(const GramLattice& l) {
  const std::size_t n = l.rank();
  if (n == 0) return {};
  LllResult lll = lll_reduce_gram(l.gram());
  VectorList vl = vectors_up_to(GramLattice(lll.gram), max_diagonal(lll.gram));
  std::vector<Int> mu;
  IntMatrix chosen(0, n);
  for (std::size_t i = 0; i < vl.size() && mu.size() < n; ++i) {
    IntMatrix row(1, n);
    row.set_row(0, vl.vectors[i]);
    IntMatrix trial = chosen.append_rows(row);
    if (matrix_rank(trial) == trial.rows()) {
      chosen = std::move(trial);
      mu.push_back(vl.norms[i]);
    }
  }
  if (mu.size() != n) throw Error("successive_minima: enumeration did not reach full rank");
  return mu;
}

}  // namespace quadlat
