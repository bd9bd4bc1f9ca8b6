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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracle.hpp"
#include "quadlat/lattice.hpp"
#include "quadlat/normal_form.hpp"
#include "quadlat/representation.hpp"

using namespace quadlat;

namespace {

const GramLattice kA2(IntMatrix{{2, 1}, {1, 2}});
const GramLattice kD4(IntMatrix{{2, 0, 1, 0}, {0, 2, 1, 0}, {1, 1, 2, 1}, {0, 0, 1, 2}});

GramLattice random_lattice(std::size_t n, std::mt19937_64& rng, long max_diag = 6) {
  std::uniform_int_distribution<long> diag(1, max_diag), off(-3, 3);
  for (;;) {
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      g(i, i) = diag(rng);
      for (std::size_t j = i + 1; j < n; ++j) g(i, j) = g(j, i) = off(rng);
    }
    if (is_positive_definite(g)) return GramLattice(g);
  }
}

std::vector<IntMatrix> component_classes(const std::vector<SublatticeBasis>& parts) {
  std::vector<IntMatrix> out;
  for (const auto& p : parts) out.push_back(canonical_form(induced_gram(p)).gram());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("representation goldens") {
  CHECK(representations(GramLattice::diagonal({2}), kA2).size() == 6);
  CHECK(representations(GramLattice::diagonal({7}), GramLattice::diagonal({1, 1, 1})).empty());
  CHECK(representations(GramLattice::diagonal({1}), GramLattice::diagonal({1})).size() == 2);
  GramLattice a2_1 = orthogonal_sum({kA2, GramLattice::diagonal({1})});
  CHECK(is_represented(kA2, a2_1));
  CHECK(is_primitively_represented(kA2, a2_1));
  CHECK(is_represented(GramLattice::diagonal({4}), GramLattice::diagonal({1})));
  CHECK_FALSE(is_primitively_represented(GramLattice::diagonal({4}), GramLattice::diagonal({1})));
  CHECK_FALSE(is_represented(kA2, GramLattice::diagonal({2, 2})));
}

TEST_CASE("every representation satisfies phi G phi^T = N") {
  auto reps = representations(kA2, kD4);
  REQUIRE_FALSE(reps.empty());
  for (const auto& r : reps) {
    CHECK(congruence(r.matrix, kD4.gram()) == kA2.gram());
    CHECK(r.primitive == has_unit_divisors(r.matrix));
  }
}

TEST_CASE("representation counts match tuple search") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 40; ++t) {
    GramLattice l = random_lattice(2 + t % 3, rng);
    GramLattice n = random_lattice(1 + t % 2, rng, 8);
    std::size_t expect = oracle::count_representations(n.gram(), l.gram());
    CHECK(representations(n, l).size() == expect);
    CHECK(is_represented(n, l) == (expect > 0));
  }
}

TEST_CASE("canonical forms and isometry") {
  GramLattice neg(IntMatrix{{2, -1}, {-1, 2}});
  CHECK(is_isometric(neg, kA2));
  CHECK(canonical_form(neg).gram() == IntMatrix{{2, 1}, {1, 2}});
  CHECK_FALSE(is_isometric(GramLattice::diagonal({1, 4}), GramLattice::diagonal({2, 2})));
  CHECK(is_isometric(kD4, kD4));
  CHECK(representations(kD4, kD4).size() == 1152);
}

TEST_CASE("canonical form is invariant under change of basis") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 2 + t % 4;
    GramLattice l = random_lattice(n, rng);
    GramLattice m = induced_gram(SublatticeBasis(l, oracle::random_unimodular(n, rng)));
    CHECK(canonical_form(l) == canonical_form(m));
    CHECK(is_isometric(l, m));
    CHECK(is_isometric(canonical_form(l), l));
  }
}

TEST_CASE("orthogonal decomposition goldens") {
  CHECK(component_classes(eichler_decompose(GramLattice::diagonal({1, 1}))) ==
        std::vector<IntMatrix>{IntMatrix{{1}}, IntMatrix{{1}}});
  CHECK(eichler_decompose(kA2).size() == 1);
  CHECK(is_indecomposable(kA2));
  CHECK(component_classes(eichler_decompose(GramLattice(IntMatrix{{1, 1}, {1, 4}}))) ==
        std::vector<IntMatrix>{IntMatrix{{1}}, IntMatrix{{3}}});
  CHECK_FALSE(is_indecomposable(GramLattice(IntMatrix{{1, 1}, {1, 4}})));
}

TEST_CASE("decomposition components are orthogonal and span the lattice") {
  std::mt19937_64 rng(29);
  const std::vector<GramLattice> blocks = {GramLattice::diagonal({1}), GramLattice::diagonal({2}), kA2,
                                           GramLattice(IntMatrix{{2, 1}, {1, 3}})};
  for (int t = 0; t < 20; ++t) {
    std::vector<GramLattice> chosen;
    std::size_t rank = 0;
    while (rank < 3) {
      chosen.push_back(blocks[rng() % blocks.size()]);
      rank += chosen.back().rank();
    }
    GramLattice sum = orthogonal_sum(chosen);
    GramLattice l = induced_gram(SublatticeBasis(sum, oracle::random_unimodular(rank, rng)));
    auto parts = eichler_decompose(l);
    IntMatrix all(0, rank);
    for (const auto& p : parts) all = all.append_rows(p.coords());
    CHECK(std::abs(determinant(all).get_si()) == 1);
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = i + 1; j < parts.size(); ++j)
        CHECK((parts[i].coords() * l.gram() * parts[j].coords().transpose()).is_zero());
    std::vector<SublatticeBasis> ref;
    for (std::size_t i = 0, row = 0; i < chosen.size(); ++i) {
      IntMatrix c(chosen[i].rank(), rank);
      for (std::size_t k = 0; k < chosen[i].rank(); ++k) c(k, row + k) = 1;
      row += chosen[i].rank();
      ref.push_back(SublatticeBasis(sum, c));
    }
    CHECK(component_classes(parts) == component_classes(ref));
  }
}
