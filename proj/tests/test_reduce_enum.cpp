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

#include <random>

#include "oracle.hpp"
#include "quadlat/enumerate.hpp"
#include "quadlat/lattice.hpp"
#include "quadlat/normal_form.hpp"
#include "quadlat/reduce.hpp"

using namespace quadlat;

namespace {

const GramLattice kA2(IntMatrix{{2, 1}, {1, 2}});
const GramLattice kA3(IntMatrix{{2, 1, 0}, {1, 2, 1}, {0, 1, 2}});
const GramLattice kD4(IntMatrix{{2, 0, 1, 0}, {0, 2, 1, 0}, {1, 1, 2, 1}, {0, 0, 1, 2}});

GramLattice random_lattice(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> diag(1, 9), off(-4, 4);
  for (;;) {
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      g(i, i) = diag(rng);
      for (std::size_t j = i + 1; j < n; ++j) g(i, j) = g(j, i) = off(rng);
    }
    if (is_positive_definite(g)) return GramLattice(g);
  }
}

}  // namespace

TEST_CASE("reduction goldens") {
  auto r = reduce(GramLattice(IntMatrix{{5, 4}, {4, 5}}));
  CHECK(r.lattice.gram() == IntMatrix{{2, 1}, {1, 5}});
  CHECK(r.mu == std::vector<Int>{2, 5});
  auto a = reduce(kA2);
  CHECK(a.mu == std::vector<Int>{2, 2});
  CHECK(a.lattice.entry(0, 0) == 2);
  CHECK(volume(a.lattice) == 3);
  auto i2 = reduce(GramLattice::diagonal({1, 1}));
  CHECK(i2.lattice == GramLattice::diagonal({1, 1}));
  CHECK(i2.mu == std::vector<Int>{1, 1});
}

TEST_CASE("reduction is a unimodular change of basis with sorted minima") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    GramLattice l = random_lattice(2 + t % 4, rng);
    auto r = reduce(l);
    CHECK(determinant(r.transform) * determinant(r.transform) == 1);
    CHECK(congruence(r.transform, l.gram()) == r.lattice.gram());
    CHECK(std::is_sorted(r.mu.begin(), r.mu.end()));
    long min = 0;
    for (const auto& x : oracle::box_vectors(l.gram(), r.mu.front().get_si())) {
      long q = oracle::gram_value(l.gram(), x, x);
      if (min == 0 || q < min) min = q;
    }
    CHECK(Int(min) == r.mu.front());
  }
}

TEST_CASE("short vector goldens") {
  CHECK(vectors_up_to(kA2, 2).size() == 3);
  CHECK(vectors_up_to(GramLattice::diagonal({1, 1}), 1).size() == 2);
  CHECK(vectors_up_to(kA2, 1).size() == 0);
  CHECK(vectors_with_value(kA2, 6).size() == 3);
  CHECK(vectors_with_value(GramLattice::diagonal({1, 1, 1}), 7).size() == 0);
  CHECK(vectors_with_value(kA2, 0).size() == 0);
  CHECK(minimum(kA2) == 2);
  CHECK(shortest_vectors(kA2).size() == 3);
  CHECK(minimum(kD4) == 2);
  CHECK(shortest_vectors(kD4).size() == 12);
  CHECK(shortest_vectors(kA3).size() == 6);
  CHECK(minimum(GramLattice::diagonal({5})) == 5);
  CHECK(shortest_vectors(GramLattice::diagonal({5})).size() == 1);
}

TEST_CASE("enumeration matches box search") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    GramLattice l = random_lattice(1 + t % 4, rng);
    const long c = 12;
    auto box = oracle::box_vectors(l.gram(), c);
    auto vl = vectors_up_to(l, c);
    CHECK(2 * vl.size() == box.size());
    for (std::size_t i = 0; i < vl.size(); ++i) CHECK(l.q(vl.vectors[i]) == vl.norms[i]);
    auto seen = represented_values(l, c);
    auto ref = oracle::represented_values(l.gram(), c);
    CHECK(seen == ref);
    for (long m = 1; m <= c; ++m) CHECK(find_vector_with_value(l, m).has_value() == ref[static_cast<std::size_t>(m)]);
  }
}

TEST_CASE("successive minima are isometry invariants") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    GramLattice l = random_lattice(3, rng);
    IntMatrix u = oracle::random_unimodular(3, rng);
    GramLattice m = induced_gram(SublatticeBasis(l, u));
    CHECK(successive_minima(l) == successive_minima(m));
  }
}

TEST_CASE("large entries reduce exactly") {
  GramLattice skew(IntMatrix{{6, 600002}, {600002, 60000667340}});
  auto r = reduce(skew);
  CHECK(volume(r.lattice) == volume(skew));
  CHECK(r.lattice.entry(0, 0) <= r.lattice.entry(1, 1));
}
