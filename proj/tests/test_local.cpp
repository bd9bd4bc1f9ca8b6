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
#include "quadlat/lattice.hpp"
#include "quadlat/local_rep.hpp"
#include "quadlat/representation.hpp"

using namespace quadlat;

namespace {

const GramLattice kA2(IntMatrix{{2, 1}, {1, 2}});
const GramLattice kI3 = GramLattice::diagonal({1, 1, 1});

// Brute-force solvability of phi G_L phi^T == G_N mod m over all phi.
bool solvable_mod(const GramLattice& n, const GramLattice& l, long m) {
  const std::size_t k = n.rank(), r = l.rank();
  std::vector<long> phi(k * r, 0);
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i)
      for (std::size_t j = i; j < k && ok; ++j) {
        long s = 0;
        for (std::size_t a = 0; a < r; ++a)
          for (std::size_t b = 0; b < r; ++b) s += phi[i * r + a] * l.entry(a, b).get_si() * phi[j * r + b];
        ok = ((s - n.entry(i, j).get_si()) % m + m) % m == 0;
      }
    if (ok) return true;
    std::size_t pos = 0;
    while (pos < phi.size() && ++phi[pos] == m) phi[pos++] = 0;
    if (pos == phi.size()) return false;
  }
}

}  // namespace

TEST_CASE("jordan splittings") {
  auto a = jordan_decompose(kA2, 3);
  REQUIRE(a.blocks.size() == 2);
  CHECK(a.blocks[0].scale_exponent == 0);
  CHECK(a.blocks[0].dim() == 1);
  CHECK(a.blocks[1].scale_exponent == 1);
  CHECK(a.blocks[1].dim() == 1);
  for (long p : {2, 3, 5}) {
    auto u = jordan_decompose(kI3, p);
    REQUIRE(u.blocks.size() == 1);
    CHECK(u.blocks[0].scale_exponent == 0);
    CHECK(u.blocks[0].dim() == 3);
  }
  auto h = jordan_decompose(GramLattice(IntMatrix{{0, 1}, {1, 0}}), 2);
  REQUIRE(h.blocks.size() == 1);
  CHECK(h.blocks[0].dim() == 2);
}

TEST_CASE("local representation goldens") {
  CHECK_FALSE(local_is_represented(GramLattice::diagonal({7}), kI3, 2).represented);
  CHECK(local_is_represented(GramLattice::diagonal({7}), kI3, 7).represented);
  CHECK_FALSE(local_is_represented(GramLattice::diagonal({3}), kA2, 2).represented);
  CHECK(real_is_represented(kA2, kI3).represented);
  CHECK_FALSE(real_is_represented(kI3, kA2).represented);
  CHECK_FALSE(real_is_represented(GramLattice(IntMatrix{{-1}}), GramLattice::diagonal({1, 1})).represented);
  CHECK(genus_represents(GramLattice::diagonal({2}), kA2));
  CHECK_FALSE(genus_represents(GramLattice::diagonal({3}), kA2));
  CHECK_FALSE(genus_represents(GramLattice::diagonal({7}), kI3));
}

TEST_CASE("lifting witnesses solve the congruence") {
  auto v = local_is_represented_by_lifting(GramLattice::diagonal({6}), kA2, 3);
  REQUIRE(v.represented);
  REQUIRE(v.witness);
  Int mod = 1;
  for (int i = 0; i < v.witness_precision; ++i) mod *= 3;
  IntMatrix d = congruence(*v.witness, kA2.gram());
  CHECK((d(0, 0) - 6) % mod == 0);
}

TEST_CASE("three squares over the genus") {
  for (long n = 1; n <= 100; ++n) {
    bool expect = oracle::sum_of_three_squares(n);
    CHECK(genus_represents(GramLattice::diagonal({n}), kI3) == expect);
    CHECK(is_represented(GramLattice::diagonal({n}), kI3) == expect);
  }
}

TEST_CASE("p-adic verdicts agree with congruences modulo p^k") {
  // For unary N = <a> with p not dividing 2a det L, Z_p-representability is
  // decided mod p, and for p = 2 mod 8 when a is odd and L unimodular.
  for (long a = 1; a <= 30; ++a) {
    for (long p : {3, 5, 7}) {
      if (a % p == 0) continue;
      bool v = local_is_represented(GramLattice::diagonal({a}), kA2, p).represented;
      if (p != 3) CHECK(v == solvable_mod(GramLattice::diagonal({a}), kA2, p));
    }
    if (a % 2) CHECK(local_is_represented(GramLattice::diagonal({a}), kI3, 2).represented ==
                     solvable_mod(GramLattice::diagonal({a}), kI3, 8));
  }
}

TEST_CASE("global representation implies local representation") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> diag(1, 8), off(-8, 8);
  auto random_gram = [&](std::size_t n) {
    for (;;) {
      IntMatrix g(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        g(i, i) = diag(rng);
        for (std::size_t j = i + 1; j < n; ++j) g(i, j) = g(j, i) = off(rng);
      }
      if (is_positive_definite(g)) return GramLattice(g);
    }
  };
  int represented = 0;
  for (int t = 0; t < 80; ++t) {
    GramLattice n = random_gram(1 + t % 2);
    GramLattice l = random_gram(2 + t % 3);
    if (!is_represented(n, l)) continue;
    ++represented;
    CHECK(genus_represents(n, l));
  }
  CHECK(represented > 5);
}
