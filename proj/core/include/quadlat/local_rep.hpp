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
#include <string>
#include <vector>

#include "quadlat/lattice.hpp"

namespace quadlat {

struct JordanBlock {
  int scale_exponent = 0;
  // Gram of the component divided by p^scale_exponent, reduced mod
  // p^precision. Diagonal for odd p; 1x1 and even 2x2 cells for p = 2.
  IntMatrix gram;
  std::size_t dim() const { return gram.rows(); }
};

struct JordanSplitting {
  Int prime;
  int precision = 0;          // k = v_p(2 det) + 3
  std::vector<JordanBlock> blocks;  // strictly increasing scale exponents
  // T * G * T^T == blockdiag(p^e_i * gram_i) mod p^precision, det T a p-unit.
  IntMatrix transform;
};

JordanSplitting jordan_decompose(const GramLattice& l, const Int& p);

enum class LocalMethod { JordanCriterion, ModularLift, Signature, Unramified };
std::string to_string(LocalMethod m);

struct LocalVerdict {
  // Empty for the real place. Prime 0 tags the verdict shared by all primes
  // not dividing 2 det(N) det(L).
  std::optional<Int> prime;
  bool represented = false;
  LocalMethod method = LocalMethod::ModularLift;
  // ModularLift: phi with phi G_L phi^T == G_N mod p^witness_precision; it
  // lifts to an exact p-adic representation.
  std::optional<IntMatrix> witness;
  int witness_precision = 0;
};

// Z_p-representability of N by L. Throws PrecisionExhausted when the lifting
// search exceeds its node budget.
LocalVerdict local_is_represented(const GramLattice& n, const GramLattice& l, const Int& p);
// The search alone, bypassing closed-form shortcuts.
LocalVerdict local_is_represented_by_lifting(const GramLattice& n, const GramLattice& l, const Int& p);
// Closed form for rank-1 N and odd p.
bool unary_jordan_criterion(const Int& a, const GramLattice& l, const Int& p);

// Signature comparison; works for any nondegenerate Gram.
LocalVerdict real_is_represented(const GramLattice& n, const GramLattice& l);

// Real place, every prime dividing 2 det(N) det(L), and the remaining primes.
std::vector<LocalVerdict> genus_verdicts(const GramLattice& n, const GramLattice& l);
bool genus_represents(const GramLattice& n, const GramLattice& l);

// Distinct primes dividing |m|, increasing. m != 0.
std::vector<Int> prime_divisors(const Int& m);

}  // namespace quadlat
