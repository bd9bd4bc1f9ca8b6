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
#include "quadlat/representation.hpp"

namespace quadlat {

// Rank-1 sublattices spanned by minimal vectors, sorted by coordinates.
std::vector<SublatticeBasis> rank1_minimizers(const GramLattice& l);

// A primitive rank-(n+1) sublattice M of L containing N; the first n rows
// of M's coordinates are N's rows.
struct Extension {
  SublatticeBasis lattice;
  Int volume;
};

// Every primitive rank-(n+1) sublattice containing a primitive N, in
// nondecreasing volume order (ties by coordinates). vol(M) = w^T S w for the
// integral quotient form S = det(G_N) * (Schur complement of G_N).
class ExtensionStream {
 public:
  explicit ExtensionStream(const SublatticeBasis& n);
  std::optional<Extension> next();
  // Quotient form S on L/N.
  const IntMatrix& quotient_form() const { return quotient_; }

 private:
  void refill();

  SublatticeBasis n_;
  IntMatrix tail_;      // rows complete N to a basis of L
  IntMatrix quotient_;  // S
  Int lower_;           // volumes <= lower_ already produced
  Int upper_;
  std::vector<Extension> buffer_;
  std::size_t pos_ = 0;
};

// All extensions with volume <= cap.
std::vector<Extension> extensions(const SublatticeBasis& n, const Int& vol_cap);

// Members of D(N) with volume <= cap, deduplicated, sorted by (volume, HNF).
std::vector<Extension> d_set(const SublatticeBasis& n, const Int& vol_cap);

struct MSetMember {
  Extension lattice;   // coordinates start with the witness image phi(N)
  IntMatrix witness;   // phi in R*(N, L), least in row-major order
};

struct MSet {
  std::vector<MSetMember> members;  // sorted by (canonical form, HNF)
  Int volume;                       // common volume; 0 when D(N) is empty
  bool d_empty() const { return members.empty(); }
};

// Volume-minimal slice of D(N). N = rank 0 gives M(empty) = rank-1 minimizers.
MSet m_set(const SublatticeBasis& n);

// Nested basis: N_i is spanned by the first i rows of `basis`.
struct Flag {
  std::shared_ptr<const GramLattice> ambient;
  IntMatrix basis;
  std::vector<Int> floors;  // floors[i] = min volume of D(N_i) (M(empty) for i = 0)

  std::size_t length() const { return basis.rows(); }
  SublatticeBasis step(std::size_t i) const;  // N_i, 0 <= i <= length()
  bool is_maximal() const { return ambient && length() == ambient->rank(); }
};

Flag build_flag(const GramLattice& l);

struct FlagCheck {
  bool valid = false;
  std::string reason;  // empty when valid
};

FlagCheck is_valid_flag(const Flag& f);

struct SublatticeVerdict {
  SublatticeBasis lattice;
  bool represented = false;
};

struct NonrecoverabilityReport {
  GramLattice sum;               // orthogonal sum of the parts
  bool sum_represents_l = true;  // must be false for indecomposable L
  std::vector<SublatticeVerdict> proper;
};

NonrecoverabilityReport check_nonrecoverability(const GramLattice& l, const std::vector<SublatticeBasis>& parts,
                                                const Int& index_bound);

}  // namespace quadlat
