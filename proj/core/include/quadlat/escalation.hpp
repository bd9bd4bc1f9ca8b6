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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quadlat/lattice.hpp"

namespace quadlat {

enum class StreamKind { Unary, FixedRankClasses, Sublattices };

std::string to_string(StreamKind kind);

// Ordered, duplicate-free sequence of target classes N_1, N_2, ... truncated
// at a cap. Elements are canonical forms sorted by (det, Gram); the unary
// stream is <1>, <2>, ..., <cap>.
class TargetStream {
 public:
  static TargetStream unary(std::int64_t cap);
  // Classes of the given rank (<= 4) with det <= det_cap.
  static TargetStream fixed_rank_classes(std::size_t rank, const Int& det_cap);
  // Full-rank proper sublattices of l with index <= index_cap.
  static TargetStream sublattices_of(const GramLattice& l, const Int& index_cap);

  StreamKind kind() const noexcept { return kind_; }
  const Int& cap() const noexcept { return cap_; }
  std::size_t size() const noexcept { return elements_->size(); }
  const GramLattice& operator[](std::size_t i) const { return (*elements_)[i]; }
  const std::vector<GramLattice>& elements() const noexcept { return *elements_; }
  // Unary streams only: the integer at position i.
  std::int64_t unary_value(std::size_t i) const;
  std::string describe() const;

 private:
  TargetStream(StreamKind kind, Int cap, std::vector<GramLattice> elements);

  StreamKind kind_ = StreamKind::Unary;
  Int cap_;
  std::shared_ptr<const std::vector<GramLattice>> elements_;
};

TargetStream sublattice_stream(const GramLattice& l, const Int& index_cap);

// Canonical classes of positive definite lattices of rank <= 4 with
// det <= det_cap, sorted by (det, Gram).
std::vector<GramLattice> classes_of_rank(std::size_t rank, const Int& det_cap);

struct Truant {
  std::size_t index;  // position in the stream
  GramLattice target;
};

// First stream element not represented by l; nullopt when every element up to
// the cap is represented (numerically universal at cap).
std::optional<Truant> truant(const GramLattice& l, const TargetStream& s);

enum class EscalationTier { Superlattice, Bordered };

std::string to_string(EscalationTier tier);

struct Escalators {
  EscalationTier tier;
  std::vector<GramLattice> lattices;  // canonical, sorted
};

// Minimal-rank lattices representing both l and t. Integral superlattices of
// l that represent t when there are any, otherwise the lattices generated by
// l and a copy of t (bordered Gram matrices) of least rank.
Escalators escalators(const GramLattice& l, const GramLattice& t);
std::vector<GramLattice> escalate(const GramLattice& l, const GramLattice& t);

// Integral lattices of the same rank containing l properly, canonical, sorted.
std::vector<GramLattice> integral_superlattices(const GramLattice& l);

enum class NodeStatus { Escalated, NumericallyUniversal, CapExhausted };

std::string to_string(NodeStatus status);

struct EscalationNode {
  std::string id;  // FNV-1a 64 of the canonical Gram text, hex
  GramLattice lattice;
  std::optional<std::size_t> truant;  // stream index
  std::size_t level = 0;              // 1-based
  std::optional<std::string> parent;
  std::optional<EscalationTier> tier;  // how the node arose from its parent
  NodeStatus status = NodeStatus::Escalated;
};

struct EscalationTree {
  TargetStream stream;
  std::size_t level_cap = 0;
  std::vector<std::vector<EscalationNode>> levels;

  bool complete() const;
  std::size_t node_count() const;
};

std::string node_id(const GramLattice& canonical);

// Levels T_1, T_2, ... processed in parallel on `threads` workers; the result
// does not depend on the thread count.
EscalationTree escalation_tree(const TargetStream& s, std::size_t level_cap, unsigned threads = 1);

struct CriterionSet {
  std::vector<GramLattice> classes;
  std::vector<std::size_t> stream_indices;
  // Ids of nodes whose truant is the class; empty for N_1.
  std::vector<std::vector<std::string>> provenance;
  std::string stream;
  Int cap;
  std::size_t level_cap = 0;
};

// {N_1} together with the truants of every escalated node. Throws
// CapExhausted if some node still has a truant at the level cap.
CriterionSet criterion_set(const EscalationTree& tree);

}  // namespace quadlat
