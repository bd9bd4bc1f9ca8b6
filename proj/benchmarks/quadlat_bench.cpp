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

#include <benchmark/benchmark.h>

#include "quadlat/enumerate.hpp"
#include "quadlat/escalation.hpp"
#include "quadlat/flags.hpp"
#include "quadlat/lattice.hpp"
#include "quadlat/local_rep.hpp"
#include "quadlat/reduce.hpp"
#include "quadlat/representation.hpp"

namespace bm = benchmark;
using namespace quadlat;

namespace {

const GramLattice kA2(IntMatrix{{2, 1}, {1, 2}});
const GramLattice kD4(IntMatrix{{2, 0, 1, 0}, {0, 2, 1, 0}, {1, 1, 2, 1}, {0, 0, 1, 2}});

GramLattice scaled_identity(std::size_t n) {
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = static_cast<long>(2 + i);
    if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = 1;
  }
  return GramLattice(g);
}

}  // namespace

static void BM_ReduceSkewed(bm::State& state) {
  GramLattice l(IntMatrix{{6, 600002}, {600002, 60000667340}});
  for (auto _ : state) bm::DoNotOptimize(reduce(l));
}

static void BM_VectorsUpTo(bm::State& state) {
  GramLattice l = scaled_identity(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) bm::DoNotOptimize(vectors_up_to(l, 12));
}

static void BM_RepresentedValues(bm::State& state) {
  GramLattice l = GramLattice::diagonal({1, 2, 5, 5});
  for (auto _ : state) bm::DoNotOptimize(represented_values(l, state.range(0)));
}

static void BM_CanonicalForm(bm::State& state) {
  GramLattice l = scaled_identity(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) bm::DoNotOptimize(canonical_form(l));
}

static void BM_CountRepresentationsD4(bm::State& state) {
  for (auto _ : state) bm::DoNotOptimize(representations(kD4, kD4).size());
}

static void BM_EichlerDecompose(bm::State& state) {
  GramLattice l(IntMatrix{{3, 1, 1, 0}, {1, 3, 2, 1}, {1, 2, 4, 1}, {0, 1, 1, 5}});
  for (auto _ : state) bm::DoNotOptimize(eichler_decompose(l));
}

static void BM_BuildFlagD4(bm::State& state) {
  for (auto _ : state) bm::DoNotOptimize(build_flag(kD4));
}

static void BM_GenusVerdicts(bm::State& state) {
  GramLattice n(IntMatrix{{2, 1}, {1, 4}});
  GramLattice l(IntMatrix{{2, 1, 0}, {1, 3, 1}, {0, 1, 5}});
  for (auto _ : state) bm::DoNotOptimize(genus_verdicts(n, l));
}

static void BM_LiftingSearch(bm::State& state) {
  GramLattice n = GramLattice::diagonal({6});
  for (auto _ : state) bm::DoNotOptimize(local_is_represented_by_lifting(n, kA2, 3));
}

static void BM_EscalateTernary(bm::State& state) {
  GramLattice l = GramLattice::diagonal({1, 2, 4});
  GramLattice t = GramLattice::diagonal({14});
  for (auto _ : state) bm::DoNotOptimize(escalate(l, t));
}

static void BM_EscalationTree(bm::State& state) {
  auto s = TargetStream::unary(state.range(0));
  for (auto _ : state) bm::DoNotOptimize(escalation_tree(s, 6).node_count());
}

BENCHMARK(BM_ReduceSkewed);
BENCHMARK(BM_VectorsUpTo)->DenseRange(2, 6, 2);
BENCHMARK(BM_RepresentedValues)->Range(64, 4096);
BENCHMARK(BM_CanonicalForm)->DenseRange(2, 6, 1);
BENCHMARK(BM_CountRepresentationsD4)->Unit(bm::kMillisecond);
BENCHMARK(BM_EichlerDecompose);
BENCHMARK(BM_BuildFlagD4)->Unit(bm::kMillisecond);
BENCHMARK(BM_GenusVerdicts);
BENCHMARK(BM_LiftingSearch);
BENCHMARK(BM_EscalateTernary)->Unit(bm::kMillisecond);
BENCHMARK(BM_EscalationTree)->Arg(12)->Unit(bm::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
