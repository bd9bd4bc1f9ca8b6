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

#include "quadlat/representation.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "quadlat/enumerate.hpp"
#include "quadlat/error.hpp"
#include "quadlat/normal_form.hpp"
#include "quadlat/reduce.hpp"
#include "small_int.hpp"

namespace quadlat {
namespace {

using detail::i64;
using detail::SmallMatrix;
using Vec = std::vector<i64>;

struct ShortVector {
  Vec x;
  Vec gx;  // x * G
  i64 q;
};

// Both signs, sorted by (q, x).
std::vector<ShortVector> signed_short_vectors(const IntMatrix& gram, const Int& bound, bool exact) {
  SmallMatrix g(gram);
  std::vector<ShortVector> out;
  i64 target = detail::to_small(std::span<const Int>(&bound, 1))[0];
  enumerate_short_vectors(gram, bound, [&](std::span<const i64> x, i64 q) {
    if (exact && q != target) return true;
    Vec v(x.begin(), x.end());
    Vec neg(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) neg[k] = -v[k];
    Vec gv = g.left_mul(v);
    Vec gneg(gv.size());
    for (std::size_t k = 0; k < gv.size(); ++k) gneg[k] = -gv[k];
    out.push_back({std::move(v), std::move(gv), q});
    out.push_back({std::move(neg), std::move(gneg), q});
    return true;
  });
  std::sort(out.begin(), out.end(), [](const ShortVector& a, const ShortVector& b) {
    return a.q != b.q ? a.q < b.q : a.x < b.x;
  });
  return out;
}

Int max_diagonal(const IntMatrix& g) {
  Int m = 0;
  for (std::size_t i = 0; i < g.rows(); ++i) m = std::max(m, Int(g(i, i)));
  return m;
}

class RepresentationSearch {
 public:
  RepresentationSearch(const GramLattice& n, const GramLattice& l, std::optional<std::size_t> limit)
      : l_(l), limit_(limit) {
    ReducedBasis rn = reduce(n);
    target_ = SmallMatrix(rn.lattice.gram());
    back_ = inverse_unimodular(rn.transform);
    const std::size_t r = n.rank();
    order_.resize(r);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return target_(a, a) > target_(b, b); });
    std::map<i64, std::size_t> by_value;
    cand_index_.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
      i64 v = target_(i, i);
      auto it = by_value.find(v);
      if (it == by_value.end()) {
        it = by_value.emplace(v, candidates_.size()).first;
        candidates_.push_back(signed_short_vectors(l.gram(), Int(static_cast<long>(v)), true));
      }
      cand_index_[i] = it->second;
    }
    placed_.assign(r, nullptr);
  }

  std::vector<Representation> run() {
    if (!std::all_of(candidates_.begin(), candidates_.end(), [](const auto& c) { return !c.empty(); })) return {};
    dfs(0);
    return std::move(found_);
  }

 private:
  bool done() const { return limit_ && found_.size() >= *limit_; }

  void dfs(std::size_t depth) {
    if (depth == order_.size()) {
      emit();
      return;
    }
    const std::size_t pos = order_[depth];
    for (const ShortVector& c : candidates_[cand_index_[pos]]) {
      bool ok = true;
      for (std::size_t e = 0; e < depth && ok; ++e) {
        const std::size_t other = order_[e];
        ok = detail::dot(c.gx, placed_[other]->x) == target_(pos, other);
      }
      if (!ok) continue;
      placed_[pos] = &c;
      dfs(depth + 1);
      if (done()) return;
    }
  }

  void emit() {
    const std::size_t r = order_.size();
    IntMatrix psi(r, l_.rank());
    for (std::size_t i = 0; i < r; ++i) psi.set_row(i, detail::to_big(placed_[i]->x));
    IntMatrix phi = back_ * psi;
    found_.push_back({std::move(phi), false});
  }

  const GramLattice& l_;
  std::optional<std::size_t> limit_;
  SmallMatrix target_;
  IntMatrix back_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> cand_index_;
  std::vector<std::vector<ShortVector>> candidates_;
  std::vector<const ShortVector*> placed_;
  std::vector<Representation> found_;
};

// Greedy-Minkowski branch and bound for canonical_form.
class CanonicalSearch {
 public:
  explicit CanonicalSearch(const GramLattice& l) : n_(l.rank()) {
    ReducedBasis rb = reduce(l);
    gram_ = rb.lattice.gram();
    bound_ = max_diagonal(gram_);
  }

  IntMatrix run() {
    for (;;) {
      auto result = attempt();
      if (result) return *result;
      bound_ *= 2;
    }
  }

 private:
  struct Node {
    std::vector<std::size_t> chosen;
    SmallMatrix proj;  // n x (n - depth): coordinates in Z^n / span(chosen)
  };

  static constexpr std::size_t kNodeBudget = 2'000'000;

  std::optional<IntMatrix> attempt() {
    vecs_ = signed_short_vectors(gram_, bound_, false);
    Node root{{}, SmallMatrix(n_, n_)};
    for (std::size_t i = 0; i < n_; ++i) root.proj(i, i) = 1;
    std::vector<Node> nodes;
    nodes.push_back(std::move(root));
    std::vector<i64> best_key;
    for (std::size_t depth = 0; depth < n_; ++depth) {
      best_key.clear();
      std::vector<std::pair<std::size_t, std::size_t>> winners;  // (node, vector)
      std::vector<i64> key(depth + 1);
      for (std::size_t ni = 0; ni < nodes.size(); ++ni) {
        const Node& node = nodes[ni];
        std::optional<i64> level;
        for (std::size_t vi = 0; vi < vecs_.size(); ++vi) {
          const ShortVector& v = vecs_[vi];
          if (level && v.q > *level) break;
          if (depth == 0 && !first_nonzero_positive(v.x)) continue;
          if (!extends(node, v)) continue;
          level = v.q;
          key[0] = v.q;
          for (std::size_t e = 0; e < depth; ++e) key[e + 1] = -detail::dot(v.gx, vecs_[node.chosen[e]].x);
          if (best_key.empty() || key < best_key) {
            best_key = key;
            winners.clear();
          }
          if (key == best_key) winners.emplace_back(ni, vi);
        }
      }
      if (winners.empty()) return std::nullopt;
      if (winners.size() > kNodeBudget) throw CapExhausted("canonical_form: symmetry search exceeds node budget");
      std::vector<Node> next;
      next.reserve(winners.size());
      for (auto [ni, vi] : winners) next.push_back(child(nodes[ni], vi));
      nodes = std::move(next);
    }
    const Node& best = nodes.front();
    IntMatrix basis(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) basis.set_row(i, detail::to_big(vecs_[best.chosen[i]].x));
    return congruence(basis, gram_);
  }

  static bool first_nonzero_positive(const Vec& x) {
    for (i64 c : x)
      if (c != 0) return c > 0;
    return false;
  }

  static bool extends(const Node& node, const ShortVector& v) {
    Vec y = node.proj.left_mul(v.x);
    i64 g = 0;
    for (i64 c : y) g = detail::gcd64(g, c);
    return g == 1;
  }

  Node child(const Node& node, std::size_t vi) const {
    Node out;
    out.chosen = node.chosen;
    out.chosen.push_back(vi);
    Vec y = node.proj.left_mul(vecs_[vi].x);
    const std::size_t m = y.size();
    IntMatrix yrow(1, m);
    yrow.set_row(0, detail::to_big(y));
    // z -> (z V^{-1})[1..] is a surjection Z^m -> Z^{m-1} with kernel Z y.
    IntMatrix vinv = inverse_unimodular(complete_to_unimodular(yrow));
    SmallMatrix tail(vinv.submatrix(0, 1, m, m - 1));
    out.proj = SmallMatrix(n_, m - 1);
    for (std::size_t i = 0; i < n_; ++i) {
      Vec r = tail.left_mul(node.proj.row(i));
      for (std::size_t j = 0; j + 1 < m; ++j) out.proj(i, j) = r[j];
    }
    return out;
  }

  std::size_t n_;
  IntMatrix gram_;
  Int bound_;
  std::vector<ShortVector> vecs_;
};

}  // namespace

std::vector<Representation> representations(const GramLattice& n, const GramLattice& l,
                                            std::optional<std::size_t> limit) {
  if (limit && *limit == 0) return {};
  if (n.rank() > l.rank()) return {};
  if (n.rank() == 0) return {Representation{IntMatrix(0, l.rank()), true}};
  n.require_positive_definite("representations");
  l.require_positive_definite("representations");
  auto reps = RepresentationSearch(n, l, limit).run();
  for (auto& r : reps) {
    if (congruence(r.matrix, l.gram()) != n.gram()) throw Error("representations: verification failed");
    r.primitive = has_unit_divisors(r.matrix);
  }
  if (!limit) std::sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) { return a.matrix < b.matrix; });
  return reps;
}

std::optional<Representation> find_representation(const GramLattice& n, const GramLattice& l) {
  if (n.rank() == 1 && l.rank() >= 1) {
    l.require_positive_definite("find_representation");
    auto x = find_vector_with_value(l, n.entry(0, 0));
    if (!x) return std::nullopt;
    IntMatrix m(1, l.rank());
    m.set_row(0, *x);
    return Representation{m, has_unit_divisors(m)};
  }
  auto reps = representations(n, l, 1);
  if (reps.empty()) return std::nullopt;
  return reps.front();
}

bool is_represented(const GramLattice& n, const GramLattice& l) { return find_representation(n, l).has_value(); }

bool is_primitively_represented(const GramLattice& n, const GramLattice& l) {
  for (const auto& r : representations(n, l))
    if (r.primitive) return true;
  return false;
}

bool is_isometric(const GramLattice& a, const GramLattice& b) {
  if (a.rank() != b.rank()) return false;
  if (a.rank() == 0) return true;
  if (volume(a) != volume(b)) return false;
  return is_represented(a, b);
}

GramLattice canonical_form(const GramLattice& l) {
  if (l.rank() > kCanonicalRankLimit)
    throw InvalidArgument("canonical_form: rank " + std::to_string(l.rank()) + " exceeds limit " +
                          std::to_string(kCanonicalRankLimit));
  if (l.rank() == 0) return l;
  l.require_positive_definite("canonical_form");
  return GramLattice(CanonicalSearch(l).run(), l.label());
}

std::vector<SublatticeBasis> eichler_decompose(const GramLattice& l) {
  l.require_positive_definite("eichler_decompose");
  const std::size_t n = l.rank();
  auto parent = std::make_shared<const GramLattice>(l);
  if (n == 0) return {};
  ReducedBasis rb = reduce(l);
  auto all = signed_short_vectors(rb.lattice.gram(), max_diagonal(rb.lattice.gram()), false);
  // v is Eichler-decomposable iff v = x + y with x, y != 0 and B(x, y) >= 0.
  std::vector<std::size_t> indec;
  for (std::size_t vi = 0; vi < all.size(); ++vi) {
    const ShortVector& v = all[vi];
    bool positive_rep = false;
    for (i64 c : v.x)
      if (c != 0) {
        positive_rep = c > 0;
        break;
      }
    if (!positive_rep) continue;
    bool decomposable = false;
    for (const ShortVector& x : all) {
      if (x.q >= v.q) break;
      // B(x, v - x) = B(x, v) - Q(x)
      if (detail::dot(x.gx, v.x) - x.q >= 0) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) indec.push_back(vi);
  }
  std::vector<std::size_t> comp(indec.size());
  std::iota(comp.begin(), comp.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (comp[a] != a) a = comp[a] = comp[comp[a]];
    return a;
  };
  for (std::size_t a = 0; a < indec.size(); ++a)
    for (std::size_t b = a + 1; b < indec.size(); ++b)
      if (detail::dot(all[indec[a]].gx, all[indec[b]].x) != 0) comp[find(a)] = find(b);
  std::map<std::size_t, std::vector<IntVector>> groups;
  for (std::size_t a = 0; a < indec.size(); ++a) {
    // reduced coordinates -> input coordinates
    IntVector y = detail::to_big(all[indec[a]].x);
    groups[find(a)].push_back(row_times(y, rb.transform));
  }
  std::vector<std::pair<GramLattice, SublatticeBasis>> parts;
  for (auto& [root, rows] : groups) {
    IntMatrix span = hnf_basis(IntMatrix::from_rows(rows, n));
    SublatticeBasis s = saturation(SublatticeBasis(parent, span));
    parts.emplace_back(canonical_form(induced_gram(s)), std::move(s));
  }
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
    if (a.first.gram() != b.first.gram()) return a.first.gram() < b.first.gram();
    return a.second.coords() < b.second.coords();
  });
  std::vector<SublatticeBasis> out;
  std::size_t total = 0;
  for (auto& p : parts) {
    total += p.second.rank();
    out.push_back(std::move(p.second));
  }
  if (total != n) throw Error("eichler_decompose: components do not span the lattice");
  return out;
}

bool is_indecomposable(const GramLattice& l) { return l.rank() <= 1 || eichler_decompose(l).size() == 1; }

}  // namespace quadlat
