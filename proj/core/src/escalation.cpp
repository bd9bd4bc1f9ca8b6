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

#include "quadlat/escalation.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <gmpxx.h>

#include "modp.hpp"
#include "quadlat/enumerate.hpp"
#include "quadlat/error.hpp"
#include "quadlat/local_rep.hpp"
#include "quadlat/normal_form.hpp"
#include "quadlat/representation.hpp"

namespace quadlat {
namespace {

bool canonical_less(const GramLattice& a, const GramLattice& b) {
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  Int da = determinant(a.gram()), db = determinant(b.gram());
  if (da != db) return da < db;
  return a.gram() < b.gram();
}

// Canonical forms in (det, Gram) order, duplicates removed.
std::vector<GramLattice> sorted_classes(std::map<IntMatrix, GramLattice> found) {
  std::vector<GramLattice> out;
  out.reserve(found.size());
  for (auto& [key, l] : found) out.push_back(std::move(l));
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

// Rank of a symmetric matrix if it is positive semidefinite.
std::optional<std::size_t> psd_rank(const IntMatrix& s) {
  const std::size_t n = s.rows();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = s(i, j);
  std::vector<bool> used(n, false);
  std::size_t rank = 0;
  for (;;) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!used[i] && sgn(a[i][i]) != 0) {
        piv = i;
        break;
      }
    if (piv == n) break;
    if (sgn(a[piv][piv]) < 0) return std::nullopt;
    used[piv] = true;
    ++rank;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      mpq_class f = a[j][piv] / a[piv][piv];
      if (sgn(f) == 0) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (!used[k]) a[j][k] -= f * a[piv][k];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!used[i] && !used[j] && sgn(a[i][j]) != 0) return std::nullopt;
  return rank;
}

// Nondegenerate Gram matrix of the lattice spanned by vectors with the
// positive semidefinite Gram matrix b.
IntMatrix drop_radical(const IntMatrix& b) {
  IntMatrix radical = left_kernel(b);
  if (radical.rows() == 0) return b;
  IntMatrix w = complete_to_unimodular(radical);
  IntMatrix rest = w.submatrix(radical.rows(), 0, w.rows() - radical.rows(), w.cols());
  return congruence(rest, b);
}

IntMatrix bordered_gram(const IntMatrix& g, const IntMatrix& c, const IntMatrix& t) {
  const std::size_t n = g.rows(), k = t.rows();
  IntMatrix b(n + k, n + k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = g(i, j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) b(i, n + j) = b(n + j, i) = c(i, j);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) b(n + i, n + j) = t(i, j);
  return b;
}

std::vector<IntMatrix> index_p_superlattices(const IntMatrix& g, const Int& p) {
  const std::size_t n = g.rows();
  std::vector<IntVector> rows;
  for (std::size_t j = 0; j < n; ++j) {
    IntVector r(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) r[i] = g(i, j);
    rows.push_back(std::move(r));
  }
  auto space = detail::solve_mod_p(std::move(rows), n, p);
  std::vector<IntMatrix> out;
  if (!space || space->kernel.empty()) return out;
  const auto& kernel = space->kernel;
  const std::size_t r = kernel.size();
  const Int p2 = p * p;
  std::vector<Int> c(r, 0);
  // Projective points: first nonzero coefficient equal to 1.
  for (std::size_t lead = 0; lead < r; ++lead) {
    std::fill(c.begin(), c.end(), 0);
    c[lead] = 1;
    for (;;) {
      IntVector x(n, 0);
      for (std::size_t i = 0; i < r; ++i)
        if (sgn(c[i]) != 0)
          for (std::size_t j = 0; j < n; ++j) x[j] = detail::mod(x[j] + c[i] * kernel[i][j], p);
      if (detail::mod(bilinear(g, x, x), p2) == 0) {
        IntMatrix gen = IntMatrix::identity(n);
        for (std::size_t i = 0; i < n; ++i) gen(i, i) = p;
        IntMatrix xm(1, n);
        xm.set_row(0, x);
        IntMatrix h = hnf_basis(gen.append_rows(xm));
        IntMatrix sup = congruence(h, g);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            if (!mpz_divisible_p(sup(i, j).get_mpz_t(), p2.get_mpz_t()))
              throw Error("index_p_superlattices: nonintegral Gram");
            sup(i, j) /= p2;
          }
        out.push_back(std::move(sup));
      }
      bool wrapped = true;
      for (std::size_t pos = r; pos > lead + 1;) {
        --pos;
        if (++c[pos] < p) {
          wrapped = false;
          break;
        }
        c[pos] = 0;
      }
      if (wrapped) break;
    }
  }
  return out;
}

std::vector<GramLattice> bordered_escalators(const GramLattice& l, const GramLattice& t) {
  const std::size_t n = l.rank(), k = t.rank();
  if (n == 0) return {canonical_form(t)};
  const IntMatrix& g = l.gram();
  const Int d = determinant(g);
  GramLattice adj(adjugate(g));
  // Candidate columns c_j: c_j^T adj c_j <= d * T_jj, with zero.
  std::vector<std::vector<IntVector>> columns(k);
  for (std::size_t j = 0; j < k; ++j) {
    Int bound = d * t.entry(j, j);
    if (k == 1) bound -= 1;
    VectorList vl = vectors_up_to(adj, bound);
    columns[j].push_back(IntVector(n, 0));
    if (j == 0) {
      // C and -C generate the same lattice.
      for (auto& v : vl.vectors) columns[j].push_back(v);
    } else {
      for (auto& v : vl.with_signs()) columns[j].push_back(std::move(v));
    }
  }
  std::size_t best = k + 1;
  std::map<IntMatrix, GramLattice> found;
  std::vector<std::size_t> pick(k, 0);
  IntMatrix c(n, k);
  for (;;) {
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < n; ++i) c(i, j) = columns[j][pick[j]][i];
    IntMatrix cta = c.transpose() * adj.gram();
    IntMatrix s = cta * c;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) s(i, j) = d * t.entry(i, j) - s(i, j);
    auto r = psd_rank(s);
    if (r && *r >= 1 && *r <= best) {
      if (*r < best) {
        best = *r;
        found.clear();
      }
      GramLattice m(drop_radical(bordered_gram(g, c, t.gram())));
      GramLattice canon = canonical_form(m);
      IntMatrix key = canon.gram();
      found.emplace(std::move(key), std::move(canon));
    }
    std::size_t pos = 0;
    while (pos < k) {
      if (++pick[pos] < columns[pos].size()) break;
      pick[pos] = 0;
      ++pos;
    }
    if (pos == k) break;
  }
  return sorted_classes(std::move(found));
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& f) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

using Missing = std::shared_ptr<const std::vector<std::int64_t>>;

Missing unary_missing(const GramLattice& l, std::int64_t cap, const Missing& parent) {
  auto out = std::make_shared<std::vector<std::int64_t>>();
  if (l.rank() == 0) {
    for (std::int64_t m = 1; m <= cap; ++m) out->push_back(m);
  } else if (!parent || l.rank() <= 3) {
    auto seen = represented_values(l, cap);
    for (std::int64_t m = 1; m <= cap; ++m)
      if (!seen[static_cast<std::size_t>(m)]) out->push_back(m);
  } else {
    for (std::int64_t m : *parent)
      if (!find_vector_with_value(l, Int(static_cast<long>(m)))) out->push_back(m);
  }
  return out;
}

struct Pending {
  GramLattice lattice;
  std::optional<std::string> parent;
  std::optional<EscalationTier> tier;
  Missing parent_missing;
  std::size_t start = 0;
};

struct Processed {
  std::optional<std::size_t> truant;
  Missing missing;
  NodeStatus status = NodeStatus::Escalated;
  Escalators children{EscalationTier::Superlattice, {}};
};

}  // namespace

std::string to_string(StreamKind kind) {
  switch (kind) {
    case StreamKind::Unary: return "unary";
    case StreamKind::FixedRankClasses: return "fixed-rank-classes";
    case StreamKind::Sublattices: return "sublattices";
  }
  return "unknown";
}

std::string to_string(EscalationTier tier) {
  return tier == EscalationTier::Superlattice ? "superlattice" : "bordered";
}

std::string to_string(NodeStatus status) {
  switch (status) {
    case NodeStatus::Escalated: return "escalated";
    case NodeStatus::NumericallyUniversal: return "numerically-universal";
    case NodeStatus::CapExhausted: return "cap-exhausted";
  }
  return "unknown";
}

TargetStream::TargetStream(StreamKind kind, Int cap, std::vector<GramLattice> elements)
    : kind_(kind), cap_(std::move(cap)), elements_(std::make_shared<const std::vector<GramLattice>>(std::move(elements))) {}

TargetStream TargetStream::unary(std::int64_t cap) {
  if (cap < 1) throw InvalidArgument("unary stream: cap must be at least 1");
  std::vector<GramLattice> el;
  el.reserve(static_cast<std::size_t>(cap));
  for (std::int64_t m = 1; m <= cap; ++m) el.push_back(GramLattice(IntMatrix{{static_cast<long>(m)}}));
  return TargetStream(StreamKind::Unary, Int(static_cast<long>(cap)), std::move(el));
}

TargetStream TargetStream::fixed_rank_classes(std::size_t rank, const Int& det_cap) {
  return TargetStream(StreamKind::FixedRankClasses, det_cap, classes_of_rank(rank, det_cap));
}

TargetStream TargetStream::sublattices_of(const GramLattice& l, const Int& index_cap) {
  l.require_positive_definite("sublattice stream");
  std::vector<GramLattice> el;
  for (Int m = 2; m <= index_cap; ++m) {
    std::map<IntMatrix, GramLattice> found;
    for (const auto& s : sublattices_of_index(l, m)) {
      GramLattice canon = canonical_form(induced_gram(s));
      IntMatrix key = canon.gram();
      found.emplace(std::move(key), std::move(canon));
    }
    for (auto& c : sorted_classes(std::move(found))) el.push_back(std::move(c));
  }
  return TargetStream(StreamKind::Sublattices, index_cap, std::move(el));
}

std::int64_t TargetStream::unary_value(std::size_t i) const {
  if (kind_ != StreamKind::Unary) throw InvalidArgument("unary_value: not a unary stream");
  return static_cast<std::int64_t>(i) + 1;
}

std::string TargetStream::describe() const { return to_string(kind_) + " cap " + cap_.get_str(); }

TargetStream sublattice_stream(const GramLattice& l, const Int& index_cap) {
  return TargetStream::sublattices_of(l, index_cap);
}

std::vector<GramLattice> classes_of_rank(std::size_t rank, const Int& det_cap) {
  if (rank < 1 || rank > 4) throw InvalidArgument("classes_of_rank: rank must be 1..4");
  // Minkowski-reduced forms: a_11 <= ... <= a_nn, |2 a_ij| <= a_ii and
  // den * prod a_ii <= num * det.
  static const long num[] = {0, 1, 4, 2, 4};
  static const long den[] = {0, 1, 3, 1, 1};
  const Int prod_cap = floor_div(num[rank] * det_cap, Int(den[rank]));
  std::map<IntMatrix, GramLattice> found;
  IntMatrix g(rank, rank);
  std::vector<std::pair<std::size_t, std::size_t>> off;
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = i + 1; j < rank; ++j) off.emplace_back(i, j);
  std::function<void(std::size_t)> fill_off = [&](std::size_t k) {
    if (k == off.size()) {
      if (!is_positive_definite(g)) return;
      if (determinant(g) > det_cap) return;
      GramLattice canon = canonical_form(GramLattice(g));
      IntMatrix key = canon.gram();
      found.emplace(std::move(key), std::move(canon));
      return;
    }
    auto [i, j] = off[k];
    Int lim = g(i, i) / 2;
    for (Int v = -lim; v <= lim; ++v) {
      g(i, j) = g(j, i) = v;
      fill_off(k + 1);
    }
  };
  std::function<void(std::size_t, const Int&, const Int&)> fill_diag = [&](std::size_t i, const Int& lo,
                                                                          const Int& prod) {
    if (i == rank) {
      fill_off(0);
      return;
    }
    for (Int a = lo;; ++a) {
      // Remaining diagonal entries are at least a.
      Int p = prod;
      for (std::size_t k = i; k < rank; ++k) p *= a;
      if (p > prod_cap) break;
      g(i, i) = a;
      fill_diag(i + 1, a, prod * a);
    }
  };
  fill_diag(0, 1, 1);
  return sorted_classes(std::move(found));
}

std::optional<Truant> truant(const GramLattice& l, const TargetStream& s) {
  if (l.rank() > 0) l.require_positive_definite("truant");
  if (s.kind() == StreamKind::Unary) {
    if (l.rank() == 0) return Truant{0, s[0]};
    const std::int64_t cap = static_cast<std::int64_t>(s.size());
    if (l.rank() <= 4) {
      auto seen = represented_values(l, cap);
      for (std::int64_t m = 1; m <= cap; ++m)
        if (!seen[static_cast<std::size_t>(m)]) return Truant{static_cast<std::size_t>(m - 1), s[m - 1]};
      return std::nullopt;
    }
  }
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!is_represented(s[i], l)) return Truant{i, s[i]};
  return std::nullopt;
}

std::vector<GramLattice> integral_superlattices(const GramLattice& l) {
  l.require_positive_definite("integral_superlattices");
  std::map<IntMatrix, GramLattice> found;
  std::set<IntMatrix> seen;
  GramLattice start = canonical_form(l);
  seen.insert(start.gram());
  std::vector<GramLattice> frontier{start};
  while (!frontier.empty()) {
    std::vector<GramLattice> next;
    for (const auto& k : frontier) {
      Int d = determinant(k.gram());
      for (const Int& p : prime_divisors(d)) {
        if (valuation(d, p) < 2) continue;
        for (auto& g : index_p_superlattices(k.gram(), p)) {
          GramLattice canon = canonical_form(GramLattice(std::move(g)));
          if (!seen.insert(canon.gram()).second) continue;
          found.emplace(canon.gram(), canon);
          next.push_back(std::move(canon));
        }
      }
    }
    std::sort(next.begin(), next.end(), canonical_less);
    frontier = std::move(next);
  }
  return sorted_classes(std::move(found));
}

Escalators escalators(const GramLattice& l, const GramLattice& t) {
  if (l.rank() > 0) l.require_positive_definite("escalate");
  t.require_positive_definite("escalate target");
  if (l.rank() > 0 && is_represented(t, l)) throw InvalidArgument("escalate: target is already represented");
  Escalators out{EscalationTier::Superlattice, {}};
  if (l.rank() > 0)
    for (auto& m : integral_superlattices(l))
      if (is_represented(t, m)) out.lattices.push_back(std::move(m));
  if (out.lattices.empty()) {
    out.tier = EscalationTier::Bordered;
    out.lattices = bordered_escalators(l, t);
  }
  for (const auto& m : out.lattices)
    if (!is_represented(t, m) || (l.rank() > 0 && !is_represented(l, m)))
      throw Error("escalate: escalator fails to represent its parent or target");
  return out;
}

std::vector<GramLattice> escalate(const GramLattice& l, const GramLattice& t) { return escalators(l, t).lattices; }

std::string node_id(const GramLattice& canonical) {
  std::ostringstream os;
  os << canonical.gram();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(os.str())));
  return buf;
}

bool EscalationTree::complete() const {
  for (const auto& level : levels)
    for (const auto& node : level)
      if (node.status == NodeStatus::CapExhausted) return false;
  return true;
}

std::size_t EscalationTree::node_count() const {
  std::size_t n = 0;
  for (const auto& level : levels) n += level.size();
  return n;
}

EscalationTree escalation_tree(const TargetStream& s, std::size_t level_cap, unsigned threads) {
  if (level_cap < 1) throw InvalidArgument("escalation_tree: level cap must be at least 1");
  if (s.size() == 0) throw InvalidArgument("escalation_tree: empty stream");
  EscalationTree tree{s, level_cap, {}};
  const bool unary = s.kind() == StreamKind::Unary;
  const auto cap = static_cast<std::int64_t>(s.size());

  std::vector<Pending> pending;
  {
    Escalators root = escalators(GramLattice::rank_zero(), s[0]);
    for (auto& m : root.lattices) pending.push_back(Pending{std::move(m), std::nullopt, root.tier, nullptr, 1});
  }
  while (!pending.empty()) {
    const std::size_t level = tree.levels.size() + 1;
    std::vector<Processed> done(pending.size());
    parallel_for(pending.size(), threads, [&](std::size_t i) {
      const Pending& in = pending[i];
      Processed& out = done[i];
      if (unary) {
        out.missing = unary_missing(in.lattice, cap, in.parent_missing);
        if (!out.missing->empty()) out.truant = static_cast<std::size_t>(out.missing->front() - 1);
      } else {
        for (std::size_t k = in.start; k < s.size(); ++k)
          if (!is_represented(s[k], in.lattice)) {
            out.truant = k;
            break;
          }
      }
      if (!out.truant) {
        out.status = NodeStatus::NumericallyUniversal;
      } else if (level >= level_cap) {
        out.status = NodeStatus::CapExhausted;
      } else {
        out.status = NodeStatus::Escalated;
        out.children = escalators(in.lattice, s[*out.truant]);
      }
    });

    std::vector<EscalationNode> nodes;
    std::map<IntMatrix, Pending> next;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      EscalationNode node;
      node.lattice = pending[i].lattice;
      node.id = node_id(node.lattice);
      node.truant = done[i].truant;
      node.level = level;
      node.parent = pending[i].parent;
      node.tier = pending[i].tier;
      node.status = done[i].status;
      if (node.status == NodeStatus::Escalated)
        for (auto& child : done[i].children.lattices) {
          IntMatrix key = child.gram();
          next.emplace(std::move(key), Pending{std::move(child), node.id, done[i].children.tier, done[i].missing,
                                               *node.truant + 1});
        }
      nodes.push_back(std::move(node));
    }
    tree.levels.push_back(std::move(nodes));
    pending.clear();
    for (auto& [key, p] : next) pending.push_back(std::move(p));
    std::stable_sort(pending.begin(), pending.end(),
                     [](const Pending& a, const Pending& b) { return canonical_less(a.lattice, b.lattice); });
  }
  return tree;
}

CriterionSet criterion_set(const EscalationTree& tree) {
  std::size_t live = 0;
  std::map<std::size_t, std::vector<std::string>> truants;
  truants[0];
  for (const auto& level : tree.levels)
    for (const auto& node : level) {
      if (node.status == NodeStatus::CapExhausted) ++live;
      if (node.status == NodeStatus::Escalated) truants[*node.truant].push_back(node.id);
    }
  if (live > 0)
    throw CapExhausted("criterion_set: " + std::to_string(live) + " node(s) still have a truant at level cap " +
                       std::to_string(tree.level_cap));
  CriterionSet out;
  out.stream = tree.stream.describe();
  out.cap = tree.stream.cap();
  out.level_cap = tree.level_cap;
  for (auto& [index, ids] : truants) {
    out.classes.push_back(tree.stream[index]);
    out.stream_indices.push_back(index);
    out.provenance.push_back(ids);
  }
  return out;
}

}  // namespace quadlat
