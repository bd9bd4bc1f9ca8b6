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

#include "quadlat/flags.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "quadlat/enumerate.hpp"
#include "quadlat/error.hpp"
#include "quadlat/normal_form.hpp"

namespace quadlat {
namespace {

IntMatrix leading_identity(std::size_t k, std::size_t n) {
  IntMatrix m(k, n);
  for (std::size_t i = 0; i < k; ++i) m(i, i) = 1;
  return m;
}

// Whether the first k basis vectors of M split M.
bool prefix_splits(const SublatticeBasis& m, std::size_t k) {
  return splits(SublatticeBasis(induced_gram(m), leading_identity(k, m.rank())));
}

bool extension_less(const Extension& a, const Extension& b) {
  if (a.volume != b.volume) return a.volume < b.volume;
  return a.lattice.coords() < b.lattice.coords();
}

// Images of R*(N, L), each with its least representation, in order of that
// representation.
std::vector<std::pair<SublatticeBasis, IntMatrix>> primitive_images(const SublatticeBasis& n) {
  std::vector<std::pair<SublatticeBasis, IntMatrix>> out;
  std::set<IntMatrix> seen;
  for (const auto& r : representations(induced_gram(n), n.parent())) {
    if (!r.primitive) continue;
    SublatticeBasis image = n.with_coords(r.matrix);
    if (seen.insert(image.hnf()).second) out.emplace_back(std::move(image), r.matrix);
  }
  return out;
}

}  // namespace

std::vector<SublatticeBasis> rank1_minimizers(const GramLattice& l) {
  auto parent = std::make_shared<const GramLattice>(l);
  std::vector<SublatticeBasis> out;
  for (const auto& v : shortest_vectors(l).vectors) {
    IntMatrix m(1, l.rank());
    m.set_row(0, v);
    out.emplace_back(parent, std::move(m));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.coords() < b.coords(); });
  return out;
}

ExtensionStream::ExtensionStream(const SublatticeBasis& n) : n_(n) {
  const GramLattice& l = n.parent();
  l.require_positive_definite("extensions");
  const std::size_t r = n.rank();
  const std::size_t dim = l.rank();
  if (r >= dim) throw InvalidArgument("extensions: sublattice already has full rank");
  if (!is_primitive(n)) throw InvalidArgument("extensions: sublattice is not primitive");
  IntMatrix w = r == 0 ? IntMatrix::identity(dim) : complete_to_unimodular(n.coords());
  tail_ = w.submatrix(r, 0, dim - r, dim);
  IntMatrix h = congruence(w, l.gram());
  IntMatrix c = h.submatrix(r, r, dim - r, dim - r);
  if (r == 0) {
    quotient_ = c;
  } else {
    IntMatrix a = h.submatrix(0, 0, r, r);
    IntMatrix bm = h.submatrix(0, r, r, dim - r);
    IntMatrix correction = bm.transpose() * adjugate(a) * bm;
    Int det_a = determinant(a);
    quotient_ = IntMatrix(dim - r, dim - r);
    for (std::size_t i = 0; i < dim - r; ++i)
      for (std::size_t j = 0; j < dim - r; ++j) quotient_(i, j) = det_a * c(i, j) - correction(i, j);
  }
  lower_ = 0;
  upper_ = minimum(GramLattice(quotient_));
  refill();
}

void ExtensionStream::refill() {
  buffer_.clear();
  pos_ = 0;
  const std::size_t r = n_.rank();
  const std::size_t dim = n_.parent().rank();
  VectorList vl = vectors_up_to(GramLattice(quotient_), upper_);
  for (std::size_t i = 0; i < vl.size(); ++i) {
    if (vl.norms[i] <= lower_) continue;
    Int g = 0;
    for (const auto& c : vl.vectors[i]) g = gcd(g, c);
    if (g != 1) continue;
    IntMatrix coords(r + 1, dim);
    for (std::size_t k = 0; k < r; ++k) coords.set_row(k, n_.coords().row(k));
    coords.set_row(r, row_times(vl.vectors[i], tail_));
    buffer_.push_back({n_.with_coords(std::move(coords)), vl.norms[i]});
  }
  std::sort(buffer_.begin(), buffer_.end(), extension_less);
}

std::optional<Extension> ExtensionStream::next() {
  while (pos_ == buffer_.size()) {
    // A rank-1 quotient has the single primitive class +-1, produced by
    // the first refill.
    if (quotient_.rows() == 1) return std::nullopt;
    lower_ = upper_;
    upper_ *= 2;
    refill();
  }
  return buffer_[pos_++];
}

std::vector<Extension> extensions(const SublatticeBasis& n, const Int& vol_cap) {
  std::vector<Extension> out;
  ExtensionStream stream(n);
  while (auto e = stream.next()) {
    if (e->volume > vol_cap) break;
    out.push_back(std::move(*e));
  }
  return out;
}

std::vector<Extension> d_set(const SublatticeBasis& n, const Int& vol_cap) {
  if (n.rank() >= n.parent().rank()) return {};
  std::map<IntMatrix, Extension> found;
  for (const auto& [image, phi] : primitive_images(n)) {
    if (image.rank() > 0 && splits(image)) continue;
    for (auto& e : extensions(image, vol_cap)) {
      if (image.rank() > 0 && prefix_splits(e.lattice, image.rank())) continue;
      found.emplace(e.lattice.hnf(), std::move(e));
    }
  }
  std::vector<Extension> out;
  for (auto& [key, e] : found) out.push_back(std::move(e));
  std::stable_sort(out.begin(), out.end(), [](const Extension& a, const Extension& b) { return a.volume < b.volume; });
  return out;
}

MSet m_set(const SublatticeBasis& n) {
  const GramLattice& l = n.parent();
  MSet out;
  out.volume = 0;
  if (n.rank() >= l.rank()) return out;
  if (n.rank() == 0) {
    for (auto& s : rank1_minimizers(l)) {
      Int v = volume(induced_gram(s));
      out.volume = v;
      out.members.push_back({{std::move(s), v}, IntMatrix(0, l.rank())});
    }
    return out;
  }
  std::optional<Int> best;
  std::map<IntMatrix, MSetMember> found;
  for (const auto& [image, phi] : primitive_images(n)) {
    // A split image splits every overlattice.
    if (splits(image)) continue;
    ExtensionStream stream(image);
    while (auto e = stream.next()) {
      if (best && e->volume > *best) break;
      if (prefix_splits(e->lattice, image.rank())) continue;
      if (!best || e->volume < *best) {
        best = e->volume;
        found.clear();
      }
      IntMatrix key = e->lattice.hnf();
      found.emplace(std::move(key), MSetMember{std::move(*e), phi});
    }
  }
  if (!best) return out;
  out.volume = *best;
  std::vector<std::pair<IntMatrix, MSetMember>> keyed;
  for (auto& [hnf, m] : found) keyed.emplace_back(canonical_form(induced_gram(m.lattice.lattice)).gram(), std::move(m));
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [key, m] : keyed) out.members.push_back(std::move(m));
  return out;
}

SublatticeBasis Flag::step(std::size_t i) const {
  return SublatticeBasis(ambient, basis.submatrix(0, 0, i, basis.cols()));
}

Flag build_flag(const GramLattice& l) {
  l.require_positive_definite("build_flag");
  if (!is_indecomposable(l)) throw InvalidArgument("build_flag: lattice is decomposable");
  Flag f;
  f.ambient = std::make_shared<const GramLattice>(l);
  f.basis = IntMatrix(0, l.rank());
  while (f.basis.rows() < l.rank()) {
    MSet ms = m_set(f.step(f.basis.rows()));
    if (ms.d_empty()) throw Error("build_flag: empty D(N) at step " + std::to_string(f.basis.rows()));
    // Coordinates are phi(N_1), ..., phi(N_k) followed by the new vector.
    f.basis = ms.members.front().lattice.lattice.coords();
    f.floors.push_back(ms.volume);
  }
  return f;
}

FlagCheck is_valid_flag(const Flag& f) {
  auto fail = [](std::string why) { return FlagCheck{false, std::move(why)}; };
  if (!f.ambient) return fail("no ambient lattice");
  const GramLattice& l = *f.ambient;
  const std::size_t k = f.length();
  if (f.basis.cols() != l.rank() || k > l.rank()) return fail("basis shape does not match ambient rank");
  if (f.floors.size() != k) return fail("certificate count differs from flag length");
  if (matrix_rank(f.basis) != k) return fail("basis rows are dependent");
  for (std::size_t i = 1; i <= k; ++i) {
    const std::string at = "step " + std::to_string(i) + ": ";
    SublatticeBasis ni = f.step(i);
    if (!is_primitive(ni)) return fail(at + "N_" + std::to_string(i) + " is not primitive");
    if (i >= 2 && prefix_splits(ni, i - 1)) return fail(at + "N_" + std::to_string(i - 1) + " splits N_" + std::to_string(i));
    Int vol = volume(induced_gram(ni));
    MSet ms = m_set(f.step(i - 1));
    if (ms.d_empty()) return fail(at + "D(N_" + std::to_string(i - 1) + ") is empty");
    if (ms.volume != vol || f.floors[i - 1] != vol) return fail(at + "volume is not minimal");
    IntMatrix key = ni.hnf();
    bool member = std::any_of(ms.members.begin(), ms.members.end(),
                              [&](const MSetMember& m) { return m.lattice.lattice.hnf() == key; });
    if (!member) return fail(at + "not a member of M(N_" + std::to_string(i - 1) + ")");
    for (const auto& r : representations(induced_gram(ni), l))
      if (!r.primitive) return fail(at + "imprimitive representation of N_" + std::to_string(i));
  }
  return {true, {}};
}

NonrecoverabilityReport check_nonrecoverability(const GramLattice& l, const std::vector<SublatticeBasis>& parts,
                                                const Int& index_bound) {
  l.require_positive_definite("check_nonrecoverability");
  if (!is_indecomposable(l)) throw InvalidArgument("check_nonrecoverability: lattice is decomposable");
  std::vector<GramLattice> grams;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    const std::string at = "part " + std::to_string(i + 1);
    if (!(p.parent() == l)) throw InvalidArgument(at + " is not a sublattice of the given lattice");
    GramLattice g = induced_gram(p);
    if (p.rank() == l.rank() && (volume(g) == volume(l) || is_isometric(g, l)))
      throw InvalidArgument(at + " is not a proper sublattice");
    grams.push_back(std::move(g));
  }
  NonrecoverabilityReport report;
  report.sum = orthogonal_sum(grams);
  report.sum_represents_l = is_represented(l, report.sum);
  auto parent = std::make_shared<const GramLattice>(l);
  std::set<IntMatrix> seen;
  std::vector<SublatticeBasis> lower;
  const std::size_t n = l.rank();
  for (Int m = 2; m <= index_bound; ++m) {
    for (const auto& s : sublattices_of_index(l, m)) {
      SublatticeBasis full(parent, s.coords());
      if (seen.insert(full.hnf()).second) report.proper.push_back({full, false});
      for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<std::size_t> rows;
        for (std::size_t b = 0; b < n; ++b)
          if (mask & (1u << b)) rows.push_back(b);
        SublatticeBasis sat = saturation(SublatticeBasis(parent, full.coords().select_rows(rows)));
        if (seen.insert(sat.hnf()).second) lower.push_back(std::move(sat));
      }
    }
  }
  std::stable_sort(lower.begin(), lower.end(), [](const auto& a, const auto& b) {
    return a.rank() != b.rank() ? a.rank() < b.rank() : a.hnf() < b.hnf();
  });
  for (auto& s : lower) report.proper.push_back({std::move(s), false});
  for (auto& v : report.proper) v.represented = is_represented(induced_gram(v.lattice), report.sum);
  return report;
}

}  // namespace quadlat
