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

#include "quadlat/lattice.hpp"

#include <algorithm>
#include <functional>

#include "quadlat/error.hpp"
#include "quadlat/normal_form.hpp"

namespace quadlat {

GramLattice::GramLattice(IntMatrix gram, std::string label) : gram_(std::move(gram)), label_(std::move(label)) {
  if (gram_.rows() != gram_.cols()) throw InvalidArgument("Gram matrix must be square");
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    for (std::size_t j = i + 1; j < gram_.rows(); ++j)
      if (gram_(i, j) != gram_(j, i))
        throw InvalidArgument("Gram matrix is not symmetric at entry (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
  if (gram_.rows() > 0 && sgn(determinant(gram_)) == 0) throw InvalidArgument("Gram matrix is degenerate");
}

GramLattice GramLattice::diagonal(std::initializer_list<long> entries) {
  IntMatrix g(entries.size(), entries.size());
  std::size_t i = 0;
  for (long e : entries) {
    g(i, i) = e;
    ++i;
  }
  return GramLattice(std::move(g));
}

GramLattice GramLattice::with_label(std::string label) const {
  GramLattice l = *this;
  l.label_ = std::move(label);
  return l;
}

bool GramLattice::is_positive_definite() const { return quadlat::is_positive_definite(gram_); }

void GramLattice::require_positive_definite(const char* what) const {
  if (!is_positive_definite()) throw InvalidArgument(std::string(what) + ": lattice is not positive definite");
}

SublatticeBasis::SublatticeBasis(std::shared_ptr<const GramLattice> parent, IntMatrix coords)
    : parent_(std::move(parent)), coords_(std::move(coords)) {
  if (!parent_) throw InvalidArgument("sublattice without a parent");
  if (coords_.rows() == 0) {
    coords_ = IntMatrix(0, parent_->rank());
    return;
  }
  if (coords_.cols() != parent_->rank()) throw InvalidArgument("sublattice coordinates do not match parent rank");
  if (matrix_rank(coords_) != coords_.rows()) throw InvalidArgument("sublattice basis rows are linearly dependent");
}

SublatticeBasis::SublatticeBasis(const GramLattice& parent, IntMatrix coords)
    : SublatticeBasis(std::make_shared<const GramLattice>(parent), std::move(coords)) {}

IntMatrix SublatticeBasis::hnf() const { return hnf_basis(coords_); }

GramLattice induced_gram(const SublatticeBasis& s) {
  if (s.rank() == 0) return GramLattice();
  return GramLattice(congruence(s.coords(), s.parent().gram()));
}

Int volume(const GramLattice& l) { return determinant(l.gram()); }

IdealData scale_norm(const GramLattice& l) {
  IdealData d{0, 0, volume(l)};
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < l.rank(); ++j) {
      d.scale = gcd(d.scale, l.entry(i, j));
      d.norm = gcd(d.norm, i == j ? l.entry(i, j) : Int(2 * l.entry(i, j)));
    }
  return d;
}

bool is_primitive(const SublatticeBasis& s) { return s.rank() == 0 || has_unit_divisors(s.coords()); }

SublatticeBasis saturation(const SublatticeBasis& s) { return s.with_coords(saturate_rows(s.coords())); }

SublatticeBasis orthogonal_complement(const SublatticeBasis& s) {
  const std::size_t n = s.parent().rank();
  if (s.rank() == 0) return s.with_coords(IntMatrix::identity(n));
  IntMatrix gs = s.parent().gram() * s.coords().transpose();
  return s.with_coords(left_kernel(gs));
}

bool splits(const SublatticeBasis& s) {
  if (!is_primitive(s)) throw InvalidArgument("splits: sublattice is not primitive");
  SublatticeBasis c = orthogonal_complement(s);
  return volume(induced_gram(s)) * volume(induced_gram(c)) == volume(s.parent());
}

Int index_in_saturation(const SublatticeBasis& s) {
  Int idx = 1;
  for (const Int& d : elementary_divisors(s.coords())) idx *= d;
  return idx;
}

bool contains(const SublatticeBasis& big, const SublatticeBasis& small) {
  return express_in_basis(big.coords(), small.coords()).has_value();
}

GramLattice orthogonal_sum(const std::vector<GramLattice>& parts) {
  std::size_t n = 0;
  for (const auto& p : parts) n += p.rank();
  IntMatrix g(n, n);
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rank(); ++i)
      for (std::size_t j = 0; j < p.rank(); ++j) g(off + i, off + j) = p.entry(i, j);
    off += p.rank();
  }
  return GramLattice(std::move(g));
}

std::vector<IntMatrix> hnf_matrices_of_determinant(std::size_t n, const Int& m) {
  if (sgn(m) <= 0) throw InvalidArgument("index must be positive");
  std::vector<IntMatrix> out;
  if (n == 0) {
    if (m == 1) out.emplace_back(0, 0);
    return out;
  }
  std::vector<Int> diag(n);
  std::function<void(std::size_t, const Int&)> choose_diag = [&](std::size_t i, const Int& rest) {
    if (i + 1 == n) {
      diag[i] = rest;
      // Fill the strictly upper part: column j entries reduced mod diag[j].
      IntMatrix h(n, n);
      for (std::size_t k = 0; k < n; ++k) h(k, k) = diag[k];
      std::vector<std::pair<std::size_t, std::size_t>> cells;
      for (std::size_t j = 1; j < n; ++j)
        for (std::size_t r = 0; r < j; ++r) cells.emplace_back(r, j);
      std::function<void(std::size_t)> fill = [&](std::size_t c) {
        if (c == cells.size()) {
          out.push_back(h);
          return;
        }
        auto [r, j] = cells[c];
        for (Int v = 0; v < diag[j]; ++v) {
          h(r, j) = v;
          fill(c + 1);
        }
        h(r, j) = 0;
      };
      fill(0);
      return;
    }
    for (Int d = 1; d <= rest; ++d) {
      if (!mpz_divisible_p(rest.get_mpz_t(), d.get_mpz_t())) continue;
      diag[i] = d;
      choose_diag(i + 1, rest / d);
    }
  };
  choose_diag(0, m);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SublatticeBasis> sublattices_of_index(const GramLattice& l, const Int& m) {
  auto parent = std::make_shared<const GramLattice>(l);
  std::vector<SublatticeBasis> out;
  for (auto& h : hnf_matrices_of_determinant(l.rank(), m)) out.emplace_back(parent, std::move(h));
  return out;
}

}  // namespace quadlat
