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

#include "quadlat/local_rep.hpp"

#include <algorithm>
#include <map>

#include "quadlat/error.hpp"
#include "modp.hpp"

namespace quadlat {
namespace {

using detail::AffineSpace;
using detail::inverse_mod;
using detail::mod;
using detail::solve_mod_p;

using Rational = mpq_class;
using RatMatrix = std::vector<std::vector<Rational>>;

constexpr std::size_t kLiftNodeBudget = 4'000'000;

Int power(const Int& p, int k) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

int legendre(const Int& a, const Int& p) {
  Int r = mod(a, p);
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

// v_p of a p-integral rational; -1 for zero.
int rat_valuation(const Rational& x, const Int& p) {
  if (sgn(x) == 0) return -1;
  return valuation(x.get_num(), p);
}

Int rat_residue(const Rational& x, const Int& m) {
  return mod(Int(x.get_num()) * inverse_mod(Int(x.get_den()), m), m);
}

// e_dst += c * e_src as a congruence on S, and on the rows of T.
void add_basis_multiple(RatMatrix& s, RatMatrix& t, std::size_t dst, std::size_t src, const Rational& c) {
  const std::size_t n = s.size();
  for (std::size_t k = 0; k < n; ++k) s[dst][k] += c * s[src][k];
  for (std::size_t k = 0; k < n; ++k) s[k][dst] += c * s[k][src];
  for (std::size_t k = 0; k < t[dst].size(); ++k) t[dst][k] += c * t[src][k];
}

struct Cell {
  int valuation;
  std::vector<std::size_t> index;
};

// Exact splitting over Z_(p) into 1x1 cells (and 2x2 cells for p = 2).
std::vector<Cell> split_cells(RatMatrix& s, RatMatrix& t, const Int& p) {
  const std::size_t n = s.size();
  std::vector<std::size_t> rest(n);
  for (std::size_t i = 0; i < n; ++i) rest[i] = i;
  std::vector<Cell> cells;
  while (!rest.empty()) {
    int best = -1;
    for (std::size_t a : rest)
      for (std::size_t b : rest) {
        int v = rat_valuation(s[a][b], p);
        if (v >= 0 && (best < 0 || v < best)) best = v;
      }
    std::optional<std::size_t> diag;
    for (std::size_t a : rest)
      if (rat_valuation(s[a][a], p) == best) {
        diag = a;
        break;
      }
    std::vector<std::size_t> pivot;
    if (diag) {
      pivot = {*diag};
    } else {
      std::size_t ia = 0, ib = 0;
      bool found = false;
      for (std::size_t a : rest) {
        for (std::size_t b : rest)
          if (a != b && rat_valuation(s[a][b], p) == best) {
            ia = a;
            ib = b;
            found = true;
            break;
          }
        if (found) break;
      }
      if (p == 2) {
        pivot = {std::min(ia, ib), std::max(ia, ib)};
      } else {
        add_basis_multiple(s, t, ia, ib, 1);
        pivot = {ia};
      }
    }
    // Clear the pivot rows from every other remaining basis vector.
    Rational det_p = pivot.size() == 1 ? s[pivot[0]][pivot[0]]
                                       : s[pivot[0]][pivot[0]] * s[pivot[1]][pivot[1]] - s[pivot[0]][pivot[1]] * s[pivot[1]][pivot[0]];
    for (std::size_t k : rest) {
      if (std::find(pivot.begin(), pivot.end(), k) != pivot.end()) continue;
      if (pivot.size() == 1) {
        Rational c = -s[k][pivot[0]] / s[pivot[0]][pivot[0]];
        add_basis_multiple(s, t, k, pivot[0], c);
      } else {
        const std::size_t i = pivot[0], j = pivot[1];
        Rational c0 = -(s[k][i] * s[j][j] - s[k][j] * s[j][i]) / det_p;
        Rational c1 = -(s[k][j] * s[i][i] - s[k][i] * s[i][j]) / det_p;
        add_basis_multiple(s, t, k, i, c0);
        add_basis_multiple(s, t, k, j, c1);
      }
    }
    std::erase_if(rest, [&](std::size_t k) { return std::find(pivot.begin(), pivot.end(), k) != pivot.end(); });
    cells.push_back({best, pivot});
  }
  return cells;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = Rational(m(i, j));
  return r;
}

RatMatrix rational_identity(std::size_t n) {
  RatMatrix r(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

// Square roots of a mod an odd prime p (a unit or zero), increasing.
std::vector<Int> sqrt_mod(const Int& a0, const Int& p) {
  Int a = mod(a0, p);
  if (a == 0) return {Int(0)};
  if (legendre(a, p) != 1) return {};
  // Tonelli-Shanks.
  Int q = p - 1;
  int s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  Int z = 2;
  while (legendre(z, p) != -1) ++z;
  Int m = s, c, t, r, e;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  while (t != 1) {
    Int tt = t;
    int i = 0;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    Int b = c;
    for (int k = 0; k < m.get_si() - i - 1; ++k) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  Int other = p - r;
  if (other < r) std::swap(r, other);
  return r == other ? std::vector<Int>{r} : std::vector<Int>{r, other};
}

// Valuations of the elementary divisors of m mod p^j (j = undetermined).
std::vector<int> divisor_valuations(IntMatrix m, const Int& p, int j) {
  const Int pj = power(p, j);
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = mod(m(i, c), pj);
  std::vector<int> out;
  for (std::size_t s = 0; s < rows; ++s) {
    int best = j;
    std::size_t bi = s, bc = s;
    for (std::size_t i = s; i < rows; ++i)
      for (std::size_t c = s; c < cols; ++c)
        if (m(i, c) != 0) {
          int v = valuation(m(i, c), p);
          if (v < best) {
            best = v;
            bi = i;
            bc = c;
          }
        }
    out.push_back(best);
    if (best == j || s >= cols) {
      for (std::size_t rest = s + 1; rest < rows; ++rest) out.push_back(j);
      break;
    }
    m.swap_rows(s, bi);
    for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, s), m(i, bc));
    const Int unit_inv = inverse_mod(m(s, s) / power(p, best), pj);
    for (std::size_t i = s + 1; i < rows; ++i) {
      Int f = mod(m(i, s) / power(p, best) * unit_inv, pj);
      for (std::size_t c = s; c < cols; ++c) m(i, c) = mod(m(i, c) - f * m(s, c), pj);
    }
    for (std::size_t c = s + 1; c < cols; ++c) {
      Int f = mod(m(s, c) / power(p, best) * unit_inv, pj);
      for (std::size_t i = s; i < rows; ++i) m(i, c) = mod(m(i, c) - f * m(i, s), pj);
    }
  }
  return out;
}

// Depth-first search for X mod p^j with X G X^T == A mod p^j, lifted digit by
// digit. A node with determined max elementary-divisor valuation t of X G
// lifts to an exact solution once j >= 2t + 1 (+2 for p = 2). The valuations
// of an exact solution sum to at most v_p(det A), which prunes the tree.
class LiftSearch {
 public:
  LiftSearch(const IntMatrix& a, const IntMatrix& g, const Int& p)
      : a_(a), g_(g), p_(p), n_(a.rows()), l_(g.rows()) {
    d_ = valuation(determinant(a), p);
    extra_ = p == 2 ? 2 : 0;
    jmax_ = 2 * d_ + 1 + extra_;
  }

  bool run() { return first_level(IntMatrix(n_, l_), 0); }
  const IntMatrix& witness() const { return witness_; }
  int precision() const { return precision_; }

 private:
  enum class Status { Prune, Continue, Success };

  void tick() {
    if (++nodes_ > kLiftNodeBudget)
      throw PrecisionExhausted("local representation search at p = " + to_string(p_) + " exceeded its node budget");
  }

  Status status(const IntMatrix& x, int j) const {
    // An exact solution has sum of valuations <= d; undetermined ones are >= j.
    auto vals = divisor_valuations(x * g_, p_, j);
    int t = 0, sum = 0;
    bool determined = true;
    for (int v : vals) {
      sum += v;
      t = std::max(t, v);
      determined = determined && v < j;
    }
    if (sum > d_) return Status::Prune;
    if (!determined) return Status::Continue;
    if (j >= 2 * t + 1 + extra_) return Status::Success;
    return Status::Continue;
  }

  bool visit(const IntMatrix& x, int j) {
    tick();
    Status st = status(x, j);
    if (st == Status::Prune) return false;
    if (st == Status::Success) {
      witness_ = x;
      precision_ = j;
      return true;
    }
    if (j >= jmax_) return false;
    return lift(x, j);
  }

  // Rows of X mod p, one at a time.
  bool first_level(IntMatrix y, std::size_t row) {
    if (row == n_) return visit(y, 1);
    std::vector<IntVector> eqs;
    for (std::size_t r = 0; r < row; ++r) {
      IntVector e = row_times(y.row(r), g_);
      e.push_back(a_(row, r));
      eqs.push_back(std::move(e));
    }
    auto space = solve_mod_p(std::move(eqs), l_, p_);
    if (!space) return false;
    const std::size_t dim = space->kernel.size();
    auto q = [&](std::span<const Int> v) { return bilinear(g_, v, v); };
    auto try_vector = [&](const IntVector& v) {
      IntMatrix next = y;
      next.set_row(row, v);
      return first_level(std::move(next), row + 1);
    };
    if (dim == 0) {
      if (mod(q(space->particular) - a_(row, row), p_) != 0) return false;
      return try_vector(space->particular);
    }
    // Free parameters s_0..s_{dim-2} enumerated; the last solved from the
    // quadratic condition.
    IntVector s(dim - 1, 0);
    const IntVector& b = space->kernel.back();
    for (;;) {
      IntVector base = space->particular;
      for (std::size_t k = 0; k + 1 < dim; ++k)
        for (std::size_t c = 0; c < l_; ++c) base[c] += s[k] * space->kernel[k][c];
      Int alpha = mod(q(b), p_);
      Int beta = mod(2 * bilinear(g_, base, b), p_);
      Int gamma = mod(q(base) - a_(row, row), p_);
      std::vector<Int> roots;
      if (p_ == 2) {
        for (Int r = 0; r < 2; ++r)
          if (mod(alpha * r * r + beta * r + gamma, p_) == 0) roots.push_back(r);
      } else if (alpha != 0) {
        Int disc = beta * beta - 4 * alpha * gamma;
        Int inv = inverse_mod(mod(2 * alpha, p_), p_);
        for (const Int& root : sqrt_mod(disc, p_)) roots.push_back(mod((root - beta) * inv, p_));
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
      } else if (beta != 0) {
        roots.push_back(mod(-gamma * inverse_mod(beta, p_), p_));
      } else if (gamma == 0) {
        for (Int r = 0; r < p_; ++r) roots.push_back(r);
      }
      for (const Int& r : roots) {
        tick();
        IntVector v = base;
        for (std::size_t c = 0; c < l_; ++c) v[c] = mod(v[c] + r * b[c], p_);
        if (try_vector(v)) return true;
      }
      std::size_t k = 0;
      while (k < s.size() && ++s[k] == p_) s[k++] = 0;
      if (k == s.size()) break;
    }
    return false;
  }

  // Children X + p^j Y of a node at level j >= 1; linear in Y mod p.
  bool lift(const IntMatrix& x, int j) {
    const Int pj = power(p_, j);
    IntMatrix err = congruence(x, g_);
    IntMatrix m = x * g_;
    const std::size_t vars = n_ * l_;
    std::vector<IntVector> eqs;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = i; k < n_; ++k) {
        Int e = mod((a_(i, k) - err(i, k)) / pj, p_);
        if (i == k && p_ == 2) {
          if (e != 0) return false;
          continue;
        }
        IntVector eq(vars + 1, 0);
        for (std::size_t c = 0; c < l_; ++c) {
          eq[k * l_ + c] += m(i, c);
          eq[i * l_ + c] += m(k, c);
        }
        eq[vars] = e;
        eqs.push_back(std::move(eq));
      }
    auto space = solve_mod_p(std::move(eqs), vars, p_);
    if (!space) return false;
    IntVector s(space->kernel.size(), 0);
    for (;;) {
      IntMatrix child = x;
      for (std::size_t u = 0; u < vars; ++u) {
        Int y = space->particular[u];
        for (std::size_t k = 0; k < s.size(); ++k) y += s[k] * space->kernel[k][u];
        child(u / l_, u % l_) += pj * mod(y, p_);
      }
      if (visit(child, j + 1)) return true;
      std::size_t k = 0;
      while (k < s.size() && ++s[k] == p_) s[k++] = 0;
      if (k == s.size()) break;
    }
    return false;
  }

  IntMatrix a_;
  IntMatrix g_;
  Int p_;
  std::size_t n_, l_;
  int d_ = 0, extra_ = 0, jmax_ = 0;
  std::size_t nodes_ = 0;
  IntMatrix witness_;
  int precision_ = 0;
};

void require_prime(const Int& p) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) throw InvalidArgument("not a prime: " + to_string(p));
}

bool is_perfect_square(const Int& a) { return sgn(a) >= 0 && mpz_perfect_square_p(a.get_mpz_t()) != 0; }

// Scale-0 component of an odd-p splitting: (dim, product of unit diagonal).
std::pair<std::size_t, Int> unit_component(const JordanSplitting& js) {
  for (const auto& b : js.blocks)
    if (b.scale_exponent == 0) {
      Int det = 1;
      for (std::size_t i = 0; i < b.dim(); ++i) det *= b.gram(i, i);
      return {b.dim(), det};
    }
  return {0, Int(1)};
}

std::pair<int, int> signature(const IntMatrix& g) {
  RatMatrix s = to_rational(g);
  RatMatrix t = rational_identity(g.rows());
  int pos = 0, neg = 0;
  const std::size_t n = g.rows();
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> piv;
    for (std::size_t i = 0; i < n && !piv; ++i)
      if (!done[i] && sgn(s[i][i]) != 0) piv = i;
    if (!piv) {
      for (std::size_t i = 0; i < n && !piv; ++i)
        for (std::size_t j = 0; j < n && !piv; ++j)
          if (!done[i] && !done[j] && i != j && sgn(s[i][j]) != 0) {
            add_basis_multiple(s, t, i, j, 1);
            piv = i;
          }
    }
    if (!piv) break;
    const std::size_t i = *piv;
    for (std::size_t k = 0; k < n; ++k)
      if (!done[k] && k != i && sgn(s[k][i]) != 0) add_basis_multiple(s, t, k, i, -s[k][i] / s[i][i]);
    (sgn(s[i][i]) > 0 ? pos : neg)++;
    done[i] = true;
  }
  return {pos, neg};
}

}  // namespace

std::string to_string(LocalMethod m) {
  switch (m) {
    case LocalMethod::JordanCriterion: return "jordan-criterion";
    case LocalMethod::ModularLift: return "modular-lift";
    case LocalMethod::Signature: return "signature";
    case LocalMethod::Unramified: return "unramified";
  }
  return "?";
}

JordanSplitting jordan_decompose(const GramLattice& l, const Int& p) {
  require_prime(p);
  const std::size_t n = l.rank();
  JordanSplitting js;
  js.prime = p;
  if (n == 0) {
    js.precision = valuation(Int(2), p) + 3;
    js.transform = IntMatrix(0, 0);
    return js;
  }
  js.precision = valuation(2 * volume(l), p) + 3;
  const Int pk = power(p, js.precision);
  RatMatrix s = to_rational(l.gram());
  RatMatrix t = rational_identity(n);
  auto cells = split_cells(s, t, p);
  std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.valuation < b.valuation; });
  js.transform = IntMatrix(n, n);
  std::size_t row = 0;
  for (std::size_t c = 0; c < cells.size();) {
    std::vector<std::size_t> idx;
    const int v = cells[c].valuation;
    for (; c < cells.size() && cells[c].valuation == v; ++c)
      idx.insert(idx.end(), cells[c].index.begin(), cells[c].index.end());
    JordanBlock block{v, IntMatrix(idx.size(), idx.size())};
    const Rational scale(power(p, v));
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) block.gram(a, b) = rat_residue(s[idx[a]][idx[b]] / scale, pk);
    for (std::size_t a = 0; a < idx.size(); ++a, ++row)
      for (std::size_t k = 0; k < n; ++k) js.transform(row, k) = rat_residue(t[idx[a]][k], pk);
    js.blocks.push_back(std::move(block));
  }
  return js;
}

bool unary_jordan_criterion(const Int& a, const GramLattice& l, const Int& p) {
  require_prime(p);
  if (p == 2) throw InvalidArgument("unary_jordan_criterion: p must be odd");
  if (sgn(a) == 0) return true;
  const int v = valuation(a, p);
  const Int w = a / power(p, v);
  std::map<int, std::vector<Int>> comps;
  for (const auto& b : jordan_decompose(l, p).blocks)
    for (std::size_t i = 0; i < b.dim(); ++i) comps[b.scale_exponent].push_back(b.gram(i, i));
  for (;;) {
    std::erase_if(comps, [&](const auto& kv) { return kv.first > v; });
    if (comps.empty()) return false;
    auto it = comps.begin();
    const int e0 = it->first;
    const auto units = it->second;
    Int det = 1;
    for (const auto& u : units) det *= u;
    if (units.size() >= 3 || (units.size() == 2 && legendre(-det, p) == 1)) return true;
    if (e0 == v) return units.size() >= 2 || legendre(w * units[0], p) == 1;
    // Anisotropic mod p: the component only contributes through p * x.
    comps.erase(it);
    auto& up = comps[e0 + 2];
    up.insert(up.end(), units.begin(), units.end());
  }
}

LocalVerdict local_is_represented_by_lifting(const GramLattice& n, const GramLattice& l, const Int& p) {
  require_prime(p);
  LocalVerdict out;
  out.prime = p;
  out.method = LocalMethod::ModularLift;
  if (n.rank() > l.rank()) return out;
  if (n.rank() == 0) {
    out.represented = true;
    return out;
  }
  LiftSearch search(n.gram(), l.gram(), p);
  out.represented = search.run();
  if (out.represented) {
    out.witness = search.witness();
    out.witness_precision = search.precision();
  }
  return out;
}

LocalVerdict local_is_represented(const GramLattice& n, const GramLattice& l, const Int& p) {
  require_prime(p);
  if (n.rank() > l.rank() || n.rank() == 0) {
    LocalVerdict out;
    out.prime = p;
    out.method = LocalMethod::JordanCriterion;
    out.represented = n.rank() == 0;
    return out;
  }
  if (p != 2) {
    if (n.rank() == 1) {
      LocalVerdict out;
      out.prime = p;
      out.method = LocalMethod::JordanCriterion;
      out.represented = unary_jordan_criterion(n.entry(0, 0), l, p);
      return out;
    }
    const Int det_n = volume(n);
    if (valuation(det_n, p) == 0) {
      // Need X G of full rank mod p: an isometric embedding of N mod p into
      // the nondegenerate quotient of L mod p.
      auto [r, disc] = unit_component(jordan_decompose(l, p));
      LocalVerdict out;
      out.prime = p;
      out.method = LocalMethod::JordanCriterion;
      out.represented = r > n.rank() || (r == n.rank() && legendre(det_n * disc, p) == 1);
      return out;
    }
  }
  return local_is_represented_by_lifting(n, l, p);
}

LocalVerdict real_is_represented(const GramLattice& n, const GramLattice& l) {
  auto [np, nn] = signature(n.gram());
  auto [lp, ln] = signature(l.gram());
  LocalVerdict out;
  out.method = LocalMethod::Signature;
  out.represented = np <= lp && nn <= ln;
  return out;
}

std::vector<Int> prime_divisors(const Int& m0) {
  if (sgn(m0) == 0) throw InvalidArgument("prime_divisors of zero");
  Int m = abs(m0);
  std::vector<Int> out;
  for (Int q = 2; q * q <= m; ++q) {
    if (q > 10'000'000) {
      if (mpz_probab_prime_p(m.get_mpz_t(), 30) == 0) throw CapExhausted("prime_divisors: factorization exceeds trial-division range");
      break;
    }
    if (m % q == 0) {
      out.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

std::vector<LocalVerdict> genus_verdicts(const GramLattice& n, const GramLattice& l) {
  n.require_positive_definite("genus_represents");
  l.require_positive_definite("genus_represents");
  std::vector<LocalVerdict> out;
  out.push_back(real_is_represented(n, l));
  const Int dn = volume(n), dl = volume(l);
  for (const Int& p : prime_divisors(2 * dn * dl)) out.push_back(local_is_represented(n, l, p));
  // Both unimodular at p: represented iff rank grows or the determinants
  // agree up to squares.
  LocalVerdict rest;
  rest.prime = Int(0);
  rest.method = LocalMethod::Unramified;
  rest.represented = l.rank() > n.rank() || (l.rank() == n.rank() && is_perfect_square(dn * dl));
  out.push_back(std::move(rest));
  return out;
}

bool genus_represents(const GramLattice& n, const GramLattice& l) {
  for (const auto& v : genus_verdicts(n, l))
    if (!v.represented) return false;
  return true;
}

}  // namespace quadlat
