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

#include "quadlat/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "quadlat/error.hpp"
#include "quadlat/lll.hpp"

namespace quadlat {
namespace {

using i128 = __int128;

i128 to_i128(const Int& v) {
  // |v| < 2^126 is guaranteed by the caller's magnitude check.
  Int a = abs(v);
  Int hi = a >> 64;
  Int lo = a - (hi << 64);
  unsigned long long h = mpz_get_ui(hi.get_mpz_t());
  unsigned long long l = mpz_get_ui(lo.get_mpz_t());
  if (sizeof(unsigned long) < 8) throw Error("unsupported platform");
  i128 r = (static_cast<i128>(h) << 64) | static_cast<i128>(l);
  return sgn(v) < 0 ? -r : r;
}

struct I128Arith {
  using T = i128;
  static T from(const Int& v) { return to_i128(v); }
  static T isqrt(T v) {
    T r = static_cast<T>(std::sqrt(static_cast<long double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
  }
  static T floor_div(T a, T b) {
    T q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }
  static T ceil_div(T a, T b) { return -floor_div(-a, b); }
  static T exact_div(T a, T b) { return a / b; }
  static bool negative(T v) { return v < 0; }
  static std::int64_t to_i64(T v) {
    if (v > INT64_MAX || v < INT64_MIN) throw CapExhausted("enumeration coordinate exceeds the 64-bit range");
    return static_cast<std::int64_t>(v);
  }
  static T of(std::int64_t v) { return v; }
};

struct MpzArith {
  using T = Int;
  static T from(const Int& v) { return v; }
  static T isqrt(const T& v) { return quadlat::isqrt(v); }
  static T floor_div(const T& a, const T& b) { return quadlat::floor_div(a, b); }
  static T ceil_div(const T& a, const T& b) { return quadlat::ceil_div(a, b); }
  static T exact_div(const T& a, const T& b) {
    T q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
  static bool negative(const T& v) { return sgn(v) < 0; }
  static std::int64_t to_i64(const T& v) { return quadlat::to_i64(v); }
  static T of(std::int64_t v) { return Int(static_cast<long>(v)); }
};

// Levels run from the last coordinate down to the first. At level i the
// coordinates x_{i+1..n-1} are fixed and
//   f_i(x_i) = D[i+1] x_i^2 + 2 b_i x_i + c_i
// equals D[i] times the minimum of Q over real x_0..x_{i-1}. D[i] is the
// i-th leading principal minor and b_i uses the bordered minors T[i][j], so
// every quantity is an integer. f_0 is Q itself.
template <class A>
class ExactEnumerator {
  using T = typename A::T;

 public:
  ExactEnumerator(const IntMatrix& gram, const Int& bound) : n_(gram.rows()), d_(n_ + 1), t_(n_, std::vector<T>(n_)) {
    // Bareiss elimination; row i is recorded after i elimination steps.
    IntMatrix a = gram;
    Int prev = 1;
    d_[0] = A::of(1);
    for (std::size_t k = 0; k < n_; ++k) {
      for (std::size_t j = k; j < n_; ++j) t_[k][j] = A::from(a(k, j));
      d_[k + 1] = A::from(a(k, k));
      for (std::size_t i = k + 1; i < n_; ++i)
        for (std::size_t j = k + 1; j < n_; ++j) {
          Int v = a(k, k) * a(i, j) - a(i, k) * a(k, j);
          mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
          a(i, j) = std::move(v);
        }
      prev = a(k, k);
    }
    bound_ = A::from(bound);
    x_.assign(n_, 0);
    v_.assign(n_ + 1, A::of(0));
  }

  template <class Emit>
  bool run(Emit&& emit) {
    if (n_ == 0) return true;
    return level(n_ - 1, true, emit);
  }

 private:
  template <class Emit>
  bool level(std::size_t i, bool tail_zero, Emit& emit) {
    T b = A::of(0);
    for (std::size_t j = i + 1; j < n_; ++j)
      if (x_[j] != 0) b += t_[i][j] * A::of(x_[j]);
    T c = A::exact_div(d_[i] * v_[i + 1] + b * b, d_[i + 1]);
    T rhs = d_[i] * bound_;
    T disc = b * b - d_[i + 1] * (c - rhs);
    if (A::negative(disc)) return true;
    T s = A::isqrt(disc);
    std::int64_t lo = A::to_i64(A::ceil_div(-b - s, d_[i + 1]));
    std::int64_t hi = A::to_i64(A::floor_div(-b + s, d_[i + 1]));
    if (tail_zero) lo = std::max<std::int64_t>(lo, 0);
    for (std::int64_t xi = lo; xi <= hi; ++xi) {
      T tx = A::of(xi);
      x_[i] = xi;
      v_[i] = d_[i + 1] * tx * tx + 2 * b * tx + c;
      const bool zero_here = tail_zero && xi == 0;
      if (i == 0) {
        if (zero_here) continue;
        if (!emit(x_, v_[0])) return false;
      } else if (!level(i - 1, zero_here, emit)) {
        return false;
      }
    }
    x_[i] = 0;
    return true;
  }

  std::size_t n_;
  std::vector<T> d_;
  std::vector<std::vector<T>> t_;
  T bound_;
  std::vector<std::int64_t> x_;
  std::vector<T> v_;
};

std::size_t bits(const Int& v) { return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2); }

template <class A>
bool run_with(const IntMatrix& reduced, const Int& bound, const std::vector<std::vector<i128>>& back,
              const ShortVectorVisitor& visit) {
  ExactEnumerator<A> en(reduced, bound);
  const std::size_t n = reduced.rows();
  std::vector<std::int64_t> out(n);
  return en.run([&](const std::vector<std::int64_t>& y, const typename A::T& value) {
    for (std::size_t j = 0; j < n; ++j) {
      i128 s = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (y[i] != 0) s += static_cast<i128>(y[i]) * back[i][j];
      out[j] = I128Arith::to_i64(s);
    }
    return visit(out, A::to_i64(value));
  });
}

void sort_and_normalize(std::vector<IntVector>& vs, std::vector<Int>& norms) {
  std::vector<std::size_t> order(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    order[i] = i;
    auto it = std::find_if(vs[i].begin(), vs[i].end(), [](const Int& v) { return sgn(v) != 0; });
    if (it != vs[i].end() && sgn(*it) < 0)
      for (auto& v : vs[i]) v = -v;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (int c = cmp(norms[a], norms[b]); c != 0) return c < 0;
    return vs[a] < vs[b];
  });
  std::vector<IntVector> sv;
  std::vector<Int> sn;
  sv.reserve(vs.size());
  sn.reserve(vs.size());
  for (auto i : order) {
    sv.push_back(std::move(vs[i]));
    sn.push_back(std::move(norms[i]));
  }
  vs = std::move(sv);
  norms = std::move(sn);
}

VectorList collect(const GramLattice& l, const Int& bound, bool exact) {
  VectorList out{l, {}, {}, bound, exact};
  enumerate_short_vectors(l.gram(), bound, [&](std::span<const std::int64_t> x, std::int64_t q) {
    if (exact && q != bound) return true;
    IntVector v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = static_cast<long>(x[i]);
    out.vectors.push_back(std::move(v));
    out.norms.emplace_back(static_cast<long>(q));
    return true;
  });
  sort_and_normalize(out.vectors, out.norms);
  return out;
}

}  // namespace

std::vector<IntVector> VectorList::with_signs() const {
  std::vector<IntVector> out;
  out.reserve(2 * vectors.size());
  for (const auto& v : vectors) {
    out.push_back(v);
    IntVector neg(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
    out.push_back(std::move(neg));
  }
  return out;
}

bool enumerate_short_vectors(const IntMatrix& gram, const Int& bound, const ShortVectorVisitor& visit) {
  if (sgn(bound) < 0) throw InvalidArgument("enumeration bound must be nonnegative");
  to_i64(bound);
  const std::size_t n = gram.rows();
  if (n == 0 || sgn(bound) == 0) return true;
  LllResult red = lll_reduce_gram(gram);
  std::vector<std::vector<i128>> back(n, std::vector<i128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) back[i][j] = I128Arith::of(to_i64(red.transform(i, j)));
  Int hadamard = 1;
  for (std::size_t i = 0; i < n; ++i) hadamard *= red.gram(i, i);
  const std::size_t need = 3 * bits(hadamard) + bits(bound) + 2 * bits(Int(static_cast<long>(n))) + 6;
  if (need < 120) return run_with<I128Arith>(red.gram, bound, back, visit);
  return run_with<MpzArith>(red.gram, bound, back, visit);
}

VectorList vectors_up_to(const GramLattice& l, const Int& c) { return collect(l, c, false); }

VectorList vectors_with_value(const GramLattice& l, const Int& m) {
  if (sgn(m) <= 0) return VectorList{l, {}, {}, m, true};
  return collect(l, m, true);
}

Int minimum(const GramLattice& l) {
  if (l.rank() == 0) throw InvalidArgument("minimum of the rank-0 lattice");
  LllResult red = lll_reduce_gram(l.gram());
  Int best = red.gram(0, 0);
  for (std::size_t i = 1; i < l.rank(); ++i) best = std::min(best, Int(red.gram(i, i)));
  enumerate_short_vectors(red.gram, best, [&](std::span<const std::int64_t>, std::int64_t q) {
    if (Int(static_cast<long>(q)) < best) best = static_cast<long>(q);
    return true;
  });
  return best;
}

VectorList shortest_vectors(const GramLattice& l) { return vectors_with_value(l, minimum(l)); }

std::vector<bool> represented_values(const GramLattice& l, std::int64_t cap) {
  std::vector<bool> seen(static_cast<std::size_t>(cap) + 1, false);
  seen[0] = true;
  enumerate_short_vectors(l.gram(), Int(static_cast<long>(cap)), [&](std::span<const std::int64_t>, std::int64_t q) {
    seen[static_cast<std::size_t>(q)] = true;
    return true;
  });
  return seen;
}

std::optional<IntVector> find_vector_with_value(const GramLattice& l, const Int& m) {
  if (sgn(m) == 0) return IntVector(l.rank());
  if (sgn(m) < 0 || l.rank() == 0) return std::nullopt;
  std::optional<IntVector> found;
  enumerate_short_vectors(l.gram(), m, [&](std::span<const std::int64_t> x, std::int64_t q) {
    if (Int(static_cast<long>(q)) != m) return true;
    IntVector v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = static_cast<long>(x[i]);
    found = std::move(v);
    return false;
  });
  return found;
}

}  // namespace quadlat
