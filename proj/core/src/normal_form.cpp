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

#include "quadlat/normal_form.hpp"

#include <algorithm>

#include "quadlat/error.hpp"

namespace quadlat {
namespace {

// s*a + t*b == g with g = gcd(a, b) >= 0.
void extended_gcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

// Rows r and i of both matrices replaced by a unimodular combination that
// leaves gcd(h(r,j), h(i,j)) in row r and zero in row i.
void combine_rows(IntMatrix& h, IntMatrix& u, std::size_t r, std::size_t i, std::size_t j) {
  const Int a = h(r, j);
  const Int b = h(i, j);
  Int g, s, t;
  extended_gcd(a, b, g, s, t);
  const Int ag = a / g;
  const Int bg = b / g;
  auto mix = [&](IntMatrix& m) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Int x = m(r, c);
      Int y = m(i, c);
      m(r, c) = s * x + t * y;
      m(i, c) = -bg * x + ag * y;
    }
  };
  mix(h);
  mix(u);
}

}  // namespace

HermiteResult hermite_normal_form(const IntMatrix& m) {
  HermiteResult res{m, IntMatrix::identity(m.rows()), 0};
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;
  std::size_t r = 0;
  for (std::size_t j = 0; j < h.cols() && r < h.rows(); ++j) {
    for (std::size_t i = r + 1; i < h.rows(); ++i)
      if (sgn(h(i, j)) != 0) combine_rows(h, u, r, i, j);
    if (sgn(h(r, j)) == 0) continue;
    if (sgn(h(r, j)) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(h(i, j), h(r, j));
      if (sgn(q) != 0) {
        h.add_row_multiple(i, r, -q);
        u.add_row_multiple(i, r, -q);
      }
    }
    ++r;
  }
  res.rank = r;
  return res;
}

IntMatrix hnf_basis(const IntMatrix& m) {
  auto res = hermite_normal_form(m);
  return res.h.submatrix(0, 0, res.rank, m.cols());
}

std::size_t matrix_rank(const IntMatrix& m) { return hermite_normal_form(m).rank; }

std::vector<Int> elementary_divisors(const IntMatrix& m) {
  IntMatrix a = hnf_basis(m);
  // Alternate row and column echelon forms until diagonal.
  for (;;) {
    bool diagonal = true;
    for (std::size_t i = 0; i < a.rows() && diagonal; ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (i != j && sgn(a(i, j)) != 0) {
          diagonal = false;
          break;
        }
    if (diagonal) break;
    a = hnf_basis(a.transpose());
  }
  std::vector<Int> d;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
    if (sgn(a(i, i)) != 0) d.push_back(abs(a(i, i)));
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      Int g = gcd(d[i], d[j]);
      Int l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  return d;
}

bool has_unit_divisors(const IntMatrix& m) {
  auto d = elementary_divisors(m);
  if (d.size() != m.rows()) return false;
  return std::all_of(d.begin(), d.end(), [](const Int& v) { return v == 1; });
}

IntMatrix left_kernel(const IntMatrix& m) {
  auto res = hermite_normal_form(m);
  IntMatrix k = res.u.submatrix(res.rank, 0, m.rows() - res.rank, m.rows());
  return hnf_basis(k);
}

IntMatrix saturate_rows(const IntMatrix& m) {
  if (m.rows() == 0) return IntMatrix(0, m.cols());
  // Standard-dot-product orthogonal of the orthogonal.
  IntMatrix perp = left_kernel(m.transpose());
  if (perp.rows() == 0) return IntMatrix::identity(m.cols());
  return left_kernel(perp.transpose());
}

std::optional<IntVector> solve_in_span(const IntMatrix& basis, std::span<const Int> x) {
  auto res = hermite_normal_form(basis);
  const IntMatrix& h = res.h;
  if (x.size() != basis.cols()) throw InvalidArgument("solve_in_span: length mismatch");
  IntVector z(res.rank);
  std::size_t col = 0;
  for (std::size_t i = 0; i < res.rank; ++i) {
    while (sgn(h(i, col)) == 0) ++col;
    Int rhs = x[col];
    for (std::size_t l = 0; l < i; ++l) rhs -= z[l] * h(l, col);
    if (!mpz_divisible_p(rhs.get_mpz_t(), h(i, col).get_mpz_t())) return std::nullopt;
    z[i] = rhs / h(i, col);
  }
  IntVector check(basis.cols());
  for (std::size_t i = 0; i < res.rank; ++i)
    for (std::size_t c = 0; c < basis.cols(); ++c) check[c] += z[i] * h(i, c);
  for (std::size_t c = 0; c < basis.cols(); ++c)
    if (check[c] != x[c]) return std::nullopt;
  IntVector zu(res.u.rows());
  std::copy(z.begin(), z.end(), zu.begin());
  return row_times(zu, res.u);
}

std::optional<IntMatrix> express_in_basis(const IntMatrix& basis, const IntMatrix& m) {
  IntMatrix y(m.rows(), basis.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto sol = solve_in_span(basis, m.row(i));
    if (!sol) return std::nullopt;
    y.set_row(i, *sol);
  }
  return y;
}

IntMatrix complete_to_unimodular(const IntMatrix& rows) {
  const std::size_t n = rows.cols();
  auto res = hermite_normal_form(rows.transpose());
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < rows.rows(); ++j)
      if (res.h(i, j) != (i == j ? 1 : 0)) throw InvalidArgument("rows are not primitive");
  IntMatrix w = inverse_unimodular(res.u).transpose();
  // First rows of w equal `rows` exactly.
  for (std::size_t i = 0; i < rows.rows(); ++i) w.set_row(i, rows.row(i));
  (void)n;
  return w;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  auto res = hermite_normal_form(m);
  if (res.h != IntMatrix::identity(m.rows())) throw InvalidArgument("matrix is not unimodular");
  return res.u;
}

IntMatrix adjugate(const IntMatrix& m) {
  const std::size_t n = m.rows();
  IntMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      Int d = determinant(minor);
      adj(i, j) = ((i + j) % 2 == 0) ? d : Int(-d);
    }
  return adj;
}

}  // namespace quadlat
