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

#include "quadlat/lll.hpp"

#include <vector>

#include "quadlat/error.hpp"

namespace quadlat {
namespace {

// Integral LLL (Cohen, Alg. 2.6.7) on a Gram matrix. d_[i] is the Gram
// determinant of the first i vectors, lambda_[k][j] the integral
// Gram-Schmidt coefficients. Inner products of the current basis are read
// off the original Gram matrix through the transform.
class IntegralLll {
 public:
  IntegralLll(const IntMatrix& gram, long num, long den)
      : g_(gram), n_(gram.rows()), h_(IntMatrix::identity(gram.rows())), d_(n_ + 1),
        lambda_(n_, std::vector<Int>(n_)), num_(num), den_(den) {}

  IntMatrix run() {
    if (n_ <= 1) return h_;
    d_[0] = 1;
    d_[1] = g_(0, 0);
    if (sgn(d_[1]) <= 0) throw InvalidArgument("LLL: Gram matrix is not positive definite");
    std::size_t k = 1;
    std::size_t kmax = 0;
    while (k < n_) {
      if (k > kmax) {
        kmax = k;
        IntVector gk = row_times(h_.row(k), g_);
        for (std::size_t j = 0; j <= k; ++j) {
          Int u = dot(gk, h_.row(j));
          for (std::size_t i = 0; i < j; ++i) {
            u = d_[i + 1] * u - lambda_[k][i] * lambda_[j][i];
            mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d_[i].get_mpz_t());
          }
          if (j < k) {
            lambda_[k][j] = u;
          } else {
            if (sgn(u) <= 0) throw InvalidArgument("LLL: Gram matrix is not positive definite");
            d_[k + 1] = u;
          }
        }
      }
      reduce(k, k - 1);
      const Int& lam = lambda_[k][k - 1];
      if (den_ * d_[k + 1] * d_[k - 1] < num_ * d_[k] * d_[k] - den_ * lam * lam) {
        swap(k, kmax);
        if (k > 1) --k;
      } else {
        for (std::size_t l = k - 1; l-- > 0;) reduce(k, l);
        ++k;
      }
    }
    return h_;
  }

 private:
  void reduce(std::size_t k, std::size_t l) {
    if (abs(2 * lambda_[k][l]) <= d_[l + 1]) return;
    Int q = round_div(lambda_[k][l], d_[l + 1]);
    h_.add_row_multiple(k, l, -q);
    lambda_[k][l] -= q * d_[l + 1];
    for (std::size_t i = 0; i < l; ++i) lambda_[k][i] -= q * lambda_[l][i];
  }

  void swap(std::size_t k, std::size_t kmax) {
    h_.swap_rows(k, k - 1);
    for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lambda_[k][j], lambda_[k - 1][j]);
    const Int lam = lambda_[k][k - 1];
    Int b = d_[k - 1] * d_[k + 1] + lam * lam;
    mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), d_[k].get_mpz_t());
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      Int t = lambda_[i][k];
      Int nk = d_[k + 1] * lambda_[i][k - 1] - lam * t;
      mpz_divexact(nk.get_mpz_t(), nk.get_mpz_t(), d_[k].get_mpz_t());
      Int nk1 = b * t + lam * nk;
      mpz_divexact(nk1.get_mpz_t(), nk1.get_mpz_t(), d_[k + 1].get_mpz_t());
      lambda_[i][k] = nk;
      lambda_[i][k - 1] = nk1;
    }
    d_[k] = b;
  }

  const IntMatrix& g_;
  std::size_t n_;
  IntMatrix h_;
  std::vector<Int> d_;
  std::vector<std::vector<Int>> lambda_;
  long num_;
  long den_;
};

}  // namespace

LllResult lll_reduce_gram(const IntMatrix& gram, long delta_num, long delta_den) {
  if (!gram.is_symmetric()) throw InvalidArgument("LLL: Gram matrix is not symmetric");
  IntMatrix h = IntegralLll(gram, delta_num, delta_den).run();
  return {congruence(h, gram), std::move(h)};
}

}  // namespace quadlat
