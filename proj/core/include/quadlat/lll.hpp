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

#include "quadlat/integer.hpp"

namespace quadlat {

struct LllResult {
  IntMatrix gram;       // transform * input * transform^T
  IntMatrix transform;  // unimodular, rows = new basis in input coordinates
};

// Integral LLL on a positive definite Gram matrix with delta = num/den,
// exact arithmetic throughout.
LllResult lll_reduce_gram(const IntMatrix& gram, long delta_num = 99, long delta_den = 100);

}  // namespace quadlat
