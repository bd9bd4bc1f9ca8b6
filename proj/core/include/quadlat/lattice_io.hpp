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

#include <string>
#include <string_view>
#include <vector>

#include "quadlat/lattice.hpp"

namespace quadlat {

// Lattice text format: one JSON object {"gram": [[...], ...], "label": "..."}.
// Entries are JSON integers of any size or decimal strings; a bare array of
// rows is accepted as the Gram matrix itself. Errors are FormatError with the
// offending entry named.
GramLattice parse_lattice(std::string_view text);
GramLattice read_lattice_file(const std::string& path);
// A JSON array of equal-length integer rows (coordinate matrices).
IntMatrix parse_matrix(std::string_view text, std::string_view what = "matrix");
// A JSON array of such matrices.
std::vector<IntMatrix> parse_matrix_list(std::string_view text, std::string_view what = "matrices");

// Compact single-line forms. Integers outside the 64-bit range are written
// as decimal strings; both forms parse back to the same value.
std::string format_integer(const Int& v);
std::string format_matrix(const IntMatrix& m);
std::string format_lattice(const GramLattice& l);

}  // namespace quadlat
