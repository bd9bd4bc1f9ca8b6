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

#include <doctest.h>

#include "quadlat/error.hpp"
#include "quadlat/lattice_io.hpp"

using namespace quadlat;

TEST_CASE("lattice text round trip") {
  const char* text = R"({ "gram": [[2, 1], [1, 2]], "label": "A2" })";
  GramLattice l = parse_lattice(text);
  CHECK(l.gram() == IntMatrix{{2, 1}, {1, 2}});
  CHECK(l.label() == "A2");
  CHECK(format_lattice(l) == R"({"gram":[[2,1],[1,2]],"label":"A2"})");
  CHECK(parse_lattice(format_lattice(l)) == l);
  CHECK(parse_lattice("[[3]]").gram() == IntMatrix{{3}});
  CHECK(parse_lattice("[]").rank() == 0);
}

TEST_CASE("integers beyond 64 bits stay exact") {
  GramLattice l = parse_lattice(R"({"gram": [[1, 0], [0, 340282366920938463463374607431768211457]]})");
  CHECK(l.entry(1, 1).get_str() == "340282366920938463463374607431768211457");
  std::string out = format_lattice(l);
  CHECK(out == R"({"gram":[[1,0],[0,"340282366920938463463374607431768211457"]]})");
  CHECK(parse_lattice(out) == l);
  CHECK(format_integer(Int("-9223372036854775808")) == "-9223372036854775808");
  CHECK(format_integer(Int("-9223372036854775809")) == "\"-9223372036854775809\"");
}

TEST_CASE("diagnostics name the offending entry") {
  auto message = [](const char* text) {
    try {
      parse_lattice(text);
    } catch (const FormatError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(R"({"gram": [[2, 1], [3, 2]]})").find("entry (0,1)") != std::string::npos);
  CHECK(message(R"({"gram": [[2, 1.5], [1.5, 2]]})").find("entry (0,1)") != std::string::npos);
  CHECK(message(R"({"gram": [[2, 1], [1]]})").find("row 1") != std::string::npos);
  CHECK(message(R"({"grm": [[1]]})").find("gram") != std::string::npos);
  CHECK(message("{\"gram\": [[1,").find("invalid JSON") != std::string::npos);
  CHECK(message(R"({"gram": [[1, 2, 3]]})").find("not square") != std::string::npos);
}

TEST_CASE("coordinate matrices") {
  CHECK(parse_matrix("[[1,0,0],[0,1,0]]") == IntMatrix{{1, 0, 0}, {0, 1, 0}});
  auto list = parse_matrix_list("[[[1,0]],[[0,1]]]");
  REQUIRE(list.size() == 2);
  CHECK(list[1] == IntMatrix{{0, 1}});
  CHECK_THROWS_AS(parse_matrix_list("[[1,0]]"), FormatError);
}
