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

#include <ostream>
#include <string>

#include <json.hpp>

#include "quadlat/lattice.hpp"

namespace quadlat::cli {

using Json = nlohmann::ordered_json;

enum class OutputFormat { Human, Machine };

Json to_json(const Int& v);
Json to_json(const IntMatrix& m);
Json to_json(const GramLattice& l);
Json to_json(const std::vector<Int>& v);

// Machine: one compact JSON document per line. Human: indented key: value text.
void emit(std::ostream& os, const Json& payload, OutputFormat format);

}  // namespace quadlat::cli
