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

#include "output.hpp"

#include "quadlat/lattice_io.hpp"

namespace quadlat::cli {
namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

bool is_flat(const Json& j) {
  if (is_scalar(j)) return true;
  if (j.is_object()) return false;
  for (const auto& x : j)
    if (x.is_object() || !is_flat(x)) return false;
  return true;
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

void render(std::ostream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_flat(v)) {
        os << pad << k << ": " << (is_scalar(v) ? scalar_text(v) : v.dump()) << '\n';
      } else {
        os << pad << k << ":\n";
        render(os, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (is_flat(v)) {
        os << pad << "- " << (is_scalar(v) ? scalar_text(v) : v.dump()) << '\n';
      } else {
        os << pad << "-\n";
        render(os, v, indent + 2);
      }
    }
  } else {
    os << pad << scalar_text(j) << '\n';
  }
}

}  // namespace

Json to_json(const Int& v) {
  if (fits_i64(v)) return to_i64(v);
  return v.get_str();
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const GramLattice& l) {
  Json out = Json::object();
  out["gram"] = to_json(l.gram());
  if (!l.label().empty()) out["label"] = l.label();
  return out;
}

Json to_json(const std::vector<Int>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

void emit(std::ostream& os, const Json& payload, OutputFormat format) {
  if (format == OutputFormat::Machine)
    os << payload.dump() << '\n';
  else
    render(os, payload, 0);
}

}  // namespace quadlat::cli
