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

#include "quadlat/lattice_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "quadlat/error.hpp"

namespace quadlat {
namespace {

using nlohmann::json;

struct Value {
  enum class Kind { Null, Bool, Integer, Float, String, Array, Object } kind = Kind::Null;
  Int integer;
  std::string text;
  std::vector<Value> items;
  std::vector<std::pair<std::string, Value>> members;
};

bool is_integer_literal(std::string_view s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

class TreeBuilder : public nlohmann::json_sax<json> {
 public:
  bool null() override { return put(Value{}); }
  bool boolean(bool) override { return put(Value{Value::Kind::Bool, {}, {}, {}, {}}); }
  bool number_integer(number_integer_t v) override {
    Value x;
    x.kind = Value::Kind::Integer;
    x.integer = Int(std::to_string(v));
    return put(std::move(x));
  }
  bool number_unsigned(number_unsigned_t v) override {
    Value x;
    x.kind = Value::Kind::Integer;
    x.integer = Int(std::to_string(v));
    return put(std::move(x));
  }
  bool number_float(number_float_t, const string_t& s) override {
    Value x;
    // Integers beyond 64 bits arrive here with their exact source text.
    if (is_integer_literal(s)) {
      x.kind = Value::Kind::Integer;
      x.integer = Int(s[0] == '+' ? s.substr(1) : s);
    } else {
      x.kind = Value::Kind::Float;
      x.text = s;
    }
    return put(std::move(x));
  }
  bool string(string_t& s) override {
    Value x;
    x.kind = Value::Kind::String;
    x.text = s;
    return put(std::move(x));
  }
  bool binary(binary_t&) override { return put(Value{}); }
  bool start_object(std::size_t) override {
    stack_.push_back(Value{Value::Kind::Object, {}, {}, {}, {}});
    return true;
  }
  bool key(string_t& k) override {
    keys_.push_back(k);
    return true;
  }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override {
    stack_.push_back(Value{Value::Kind::Array, {}, {}, {}, {}});
    return true;
  }
  bool end_array() override { return close(); }
  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) override {
    throw FormatError("invalid JSON at byte " + std::to_string(position) + ": " + ex.what());
  }

  Value take() { return std::move(root_); }

 private:
  bool put(Value v) {
    if (stack_.empty()) {
      root_ = std::move(v);
    } else if (stack_.back().kind == Value::Kind::Array) {
      stack_.back().items.push_back(std::move(v));
    } else {
      stack_.back().members.emplace_back(std::move(keys_.back()), std::move(v));
      keys_.pop_back();
    }
    return true;
  }
  bool close() {
    Value v = std::move(stack_.back());
    stack_.pop_back();
    return put(std::move(v));
  }

  std::vector<Value> stack_;
  std::vector<std::string> keys_;
  Value root_;
};

Value parse_tree(std::string_view text) {
  TreeBuilder b;
  json::sax_parse(text.begin(), text.end(), &b);
  return b.take();
}

std::string kind_name(Value::Kind k) {
  switch (k) {
    case Value::Kind::Null: return "null";
    case Value::Kind::Bool: return "a boolean";
    case Value::Kind::Integer: return "an integer";
    case Value::Kind::Float: return "a non-integer number";
    case Value::Kind::String: return "a string";
    case Value::Kind::Array: return "an array";
    case Value::Kind::Object: return "an object";
  }
  return "unknown";
}

Int to_integer(const Value& v, const std::string& where) {
  if (v.kind == Value::Kind::Integer) return v.integer;
  if (v.kind == Value::Kind::String && is_integer_literal(v.text))
    return Int(v.text[0] == '+' ? v.text.substr(1) : v.text);
  std::string got = kind_name(v.kind);
  if (v.kind == Value::Kind::Float || v.kind == Value::Kind::String) got += " (" + v.text + ")";
  throw FormatError(where + " must be an integer, got " + got);
}

IntMatrix to_matrix(const Value& v, std::string_view what) {
  const std::string name(what);
  if (v.kind != Value::Kind::Array) throw FormatError(name + " must be an array of rows, got " + kind_name(v.kind));
  const std::size_t rows = v.items.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    const Value& r = v.items[i];
    if (r.kind != Value::Kind::Array)
      throw FormatError(name + " row " + std::to_string(i) + " must be an array, got " + kind_name(r.kind));
    if (i == 0) cols = r.items.size();
    if (r.items.size() != cols)
      throw FormatError(name + " row " + std::to_string(i) + " has " + std::to_string(r.items.size()) +
                        " entries, expected " + std::to_string(cols));
  }
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = to_integer(v.items[i].items[j],
                           name + " entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
  return m;
}

}  // namespace

IntMatrix parse_matrix(std::string_view text, std::string_view what) { return to_matrix(parse_tree(text), what); }

std::vector<IntMatrix> parse_matrix_list(std::string_view text, std::string_view what) {
  Value root = parse_tree(text);
  const std::string name(what);
  if (root.kind != Value::Kind::Array) throw FormatError(name + " must be an array of matrices, got " + kind_name(root.kind));
  std::vector<IntMatrix> out;
  for (std::size_t i = 0; i < root.items.size(); ++i)
    out.push_back(to_matrix(root.items[i], name + "[" + std::to_string(i) + "]"));
  return out;
}

GramLattice parse_lattice(std::string_view text) {
  Value root = parse_tree(text);
  const Value* gram = nullptr;
  std::string label;
  if (root.kind == Value::Kind::Array) {
    gram = &root;
  } else if (root.kind == Value::Kind::Object) {
    for (const auto& [k, v] : root.members) {
      if (k == "gram") {
        gram = &v;
      } else if (k == "label") {
        if (v.kind != Value::Kind::String) throw FormatError("label must be a string, got " + kind_name(v.kind));
        label = v.text;
      }
    }
    if (!gram) throw FormatError("lattice object has no \"gram\" field");
  } else {
    throw FormatError("lattice must be an object with a \"gram\" field, got " + kind_name(root.kind));
  }
  IntMatrix g = to_matrix(*gram, "gram");
  if (g.rows() != g.cols() && !(g.rows() == 1 && g.cols() == 0))
    throw FormatError("gram is " + std::to_string(g.rows()) + "x" + std::to_string(g.cols()) + ", not square");
  if (g.cols() == 0) g = IntMatrix();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = i + 1; j < g.cols(); ++j)
      if (g(i, j) != g(j, i))
        throw FormatError("gram is not symmetric: entry (" + std::to_string(i) + "," + std::to_string(j) +
                          ") = " + g(i, j).get_str() + " but entry (" + std::to_string(j) + "," + std::to_string(i) +
                          ") = " + g(j, i).get_str());
  return GramLattice(std::move(g), std::move(label));
}

GramLattice read_lattice_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open lattice file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_lattice(ss.str());
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::string format_integer(const Int& v) { return fits_i64(v) ? v.get_str() : "\"" + v.get_str() + "\""; }

std::string format_matrix(const IntMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += ',';
    out += '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_integer(m(i, j));
    }
    out += ']';
  }
  return out + "]";
}

std::string format_lattice(const GramLattice& l) {
  std::string out = "{\"gram\":" + format_matrix(l.gram());
  if (!l.label().empty()) out += ",\"label\":" + json(l.label()).dump();
  return out + "}";
}

}  // namespace quadlat
