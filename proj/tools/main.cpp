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

#include <algorithm>
#include <cctype>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "output.hpp"
#include "quadlat/enumerate.hpp"
#include "quadlat/error.hpp"
#include "quadlat/escalation.hpp"
#include "quadlat/flags.hpp"
#include "quadlat/lattice_io.hpp"
#include "quadlat/local_rep.hpp"
#include "quadlat/normal_form.hpp"
#include "quadlat/reduce.hpp"
#include "quadlat/representation.hpp"

namespace quadlat::cli {
namespace {

bool looks_inline(const std::string& arg) {
  auto it = std::find_if(arg.begin(), arg.end(), [](unsigned char c) { return !std::isspace(c); });
  return it != arg.end() && (*it == '{' || *it == '[');
}

// Inline JSON or a path to a lattice file.
GramLattice load_lattice(const std::string& arg, const std::string& flag) {
  try {
    return looks_inline(arg) ? parse_lattice(arg) : read_lattice_file(arg);
  } catch (const FormatError& e) {
    throw FormatError(flag + ": " + e.what());
  }
}

IntMatrix load_matrix(const std::string& arg, const std::string& flag) {
  try {
    return parse_matrix(arg, flag);
  } catch (const FormatError& e) {
    throw FormatError(flag + ": " + e.what());
  }
}

Int parse_int(const std::string& s, const std::string& flag) {
  Int v;
  if (s.empty() || v.set_str(s, 10) != 0) throw FormatError(flag + ": not an integer: " + s);
  return v;
}

// A decimal integer m means <m>; anything else is a lattice.
GramLattice load_target(const std::string& arg) {
  bool integer = !arg.empty() && std::all_of(arg.begin() + (arg[0] == '-' ? 1 : 0), arg.end(),
                                             [](unsigned char c) { return std::isdigit(c) != 0; });
  if (!integer) return load_lattice(arg, "--target");
  IntMatrix m(1, 1);
  m(0, 0) = parse_int(arg, "--target");
  return GramLattice(std::move(m));
}

SublatticeBasis to_sublattice(const GramLattice& l, IntMatrix c, const std::string& flag) {
  if (c.rows() > 0 && c.cols() != l.rank())
    throw FormatError(flag + ": coordinate rows have " + std::to_string(c.cols()) + " entries, lattice rank is " +
                      std::to_string(l.rank()));
  if (c.rows() == 0) c = IntMatrix(0, l.rank());
  if (matrix_rank(c) != c.rows()) throw InvalidArgument(flag + ": coordinate rows are linearly dependent");
  return SublatticeBasis(l, std::move(c));
}

SublatticeBasis load_sublattice(const GramLattice& l, const std::string& arg, const std::string& flag) {
  return to_sublattice(l, load_matrix(arg, flag), flag);
}

Json vectors_json(const VectorList& vl) {
  Json out = Json::array();
  for (std::size_t i = 0; i < vl.size(); ++i)
    out.push_back(Json{{"vector", to_json(vl.vectors[i])}, {"norm", to_json(vl.norms[i])}});
  return out;
}

Json sublattice_json(const SublatticeBasis& s) {
  return Json{{"coords", to_json(s.coords())}, {"gram", to_json(induced_gram(s).gram())}};
}

Json verdict_json(const LocalVerdict& v) {
  Json out = Json::object();
  if (!v.prime)
    out["place"] = "real";
  else if (sgn(*v.prime) == 0)
    out["place"] = "unramified";
  else
    out["place"] = to_json(*v.prime);
  out["represented"] = v.represented;
  out["method"] = to_string(v.method);
  if (v.witness) {
    out["witness"] = to_json(*v.witness);
    out["witness_precision"] = v.witness_precision;
  }
  return out;
}

struct StreamOptions {
  std::string kind = "unary";
  std::string cap = "1000";
  std::size_t rank = 2;
  std::string of;
  std::size_t levels = 10;
};

void add_stream_options(CLI::App* cmd, StreamOptions& o, bool with_levels) {
  cmd->add_option("--stream", o.kind, "Target stream: unary, classes or sublattices")
      ->check(CLI::IsMember({"unary", "classes", "sublattices"}));
  cmd->add_option("--cap", o.cap, "Stream cap: largest integer, det or index");
  cmd->add_option("--rank", o.rank, "Rank of the classes stream");
  cmd->add_option("--of", o.of, "Lattice whose sublattices form the stream");
  if (with_levels) cmd->add_option("--levels", o.levels, "Level cap of the escalation tree");
}

TargetStream make_stream(const StreamOptions& o) {
  Int cap = parse_int(o.cap, "--cap");
  if (sgn(cap) <= 0) throw InvalidArgument("--cap: must be positive");
  if (o.kind == "unary") {
    if (!fits_i64(cap)) throw InvalidArgument("--cap: too large for the unary stream");
    return TargetStream::unary(to_i64(cap));
  }
  if (o.kind == "classes") return TargetStream::fixed_rank_classes(o.rank, cap);
  if (o.of.empty()) throw InvalidArgument("--of: required for the sublattices stream");
  return TargetStream::sublattices_of(load_lattice(o.of, "--of"), cap);
}

Json target_json(const TargetStream& s, std::size_t index) {
  if (s.kind() == StreamKind::Unary) return s.unary_value(index);
  return to_json(s[index].gram());
}

Json stream_json(const TargetStream& s) {
  return Json{{"kind", to_string(s.kind())}, {"cap", to_json(s.cap())}, {"size", s.size()}};
}

Json tree_json(const EscalationTree& tree) {
  Json levels = Json::array();
  std::map<std::size_t, std::size_t> leaf_ranks;
  Json nodes = Json::array();
  for (const auto& level : tree.levels) {
    std::map<std::string, std::size_t> counts;
    for (const auto& n : level) {
      ++counts[to_string(n.status)];
      if (n.status == NodeStatus::NumericallyUniversal) ++leaf_ranks[n.lattice.rank()];
      Json node{{"id", n.id}, {"gram", to_json(n.lattice.gram())}};
      node["truant"] = n.truant ? target_json(tree.stream, *n.truant) : Json(nullptr);
      node["level"] = n.level;
      node["parent"] = n.parent ? Json(*n.parent) : Json(nullptr);
      node["tier"] = n.tier ? Json(to_string(*n.tier)) : Json(nullptr);
      node["status"] = to_string(n.status);
      nodes.push_back(std::move(node));
    }
    Json summary{{"level", level.empty() ? 0 : level.front().level}, {"nodes", level.size()}};
    for (const auto& [k, v] : counts) summary[k] = v;
    levels.push_back(std::move(summary));
  }
  Json ranks = Json::object();
  for (const auto& [r, c] : leaf_ranks) ranks[std::to_string(r)] = c;
  return Json{{"stream", stream_json(tree.stream)},
              {"level_cap", tree.level_cap},
              {"complete", tree.complete()},
              {"levels", levels},
              {"leaf_ranks", ranks},
              {"nodes", nodes}};
}

int run(int argc, char** argv) {
  CLI::App app{"Exact toolkit for positive definite integral quadratic lattices"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "human";
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  Json payload;
  std::function<void()> action;
  std::string a, b;
  auto lattice_cmd = [&](const std::string& name, const std::string& help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("L", a, "Lattice (inline JSON or file)")->required();
    return c;
  };
  auto pair_cmd = [&](const std::string& name, const std::string& help, const char* first, const char* second) {
    auto* c = app.add_subcommand(name, help);
    c->add_option(first, a, "Lattice (inline JSON or file)")->required();
    c->add_option(second, b, "Lattice (inline JSON or file)")->required();
    return c;
  };

  auto* reduce_cmd = lattice_cmd("reduce", "LLL + greedy Minkowski reduction");
  reduce_cmd->callback([&] {
    auto r = reduce(load_lattice(a, "L"));
    payload = Json{{"gram", to_json(r.lattice.gram())}, {"transform", to_json(r.transform)}, {"mu", to_json(r.mu)}};
  });

  auto* minvec_cmd = lattice_cmd("minvec", "Minimum and minimal vectors");
  minvec_cmd->callback([&] {
    auto vl = shortest_vectors(load_lattice(a, "L"));
    payload = Json{{"minimum", to_json(vl.bound)}, {"count", 2 * vl.size()}, {"vectors", vectors_json(vl)}};
  });

  std::string value, upto;
  auto* enum_cmd = lattice_cmd("enum", "Vectors with Q(x) == value or Q(x) <= bound");
  auto* value_opt = enum_cmd->add_option("--value", value, "Exact norm");
  enum_cmd->add_option("--upto", upto, "Norm bound")->excludes(value_opt);
  enum_cmd->callback([&] {
    auto l = load_lattice(a, "L");
    if (value.empty() && upto.empty()) throw CLI::ValidationError("enum", "one of --value or --upto is required");
    VectorList vl = value.empty() ? vectors_up_to(l, parse_int(upto, "--upto")) : vectors_with_value(l, parse_int(value, "--value"));
    payload = Json{{"count", 2 * vl.size()}, {"vectors", vectors_json(vl)}};
  });

  bool primitive = false, count = false;
  auto* represent_cmd = pair_cmd("represent", "Does L represent N?", "N", "L");
  represent_cmd->add_flag("--primitive", primitive, "Primitive representations only");
  represent_cmd->add_flag("--count", count, "Count all representations");
  represent_cmd->callback([&] {
    auto n = load_lattice(a, "N");
    auto l = load_lattice(b, "L");
    payload = Json::object();
    if (count) {
      auto reps = representations(n, l);
      std::size_t prim = 0;
      for (const auto& r : reps) prim += r.primitive;
      payload["represented"] = primitive ? prim > 0 : !reps.empty();
      payload["count"] = primitive ? prim : reps.size();
      if (primitive) payload["total"] = reps.size();
      return;
    }
    if (primitive) {
      payload["represented"] = is_primitively_represented(n, l);
      return;
    }
    auto rep = find_representation(n, l);
    payload["represented"] = rep.has_value();
    if (rep) {
      payload["witness"] = to_json(rep->matrix);
      payload["primitive"] = rep->primitive;
    }
  });

  auto* iso_cmd = pair_cmd("isometric", "Isometry test", "A", "B");
  iso_cmd->callback([&] {
    payload = Json{{"isometric", is_isometric(load_lattice(a, "A"), load_lattice(b, "B"))}};
  });

  auto* canon_cmd = lattice_cmd("canon", "Canonical Gram matrix of the isometry class");
  canon_cmd->callback([&] {
    auto c = canonical_form(load_lattice(a, "L"));
    payload = Json{{"gram", to_json(c.gram())}, {"id", node_id(c)}};
  });

  auto* decompose_cmd = lattice_cmd("decompose", "Orthogonal decomposition into indecomposables");
  decompose_cmd->callback([&] {
    auto parts = eichler_decompose(load_lattice(a, "L"));
    Json comps = Json::array();
    for (const auto& p : parts) {
      Json c = sublattice_json(p);
      c["canonical"] = to_json(canonical_form(induced_gram(p)).gram());
      comps.push_back(std::move(c));
    }
    payload = Json{{"indecomposable", parts.size() == 1}, {"components", comps}};
  });

  auto* flag_cmd = lattice_cmd("flag", "Nonsplit volume-minimizing flag");
  flag_cmd->callback([&] {
    Flag f = build_flag(load_lattice(a, "L"));
    FlagCheck check = is_valid_flag(f);
    Json steps = Json::array();
    for (std::size_t i = 1; i <= f.length(); ++i) {
      SublatticeBasis s = f.step(i);
      GramLattice g = induced_gram(s);
      IntMatrix lead = IntMatrix::identity(i).submatrix(0, 0, i - 1, i);
      bool prev_splits = i > 1 && splits(SublatticeBasis(g, lead));
      steps.push_back(Json{{"coords", to_json(s.coords())},
                           {"volume", to_json(volume(g))},
                           {"floor", to_json(f.floors[i - 1])},
                           {"previous_splits", prev_splits}});
    }
    payload = Json{{"length", f.length()}, {"maximal", f.is_maximal()}, {"valid", check.valid}};
    if (!check.valid) payload["reason"] = check.reason;
    payload["steps"] = steps;
  });

  std::string sub, vol_cap;
  auto* dset_cmd = lattice_cmd("dset", "Primitive nonsplit extensions of N in L up to a volume cap");
  dset_cmd->add_option("--sub", sub, "Coordinates of N in L")->required();
  dset_cmd->add_option("--cap", vol_cap, "Volume cap")->required();
  dset_cmd->callback([&] {
    auto l = load_lattice(a, "L");
    auto members = d_set(load_sublattice(l, sub, "--sub"), parse_int(vol_cap, "--cap"));
    Json list = Json::array();
    for (const auto& e : members) {
      Json m = sublattice_json(e.lattice);
      m["volume"] = to_json(e.volume);
      list.push_back(std::move(m));
    }
    payload = Json{{"count", members.size()}, {"members", list}};
  });

  auto* mset_cmd = lattice_cmd("mset", "Volume-minimal members of D(N)");
  mset_cmd->add_option("--sub", sub, "Coordinates of N in L (default: rank 0)");
  mset_cmd->callback([&] {
    auto l = load_lattice(a, "L");
    MSet m = m_set(load_sublattice(l, sub.empty() ? "[]" : sub, "--sub"));
    Json list = Json::array();
    for (const auto& e : m.members) {
      Json j = sublattice_json(e.lattice.lattice);
      j["witness"] = to_json(e.witness);
      list.push_back(std::move(j));
    }
    payload = Json{{"d_empty", m.d_empty()}, {"volume", to_json(m.volume)}, {"members", list}};
  });

  std::string index;
  bool classes_only = false;
  auto* subl_cmd = lattice_cmd("sublattices", "Full-rank sublattices of a given index");
  subl_cmd->add_option("--index", index, "Index m")->required();
  subl_cmd->add_flag("--classes", classes_only, "Only isometry classes");
  subl_cmd->callback([&] {
    auto l = load_lattice(a, "L");
    auto subs = sublattices_of_index(l, parse_int(index, "--index"));
    std::map<IntMatrix, std::size_t> classes;
    Json list = Json::array();
    for (const auto& s : subs) {
      IntMatrix c = canonical_form(induced_gram(s)).gram();
      ++classes[c];
      if (!classes_only) list.push_back(sublattice_json(s));
    }
    Json cls = Json::array();
    for (const auto& [g, k] : classes) cls.push_back(Json{{"gram", to_json(g)}, {"multiplicity", k}});
    payload = Json{{"count", subs.size()}, {"class_count", classes.size()}, {"classes", cls}};
    if (!classes_only) payload["sublattices"] = list;
  });

  std::string prime;
  auto* local_cmd = pair_cmd("local", "Representation over the p-adic integers", "N", "L");
  local_cmd->add_option("-p,--prime", prime, "Prime p")->required();
  local_cmd->callback([&] {
    Int p = parse_int(prime, "-p");
    if (sgn(p) <= 0 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) throw InvalidArgument("-p: not a prime: " + prime);
    payload = verdict_json(local_is_represented(load_lattice(a, "N"), load_lattice(b, "L"), p));
  });

  auto* genus_cmd = pair_cmd("genus", "Representation by the genus of L", "N", "L");
  genus_cmd->callback([&] {
    auto verdicts = genus_verdicts(load_lattice(a, "N"), load_lattice(b, "L"));
    Json list = Json::array();
    bool all = true;
    for (const auto& v : verdicts) {
      all = all && v.represented;
      list.push_back(verdict_json(v));
    }
    payload = Json{{"represented", all}, {"places", list}};
  });

  StreamOptions stream;
  auto* truant_cmd = lattice_cmd("truant", "First stream element not represented");
  add_stream_options(truant_cmd, stream, false);
  truant_cmd->callback([&] {
    auto s = make_stream(stream);
    auto t = truant(load_lattice(a, "L"), s);
    payload = Json{{"stream", stream_json(s)}};
    if (t) {
      payload["truant"] = target_json(s, t->index);
    } else {
      payload["truant"] = nullptr;
      payload["status"] = "numerically universal at cap " + s.cap().get_str();
    }
  });

  std::string target;
  auto* escalate_cmd = lattice_cmd("escalate", "Minimal-rank lattices representing L and a target");
  escalate_cmd->add_option("--target", target, "Integer or lattice")->required();
  escalate_cmd->callback([&] {
    auto l = load_lattice(a, "L");
    GramLattice t = load_target(target);
    auto e = escalators(l, t);
    Json list = Json::array();
    for (const auto& m : e.lattices) list.push_back(to_json(m.gram()));
    payload = Json{{"tier", to_string(e.tier)}, {"count", e.lattices.size()}, {"escalators", list}};
  });

  auto* tree_cmd = app.add_subcommand("tree", "Escalation tree");
  add_stream_options(tree_cmd, stream, true);
  tree_cmd->callback([&] {
    payload = tree_json(escalation_tree(make_stream(stream), stream.levels, threads));
  });

  auto* criterion_cmd = app.add_subcommand("criterion-set", "Finite universality criterion set");
  add_stream_options(criterion_cmd, stream, true);
  criterion_cmd->callback([&] {
    auto s = make_stream(stream);
    auto tree = escalation_tree(s, stream.levels, threads);
    auto cs = criterion_set(tree);
    Json classes = Json::array();
    Json provenance = Json::array();
    for (std::size_t i = 0; i < cs.classes.size(); ++i) {
      classes.push_back(target_json(s, cs.stream_indices[i]));
      provenance.push_back(Json{{"class", target_json(s, cs.stream_indices[i])}, {"nodes", cs.provenance[i]}});
    }
    Json full = tree_json(tree);
    payload = Json{{"stream", stream_json(s)},
                   {"level_cap", cs.level_cap},
                   {"classes", classes},
                   {"leaf_ranks", full["leaf_ranks"]},
                   {"levels", full["levels"]},
                   {"provenance", provenance},
                   {"leaves", "numerically universal at cap " + cs.cap.get_str()}};
  });

  std::string parts;
  std::string index_bound = "3";
  auto* recover_cmd = lattice_cmd("recover-check", "Do proper sublattices determine L?");
  recover_cmd->add_option("--parts", parts, "JSON list of coordinate matrices of the parts in L")->required();
  recover_cmd->add_option("--index-bound", index_bound, "Largest index of proper full-rank sublattices");
  recover_cmd->callback([&] {
    auto l = load_lattice(a, "L");
    std::vector<SublatticeBasis> ps;
    std::vector<IntMatrix> coords;
    try {
      coords = parse_matrix_list(parts, "--parts");
    } catch (const FormatError& e) {
      throw FormatError(std::string("--parts: ") + e.what());
    }
    for (std::size_t i = 0; i < coords.size(); ++i)
      ps.push_back(to_sublattice(l, std::move(coords[i]), "--parts[" + std::to_string(i) + "]"));
    auto report = check_nonrecoverability(l, ps, parse_int(index_bound, "--index-bound"));
    std::size_t represented = 0;
    Json list = Json::array();
    for (const auto& v : report.proper) {
      represented += v.represented;
      Json j = sublattice_json(v.lattice);
      j["represented"] = v.represented;
      list.push_back(std::move(j));
    }
    payload = Json{{"sum", to_json(report.sum.gram())},
                   {"sum_represents_l", report.sum_represents_l},
                   {"proper_checked", report.proper.size()},
                   {"proper_represented", represented},
                   {"proper", list}};
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  emit(std::cout, payload, format == "machine" ? OutputFormat::Machine : OutputFormat::Human);
  return 0;
}

}  // namespace
}  // namespace quadlat::cli

int main(int argc, char** argv) {
  try {
    return quadlat::cli::run(argc, argv);
  } catch (const quadlat::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
