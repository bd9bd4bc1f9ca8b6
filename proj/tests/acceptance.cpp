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

// Acceptance run: one PASS/FAIL line per criterion.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "oracle.hpp"
#include "quadlat/enumerate.hpp"
#include "quadlat/escalation.hpp"
#include "quadlat/flags.hpp"
#include "quadlat/lattice.hpp"
#include "quadlat/lattice_io.hpp"
#include "quadlat/local_rep.hpp"
#include "quadlat/normal_form.hpp"
#include "quadlat/representation.hpp"

#ifndef QUADLAT_CLI_PATH
#error "QUADLAT_CLI_PATH must name the command-line tool"
#endif

using namespace quadlat;
using Clock = std::chrono::steady_clock;

namespace {

const GramLattice kA2(IntMatrix{{2, 1}, {1, 2}});
const GramLattice kA3(IntMatrix{{2, 1, 0}, {1, 2, 1}, {0, 1, 2}});
const GramLattice kD4(IntMatrix{{2, 0, 1, 0}, {0, 2, 1, 0}, {1, 1, 2, 1}, {0, 0, 1, 2}});

struct Outcome {
  bool pass = true;
  bool known = false;  // fails only on a clause recorded as unattainable
  std::string detail;
};

struct CliRun {
  int status = -1;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

CliRun run_cli(const std::vector<std::string>& args) {
  std::string cmd = quote(QUADLAT_CLI_PATH);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

GramLattice random_gram(std::size_t n, std::mt19937_64& rng, long diag_max, long off_max) {
  std::uniform_int_distribution<long> diag(1, diag_max), off(-off_max, off_max);
  for (;;) {
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      g(i, i) = diag(rng);
      for (std::size_t j = i + 1; j < n; ++j) g(i, j) = g(j, i) = off(rng);
    }
    if (is_positive_definite(g)) return GramLattice(g);
  }
}

GramLattice scramble(const GramLattice& l, std::mt19937_64& rng) {
  return GramLattice(oracle::congruent(oracle::random_unimodular(l.rank(), rng), l.gram()));
}

std::vector<IntMatrix> sorted_classes(const std::vector<GramLattice>& ls) {
  std::vector<IntMatrix> out;
  for (const auto& l : ls) out.push_back(canonical_form(l).gram());
  std::sort(out.begin(), out.end());
  return out;
}

std::string criterion1_output;

Outcome criterion1() {
  Outcome o;
  auto t0 = Clock::now();
  CliRun r = run_cli({"--format", "machine", "--threads", "1", "criterion-set", "--stream", "unary", "--cap", "1000"});
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  criterion1_output = r.out;
  if (r.status != 0) return {false, false, "criterion-set exited with " + std::to_string(r.status)};
  auto j = nlohmann::json::parse(r.out);
  std::vector<long> classes = j["classes"].get<std::vector<long>>();
  const std::vector<long> expect{1, 2, 3, 5, 6, 7, 10, 14, 15};
  bool set_ok = classes == expect;
  bool time_ok = secs <= 600;
  std::size_t rank4 = 0, other = 0;
  std::string ranks;
  for (const auto& [k, v] : j["leaf_ranks"].items()) {
    (k == "4" ? rank4 : other) += v.get<std::size_t>();
    ranks += (ranks.empty() ? "" : ", ") + std::string("rank ") + k + ": " + std::to_string(v.get<std::size_t>());
  }
  std::ostringstream d;
  d.setf(std::ios::fixed);
  d.precision(1);
  d << "classes {";
  for (std::size_t i = 0; i < classes.size(); ++i) d << (i ? "," : "") << classes[i];
  d << "} " << (set_ok ? "match" : "MISMATCH") << "; " << secs << " s " << (time_ok ? "<= 600 s" : "> 600 s")
    << "; numerically-universal leaves " << ranks << (other == 0 ? "" : " (not all rank 4)");
  o.detail = d.str();
  o.pass = set_ok && time_ok && other == 0;
  o.known = !o.pass && set_ok && time_ok && rank4 > 0;
  return o;
}

Outcome criterion2() {
  auto s = TargetStream::unary(100);
  const std::vector<std::pair<GramLattice, long>> cases{{GramLattice::diagonal({1}), 2},
                                                       {GramLattice::diagonal({1, 1}), 3},
                                                       {GramLattice::diagonal({1, 1, 1}), 7},
                                                       {GramLattice::diagonal({1, 2}), 5}};
  Outcome o;
  std::ostringstream d;
  for (const auto& [l, want] : cases) {
    auto t = truant(l, s);
    long got = t ? static_cast<long>(t->index + 1) : 0;
    long brute = oracle::truant(l.gram(), 100);
    o.pass = o.pass && got == want && brute == want;
    d << format_matrix(l.gram()) << " -> " << got << " (box " << brute << ") ";
  }
  o.detail = d.str();
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::ostringstream d;
  std::size_t total_sums = 0, representing = 0;
  for (const auto& l : {kA2, kA3, kD4}) {
    std::map<IntMatrix, GramLattice> pool;
    for (const auto& v : vectors_up_to(l, 8).vectors) {
      IntMatrix c(1, l.rank());
      c.set_row(0, v);
      GramLattice g = canonical_form(induced_gram(SublatticeBasis(l, c)));
      pool.emplace(g.gram(), g);
    }
    for (long m = 2; m <= 3; ++m)
      for (const auto& s : sublattices_of_index(l, m)) {
        GramLattice g = canonical_form(induced_gram(s));
        pool.emplace(g.gram(), g);
      }
    std::vector<GramLattice> parts;
    for (auto& [k, g] : pool) parts.push_back(g);
    const std::size_t k = parts.size();
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a; b <= k; ++b)
        for (std::size_t c = b; c <= k; ++c) {
          if (b == k && c != k) continue;
          std::vector<GramLattice> pick{parts[a]};
          if (b < k) pick.push_back(parts[b]);
          if (c < k && b < k) pick.push_back(parts[c]);
          GramLattice sum = orthogonal_sum(pick);
          ++total_sums;
          if (sum.rank() >= l.rank() && is_represented(l, sum)) ++representing;
        }
    d << "rank " << l.rank() << ": " << k << " part classes; ";
  }
  o.pass = representing == 0;
  d << total_sums << " sums, " << representing << " represent L; ";

  std::mt19937_64 rng(20260101);
  std::size_t reassembled = 0;
  for (int t = 0; t < 50; ++t) {
    std::vector<GramLattice> blocks;
    std::size_t rank = 0;
    std::size_t target = 2 + static_cast<std::size_t>(rng() % 3);
    while (rank < target) {
      std::size_t r = 1 + rng() % std::min<std::size_t>(2, target - rank);
      if (blocks.empty() && r == target) r = target - 1;
      blocks.push_back(random_gram(r, rng, 6, 3));
      rank += r;
    }
    GramLattice l = scramble(orthogonal_sum(blocks), rng);
    auto comps = eichler_decompose(l);
    std::vector<GramLattice> grams;
    bool proper = comps.size() >= 2;
    for (const auto& c : comps) {
      grams.push_back(induced_gram(c));
      proper = proper && c.rank() < l.rank();
    }
    GramLattice sum = orthogonal_sum(grams);
    if (proper && is_represented(l, sum) && oracle::represents(l.gram(), sum.gram())) ++reassembled;
  }
  o.pass = o.pass && reassembled == 50;
  d << reassembled << "/50 decomposable lattices reassembled from components";
  o.detail = d.str();
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::ostringstream d;
  for (const auto& l : {kA2, kA3, kD4}) {
    Flag f = build_flag(l);
    FlagCheck check = is_valid_flag(f);
    bool ok = check.valid && f.is_maximal();
    std::size_t reps = 0;
    for (std::size_t j = 1; j <= f.length(); ++j) {
      GramLattice nj = induced_gram(f.step(j));
      auto all = representations(nj, l);
      reps += all.size();
      for (const auto& r : all) ok = ok && r.primitive;
      bool brute_primitive = true;
      std::size_t brute = oracle::count_representations(nj.gram(), l.gram(), [&](const std::vector<oracle::Vec>& xs) {
        IntMatrix m(xs.size(), l.rank());
        for (std::size_t i = 0; i < xs.size(); ++i)
          for (std::size_t c = 0; c < l.rank(); ++c) m(i, c) = xs[i][c];
        brute_primitive = brute_primitive && has_unit_divisors(m);
      });
      ok = ok && brute == all.size() && brute_primitive;
    }
    o.pass = o.pass && ok;
    d << "rank " << l.rank() << ": " << (ok ? "valid" : "INVALID " + check.reason) << ", " << reps
      << " representations all primitive; ";
  }
  o.detail = d.str();
  return o;
}

Outcome criterion5() {
  std::mt19937_64 rng(5150);
  const std::vector<GramLattice> blocks{GramLattice::diagonal({1}), GramLattice::diagonal({2}),
                                        GramLattice::diagonal({3}), kA2};
  std::size_t ok = 0;
  for (int t = 0; t < 50; ++t) {
    std::size_t target = 2 + rng() % 4, rank = 0;
    std::vector<GramLattice> chosen;
    while (rank < target) {
      GramLattice b = blocks[rng() % blocks.size()];
      if (rank + b.rank() > 5) continue;
      chosen.push_back(b);
      rank += b.rank();
    }
    GramLattice l = scramble(orthogonal_sum(chosen), rng);
    std::vector<GramLattice> comps;
    for (const auto& c : eichler_decompose(l)) comps.push_back(induced_gram(c));
    ok += sorted_classes(comps) == sorted_classes(chosen);
  }
  return {ok == 50, false, std::to_string(ok) + "/50 scrambled block sums decompose into their blocks"};
}

Outcome criterion6() {
  std::mt19937_64 rng(606);
  std::size_t represented = 0, violations = 0, oracle_mismatch = 0;
  for (int t = 0; t < 1000; ++t) {
    std::size_t rn = 1 + rng() % 2;
    std::size_t rl = rn + rng() % (5 - rn);
    GramLattice n = random_gram(rn, rng, 8, 8);
    GramLattice l = random_gram(rl, rng, 8, 8);
    bool global = is_represented(n, l);
    if (global != oracle::represents(n.gram(), l.gram())) ++oracle_mismatch;
    if (!global) continue;
    ++represented;
    if (!genus_represents(n, l)) ++violations;
  }
  std::size_t legendre_bad = 0;
  const GramLattice i3 = GramLattice::diagonal({1, 1, 1});
  for (long m = 1; m <= 100; ++m) {
    bool expect = oracle::sum_of_three_squares(m);
    GramLattice nm = GramLattice::diagonal({m});
    if (is_represented(nm, i3) != expect || genus_represents(nm, i3) != expect) ++legendre_bad;
  }
  std::ostringstream d;
  d << represented << "/1000 pairs represented, " << violations << " local violations, " << oracle_mismatch
    << " disagreements with box search; three-squares mismatches " << legendre_bad;
  return {violations == 0 && oracle_mismatch == 0 && legendre_bad == 0, false, d.str()};
}

Outcome criterion7() {
  Outcome o;
  std::ostringstream d;
  const std::vector<std::pair<GramLattice, std::size_t>> cases{{kA2, 6}, {kA3, 12}, {kD4, 24}};
  for (const auto& [l, want] : cases) {
    std::size_t got = 2 * shortest_vectors(l).size();
    std::size_t brute = oracle::count_with_value(l.gram(), minimum(l).get_si());
    long brute_min = 0;
    for (const auto& x : oracle::box_vectors(l.gram(), 2)) {
      long q = oracle::gram_value(l.gram(), x, x);
      if (brute_min == 0 || q < brute_min) brute_min = q;
    }
    o.pass = o.pass && got == want && brute == want && brute_min == 2;
    d << "rank " << l.rank() << ": " << got << " (box " << brute << ") ";
  }
  o.detail = d.str();
  return o;
}

Outcome criterion8() {
  const std::string a2 = "[[2,1],[1,2]]", a3 = "[[2,1,0],[1,2,1],[0,1,2]]",
                    d4 = "[[2,0,1,0],[0,2,1,0],[1,1,2,1],[0,0,1,2]]";
  const std::vector<std::vector<std::string>> commands{
      {"truant", "[[1]]", "--cap", "100"},
      {"truant", "[[1,0],[0,1]]", "--cap", "100"},
      {"truant", "[[1,0,0],[0,1,0],[0,0,1]]", "--cap", "100"},
      {"truant", "[[1,0],[0,2]]", "--cap", "100"},
      {"decompose", a2},
      {"decompose", a3},
      {"decompose", d4},
      {"decompose", "[[1,1,0],[1,4,2],[0,2,4]]"},
      {"recover-check", a2, "--parts", "[[[1,0]],[[2,0],[0,1]]]", "--index-bound", "3"},
      {"flag", a2},
      {"flag", a3},
      {"flag", d4},
      {"represent", "[[7]]", "[[1,0,0],[0,1,0],[0,0,1]]"},
      {"represent", "--count", a2, d4},
      {"genus", "[[3]]", a2},
      {"genus", "[[2,1],[1,4]]", "[[2,1,0],[1,3,1],[0,1,5]]"},
      {"local", "[[7]]", "[[1,0,0],[0,1,0],[0,0,1]]", "-p", "2"},
      {"minvec", a2},
      {"minvec", a3},
      {"minvec", d4},
      {"tree", "--cap", "12", "--levels", "6"},
  };
  std::size_t same = 0, total = 0;
  std::string first_diff;
  auto compare = [&](const std::string& x, const std::string& y, const std::string& what) {
    ++total;
    if (x == y && !x.empty()) {
      ++same;
    } else if (first_diff.empty()) {
      first_diff = what;
    }
  };
  for (const auto& c : commands) {
    std::vector<std::string> one{"--format", "machine", "--threads", "1"}, four{"--format", "machine", "--threads", "4"};
    one.insert(one.end(), c.begin(), c.end());
    four.insert(four.end(), c.begin(), c.end());
    CliRun r1 = run_cli(one), r1b = run_cli(one), r4 = run_cli(four);
    compare(r1.out, r4.out, c.front());
    compare(r1.out, r1b.out, c.front());
  }
  CliRun big = run_cli({"--format", "machine", "--threads", "4", "criterion-set", "--stream", "unary", "--cap", "1000"});
  compare(criterion1_output, big.out, "criterion-set");
  std::string d = std::to_string(same) + "/" + std::to_string(total) + " output pairs byte-identical across --threads 1/4";
  if (!first_diff.empty()) d += "; first difference: " + first_diff;
  return {same == total, false, d};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"fifteen-theorem pipeline", criterion1},   {"truant goldens", criterion2},
      {"decomposability bounded check", criterion3}, {"flag suite", criterion4},
      {"orthogonal decomposition", criterion5},    {"local/global soundness", criterion6},
      {"enumeration goldens", criterion7},         {"determinism across thread counts", criterion8},
  };
  std::size_t passed = 0, unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("%s criterion %zu %s: %s [%.1f s]%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs, o.known ? " (known unattainable clause)" : "");
    std::fflush(stdout);
    passed += o.pass;
    unexpected += !o.pass && !o.known;
  }
  std::printf("%zu/%zu criteria passed, %zu unexpected failures\n", passed, criteria.size(), unexpected);
  return unexpected == 0 ? 0 : 1;
}
