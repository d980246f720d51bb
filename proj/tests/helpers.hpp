#pragma once

// Random model generators shared by the unit and the acceptance tests.
// Hosts start as integer paths, sometimes with short side branches; paths
// are planted between host vertices, so every draw is a valid model, and
// the poset it must keep realizing is read back from the model itself.

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cpt/model.hpp"
#include "cpt/modular.hpp"
#include "cpt/normalize.hpp"
#include "cpt/poset.hpp"

namespace testgen {

inline int pick(std::mt19937& g, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(g);
}

inline bool coin(std::mt19937& g, double p = 0.5) {
  return std::bernoulli_distribution(p)(g);
}

inline cpt::HostTree line_tree(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return cpt::HostTree::from_edges(edges);
}

// Unconstrained model: path host, a couple of branches, random paths, a
// trivial path now and then so the trivial-elimination ops have work.
inline cpt::CptModel random_line_model(std::mt19937& g) {
  int len = pick(g, 6, 14);
  cpt::HostTree tree = line_tree(len);
  int branches = pick(g, 0, 2);
  for (int b = 0; b < branches; ++b)
    tree = tree.grow_branch(pick(g, 1, len - 2), pick(g, 1, 2));
  std::vector<int> verts = tree.vertices();
  auto vertex = [&] { return verts[static_cast<size_t>(pick(g, 0, static_cast<int>(verts.size()) - 1))]; };
  std::map<std::string, cpt::PathInTree> paths;
  int k = pick(g, 2, 7);
  for (int i = 0; i < k; ++i) {
    int a = vertex();
    int b = coin(g, 0.25) ? a : vertex();
    paths["e" + std::to_string(i)] = {a, b};
  }
  return cpt::CptModel(tree, paths);
}

struct OpCase {
  cpt::CptModel model;
  cpt::Poset p;
  std::vector<std::string> module;
  std::string z;       // trivial element the op acts on, when it needs one
  int vertex = -1;     // ending vertex for the spread op
};

// Nested paths around (or ending on) a point path, wrapped in containers,
// so the named elements form a strong chain module holding a trivial.
inline std::optional<OpCase> gen_clique_case(std::mt19937& g) {
  int m = pick(g, 2, 4);           // module size including the trivial
  int len = 2 * m + pick(g, 6, 10);
  int v = pick(g, m + 2, len - m - 3);
  std::map<std::string, cpt::PathInTree> paths;
  paths["m0"] = {v, v};
  int variant = pick(g, 0, 2);
  for (int j = 1; j < m; ++j) {
    if (variant == 0) paths["m" + std::to_string(j)] = {v - j, v + j};
    else if (variant == 1) paths["m" + std::to_string(j)] = {v - j, v};
    else paths["m" + std::to_string(j)] = {v - j, v + (j > 1 ? j - 1 : 0)};
  }
  int lo = v - m, hi = variant == 1 ? v + 1 : v + m;
  if (hi >= len - 1) return std::nullopt;
  paths["c0"] = {lo, hi};
  // Keeps the top of the nest and the container in separate strong
  // modules: u overlaps the widest member but sits inside the container.
  paths["u"] = {lo, lo + 1};
  if (coin(g)) paths["c1"] = {std::max(0, lo - 1), std::min(len - 1, hi + 1)};
  if (lo >= 3 && coin(g)) paths["far"] = {0, pick(g, 0, lo - 3)};
  cpt::CptModel model(line_tree(len), paths);
  cpt::Poset p = cpt::realized_poset(model);
  std::vector<std::string> module;
  for (int j = 0; j < m; ++j) module.push_back("m" + std::to_string(j));
  for (size_t i = 0; i < module.size(); ++i)
    for (size_t j = i + 1; j < module.size(); ++j)
      if (!p.comparable(module[i], module[j])) return std::nullopt;
  if (!cpt::is_module(p, module) || !cpt::is_strong_module(p, module)) return std::nullopt;
  return OpCase{model, p, module, "m0", v};
}

// Disjoint slots in a row under shared containers: a strong antichain
// module, at least one slot a point.
inline std::optional<OpCase> gen_stable_case(std::mt19937& g) {
  int m = pick(g, 2, 4);
  int start = pick(g, 2, 4);
  std::map<std::string, cpt::PathInTree> paths;
  int cur = start;
  std::vector<std::string> module;
  for (int j = 0; j < m; ++j) {
    int w = (j == 0) ? 0 : (coin(g, 0.4) ? 0 : pick(g, 1, 2));
    paths["m" + std::to_string(j)] = {cur, cur + w};
    module.push_back("m" + std::to_string(j));
    cur += w + 1 + pick(g, 1, 2);
  }
  int end = cur - 1;
  int len = end + pick(g, 3, 5);
  paths["c0"] = {start - 1, std::min(len - 1, end + 1)};
  if (coin(g)) paths["c1"] = {pick(g, 0, start - 2), std::min(len - 1, end + 2)};
  cpt::CptModel model(line_tree(len), paths);
  cpt::Poset p = cpt::realized_poset(model);
  for (size_t i = 0; i < module.size(); ++i)
    for (size_t j = i + 1; j < module.size(); ++j)
      if (p.comparable(module[i], module[j])) return std::nullopt;
  if (!cpt::is_module(p, module) || !cpt::is_strong_module(p, module)) return std::nullopt;
  return OpCase{model, p, module, "m0", -1};
}

// Four paths forming the fence order 1<2, 3<2, 3<4 with element 3 laid as a
// point, wrapped in a container; the module's own partition is prime.
inline std::optional<OpCase> gen_prime_case(std::mt19937& g) {
  int s = pick(g, 2, 5);
  int len = s + 11 + pick(g, 1, 4);
  bool flip = coin(g);
  auto at = [&](int off) { return flip ? s + 9 - off : s + off; };
  auto mk = [&](int a, int b) { return cpt::PathInTree{at(a), at(b)}; };
  std::map<std::string, cpt::PathInTree> paths;
  paths["p2"] = mk(0, 7);
  paths["p4"] = mk(5, 9);
  paths["p1"] = mk(1, 3);
  paths["p3"] = mk(6, 6);
  bool with_container = coin(g, 0.7);
  if (with_container) paths["c0"] = {s - 1, s + 10};
  if (s >= 4 && coin(g)) paths["far"] = {0, pick(g, 0, s - 4)};
  cpt::CptModel model(line_tree(len), paths);
  cpt::Poset p = cpt::realized_poset(model);
  std::vector<std::string> module = {"p1", "p2", "p3", "p4"};
  if (!cpt::is_module(p, module) || !cpt::is_strong_module(p, module)) return std::nullopt;
  cpt::ModularPartition mp = cpt::maximal_modular_partition(p.induced(module));
  if (mp.kind != cpt::PartitionKind::prime) return std::nullopt;
  return OpCase{model, p, module, "p3", -1};
}

// Paths ending on a planted point path from one or both sides, plus an
// off-module ender that keeps the module out of a chain with the point.
inline cpt::CptModel gen_ending_model(std::mt19937& g, bool want_through) {
  int m = pick(g, 2, 3);
  int len = 2 * m + pick(g, 10, 14);
  int v = len / 2;
  std::map<std::string, cpt::PathInTree> paths;
  paths["z"] = {v, v};
  bool two_sided = coin(g);
  int la = 1, ra = 1;
  for (int j = 0; j < m; ++j) {
    bool left = two_sided ? coin(g) : true;
    if (left) paths["m" + std::to_string(j)] = {v - la++, v};
    else paths["m" + std::to_string(j)] = {v, v + ra++};
  }
  if (want_through) paths["m" + std::to_string(m)] = {v - la, v + ra};
  // w shares only v with every module path, so the point path and the
  // module stay in separate strong modules instead of one long chain.
  // With members on both sides they distinguish each other already.
  if (ra == 1) paths["w"] = {v, v + ra + 1};
  else if (la == 1) paths["w"] = {v - 2, v};
  if (coin(g, 0.6)) paths["c0"] = {v - la - 2, v + ra + 2};
  if (coin(g, 0.3)) paths["far"] = {0, 1};
  return cpt::CptModel(line_tree(len), paths);
}

}  // namespace testgen
