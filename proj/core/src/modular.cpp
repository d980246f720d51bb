#include "cpt/modular.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "cpt/errors.hpp"

namespace cpt {

namespace {

uint32_t mask_of(const Poset& p, const std::vector<std::string>& names) {
  uint32_t m = 0;
  for (const auto& s : names) {
    int i = p.index_of(s);
    m |= uint32_t{1} << i;
  }
  return m;
}

std::vector<std::string> names_of(const Poset& p, uint32_t mask) {
  std::vector<std::string> out;
  for (int i = 0; i < p.size(); ++i)
    if ((mask >> i) & 1u) out.push_back(p.name(i));
  return out;
}

// y relates uniformly to the set: below all, above all, or incomparable to all.
bool uniform_to(const Poset& p, int y, uint32_t m) {
  uint32_t up = p.above_mask(y) & m;    // members above y
  uint32_t down = p.below_mask(y) & m;  // members below y
  if (up == m && down == 0) return true;
  if (down == m && up == 0) return true;
  return up == 0 && down == 0;
}

bool is_module_mask(const Poset& p, uint32_t m) {
  for (int y = 0; y < p.size(); ++y) {
    if ((m >> y) & 1u) continue;
    if (!uniform_to(p, y, m)) return false;
  }
  return true;
}

// Closure of the seed under adding distinguishing elements. Modules are
// closed under intersection, so the fixpoint is the minimal module.
uint32_t minimal_module_mask(const Poset& p, uint32_t seed) {
  uint32_t m = seed;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int y = 0; y < p.size(); ++y) {
      if ((m >> y) & 1u) continue;
      if (!uniform_to(p, y, m)) {
        m |= uint32_t{1} << y;
        grew = true;
      }
    }
  }
  return m;
}

std::vector<uint32_t> graph_components(const CompGraph& g) {
  int n = g.size();
  std::vector<uint32_t> comps;
  uint32_t seen = 0;
  for (int s = 0; s < n; ++s) {
    if ((seen >> s) & 1u) continue;
    uint32_t comp = uint32_t{1} << s;
    uint32_t frontier = comp;
    while (frontier) {
      uint32_t next = 0;
      for (int v = 0; v < n; ++v)
        if ((frontier >> v) & 1u) next |= g.adj_mask(v);
      next &= ~comp;
      comp |= next;
      frontier = next;
    }
    comps.push_back(comp);
    seen |= comp;
  }
  return comps;
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

void sort_parts(std::vector<std::vector<std::string>>& parts) {
  for (auto& part : parts) std::sort(part.begin(), part.end());
  std::sort(parts.begin(), parts.end());
}

void collect_tree_modules(const ModuleTreeNode& node,
                          std::vector<std::vector<std::string>>& out) {
  out.push_back(node.elements);
  for (const auto& c : node.children) collect_tree_modules(c, out);
}

}  // namespace

std::string to_string(PartitionKind k) {
  switch (k) {
    case PartitionKind::series: return "series";
    case PartitionKind::parallel: return "parallel";
    case PartitionKind::prime: return "prime";
  }
  return "?";
}

bool is_module(const Poset& p, const std::vector<std::string>& candidate) {
  return is_module_mask(p, mask_of(p, candidate));
}

std::vector<std::string> minimal_module(const Poset& p,
                                        const std::vector<std::string>& seed) {
  return names_of(p, minimal_module_mask(p, mask_of(p, seed)));
}

bool is_strong_module(const Poset& p, const std::vector<std::string>& candidate) {
  uint32_t m = mask_of(p, candidate);
  if (!is_module_mask(p, m))
    throw NotAModuleError("candidate set is not a module");
  uint32_t full = p.size() == 32 ? ~uint32_t{0} : (uint32_t{1} << p.size()) - 1;
  if (m == full || std::popcount(m) <= 1) return true;
  // A module T overlaps S exactly when some pair (x in S, y outside S) has a
  // minimal module not containing all of S.
  for (int x = 0; x < p.size(); ++x) {
    if (!((m >> x) & 1u)) continue;
    for (int y = 0; y < p.size(); ++y) {
      if ((m >> y) & 1u) continue;
      uint32_t t = minimal_module_mask(p, (uint32_t{1} << x) | (uint32_t{1} << y));
      if ((t & m) != m) return false;
    }
  }
  return true;
}

ModularPartition maximal_modular_partition(const Poset& p) {
  int n = p.size();
  if (n < 2)
    throw TooSmallError("maximal modular partition needs at least two elements");
  uint32_t full = n == 32 ? ~uint32_t{0} : (uint32_t{1} << n) - 1;

  CompGraph g = CompGraph::from_poset(p);
  auto comps = graph_components(g);
  ModularPartition mp;
  if (comps.size() > 1) {
    mp.kind = PartitionKind::parallel;
    for (uint32_t c : comps) mp.parts.push_back(names_of(p, c));
    sort_parts(mp.parts);
    return mp;
  }
  auto co_comps = graph_components(g.complement());
  if (co_comps.size() > 1) {
    mp.kind = PartitionKind::series;
    for (uint32_t c : co_comps) mp.parts.push_back(names_of(p, c));
    sort_parts(mp.parts);
    return mp;
  }

  // Prime case: two elements share a part exactly when their minimal module
  // is proper. Verified below rather than trusted.
  mp.kind = PartitionKind::prime;
  Dsu dsu(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      uint32_t t = minimal_module_mask(p, (uint32_t{1} << i) | (uint32_t{1} << j));
      if (t != full) dsu.unite(i, j);
    }
  std::vector<uint32_t> part_masks;
  for (int r = 0; r < n; ++r) {
    if (dsu.find(r) != r) continue;
    uint32_t m = 0;
    for (int i = 0; i < n; ++i)
      if (dsu.find(i) == r) m |= uint32_t{1} << i;
    part_masks.push_back(m);
  }
  for (uint32_t m : part_masks) {
    if (!is_module_mask(p, m))
      throw InternalError("prime partition produced a non-module part");
    if (!is_strong_module(p, names_of(p, m)))
      throw InternalError("prime partition produced a weak part");
  }
  if (part_masks.size() < 4)
    throw InternalError("prime partition with fewer than four parts");
  // The quotient must itself be prime: any cross-part pair generates everything.
  for (uint32_t m : part_masks) mp.parts.push_back(names_of(p, m));
  sort_parts(mp.parts);
  Poset q = quotient(p, mp.parts);
  uint32_t qfull = (uint32_t{1} << q.size()) - 1;
  for (int i = 0; i < q.size(); ++i)
    for (int j = i + 1; j < q.size(); ++j)
      if (minimal_module_mask(q, (uint32_t{1} << i) | (uint32_t{1} << j)) != qfull)
        throw InternalError("prime partition has a non-prime quotient");
  return mp;
}

Poset quotient(const Poset& p, const std::vector<std::vector<std::string>>& parts) {
  uint32_t seen = 0;
  std::vector<uint32_t> masks;
  for (const auto& part : parts) {
    if (part.empty()) throw NotAPartitionOfModulesError("empty part");
    uint32_t m = mask_of(p, part);
    if (m & seen) throw NotAPartitionOfModulesError("parts are not disjoint");
    seen |= m;
    if (!is_module_mask(p, m))
      throw NotAPartitionOfModulesError("part {" + part.front() +
                                        ", ...} is not a module");
    masks.push_back(m);
  }
  uint32_t full = p.size() == 32 ? ~uint32_t{0} : (uint32_t{1} << p.size()) - 1;
  if (seen != full) throw NotAPartitionOfModulesError("parts do not cover the poset");

  std::vector<std::string> reps;
  for (uint32_t m : masks) reps.push_back(p.name(std::countr_zero(m)));
  std::vector<std::pair<std::string, std::string>> rel;
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = 0; j < reps.size(); ++j)
      if (i != j && p.less(reps[i], reps[j])) rel.emplace_back(reps[i], reps[j]);
  return Poset::from_pairs(reps, rel);
}

Poset substitute(const Poset& p, const std::string& v, const Poset& h) {
  int vi = p.index_of(v);
  std::vector<std::string> names;
  for (int i = 0; i < p.size(); ++i)
    if (i != vi) names.push_back(p.name(i));
  // The replaced name itself may reappear inside h; any other reuse is an error.
  for (int i = 0; i < h.size(); ++i) {
    const std::string& hn = h.name(i);
    if (std::binary_search(names.begin(), names.end(), hn))
      throw NameCollisionError("substituted poset reuses name '" + hn + "'");
  }
  std::vector<std::string> all = names;
  for (int i = 0; i < h.size(); ++i) all.push_back(h.name(i));

  std::vector<std::pair<std::string, std::string>> rel;
  for (auto& [a, b] : p.relation_pairs())
    if (a != v && b != v) rel.emplace_back(a, b);
  for (auto& [a, b] : h.relation_pairs()) rel.emplace_back(a, b);
  for (const auto& x : names) {
    if (p.less(x, v))
      for (int i = 0; i < h.size(); ++i) rel.emplace_back(x, h.name(i));
    if (p.less(v, x))
      for (int i = 0; i < h.size(); ++i) rel.emplace_back(h.name(i), x);
  }
  return Poset::from_pairs(all, rel);
}

std::vector<std::vector<std::string>> strong_modules(const Poset& p) {
  int n = p.size();
  std::vector<std::vector<std::string>> out;
  if (n <= 12) {
    std::vector<uint32_t> mods;
    for (uint32_t m = 1; m < (uint32_t{1} << n); ++m)
      if (is_module_mask(p, m)) mods.push_back(m);
    for (uint32_t m : mods) {
      bool strong = true;
      for (uint32_t o : mods) {
        if (o == m) continue;
        uint32_t both = m & o;
        if (both != 0 && both != m && both != o) {
          strong = false;
          break;
        }
      }
      if (strong) out.push_back(names_of(p, m));
    }
  } else {
    collect_tree_modules(module_tree(p), out);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ModuleTreeNode module_tree(const Poset& p) {
  ModuleTreeNode node;
  node.elements = p.elements();
  if (p.size() == 1) return node;
  ModularPartition mp = maximal_modular_partition(p);
  node.kind = mp.kind;
  for (const auto& part : mp.parts)
    node.children.push_back(module_tree(p.induced(part)));
  return node;
}

}  // namespace cpt
