#include "cpt/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>

#include "cpt/errors.hpp"

namespace cpt {

namespace {

// Rooted trees as canonical paren codes, children sorted descending by
// (size, code). Memoized per size.
const std::vector<std::string>& rooted_codes(int n) {
  static std::map<int, std::vector<std::string>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::string> out;
  if (n == 1) {
    out.push_back("()");
  } else {
    // Compose non-increasing child sequences; (size, index) pairs order the
    // choices because each size list is itself sorted.
    struct Rec {
      std::vector<std::string>& out;
      int total;
      std::string acc;
      void go(int rem, int max_size, size_t min_idx) {
        if (rem == 0) {
          out.push_back("(" + acc + ")");
          return;
        }
        for (int s = std::min(rem, max_size); s >= 1; --s) {
          const auto& codes = rooted_codes(s);
          for (size_t i = (s == max_size ? min_idx : 0); i < codes.size(); ++i) {
            size_t len = acc.size();
            acc += codes[i];
            go(rem - s, s, i);
            acc.resize(len);
          }
        }
      }
    } rec{out, n, {}};
    rec.go(n - 1, n - 1, 0);
  }
  // Within one size, larger-first string order keeps child sorting stable:
  // '(' < ')' so deeper-first codes compare consistently either way, we just
  // need one fixed order.
  std::sort(out.begin(), out.end());
  return cache.emplace(n, std::move(out)).first->second;
}

std::vector<int> top_level_child_sizes(const std::string& code) {
  std::vector<int> sizes;
  int depth = 0, start = 0;
  for (int i = 1; i + 1 < static_cast<int>(code.size()); ++i) {
    if (code[i] == '(') {
      if (depth == 0) start = i;
      ++depth;
    } else {
      if (--depth == 0) sizes.push_back((i - start + 1) / 2);
    }
  }
  return sizes;
}

// Ids assigned in code order starting at base; returns the edge list.
void code_to_edges(const std::string& code, int base,
                   std::vector<std::pair<int, int>>* edges) {
  std::vector<int> stack;
  int next = base;
  for (char ch : code) {
    if (ch == '(') {
      int id = next++;
      if (!stack.empty()) edges->push_back({stack.back(), id});
      stack.push_back(id);
    } else {
      stack.pop_back();
    }
  }
}

}  // namespace

std::vector<HostTree> enumerate_trees(int n) {
  static std::map<int, std::vector<HostTree>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n <= 0) throw PreconditionError("tree size must be positive");
  std::vector<HostTree> out;
  if (n == 1) {
    out.push_back(HostTree::single_vertex(0));
  } else {
    // One centroid: root there; every branch then has at most (n-1)/2
    // vertices. Two centroids: an edge joining two halves of size n/2.
    for (const auto& code : rooted_codes(n)) {
      auto sizes = top_level_child_sizes(code);
      bool ok = true;
      for (int s : sizes)
        if (s > (n - 1) / 2) ok = false;
      if (!ok) continue;
      std::vector<std::pair<int, int>> edges;
      code_to_edges(code, 0, &edges);
      out.push_back(HostTree::from_edges(edges));
    }
    if (n % 2 == 0) {
      const auto& halves = rooted_codes(n / 2);
      for (size_t i = 0; i < halves.size(); ++i)
        for (size_t j = i; j < halves.size(); ++j) {
          std::vector<std::pair<int, int>> edges;
          code_to_edges(halves[i], 0, &edges);
          code_to_edges(halves[j], n / 2, &edges);
          edges.push_back({0, n / 2});
          out.push_back(HostTree::from_edges(edges));
        }
    }
  }
  return cache.emplace(n, std::move(out)).first->second;
}

namespace {

struct TreePaths {
  // Vertex masks for every path, endpoints included; index pairs are
  // (u, v) with u <= v over the contiguous relabeling 0..n-1.
  std::vector<uint32_t> masks;
  std::vector<std::pair<int, int>> ends;
};

TreePaths all_paths(const HostTree& t) {
  TreePaths tp;
  auto vs = t.vertices();
  int n = static_cast<int>(vs.size());
  std::map<int, int> idx;
  for (int i = 0; i < n; ++i) idx[vs[i]] = i;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      uint32_t m = 0;
      for (int v : t.path_between(vs[i], vs[j])) m |= 1u << idx[v];
      tp.masks.push_back(m);
      tp.ends.push_back({vs[i], vs[j]});
    }
  return tp;
}

struct AssignmentSearch {
  const Poset& p;
  const TreePaths& tp;
  const SearchBudget& budget;
  long* expansions;
  int anchor;  // -1: unconstrained; else every path must end there
  std::vector<int> order;
  std::vector<uint32_t> chosen_mask;
  std::vector<int> chosen_path;

  bool run(size_t k) {
    if (k == order.size()) return true;
    int x = order[k];
    uint32_t upper_inter = ~0u;
    for (size_t j = 0; j < k; ++j)
      if (p.less(x, order[j])) upper_inter &= chosen_mask[j];
    for (size_t pi = 0; pi < tp.masks.size(); ++pi) {
      if (anchor >= 0 && tp.ends[pi].first != anchor && tp.ends[pi].second != anchor)
        continue;
      uint32_t m = tp.masks[pi];
      if ((m & ~upper_inter) != 0) continue;
      if (++*expansions > budget.max_expansions)
        throw BudgetExceededError("model search exceeded its expansion budget");
      bool ok = true;
      for (size_t j = 0; ok && j < k; ++j) {
        uint32_t o = chosen_mask[j];
        if (p.less(x, order[j])) {
          if (m == o) ok = false;  // containment must be proper
        } else {
          // Placed elements are uppers or incomparables of x only.
          if ((m & ~o) == 0 || (o & ~m) == 0) ok = false;
        }
      }
      if (!ok) continue;
      chosen_mask[k] = m;
      chosen_path[k] = static_cast<int>(pi);
      if (run(k + 1)) return true;
    }
    return false;
  }
};

}  // namespace

SearchResult brute_force_cpt(const Poset& p, const SearchBudget& budget,
                             bool require_common_endpoint) {
  SearchResult res;
  int n = p.size();
  if (n == 0) {
    res.model = CptModel(HostTree::single_vertex(0), {});
    return res;
  }
  int bound = budget.max_tree_vertices > 0 ? budget.max_tree_vertices : 4 * n - 2;

  // Maximal elements first; every upper is placed before its lowers.
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int ua = std::popcount(p.above_mask(a)), ub = std::popcount(p.above_mask(b));
    if (ua != ub) return ua < ub;
    return a < b;
  });

  for (int ts = 1; ts <= bound; ++ts) {
    for (const HostTree& t : enumerate_trees(ts)) {
      ++res.trees_tried;
      res.largest_tree_searched = ts;
      TreePaths tp = all_paths(t);
      std::vector<int> anchors;
      if (require_common_endpoint)
        anchors = t.vertices();
      else
        anchors.push_back(-1);
      for (int anchor : anchors) {
        AssignmentSearch search{p,     tp,
                                budget, &res.expansions,
                                anchor, order,
                                std::vector<uint32_t>(order.size()),
                                std::vector<int>(order.size())};
        if (search.run(0)) {
          std::map<std::string, PathInTree> paths;
          for (size_t k = 0; k < order.size(); ++k) {
            auto [a, b] = tp.ends[static_cast<size_t>(search.chosen_path[k])];
            paths.emplace(p.name(order[k]), PathInTree{a, b});
          }
          res.model = CptModel(t, std::move(paths));
          return res;
        }
      }
    }
  }
  return res;
}

Classification classify(const Poset& p, const SearchBudget& budget) {
  Classification c;
  c.ci_witness = ci_recognize(p);
  c.is_ci = c.ci_witness.has_value();
  if (p.size() <= 6) {
    auto bf = brute_force_realizer(p);
    if (bf.has_value() != c.is_ci)
      throw InternalError("guided and exhaustive realizer searches disagree");
  }

  auto describe = [&](const SearchResult& r) {
    return "no model on any host tree with at most " +
           std::to_string(r.largest_tree_searched) + " vertices (" +
           std::to_string(r.trees_tried) + " trees)";
  };

  SearchResult r = brute_force_cpt(p, budget);
  c.is_cpt = r.model.has_value();
  c.cpt_model = r.model;
  c.trees_searched += r.trees_tried;
  if (!c.is_cpt) c.exhausted_note = describe(r);
  if (c.is_ci && !c.is_cpt)
    throw InternalError("an interval containment order with no path model");

  if (c.is_cpt) {
    SearchResult rd = brute_force_cpt(p.dual(), budget);
    c.dual_model = rd.model;
    c.trees_searched += rd.trees_tried;
    c.is_dually_cpt = rd.model.has_value();
    if (!c.is_dually_cpt && c.exhausted_note.empty())
      c.exhausted_note = "dual: " + describe(rd);
  }

  if (c.is_dually_cpt) {
    c.is_strongly_cpt = true;
    auto orientations = transitive_orientations(CompGraph::from_poset(p));
    c.orientations_checked = static_cast<int>(orientations.size());
    for (const Poset& q : orientations) {
      SearchResult rq = brute_force_cpt(q, budget);
      c.trees_searched += rq.trees_tried;
      if (!rq.model) {
        c.is_strongly_cpt = false;
        if (c.exhausted_note.empty())
          c.exhausted_note = "orientation " + q.digest() + ": " + describe(rq);
        break;
      }
    }
  }

  if ((c.is_strongly_cpt && !c.is_dually_cpt) || (c.is_dually_cpt && !c.is_cpt))
    throw InternalError("classification flags violate their implications");
  return c;
}

namespace {

// Pairwise relation code, positions filled one element at a time: placing
// position j appends bits (p_i<p_j, p_j<p_i) for all i<j. Lexicographically
// minimal over permutations that sort the cheap signature first.
struct Canonicalizer {
  int n;
  const std::vector<uint32_t>& lt;
  std::vector<uint64_t> sig;
  std::vector<int> perm, best_perm;
  std::vector<bool> used;
  std::vector<uint64_t> code, best;  // one chunk per position
  bool have_best = false;

  void run() {
    perm.assign(static_cast<size_t>(n), 0);
    used.assign(static_cast<size_t>(n), false);
    code.assign(static_cast<size_t>(n), 0);
    place(0, false);
  }

  // free_run means some earlier position already beat best's prefix, so no
  // per-position pruning applies; leaves still compare whole codes because
  // best may have moved while this subtree was being explored.
  void place(int j, bool free_run) {
    if (j == n) {
      if (!have_best || code < best) {
        best = code;
        best_perm = perm;
        have_best = true;
      }
      return;
    }
    for (int e = 0; e < n; ++e) {
      if (used[static_cast<size_t>(e)]) continue;
      if (j > 0 && sig[static_cast<size_t>(e)] < sig[static_cast<size_t>(perm[j - 1])] )
        continue;  // signatures must appear in nondecreasing order
      if (j == 0 && !sig_least(e)) continue;
      uint64_t chunk = 0;
      for (int i = 0; i < j; ++i) {
        int pi = perm[static_cast<size_t>(i)];
        chunk = chunk << 2 | (lt[static_cast<size_t>(pi)] >> e & 1u) << 1 |
                (lt[static_cast<size_t>(e)] >> pi & 1u);
      }
      bool better = free_run;
      if (!better && have_best) {
        if (chunk > best[static_cast<size_t>(j)]) continue;
        if (chunk < best[static_cast<size_t>(j)]) better = true;
      }
      perm[static_cast<size_t>(j)] = e;
      code[static_cast<size_t>(j)] = chunk;
      used[static_cast<size_t>(e)] = true;
      place(j + 1, better);
      used[static_cast<size_t>(e)] = false;
    }
  }

  bool sig_least(int e) const {
    for (int o = 0; o < n; ++o)
      if (sig[static_cast<size_t>(o)] < sig[static_cast<size_t>(e)]) return false;
    return true;
  }
};

std::vector<uint64_t> canonical_code(const std::vector<uint32_t>& lt) {
  int n = static_cast<int>(lt.size());
  std::vector<uint32_t> gt(lt.size(), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (lt[static_cast<size_t>(i)] >> j & 1u) gt[static_cast<size_t>(j)] |= 1u << i;
  Canonicalizer c{n, lt, {}, {}, {}, {}, {}, {}, false};
  c.sig.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    uint64_t below = static_cast<uint64_t>(std::popcount(gt[static_cast<size_t>(i)]));
    uint64_t above = static_cast<uint64_t>(std::popcount(lt[static_cast<size_t>(i)]));
    c.sig[static_cast<size_t>(i)] = below << 8 | above;
  }
  c.run();
  return c.best;
}

}  // namespace

std::vector<Poset> enumerate_posets(int n) {
  if (n < 0 || n > 7) throw PreconditionError("enumeration supports 0..7 elements");
  if (n == 0) return {Poset::empty()};
  std::vector<std::vector<uint32_t>> reps = {{0u}};  // the single 1-element poset
  for (int k = 2; k <= n; ++k) {
    std::set<std::vector<uint64_t>> seen;
    int m = k - 1;
    uint32_t full = (1u << m) - 1;
    for (const auto& lt : reps) {
      std::vector<uint32_t> gt(lt.size(), 0);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          if (lt[static_cast<size_t>(i)] >> j & 1u) gt[static_cast<size_t>(j)] |= 1u << i;
      // New element sits above a down-closed D and below an up-closed U with
      // every D-U pair already related; that is exactly transitive closure.
      for (uint32_t d = 0; d <= full; ++d) {
        bool down_ok = true;
        for (int i = 0; i < m && down_ok; ++i)
          if (d >> i & 1u)
            if ((gt[static_cast<size_t>(i)] & ~d) != 0) down_ok = false;
        if (!down_ok) continue;
        uint32_t avail = full & ~d;
        for (uint32_t u = avail;; u = (u - 1) & avail) {
          bool ok = true;
          for (int i = 0; i < m && ok; ++i)
            if (u >> i & 1u) {
              if ((lt[static_cast<size_t>(i)] & ~u) != 0) ok = false;  // up-closed
              if ((d & ~gt[static_cast<size_t>(i)]) != 0) ok = false;  // D x U related
            }
          if (ok) {
            std::vector<uint32_t> ext(lt);
            for (int i = 0; i < m; ++i)
              if (d >> i & 1u) ext[static_cast<size_t>(i)] |= 1u << m;
            ext.push_back(u);
            seen.insert(canonical_code(ext));
          }
          if (u == 0) break;
        }
      }
    }
    reps.clear();
    for (const auto& code : seen) {
      std::vector<uint32_t> lt(static_cast<size_t>(k), 0);
      for (int j = 0; j < k; ++j) {
        uint64_t chunk = code[static_cast<size_t>(j)];
        for (int i = j - 1; i >= 0; --i) {
          if (chunk & 2u) lt[static_cast<size_t>(i)] |= 1u << j;
          if (chunk & 1u) lt[static_cast<size_t>(j)] |= 1u << i;
          chunk >>= 2;
        }
      }
      reps.push_back(std::move(lt));
    }
  }
  std::vector<Poset> out;
  for (const auto& lt : reps) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    out.push_back(Poset::from_closed(names, lt));
  }
  return out;
}

std::optional<Realizer> brute_force_realizer(const Poset& p, long max_pairs) {
  int n = p.size();
  std::vector<std::vector<std::string>> exts;
  std::vector<int> cur;
  uint32_t placed = 0;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == n) {
      std::vector<std::string> e;
      for (int i : cur) e.push_back(p.name(i));
      exts.push_back(std::move(e));
      return;
    }
    for (int i = 0; i < n; ++i) {
      if (placed >> i & 1u) continue;
      if ((p.below_mask(i) & ~placed) != 0) continue;
      placed |= 1u << i;
      cur.push_back(i);
      self(self);
      cur.pop_back();
      placed &= ~(1u << i);
    }
  };
  rec(rec);
  long tried = 0;
  for (const auto& l1 : exts)
    for (const auto& l2 : exts) {
      if (++tried > max_pairs)
        throw BudgetExceededError("realizer pair scan exceeded its budget");
      Realizer r{l1, l2};
      if (is_realizer(p, r)) return r;
    }
  return std::nullopt;
}

}  // namespace cpt
