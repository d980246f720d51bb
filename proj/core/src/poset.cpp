#include "cpt/poset.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace cpt {

namespace {

constexpr int kMaxElements = 32;

std::vector<std::string> sorted_unique_names(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  for (size_t i = 1; i < names.size(); ++i) {
    if (names[i] == names[i - 1]) {
      throw NameCollisionError("duplicate element name: " + names[i]);
    }
  }
  if (names.size() > kMaxElements) {
    throw PreconditionError("ground set too large (max 32 elements)");
  }
  return names;
}

}  // namespace

Poset Poset::build_checked(std::vector<std::string> names, std::vector<uint32_t> lt,
                           bool close_first) {
  const int n = static_cast<int>(names.size());
  if (close_first) {
    // Warshall over the bitmask rows.
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        if ((lt[i] >> k) & 1u) lt[i] |= lt[k];
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if ((lt[i] >> i) & 1u) {
      throw CycleError("relation closure relates '" + names[i] + "' to itself");
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (((lt[i] >> j) & 1u) && ((lt[j] >> i) & 1u)) {
        throw CycleError("elements '" + names[i] + "' and '" + names[j] +
                         "' are below each other");
      }
    }
  }
  if (!close_first) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if ((lt[i] >> j) & 1u && (lt[j] & ~lt[i]) != 0) {
          throw PreconditionError("relation is not transitively closed");
        }
      }
    }
  }
  Poset p;
  p.names_ = std::move(names);
  p.lt_ = std::move(lt);
  p.gt_.assign(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (p.less(i, j)) p.gt_[j] |= (1u << i);
    }
  }
  return p;
}

Poset Poset::from_pairs(std::vector<std::string> elements,
                        const std::vector<std::pair<std::string, std::string>>& below) {
  auto names = sorted_unique_names(std::move(elements));
  std::map<std::string, int> idx;
  for (size_t i = 0; i < names.size(); ++i) idx[names[i]] = static_cast<int>(i);
  std::vector<uint32_t> lt(names.size(), 0);
  for (const auto& [x, y] : below) {
    auto ix = idx.find(x);
    auto iy = idx.find(y);
    if (ix == idx.end()) throw UnknownElementError("unknown element: " + x);
    if (iy == idx.end()) throw UnknownElementError("unknown element: " + y);
    if (ix->second == iy->second) {
      throw CycleError("element '" + x + "' related to itself");
    }
    lt[ix->second] |= (1u << iy->second);
  }
  return build_checked(std::move(names), std::move(lt), /*close_first=*/true);
}

Poset Poset::from_closed(std::vector<std::string> elements, std::vector<uint32_t> lt) {
  auto names = sorted_unique_names(std::move(elements));
  if (lt.size() != names.size()) {
    throw PreconditionError("relation row count does not match element count");
  }
  return build_checked(std::move(names), std::move(lt), /*close_first=*/false);
}

Poset Poset::chain(const std::vector<std::string>& bottom_to_top) {
  std::vector<std::pair<std::string, std::string>> below;
  for (size_t i = 0; i + 1 < bottom_to_top.size(); ++i) {
    below.emplace_back(bottom_to_top[i], bottom_to_top[i + 1]);
  }
  return from_pairs(bottom_to_top, below);
}

Poset Poset::antichain(const std::vector<std::string>& elements) {
  return from_pairs(elements, {});
}

int Poset::index_of(const std::string& name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) {
    throw UnknownElementError("unknown element: " + name);
  }
  return static_cast<int>(it - names_.begin());
}

std::optional<int> Poset::find(const std::string& name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

bool Poset::less(const std::string& x, const std::string& y) const {
  return less(index_of(x), index_of(y));
}

bool Poset::comparable(const std::string& x, const std::string& y) const {
  int i = index_of(x), j = index_of(y);
  return comparable(i, j);
}

Poset Poset::dual() const {
  Poset d;
  d.names_ = names_;
  d.lt_ = gt_;
  d.gt_ = lt_;
  return d;
}

Poset Poset::induced(const std::vector<std::string>& subset) const {
  std::vector<std::string> names = sorted_unique_names(subset);
  std::vector<int> old_idx;
  old_idx.reserve(names.size());
  for (const auto& s : names) old_idx.push_back(index_of(s));
  std::vector<uint32_t> lt(names.size(), 0);
  for (size_t i = 0; i < names.size(); ++i) {
    for (size_t j = 0; j < names.size(); ++j) {
      if (less(old_idx[i], old_idx[j])) lt[i] |= (1u << j);
    }
  }
  return build_checked(std::move(names), std::move(lt), /*close_first=*/false);
}

std::vector<std::string> Poset::down_set(const std::string& z) const {
  int i = index_of(z);
  std::vector<std::string> out;
  for (int j = 0; j < size(); ++j) {
    if (less(j, i)) out.push_back(names_[j]);
  }
  return out;
}

std::vector<std::string> Poset::up_set(const std::string& z) const {
  int i = index_of(z);
  std::vector<std::string> out;
  for (int j = 0; j < size(); ++j) {
    if (less(i, j)) out.push_back(names_[j]);
  }
  return out;
}

std::vector<std::string> Poset::closed_down_set(const std::string& z) const {
  int i = index_of(z);
  std::vector<std::string> out;
  for (int j = 0; j < size(); ++j) {
    if (j == i || less(j, i)) out.push_back(names_[j]);
  }
  return out;
}

std::vector<std::string> Poset::closed_up_set(const std::string& z) const {
  int i = index_of(z);
  std::vector<std::string> out;
  for (int j = 0; j < size(); ++j) {
    if (j == i || less(i, j)) out.push_back(names_[j]);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> Poset::relation_pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) {
      if (less(i, j)) out.emplace_back(names_[i], names_[j]);
    }
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> Poset::cover_pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) {
      if (!less(i, j)) continue;
      // i <: j iff nothing sits strictly between.
      if ((above_mask(i) & below_mask(j)) == 0) out.emplace_back(names_[i], names_[j]);
    }
  }
  return out;
}

int Poset::relation_count() const {
  int c = 0;
  for (uint32_t row : lt_) c += std::popcount(row);
  return c;
}

std::string Poset::digest() const {
  std::string s;
  for (const auto& n : names_) {
    s += n;
    s += ',';
  }
  s += ';';
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) s += less(i, j) ? '1' : '0';
  }
  return s;
}

CompGraph CompGraph::from_poset(const Poset& p) {
  CompGraph g;
  g.names_ = p.elements();
  g.adj_.assign(g.names_.size(), 0);
  for (int i = 0; i < p.size(); ++i) g.adj_[i] = p.above_mask(i) | p.below_mask(i);
  return g;
}

CompGraph CompGraph::from_edges(std::vector<std::string> vertices,
                                const std::vector<std::pair<std::string, std::string>>& edges) {
  CompGraph g;
  g.names_ = sorted_unique_names(std::move(vertices));
  g.adj_.assign(g.names_.size(), 0);
  for (const auto& [x, y] : edges) {
    int i = g.index_of(x);
    int j = g.index_of(y);
    if (i == j) throw PreconditionError("self-loop on vertex " + x);
    g.adj_[i] |= (1u << j);
    g.adj_[j] |= (1u << i);
  }
  return g;
}

CompGraph CompGraph::complement() const {
  CompGraph g;
  g.names_ = names_;
  g.adj_.assign(names_.size(), 0);
  const uint32_t full = size() >= 32 ? ~0u : ((1u << size()) - 1);
  for (int i = 0; i < size(); ++i) {
    g.adj_[i] = full & ~adj_[i] & ~(1u << i);
  }
  return g;
}

int CompGraph::index_of(const std::string& name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) {
    throw UnknownElementError("unknown vertex: " + name);
  }
  return static_cast<int>(it - names_.begin());
}

int CompGraph::edge_count() const {
  int c = 0;
  for (uint32_t row : adj_) c += std::popcount(row);
  return c / 2;
}

std::vector<std::pair<int, int>> CompGraph::edge_list() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) {
      if (edge(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

namespace {

// Backtracking enumeration of transitive orientations with propagation: after
// each edge choice we close under (a->b, b->c) => (a->c); a forced pair whose
// underlying edge is missing kills the branch immediately.
class OrientationSearch {
 public:
  OrientationSearch(const CompGraph& g, const OrientationOptions& opts)
      : g_(g), opts_(opts), n_(g.size()), out_(static_cast<size_t>(n_), 0),
        in_(static_cast<size_t>(n_), 0), edges_(g.edge_list()) {}

  std::vector<Poset> run() {
    if (edges_.empty()) {
      results_.push_back(Poset::from_pairs(g_.elements(), {}));
      return std::move(results_);
    }
    search(0);
    std::sort(results_.begin(), results_.end(),
              [](const Poset& a, const Poset& b) { return a.digest() < b.digest(); });
    return std::move(results_);
  }

 private:
  bool oriented(int a, int b) const { return (out_[a] >> b) & 1u; }

  // Returns false on contradiction. Appends every new orientation to trail.
  bool assign(int a, int b, std::vector<std::pair<int, int>>& trail) {
    std::vector<std::pair<int, int>> stack{{a, b}};
    while (!stack.empty()) {
      auto [x, y] = stack.back();
      stack.pop_back();
      if (oriented(x, y)) continue;
      if (oriented(y, x)) return false;
      out_[x] |= (1u << y);
      in_[y] |= (1u << x);
      trail.emplace_back(x, y);
      // x->y, y->w  forces x->w
      uint32_t need = out_[y] & ~out_[x];
      while (need) {
        int w = std::countr_zero(need);
        need &= need - 1;
        if (!g_.edge(x, w)) return false;
        stack.emplace_back(x, w);
      }
      // w->x, x->y  forces w->y
      need = in_[x] & ~in_[y];
      while (need) {
        int w = std::countr_zero(need);
        need &= need - 1;
        if (!g_.edge(w, y)) return false;
        stack.emplace_back(w, y);
      }
    }
    return true;
  }

  void undo(const std::vector<std::pair<int, int>>& trail) {
    for (auto [x, y] : trail) {
      out_[x] &= ~(1u << y);
      in_[y] &= ~(1u << x);
    }
  }

  bool done() const { return opts_.first_only && !results_.empty(); }

  void search(size_t edge_pos) {
    if (done()) return;
    while (edge_pos < edges_.size() &&
           (oriented(edges_[edge_pos].first, edges_[edge_pos].second) ||
            oriented(edges_[edge_pos].second, edges_[edge_pos].first))) {
      ++edge_pos;
    }
    if (edge_pos == edges_.size()) {
      emit();
      return;
    }
    auto [i, j] = edges_[edge_pos];
    for (auto [a, b] : {std::pair<int, int>{i, j}, std::pair<int, int>{j, i}}) {
      if (++expansions_ > opts_.max_expansions) {
        throw BudgetExceededError("orientation search exceeded expansion budget");
      }
      std::vector<std::pair<int, int>> trail;
      if (assign(a, b, trail)) search(edge_pos + 1);
      undo(trail);
      if (done()) return;
    }
  }

  void emit() {
    for (int i = 0; i < n_; ++i) {
      uint32_t reach = out_[i];
      uint32_t frontier = reach;
      while (frontier) {
        int j = std::countr_zero(frontier);
        frontier &= frontier - 1;
        if (out_[j] & ~reach) {
          throw InternalError("orientation propagation missed a transitivity violation");
        }
      }
    }
    results_.push_back(Poset::from_closed(g_.elements(), out_));
  }

  const CompGraph& g_;
  OrientationOptions opts_;
  int n_;
  std::vector<uint32_t> out_, in_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<Poset> results_;
  long expansions_ = 0;
};

}  // namespace

std::vector<Poset> transitive_orientations(const CompGraph& g, const OrientationOptions& opts) {
  OrientationSearch search(g, opts);
  return search.run();
}

bool is_associated(const Poset& p, const Poset& q) {
  if (p.elements() != q.elements()) {
    throw GroundSetMismatchError("posets are over different ground sets");
  }
  return CompGraph::from_poset(p) == CompGraph::from_poset(q);
}

}  // namespace cpt
