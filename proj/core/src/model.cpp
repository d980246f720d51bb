#include "cpt/model.hpp"

#include <algorithm>
#include <queue>

#include "cpt/errors.hpp"

namespace cpt {

void HostTree::note_vertex(int v) {
  adj_.try_emplace(v);
  if (v >= next_id_) next_id_ = v + 1;
}

void HostTree::add_edge_unchecked(int u, int v) {
  note_vertex(u);
  note_vertex(v);
  auto& au = adj_[u];
  au.insert(std::lower_bound(au.begin(), au.end(), v), v);
  auto& av = adj_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
}

HostTree HostTree::from_edges(const std::vector<std::pair<int, int>>& edges) {
  HostTree t;
  for (auto [u, v] : edges) {
    if (u == v) throw PreconditionError("self-loop in tree edge list");
    if (t.has_edge(u, v)) throw PreconditionError("duplicate tree edge");
    t.add_edge_unchecked(u, v);
  }
  if (t.adj_.empty()) throw PreconditionError("tree needs at least one vertex");
  if (t.vertex_count() != static_cast<int>(edges.size()) + 1)
    throw PreconditionError("edge list contains a cycle");
  // Connectivity: acyclic with n-1 edges still needs one component.
  std::set<int> seen;
  std::queue<int> q;
  q.push(t.adj_.begin()->first);
  seen.insert(t.adj_.begin()->first);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : t.adj_.at(v))
      if (seen.insert(w).second) q.push(w);
  }
  if (static_cast<int>(seen.size()) != t.vertex_count())
    throw PreconditionError("edge list is not connected");
  return t;
}

HostTree HostTree::single_vertex(int id) {
  HostTree t;
  t.note_vertex(id);
  return t;
}

bool HostTree::has_edge(int u, int v) const {
  auto it = adj_.find(u);
  if (it == adj_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), v);
}

std::vector<int> HostTree::vertices() const {
  std::vector<int> out;
  for (auto& [v, _] : adj_) out.push_back(v);
  return out;
}

std::vector<std::pair<int, int>> HostTree::edges() const {
  std::vector<std::pair<int, int>> out;
  for (auto& [v, nbrs] : adj_)
    for (int w : nbrs)
      if (v < w) out.emplace_back(v, w);
  return out;
}

const std::vector<int>& HostTree::neighbors(int v) const {
  auto it = adj_.find(v);
  if (it == adj_.end()) throw VertexNotInTreeError("vertex " + std::to_string(v) + " is not in the tree");
  return it->second;
}

int HostTree::degree(int v) const { return static_cast<int>(neighbors(v).size()); }

std::vector<int> HostTree::path_between(int u, int v) const {
  neighbors(u);
  neighbors(v);
  std::map<int, int> parent;
  parent[u] = u;
  std::queue<int> q;
  q.push(u);
  while (!q.empty() && !parent.count(v)) {
    int x = q.front();
    q.pop();
    for (int w : adj_.at(x))
      if (parent.try_emplace(w, x).second) q.push(w);
  }
  std::vector<int> rev;
  for (int x = v;; x = parent.at(x)) {
    rev.push_back(x);
    if (x == u) break;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

HostTree HostTree::subdivide(int u, int v, int count, std::vector<int>* fresh) const {
  if (!has_edge(u, v)) throw EdgeNotInTreeError("no edge " + std::to_string(u) + "-" + std::to_string(v));
  if (count < 0) throw PreconditionError("negative subdivision count");
  if (count == 0) return *this;
  HostTree t = *this;
  auto& au = t.adj_[u];
  au.erase(std::lower_bound(au.begin(), au.end(), v));
  auto& av = t.adj_[v];
  av.erase(std::lower_bound(av.begin(), av.end(), u));
  int prev = u;
  for (int i = 0; i < count; ++i) {
    int f = t.next_id_;
    t.add_edge_unchecked(prev, f);
    if (fresh) fresh->push_back(f);
    prev = f;
  }
  t.add_edge_unchecked(prev, v);
  return t;
}

HostTree HostTree::grow_branch(int at, int length, std::vector<int>* fresh) const {
  neighbors(at);
  if (length < 0) throw PreconditionError("negative branch length");
  HostTree t = *this;
  int prev = at;
  for (int i = 0; i < length; ++i) {
    int f = t.next_id_;
    t.add_edge_unchecked(prev, f);
    if (fresh) fresh->push_back(f);
    prev = f;
  }
  return t;
}

HostTree HostTree::remove_leaf(int v) const {
  if (degree(v) != 1) throw PreconditionError("vertex " + std::to_string(v) + " is not a leaf");
  HostTree t = *this;
  int nb = t.adj_.at(v).front();
  auto& an = t.adj_[nb];
  an.erase(std::lower_bound(an.begin(), an.end(), v));
  t.adj_.erase(v);
  return t;
}

HostTree HostTree::smooth_degree_two(int v) const {
  if (degree(v) != 2) throw PreconditionError("vertex " + std::to_string(v) + " does not have degree two");
  HostTree t = *this;
  int x = t.adj_.at(v)[0], y = t.adj_.at(v)[1];
  auto drop = [&](int from, int what) {
    auto& a = t.adj_[from];
    a.erase(std::lower_bound(a.begin(), a.end(), what));
  };
  drop(x, v);
  drop(y, v);
  t.adj_.erase(v);
  t.add_edge_unchecked(x, y);
  return t;
}

CptModel::CptModel(HostTree tree, std::map<std::string, PathInTree> paths)
    : tree_(std::move(tree)), paths_(std::move(paths)) {
  for (auto& [name, p] : paths_) {
    if (!tree_.has_vertex(p.a) || !tree_.has_vertex(p.b))
      throw VertexNotInTreeError("path of '" + name + "' ends outside the tree");
  }
}

std::vector<std::string> CptModel::elements() const {
  std::vector<std::string> out;
  for (auto& [name, _] : paths_) out.push_back(name);
  return out;
}

const PathInTree& CptModel::path_of(const std::string& name) const {
  auto it = paths_.find(name);
  if (it == paths_.end()) throw UnknownElementError("no path for '" + name + "'");
  return it->second;
}

std::vector<int> CptModel::path_vertices(const std::string& name) const {
  const PathInTree& p = path_of(name);
  return tree_.path_between(p.a, p.b);
}

std::set<int> CptModel::path_vertex_set(const std::string& name) const {
  auto v = path_vertices(name);
  return std::set<int>(v.begin(), v.end());
}

std::vector<std::string> CptModel::trivial_elements() const {
  std::vector<std::string> out;
  for (auto& [name, p] : paths_)
    if (p.trivial()) out.push_back(name);
  return out;
}

CptModel CptModel::subdivide(int u, int v, int count, std::vector<int>* fresh) const {
  return CptModel(tree_.subdivide(u, v, count, fresh), paths_);
}

CptModel CptModel::grow_branch(int at, int length, std::vector<int>* fresh) const {
  return CptModel(tree_.grow_branch(at, length, fresh), paths_);
}

CptModel CptModel::with_path(const std::string& name, PathInTree path) const {
  auto ps = paths_;
  ps[name] = path;
  return CptModel(tree_, std::move(ps));
}

CptModel CptModel::without_element(const std::string& name) const {
  auto ps = paths_;
  ps.erase(name);
  return CptModel(tree_, std::move(ps));
}

CptModel CptModel::restricted_to(const std::vector<std::string>& names) const {
  std::map<std::string, PathInTree> ps;
  for (const auto& n : names) ps.emplace(n, path_of(n));
  return CptModel(tree_, std::move(ps));
}

Poset realized_poset(const CptModel& m) {
  auto names = m.elements();
  int n = static_cast<int>(names.size());
  std::vector<std::set<int>> sets;
  sets.reserve(n);
  for (auto& nm : names) sets.push_back(m.path_vertex_set(nm));
  std::vector<uint32_t> lt(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (sets[i].size() < sets[j].size() &&
          std::includes(sets[j].begin(), sets[j].end(), sets[i].begin(), sets[i].end()))
        lt[i] |= uint32_t{1} << j;
    }
  return Poset::from_closed(names, lt);
}

RealizationReport check_realizes(const CptModel& m, const Poset& p) {
  auto names = m.elements();
  if (names != p.elements())
    throw ElementSetMismatchError("model elements do not match the poset");
  RealizationReport rep;
  int n = static_cast<int>(names.size());
  std::vector<std::set<int>> sets;
  sets.reserve(n);
  for (auto& nm : names) sets.push_back(m.path_vertex_set(nm));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      bool contained = sets[i].size() < sets[j].size() &&
                       std::includes(sets[j].begin(), sets[j].end(),
                                     sets[i].begin(), sets[i].end());
      bool expected = p.less(names[i], names[j]);
      if (contained == expected) continue;
      rep.ok = false;
      if (expected)
        rep.violations.push_back("expected " + names[i] + " < " + names[j] +
                                 " but the path is not properly contained");
      else
        rep.violations.push_back("path of " + names[i] +
                                 " is unexpectedly contained in path of " + names[j]);
    }
  return rep;
}

bool realizes(const CptModel& m, const Poset& p) { return check_realizes(m, p).ok; }

CptModel prune_minimal(const CptModel& m) {
  HostTree t = m.tree();
  std::set<int> endpoints;
  for (auto& [_, p] : m.paths()) {
    endpoints.insert(p.a);
    endpoints.insert(p.b);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v : t.vertices()) {
      if (endpoints.count(v)) continue;
      if (t.vertex_count() == 1) break;
      int d = t.degree(v);
      if (d == 1) {
        t = t.remove_leaf(v);
        changed = true;
        break;
      }
      if (d == 2) {
        t = t.smooth_degree_two(v);
        changed = true;
        break;
      }
    }
  }
  return CptModel(t, m.paths());
}

ModuleEnding classify_module_ending(const CptModel& m,
                                    const std::vector<std::string>& members,
                                    int a) {
  m.tree().neighbors(a);
  ModuleEnding e;
  std::set<int> arrivals;
  for (const auto& name : members) {
    const PathInTree& p = m.path_of(name);
    if (p.a != a && p.b != a) {
      e.not_ending.push_back(name);
      continue;
    }
    if (p.trivial()) continue;  // sits on a, arrives from nowhere
    int other = p.a == a ? p.b : p.a;
    arrivals.insert(m.tree().path_between(a, other)[1]);
  }
  std::sort(e.not_ending.begin(), e.not_ending.end());
  e.arrival_neighbors.assign(arrivals.begin(), arrivals.end());
  if (!e.not_ending.empty())
    e.kind = EndingKind::not_ending;
  else
    e.kind = arrivals.size() >= 2 ? EndingKind::two_sided : EndingKind::one_sided;
  return e;
}

}  // namespace cpt
