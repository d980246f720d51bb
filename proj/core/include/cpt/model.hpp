#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cpt/poset.hpp"

namespace cpt {

// Unrooted tree over integer vertex ids. Value type; surgeries return copies.
// Fresh ids are monotone and never reused, so vertex identity is stable
// across a chain of rewrites.
class HostTree {
 public:
  static HostTree from_edges(const std::vector<std::pair<int, int>>& edges);
  static HostTree single_vertex(int id);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  bool has_vertex(int v) const { return adj_.count(v) != 0; }
  bool has_edge(int u, int v) const;
  std::vector<int> vertices() const;
  std::vector<std::pair<int, int>> edges() const;  // u < v, sorted
  const std::vector<int>& neighbors(int v) const;  // sorted
  int degree(int v) const;
  std::vector<int> path_between(int u, int v) const;  // inclusive, in order
  int fresh_id() const { return next_id_; }

  // Replaces edge u-v by a path u, f1, ..., fcount, v of fresh vertices.
  // count of zero is a no-op. Fresh ids are appended to *fresh if given.
  HostTree subdivide(int u, int v, int count, std::vector<int>* fresh = nullptr) const;
  // Attaches a fresh path of the given length at an existing vertex.
  HostTree grow_branch(int at, int length, std::vector<int>* fresh = nullptr) const;
  HostTree remove_leaf(int v) const;
  // Removes a degree-2 vertex, joining its two neighbors directly.
  HostTree smooth_degree_two(int v) const;

  bool operator==(const HostTree& o) const { return adj_ == o.adj_; }

 private:
  std::map<int, std::vector<int>> adj_;
  int next_id_ = 0;
  void add_edge_unchecked(int u, int v);
  void note_vertex(int v);
};

// A path is stored by its endpoints; the vertex set follows from the tree.
// a == b is the trivial one-vertex path.
struct PathInTree {
  int a = 0;
  int b = 0;
  bool trivial() const { return a == b; }
  bool operator==(const PathInTree& o) const {
    return (a == o.a && b == o.b) || (a == o.b && b == o.a);
  }
};

class CptModel {
 public:
  CptModel(HostTree tree, std::map<std::string, PathInTree> paths);

  const HostTree& tree() const { return tree_; }
  const std::map<std::string, PathInTree>& paths() const { return paths_; }
  std::vector<std::string> elements() const;
  const PathInTree& path_of(const std::string& name) const;
  std::vector<int> path_vertices(const std::string& name) const;
  std::set<int> path_vertex_set(const std::string& name) const;
  std::vector<std::string> trivial_elements() const;

  // Surgeries. Tree rewrites keep every stored endpoint valid.
  CptModel subdivide(int u, int v, int count, std::vector<int>* fresh = nullptr) const;
  CptModel grow_branch(int at, int length, std::vector<int>* fresh = nullptr) const;
  CptModel with_path(const std::string& name, PathInTree path) const;
  CptModel without_element(const std::string& name) const;
  CptModel restricted_to(const std::vector<std::string>& names) const;

 private:
  HostTree tree_;
  std::map<std::string, PathInTree> paths_;
};

// The containment order the model defines: x < y iff the path of x is a
// proper subpath of the path of y.
Poset realized_poset(const CptModel& m);

struct RealizationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

RealizationReport check_realizes(const CptModel& m, const Poset& p);
bool realizes(const CptModel& m, const Poset& p);

// Strips host vertices no path needs: unused leaves, then unused degree-2
// vertices (smoothing them never changes any containment relation).
CptModel prune_minimal(const CptModel& m);

enum class EndingKind { not_ending, one_sided, two_sided };

struct ModuleEnding {
  EndingKind kind = EndingKind::not_ending;
  std::vector<int> arrival_neighbors;    // neighbors of a used by ending paths
  std::vector<std::string> not_ending;   // members whose path has no endpoint at a
};

// How the member paths meet vertex a: every path must have an endpoint at a
// to count as ending there; trivial paths sitting on a are enders with no
// arrival neighbor.
ModuleEnding classify_module_ending(const CptModel& m,
                                    const std::vector<std::string>& members,
                                    int a);

}  // namespace cpt
