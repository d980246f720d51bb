#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpt/errors.hpp"

namespace cpt {

// Finite strict partial order on named elements. Elements are kept sorted
// lexicographically; the relation is stored transitively closed as per-element
// bitmasks, which caps the ground set at 32 elements (desk scale throughout).
class Poset {
 public:
  Poset() = default;

  // Closes the generating pairs transitively. Throws CycleError if the closure
  // would relate an element to itself, NameCollisionError on duplicate names,
  // UnknownElementError for pairs over unseen names.
  static Poset from_pairs(std::vector<std::string> elements,
                          const std::vector<std::pair<std::string, std::string>>& below);

  // Trusted path for relations that are already strict orders; still verified.
  static Poset from_closed(std::vector<std::string> elements, std::vector<uint32_t> lt);

  static Poset chain(const std::vector<std::string>& bottom_to_top);
  static Poset antichain(const std::vector<std::string>& elements);
  static Poset empty() { return Poset(); }

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& elements() const { return names_; }
  const std::string& name(int i) const { return names_[static_cast<size_t>(i)]; }
  int index_of(const std::string& name) const;  // UnknownElementError
  std::optional<int> find(const std::string& name) const;

  bool less(int i, int j) const { return (lt_[static_cast<size_t>(i)] >> j) & 1u; }
  bool less(const std::string& x, const std::string& y) const;
  bool comparable(int i, int j) const { return less(i, j) || less(j, i); }
  bool comparable(const std::string& x, const std::string& y) const;

  // Bitmask of elements j with i < j (resp. j < i).
  uint32_t above_mask(int i) const { return lt_[static_cast<size_t>(i)]; }
  uint32_t below_mask(int i) const { return gt_[static_cast<size_t>(i)]; }

  Poset dual() const;
  Poset induced(const std::vector<std::string>& subset) const;

  std::vector<std::string> down_set(const std::string& z) const;
  std::vector<std::string> up_set(const std::string& z) const;
  std::vector<std::string> closed_down_set(const std::string& z) const;
  std::vector<std::string> closed_up_set(const std::string& z) const;

  // All ordered pairs (x, y) with x < y, in lexicographic order.
  std::vector<std::pair<std::string, std::string>> relation_pairs() const;
  // Covering pairs only (the Hasse diagram).
  std::vector<std::pair<std::string, std::string>> cover_pairs() const;

  int relation_count() const;

  // Deterministic encoding of (elements, relation); equal iff posets equal.
  std::string digest() const;

  bool operator==(const Poset& other) const {
    return names_ == other.names_ && lt_ == other.lt_;
  }
  bool operator!=(const Poset& other) const { return !(*this == other); }

 private:
  std::vector<std::string> names_;
  std::vector<uint32_t> lt_;  // lt_[i] bit j set iff i < j
  std::vector<uint32_t> gt_;  // gt_[i] bit j set iff j < i

  static Poset build_checked(std::vector<std::string> names, std::vector<uint32_t> lt,
                             bool close_first);
};

// Undirected comparability graph view. Also used for arbitrary test graphs
// (e.g. cycles) that are not comparability graphs of any poset.
class CompGraph {
 public:
  CompGraph() = default;
  static CompGraph from_poset(const Poset& p);
  static CompGraph from_edges(std::vector<std::string> vertices,
                              const std::vector<std::pair<std::string, std::string>>& edges);

  CompGraph complement() const;

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& elements() const { return names_; }
  const std::string& name(int i) const { return names_[static_cast<size_t>(i)]; }
  int index_of(const std::string& name) const;

  bool edge(int i, int j) const { return (adj_[static_cast<size_t>(i)] >> j) & 1u; }
  uint32_t adj_mask(int i) const { return adj_[static_cast<size_t>(i)]; }
  int edge_count() const;
  std::vector<std::pair<int, int>> edge_list() const;  // i < j, lexicographic

  bool operator==(const CompGraph& other) const {
    return names_ == other.names_ && adj_ == other.adj_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<uint32_t> adj_;
};

struct OrientationOptions {
  long max_expansions = 50'000'000;  // backtracking node budget
  bool first_only = false;
};

// All transitive orientations of g, as posets over g's vertex names, in
// canonical (digest-sorted) order. Backtracks over edges with full
// transitivity propagation after each choice. Throws BudgetExceededError.
std::vector<Poset> transitive_orientations(const CompGraph& g,
                                           const OrientationOptions& opts = {});

// p and q are associated iff they share the ground set and comparability
// graph. Throws GroundSetMismatchError if the element sets differ.
bool is_associated(const Poset& p, const Poset& q);

}  // namespace cpt
