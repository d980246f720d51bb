#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cpt/poset.hpp"

namespace cpt {

enum class PartitionKind { series, parallel, prime };

std::string to_string(PartitionKind k);

struct ModularPartition {
  PartitionKind kind;
  // Each part sorted lexicographically; parts ordered by their first element.
  std::vector<std::vector<std::string>> parts;
};

// Order-theoretic module: every outside element is below all of S, above all
// of S, or incomparable to all of S.
bool is_module(const Poset& p, const std::vector<std::string>& candidate);

// A module is strong when no other module overlaps it (shares an element
// without either containing the other). Throws NotAModuleError if the
// candidate is not a module at all.
bool is_strong_module(const Poset& p, const std::vector<std::string>& candidate);

// Smallest module containing the given seed elements (modules are closed
// under intersection, so this is well defined).
std::vector<std::string> minimal_module(const Poset& p, const std::vector<std::string>& seed);

// The canonical partition into maximal proper strong modules, with its kind:
// parallel = comparability graph disconnected (parts are its components),
// series = complement disconnected (parts are co-components), prime
// otherwise. Throws TooSmallError for |X| < 2.
ModularPartition maximal_modular_partition(const Poset& p);

// Quotient by a partition into modules; vertex names are the lexicographically
// least element of each part. Throws NotAPartitionOfModulesError.
Poset quotient(const Poset& p, const std::vector<std::vector<std::string>>& parts);

// Replaces vertex v by the poset h (composition). Outside elements relate to
// every element of h exactly as they related to v. Throws NameCollisionError
// if h reuses a name of p other than v itself.
Poset substitute(const Poset& p, const std::string& v, const Poset& h);

// All strong modules including singletons and X, sorted by size then name.
// Brute force over subsets up to 12 elements, recursive beyond.
std::vector<std::vector<std::string>> strong_modules(const Poset& p);

struct ModuleTreeNode {
  std::vector<std::string> elements;              // sorted
  std::optional<PartitionKind> kind;              // nullopt for leaves
  std::vector<ModuleTreeNode> children;
};

ModuleTreeNode module_tree(const Poset& p);

}  // namespace cpt
