#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cpt/ci.hpp"
#include "cpt/model.hpp"
#include "cpt/poset.hpp"

namespace cpt {

// Limits for the exhaustive model search. max_tree_vertices = 0 picks the
// default complete bound for the poset's size; larger values widen the
// space, smaller ones truncate it (the search then reports exhaustion only
// of the truncated space).
struct SearchBudget {
  int max_tree_vertices = 0;
  long max_expansions = 200'000'000;
};

struct SearchResult {
  std::optional<CptModel> model;  // empty: the whole searched space is dry
  long expansions = 0;
  long trees_tried = 0;
  int largest_tree_searched = 0;
};

// All host trees with exactly n vertices, one per isomorphism class,
// vertices numbered 0..n-1, deterministic order.
std::vector<HostTree> enumerate_trees(int n);

// Complete search for a model of p over all host trees up to the size
// bound, smallest trees first; the first model found is returned. With
// require_common_endpoint every path must share one fixed endpoint vertex.
// Exceeding max_expansions throws rather than returning a fake negative.
SearchResult brute_force_cpt(const Poset& p, const SearchBudget& budget = {},
                             bool require_common_endpoint = false);

struct Classification {
  bool is_ci = false;
  bool is_cpt = false;
  bool is_dually_cpt = false;
  bool is_strongly_cpt = false;
  std::optional<Realizer> ci_witness;
  std::optional<CptModel> cpt_model;
  std::optional<CptModel> dual_model;
  int orientations_checked = 0;
  long trees_searched = 0;
  // Set when a flag is negative: which space was exhausted to conclude it.
  std::string exhausted_note;
};

Classification classify(const Poset& p, const SearchBudget& budget = {});

// All posets on n unlabeled elements, one canonical representative each
// (elements named a, b, c, ...), deterministic order. n up to 7.
std::vector<Poset> enumerate_posets(int n);

// Dimension-2 check by trying every pair of linear extensions; companion
// ground truth for the guided search in ci_recognize.
std::optional<Realizer> brute_force_realizer(const Poset& p,
                                             long max_pairs = 10'000'000);

}  // namespace cpt
