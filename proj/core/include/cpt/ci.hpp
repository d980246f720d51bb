#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cpt/model.hpp"
#include "cpt/poset.hpp"

namespace cpt {

// A pair of linear orders whose intersection is the poset: comparable pairs
// appear in the same order in both, incomparable pairs in opposite order.
struct Realizer {
  std::vector<std::string> l1, l2;
};

bool is_realizer(const Poset& p, const Realizer& r);

// Interval-containment representation on an integer line. Intervals are
// non-trivial and no two share an endpoint.
struct CiInterval {
  long lo = 0, hi = 0;
};

class CiModel {
 public:
  static CiModel from_intervals(
      const std::vector<std::pair<std::string, CiInterval>>& intervals);

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& elements() const { return names_; }
  const CiInterval& interval_of(const std::string& name) const;
  const std::vector<CiInterval>& intervals() const { return ivals_; }

 private:
  std::vector<std::string> names_;  // sorted
  std::vector<CiInterval> ivals_;   // parallel to names_
};

Poset realized_poset(const CiModel& m);

// A CI model together with a designated core edge [core_lo, core_hi] that is
// interior to every interval and to the whole span, with no interval ending
// on it. The model may be a rescaled or rebuilt copy of the input.
struct CompressedCiModel {
  CiModel model;
  long core_lo = 0, core_hi = 0;
  long span_lo = 0, span_hi = 0;
};

// Interval containment orders are exactly the posets whose incomparability
// graph is transitively orientable. Returns nullopt when no orientation
// exists. The witness search for the lexicographically least realizer can
// backtrack; max_expansions bounds it.
std::optional<Realizer> ci_recognize(const Poset& p, long max_expansions = 10'000'000);

// x maps to [-2*pos_in_l1(x), +2*pos_in_l2(x)] with 1-based positions. All
// endpoints are distinct even integers; odd coordinates stay free for core
// designation and later subdivision bookkeeping.
CiModel ci_model_from_realizer(const Poset& p, const Realizer& r);

// Designates (-1, +1) when that edge is interior to every interval, which
// holds for every model the realizer construction produces. Other models are
// rescaled onto a 4x grid around their common intersection, or rebuilt from
// a fresh realizer when the intersection is too thin.
CompressedCiModel compress_ci_model(const CiModel& m);

// Host path over the model's coordinate grid; each interval becomes the
// subpath between its endpoints. Vertex ids are the coordinates themselves.
// All-even models get the full even grid across the span so the odd
// bookkeeping coordinates keep corresponding to edges.
CptModel ci_to_cpt(const CiModel& m);

}  // namespace cpt
