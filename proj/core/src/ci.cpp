#include "cpt/ci.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "cpt/errors.hpp"

namespace cpt {

namespace {

// Positions are 0-based here; the interval construction shifts to 1-based.
std::map<std::string, int> positions(const std::vector<std::string>& order) {
  std::map<std::string, int> pos;
  for (size_t i = 0; i < order.size(); ++i)
    if (!pos.emplace(order[i], static_cast<int>(i)).second)
      throw PreconditionError("repeated element '" + order[i] + "' in linear order");
  return pos;
}

}  // namespace

bool is_realizer(const Poset& p, const Realizer& r) {
  if (static_cast<int>(r.l1.size()) != p.size() ||
      static_cast<int>(r.l2.size()) != p.size())
    return false;
  std::map<std::string, int> p1, p2;
  try {
    p1 = positions(r.l1);
    p2 = positions(r.l2);
  } catch (const PreconditionError&) {
    return false;
  }
  for (const auto& x : p.elements())
    if (!p1.count(x) || !p2.count(x)) return false;
  for (const auto& x : p.elements())
    for (const auto& y : p.elements()) {
      if (x == y) continue;
      bool both_before = p1[x] < p1[y] && p2[x] < p2[y];
      if (p.less(x, y) != both_before) return false;
    }
  return true;
}

namespace {

// Depth-first search for the lexicographically least linear extension whose
// forced companion order is acyclic. Elements are tried in name order, so the
// first complete success is the least one.
struct RealizerSearch {
  const Poset& p;
  long budget;
  long used = 0;
  std::vector<int> l1;      // indices in placement order
  uint32_t placed = 0;

  explicit RealizerSearch(const Poset& p_, long budget_) : p(p_), budget(budget_) {}

  bool companion(std::vector<int>& l2_out) const {
    int n = p.size();
    // l2 must order x before y when x<y, and reverse l1's order on
    // incomparable pairs. That tournament has a linear order iff every
    // element has a distinct out-degree; equivalently, topological sort works.
    std::vector<uint32_t> after(n, 0);  // after[x] = elements that must follow x
    std::vector<int> rank(n, 0);
    for (int i = 0; i < n; ++i) rank[l1[i]] = i;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (x == y) continue;
        if (p.less(x, y))
          after[x] |= uint32_t{1} << y;
        else if (!p.less(y, x) && rank[y] < rank[x])
          after[x] |= uint32_t{1} << y;
      }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::popcount(after[a]) > std::popcount(after[b]);
    });
    for (int i = 0; i < n; ++i) {
      // A tournament is acyclic iff out-degrees are n-1, n-2, ..., 0.
      if (std::popcount(after[order[i]]) != n - 1 - i) return false;
    }
    l2_out = order;
    return true;
  }

  bool run(std::vector<int>& l2_out) {
    int n = p.size();
    if (static_cast<int>(l1.size()) == n) return companion(l2_out);
    if (++used > budget)
      throw BudgetExceededError("realizer search exceeded its expansion budget");
    for (int x = 0; x < n; ++x) {
      if ((placed >> x) & 1u) continue;
      if ((p.below_mask(x) & ~placed) != 0) continue;  // a predecessor waits
      l1.push_back(x);
      placed |= uint32_t{1} << x;
      if (run(l2_out)) return true;
      placed &= ~(uint32_t{1} << x);
      l1.pop_back();
    }
    return false;
  }
};

}  // namespace

std::optional<Realizer> ci_recognize(const Poset& p, long max_expansions) {
  if (p.size() == 0) return Realizer{};
  CompGraph inc = CompGraph::from_poset(p).complement();
  OrientationOptions opts;
  opts.first_only = true;
  opts.max_expansions = max_expansions;
  if (transitive_orientations(inc, opts).empty()) return std::nullopt;

  RealizerSearch search(p, max_expansions);
  std::vector<int> l2;
  if (!search.run(l2))
    throw InternalError("orientable incomparability graph but no realizer found");
  Realizer r;
  for (int i : search.l1) r.l1.push_back(p.name(i));
  for (int i : l2) r.l2.push_back(p.name(i));
  return r;
}

CiModel CiModel::from_intervals(
    const std::vector<std::pair<std::string, CiInterval>>& intervals) {
  if (intervals.empty()) throw MalformedCiModelError("model has no intervals");
  std::vector<std::pair<std::string, CiInterval>> sorted = intervals;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::set<long> ends;
  CiModel m;
  for (auto& [name, iv] : sorted) {
    if (!m.names_.empty() && m.names_.back() == name)
      throw MalformedCiModelError("repeated element '" + name + "'");
    if (iv.lo >= iv.hi)
      throw MalformedCiModelError("interval of '" + name + "' is not non-trivial");
    for (long e : {iv.lo, iv.hi})
      if (!ends.insert(e).second)
        throw MalformedCiModelError("intervals share the endpoint " + std::to_string(e));
    m.names_.push_back(name);
    m.ivals_.push_back(iv);
  }
  return m;
}

const CiInterval& CiModel::interval_of(const std::string& name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name)
    throw UnknownElementError("no interval for '" + name + "'");
  return ivals_[it - names_.begin()];
}

Poset realized_poset(const CiModel& m) {
  int n = m.size();
  std::vector<uint32_t> lt(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const CiInterval &a = m.intervals()[i], &b = m.intervals()[j];
      if (b.lo < a.lo && a.hi < b.hi) lt[i] |= uint32_t{1} << j;
    }
  return Poset::from_closed(m.elements(), lt);
}

CiModel ci_model_from_realizer(const Poset& p, const Realizer& r) {
  if (!is_realizer(p, r))
    throw PreconditionError("the given orders do not realize the poset");
  auto p1 = positions(r.l1);
  auto p2 = positions(r.l2);
  std::vector<std::pair<std::string, CiInterval>> ivals;
  for (const auto& x : p.elements())
    ivals.push_back({x, {-2L * (p1[x] + 1), 2L * (p2[x] + 1)}});
  return CiModel::from_intervals(ivals);
}

namespace {

bool valid_core(const CiModel& m, long c, long d) {
  if (c >= d) return false;
  long lo_min = m.intervals()[0].lo, hi_max = m.intervals()[0].hi;
  for (const auto& iv : m.intervals()) {
    if (iv.lo == c || iv.lo == d || iv.hi == c || iv.hi == d) return false;
    if (!(iv.lo < c && d < iv.hi)) return false;
    lo_min = std::min(lo_min, iv.lo);
    hi_max = std::max(hi_max, iv.hi);
  }
  return lo_min < c && d < hi_max;
}

CompressedCiModel with_core(CiModel m, long c, long d) {
  CompressedCiModel out;
  out.core_lo = c;
  out.core_hi = d;
  out.span_lo = m.intervals()[0].lo;
  out.span_hi = m.intervals()[0].hi;
  for (const auto& iv : m.intervals()) {
    out.span_lo = std::min(out.span_lo, iv.lo);
    out.span_hi = std::max(out.span_hi, iv.hi);
  }
  out.model = std::move(m);
  return out;
}

}  // namespace

CompressedCiModel compress_ci_model(const CiModel& m) {
  if (valid_core(m, -1, 1)) return with_core(m, -1, 1);

  long max_lo = m.intervals()[0].lo, min_hi = m.intervals()[0].hi;
  for (const auto& iv : m.intervals()) {
    max_lo = std::max(max_lo, iv.lo);
    min_hi = std::min(min_hi, iv.hi);
  }
  if (max_lo < min_hi) {
    // The common intersection holds an edge; rescale by 4 so its interior
    // gains room for non-endpoint core coordinates.
    std::vector<std::pair<std::string, CiInterval>> scaled;
    for (int i = 0; i < m.size(); ++i)
      scaled.push_back({m.elements()[i],
                        {4 * m.intervals()[i].lo, 4 * m.intervals()[i].hi}});
    CiModel m4 = CiModel::from_intervals(scaled);
    long c = 4 * max_lo + 1, d = 4 * min_hi - 1;
    if (valid_core(m4, c, d)) return with_core(std::move(m4), c, d);
  }
  // No usable intersection in place; rebuild through a fresh realizer, whose
  // construction always leaves (-1, 1) interior to everything.
  auto r = ci_recognize(realized_poset(m));
  if (!r)
    throw NoCommonCoreError("model admits no core edge and cannot be rebuilt");
  CiModel fresh = ci_model_from_realizer(realized_poset(m), *r);
  if (!valid_core(fresh, -1, 1))
    throw NoCommonCoreError("rebuilt model still admits no core edge");
  return with_core(std::move(fresh), -1, 1);
}

CptModel ci_to_cpt(const CiModel& m) {
  std::set<long> coords;
  bool all_even = true;
  for (const auto& iv : m.intervals()) {
    coords.insert(iv.lo);
    coords.insert(iv.hi);
    if (iv.lo % 2 != 0 || iv.hi % 2 != 0) all_even = false;
  }
  if (all_even)
    for (long c = *coords.begin(); c < *coords.rbegin(); c += 2) coords.insert(c);

  std::vector<std::pair<int, int>> edges;
  int prev = 0;
  bool first = true;
  for (long c : coords) {
    int v = static_cast<int>(c);
    if (!first) edges.emplace_back(prev, v);
    prev = v;
    first = false;
  }
  HostTree t = edges.empty() ? HostTree::single_vertex(static_cast<int>(*coords.begin()))
                             : HostTree::from_edges(edges);
  std::map<std::string, PathInTree> paths;
  for (int i = 0; i < m.size(); ++i)
    paths[m.elements()[i]] = {static_cast<int>(m.intervals()[i].lo),
                              static_cast<int>(m.intervals()[i].hi)};
  return CptModel(std::move(t), std::move(paths));
}

}  // namespace cpt
