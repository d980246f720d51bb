#include "cpt/synthesize.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cpt/errors.hpp"
#include "cpt/oracle.hpp"

namespace cpt {

namespace {

void verify_or_suspect(const CptModel& m, const Poset& p, const std::string& what) {
  auto rep = check_realizes(m, p);
  if (!rep.ok)
    throw SuspicionError(what + " broke the realization: " + rep.violations.front());
}

std::vector<std::string> other_trivials_at(const CptModel& model, int v,
                                           const std::string& except) {
  std::vector<std::string> out;
  for (const auto& [name, path] : model.paths())
    if (name != except && path.trivial() && path.a == v) out.push_back(name);
  return out;
}

// Far endpoints of below-paths stopping at `end`, grouped largest first.
// Each group shares one far endpoint, so retraction depths follow group
// order and containment among the retracted paths is preserved.
struct RetractionPlan {
  std::vector<std::pair<int, std::vector<std::string>>> groups;
};

RetractionPlan below_enders_at(const CptModel& model, const Poset& h,
                               const std::string& v0, int end) {
  std::map<int, std::vector<std::string>> by_far;
  for (const auto& [name, path] : model.paths()) {
    if (name == v0 || !h.less(name, v0)) continue;
    if (path.a != end && path.b != end) continue;
    by_far[path.a == end ? path.b : path.a].push_back(name);
  }
  // Larger paths reach further from `end` along v0's path.
  std::vector<int> line = model.path_vertices(v0);
  if (line.front() != end) std::reverse(line.begin(), line.end());
  std::map<int, int> depth;
  for (size_t i = 0; i < line.size(); ++i) depth[line[i]] = static_cast<int>(i);
  RetractionPlan plan;
  for (auto& [far, names] : by_far) {
    std::sort(names.begin(), names.end());
    plan.groups.push_back({far, names});
  }
  std::sort(plan.groups.begin(), plan.groups.end(),
            [&](const auto& x, const auto& y) { return depth[x.first] > depth[y.first]; });
  return plan;
}

std::vector<std::vector<std::string>> comparability_components(const Poset& p) {
  CompGraph g = CompGraph::from_poset(p);
  int n = p.size();
  std::vector<bool> seen(static_cast<size_t>(n), false);
  std::vector<std::vector<std::string>> comps;
  for (int s = 0; s < n; ++s) {
    if (seen[static_cast<size_t>(s)]) continue;
    std::vector<int> stack{s};
    seen[static_cast<size_t>(s)] = true;
    std::vector<std::string> comp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(p.name(v));
      uint32_t adj = g.adj_mask(v);
      for (int u = 0; u < n; ++u)
        if ((adj >> u & 1u) && !seen[static_cast<size_t>(u)]) {
          seen[static_cast<size_t>(u)] = true;
          stack.push_back(u);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

}  // namespace

QuotientModel quotient_model(const NormalizedModel& normalized, const Poset& p,
                             const ModularPartition& partition) {
  {
    auto rep = check_realizes(normalized.model, p);
    if (!rep.ok)
      throw PreconditionError("normalized model does not realize the poset: " +
                              rep.violations.front());
  }
  ModularPartition expect = maximal_modular_partition(p);
  if (expect.kind != partition.kind || expect.parts != partition.parts)
    throw PreconditionError("partition is not the maximal modular partition");

  QuotientModel qm{normalized.model, {}, {}};
  std::vector<std::string> reps;
  for (const auto& part : partition.parts) {
    reps.push_back(part.front());
    qm.parts.push_back({part.front(), part});
  }
  qm.model = normalized.model.restricted_to(reps);
  {
    auto rep = check_realizes(qm.model, quotient(p, partition.parts));
    if (!rep.ok)
      throw InternalError("restriction to representatives lost the quotient: " +
                          rep.violations.front());
  }
  for (const auto& blocked : normalized.blocked_modules)
    for (const auto& part : partition.parts)
      if (part == blocked) qm.blocked_reps.push_back(part.front());
  return qm;
}

CptModel ensure_min_path_length(const CptModel& model, const std::string& v0,
                                int min_vertices) {
  if (model.path_of(v0).trivial())
    throw TrivialPathError("path of '" + v0 + "' is a single vertex");
  std::vector<int> verts = model.path_vertices(v0);
  int deficit = min_vertices - static_cast<int>(verts.size());
  if (deficit <= 0) return model;
  return model.subdivide(verts[0], verts[1], deficit);
}

CptModel substitute_ci(const CptModel& modelH, const std::string& v0,
                       const CompressedCiModel& n_model) {
  Poset h = realized_poset(modelH);
  Poset inner = realized_poset(n_model.model);
  Poset target = substitute(h, v0, inner);

  std::vector<int> x = modelH.path_vertices(v0);
  if (x.back() < x.front()) std::reverse(x.begin(), x.end());
  int k = static_cast<int>(x.size());
  if (k < 4)
    throw PathTooShortError("path of '" + v0 + "' spans " + std::to_string(k) +
                            " vertices; the substitution needs at least 4");
  for (int end : {x.front(), x.back()})
    if (!other_trivials_at(modelH, end, v0).empty())
      throw EndsOnTrivialPathError("path of '" + v0 + "' ends on a trivial path at vertex " +
                                   std::to_string(end));
  for (const auto& e : n_model.model.elements()) {
    const CiInterval& iv = n_model.model.interval_of(e);
    if (!(iv.lo < n_model.core_lo && n_model.core_hi < iv.hi))
      throw MalformedCiModelError("interval of '" + e +
                                  "' does not contain the core in its interior");
  }

  int n = inner.size();
  if (n == 1) {
    const std::string& e = inner.elements().front();
    if (e == v0) {
      verify_or_suspect(modelH, target, "identity substitution");
      return modelH;
    }
    CptModel out = modelH.without_element(v0).with_path(e, modelH.path_of(v0));
    verify_or_suspect(out, target, "single-interval substitution");
    return out;
  }

  std::vector<std::string> by_lo = n_model.model.elements(), by_hi = n_model.model.elements();
  std::sort(by_lo.begin(), by_lo.end(), [&](const auto& s, const auto& t) {
    return n_model.model.interval_of(s).lo < n_model.model.interval_of(t).lo;
  });
  std::sort(by_hi.begin(), by_hi.end(), [&](const auto& s, const auto& t) {
    return n_model.model.interval_of(s).hi < n_model.model.interval_of(t).hi;
  });

  RetractionPlan left_plan = below_enders_at(modelH, h, v0, x.front());
  RetractionPlan right_plan = below_enders_at(modelH, h, v0, x.back());
  int sl = static_cast<int>(left_plan.groups.size());
  int sr = static_cast<int>(right_plan.groups.size());

  std::vector<int> fl, fr;
  CptModel work = modelH.subdivide(x[0], x[1], n - 1 + sl, &fl);
  work = work.subdivide(x[static_cast<size_t>(k - 2)], x[static_cast<size_t>(k - 1)],
                        n - 1 + sr, &fr);

  // Wider reach sits closer to the old path end; the widest interval on
  // each side keeps the original endpoint.
  std::map<std::string, int> left_of, right_of;
  for (int j = 0; j < n; ++j)
    left_of[by_lo[static_cast<size_t>(j)]] = j == 0 ? x.front() : fl[static_cast<size_t>(j - 1)];
  for (int j = 0; j < n; ++j)
    right_of[by_hi[static_cast<size_t>(j)]] =
        j == n - 1 ? x.back() : fr[static_cast<size_t>(sr + j)];

  work = work.without_element(v0);
  for (const auto& e : inner.elements())
    work = work.with_path(e, {left_of[e], right_of[e]});

  // Below-paths that shared an endpoint with v0's path retract onto fresh
  // vertices strictly inside every embedded interval.
  for (int s = 0; s < sl; ++s) {
    int slot = fl[static_cast<size_t>(n - 1 + s)];
    for (const auto& w : left_plan.groups[static_cast<size_t>(s)].second) {
      int far = left_plan.groups[static_cast<size_t>(s)].first;
      work = work.with_path(w, far == x.front() ? PathInTree{slot, slot}
                                                : PathInTree{slot, far});
    }
  }
  for (int s = 0; s < sr; ++s) {
    int slot = fr[static_cast<size_t>(sr - 1 - s)];
    for (const auto& w : right_plan.groups[static_cast<size_t>(s)].second) {
      int far = right_plan.groups[static_cast<size_t>(s)].first;
      work = work.with_path(w, far == x.back() ? PathInTree{slot, slot}
                                               : PathInTree{far, slot});
    }
  }

  verify_or_suspect(work, target, "interval substitution");
  return work;
}

CptModel substitute_blocked_clique(const CptModel& modelH, const std::string& v0,
                                   const std::vector<std::string>& chain_order) {
  Poset h = realized_poset(modelH);
  Poset inner = Poset::chain(chain_order);
  Poset target = substitute(h, v0, inner);

  const PathInTree& pv = modelH.path_of(v0);
  int m = static_cast<int>(chain_order.size());
  if (m == 1) {
    const std::string& e = chain_order.front();
    if (e == v0) {
      verify_or_suspect(modelH, target, "identity chain substitution");
      return modelH;
    }
    CptModel out = modelH.without_element(v0).with_path(e, pv);
    verify_or_suspect(out, target, "single-element chain substitution");
    return out;
  }
  if (pv.trivial())
    throw TrivialPathError("path of '" + v0 + "' is a single vertex");

  int lo = std::min(pv.a, pv.b), hi = std::max(pv.a, pv.b);
  int a = -1, b = -1;
  for (int cand : {lo, hi})
    if (!other_trivials_at(modelH, cand, v0).empty()) {
      a = cand;
      b = cand == lo ? hi : lo;
      break;
    }
  if (a < 0)
    throw NotFlaggedError("path of '" + v0 +
                          "' does not end on a trivial path; use the interval substitution");

  int c = modelH.tree().path_between(b, a)[1];
  RetractionPlan plan = below_enders_at(modelH, h, v0, b);
  int sb = static_cast<int>(plan.groups.size());

  std::vector<int> fresh;
  CptModel work = modelH.subdivide(b, c, m - 1 + sb, &fresh);
  work = work.without_element(v0);
  for (int j = 1; j <= m; ++j) {
    const std::string& name = chain_order[static_cast<size_t>(j - 1)];
    if (j == m)
      work = work.with_path(name, {b, a});
    else
      work = work.with_path(name, {fresh[static_cast<size_t>(m - 1 - j)], a});
  }
  for (int s = 0; s < sb; ++s) {
    int slot = fresh[static_cast<size_t>(m - 1 + s)];
    for (const auto& w : plan.groups[static_cast<size_t>(s)].second) {
      int far = plan.groups[static_cast<size_t>(s)].first;
      work = work.with_path(w, far == b ? PathInTree{slot, slot} : PathInTree{slot, far});
    }
  }

  verify_or_suspect(work, target, "nested chain substitution");
  return work;
}

CptModel build_associated_representation(const Poset& p, const CptModel& model_p,
                                         const std::optional<CptModel>& model_pd,
                                         const Poset& q) {
  {
    auto rep = check_realizes(model_p, p);
    if (!rep.ok)
      throw PreconditionError("model_p does not realize p: " + rep.violations.front());
  }
  if (model_pd) {
    auto rep = check_realizes(*model_pd, p.dual());
    if (!rep.ok)
      throw PreconditionError("model_pd does not realize the dual: " +
                              rep.violations.front());
  }
  if (!is_associated(p, q))
    throw NotAssociatedError("p and q have different comparability graphs");

  int n = p.size();
  if (n == 0) return CptModel(HostTree::single_vertex(0), {});
  if (n == 1) {
    std::map<std::string, PathInTree> paths;
    paths.emplace(p.elements().front(), PathInTree{0, 1});
    return CptModel(HostTree::from_edges({{0, 1}}), std::move(paths));
  }

  auto comps = comparability_components(p);
  if (comps.size() > 1) {
    // Assemble per-component models on branches of a fresh spine vertex;
    // paths never meet across components, so no relation can appear.
    std::vector<std::pair<int, int>> edges;
    std::map<std::string, PathInTree> paths;
    int next = 1;
    for (const auto& comp : comps) {
      CptModel sub = build_associated_representation(
          p.induced(comp), model_p.restricted_to(comp),
          model_pd ? std::optional<CptModel>(model_pd->restricted_to(comp))
                   : std::nullopt,
          q.induced(comp));
      std::map<int, int> remap;
      for (int v : sub.tree().vertices()) remap[v] = next++;
      for (auto [u, v] : sub.tree().edges()) edges.push_back({remap[u], remap[v]});
      edges.push_back({0, remap[sub.tree().vertices().front()]});
      for (const auto& [name, path] : sub.paths())
        paths.emplace(name, PathInTree{remap[path.a], remap[path.b]});
    }
    CptModel joined(HostTree::from_edges(edges), std::move(paths));
    verify_or_suspect(joined, q, "joining per-component models");
    return joined;
  }

  ModularPartition partition = maximal_modular_partition(p);
  Poset quot = quotient(p, partition.parts);

  if (ci_recognize(quot)) {
    // CI quotients make every associated poset CI; embed q directly.
    auto rq = ci_recognize(q);
    if (!rq)
      throw SuspicionError(
          "quotient is an interval containment order but an associated poset has no realizer");
    CptModel out = ci_to_cpt(ci_model_from_realizer(q, *rq));
    verify_or_suspect(out, q, "direct interval embedding");
    return out;
  }

  if (partition.kind != PartitionKind::prime)
    throw InternalError("connected quotient is neither prime nor an interval containment order");

  Poset quot_q = [&] {
    try {
      return quotient(q, partition.parts);
    } catch (const NotAPartitionOfModulesError&) {
      throw NotAssociatedError("the strong modules of q differ from p's");
    }
  }();

  Poset base = p;
  CptModel m0 = model_p;
  if (quot_q == quot) {
    // q orients the quotient exactly as p does.
  } else if (quot_q == quot.dual()) {
    base = p.dual();
    if (model_pd) {
      m0 = *model_pd;
    } else {
      try {
        SearchResult sr = brute_force_cpt(base);
        if (!sr.model)
          throw SuspicionError("the dual admits no path model in the complete space");
        m0 = *sr.model;
      } catch (const BudgetExceededError&) {
        throw SuspicionError("dual model search exceeded its budget");
      }
    }
  } else {
    throw NotAssociatedError("the quotient of q matches neither p's quotient nor its dual");
  }

  ModularPartition partition_b = maximal_modular_partition(base);
  NormalizedModel norm = normalize(m0, base);
  QuotientModel qm = quotient_model(norm, base, partition_b);
  CptModel model = qm.model;

  SubstitutionPlan plan;
  plan.use_dual = !(quot_q == quot);
  for (const auto& [rep, part] : qm.parts) {
    if (part.size() == 1) continue;
    Poset qi = q.induced(part);
    bool flagged = std::find(qm.blocked_reps.begin(), qm.blocked_reps.end(), rep) !=
                   qm.blocked_reps.end();
    if (!flagged) {
      // A smaller blocked chain inside the part can leave the
      // representative's path ending on a trivial; the chain laying covers
      // that case whenever the part is totally ordered.
      bool chain = true;
      for (size_t i = 0; chain && i < part.size(); ++i)
        for (size_t j = i + 1; chain && j < part.size(); ++j)
          if (!qi.comparable(part[i], part[j])) chain = false;
      if (chain && !model.path_of(rep).trivial()) {
        const PathInTree& pv = model.path_of(rep);
        for (int end : {pv.a, pv.b})
          if (!other_trivials_at(model, end, rep).empty()) flagged = true;
      }
    }
    SubstitutionStep step;
    step.vertex = rep;
    if (flagged) {
      std::vector<std::string> chain_order(part);
      std::sort(chain_order.begin(), chain_order.end(),
                [&](const std::string& s, const std::string& t) { return qi.less(s, t); });
      step.clique = true;
      step.chain_order = chain_order;
      model = substitute_blocked_clique(model, rep, chain_order);
    } else {
      auto rqi = ci_recognize(qi);
      if (!rqi)
        throw SuspicionError("a maximal strong module is not an interval containment order");
      step.intervals = compress_ci_model(ci_model_from_realizer(qi, *rqi));
      model = ensure_min_path_length(model, rep, 4);
      model = substitute_ci(model, rep, *step.intervals);
    }
    plan.steps.push_back(std::move(step));
  }

  verify_or_suspect(model, q, "the substitution pipeline");
  return model;
}

}  // namespace cpt
