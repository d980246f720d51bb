#include "cpt/normalize.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cpt/ci.hpp"
#include "cpt/errors.hpp"
#include "cpt/modular.hpp"

namespace cpt {

namespace {

void verify_or_suspect(const CptModel& m, const Poset& p, const std::string& what) {
  auto rep = check_realizes(m, p);
  if (!rep.ok)
    throw SuspicionError(what + " broke the realization: " + rep.violations.front());
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw PreconditionError(msg);
}

void require_strong_module(const Poset& p, const std::vector<std::string>& module) {
  try {
    if (!is_strong_module(p, module))
      throw PreconditionError("the given set is a module but not strong");
  } catch (const NotAModuleError&) {
    throw PreconditionError("the given set is not a module");
  }
}

bool all_comparable(const Poset& p, const std::vector<std::string>& m) {
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = i + 1; j < m.size(); ++j)
      if (!p.comparable(m[i], m[j])) return false;
  return true;
}

bool all_incomparable(const Poset& p, const std::vector<std::string>& m) {
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = i + 1; j < m.size(); ++j)
      if (p.comparable(m[i], m[j])) return false;
  return true;
}

std::vector<std::string> containers_of(const Poset& p,
                                       const std::vector<std::string>& module) {
  std::set<std::string> mem(module.begin(), module.end());
  std::vector<std::string> out;
  for (const auto& x : p.elements()) {
    if (mem.count(x)) continue;
    bool above_all = true;
    for (const auto& m : module)
      if (!p.less(m, x)) {
        above_all = false;
        break;
      }
    if (above_all) out.push_back(x);
  }
  return out;
}

int far_end(const CptModel& model, const std::string& name, int a) {
  const PathInTree& p = model.path_of(name);
  if (p.a == a) return p.b;
  if (p.b == a) return p.a;
  throw InternalError("path of '" + name + "' does not end at the given vertex");
}

bool ends_at(const CptModel& model, const std::string& name, int a) {
  const PathInTree& p = model.path_of(name);
  return p.a == a || p.b == a;
}

int arrival_neighbor(const CptModel& model, const std::string& name, int a) {
  int far = far_end(model, name, a);
  if (far == a) throw InternalError("trivial path has no arrival neighbor");
  return model.tree().path_between(a, far)[1];
}

// Members sorted so that x < y in p puts x first; incomparable pairs fall
// back to name order. Within a nested family this is the containment order.
std::vector<std::string> sorted_by_order(const Poset& p,
                                         std::vector<std::string> names) {
  std::sort(names.begin(), names.end(), [&](const std::string& x, const std::string& y) {
    if (p.less(x, y)) return true;
    if (p.less(y, x)) return false;
    return x < y;
  });
  return names;
}

std::vector<std::string> trivials_at(const CptModel& model, int a) {
  std::vector<std::string> out;
  for (const auto& [name, path] : model.paths())
    if (path.trivial() && path.a == a) out.push_back(name);
  return out;
}

// Elements whose (non-trivial) path covers the vertex a. In a valid model
// these are exactly the elements above everything that sits trivially on a.
std::vector<std::string> covering_paths(const CptModel& model, int a) {
  std::vector<std::string> out;
  for (const auto& [name, path] : model.paths()) {
    if (path.trivial()) continue;
    if (model.path_vertex_set(name).count(a)) out.push_back(name);
  }
  return out;
}

// Core trivial-path splay: turns all trivial paths sitting on vertex a into
// staggered spans on a subdivided edge a-b, so they pairwise overlap without
// containment while every path that covered a contains all of them.
// prefer_toward, if nonnegative, names a vertex whose direction is known to
// lie inside every covering path (e.g. another trivial spot of the module).
CptModel splay_trivials_at(const CptModel& model, int a, int prefer_toward) {
  std::vector<std::string> e = trivials_at(model, a);
  if (e.empty()) throw InternalError("no trivial path at the splay vertex");
  std::vector<std::string> cover = covering_paths(model, a);

  int b = -1;
  std::vector<std::string> to_extend;
  CptModel work = model;
  if (prefer_toward >= 0 && prefer_toward != a) {
    b = work.tree().path_between(a, prefer_toward)[1];
  } else if (cover.empty()) {
    if (work.tree().degree(a) == 0) {
      std::vector<int> fresh;
      work = work.grow_branch(a, 1, &fresh);
      b = fresh[0];
    } else {
      b = work.tree().neighbors(a).front();
    }
  } else {
    std::set<int> common(work.tree().neighbors(a).begin(),
                         work.tree().neighbors(a).end());
    for (const auto& x : cover) {
      auto vs = work.path_vertex_set(x);
      for (auto it = common.begin(); it != common.end();)
        it = vs.count(*it) ? std::next(it) : common.erase(it);
    }
    if (!common.empty()) {
      b = *common.begin();
    } else {
      // Every neighbor is missed by some covering path. Paths stopping at a
      // can stretch across it onto the fresh chain, so any side shared by
      // all the crossing paths works; with no such side there is no room.
      std::set<int> sides(work.tree().neighbors(a).begin(),
                          work.tree().neighbors(a).end());
      bool any_crosser = false;
      for (const auto& x : cover) {
        if (ends_at(work, x, a)) continue;
        any_crosser = true;
        auto vs = work.path_vertex_set(x);
        for (auto it = sides.begin(); it != sides.end();)
          it = vs.count(*it) ? std::next(it) : sides.erase(it);
      }
      if (any_crosser && sides.empty())
        throw SuspicionError("trivial paths at vertex " + std::to_string(a) +
                             " are pinned by paths crossing it on divergent sides");
      b = any_crosser ? *sides.begin() : arrival_neighbor(work, cover.front(), a);
      to_extend = cover;
    }
  }

  int k = static_cast<int>(e.size());
  std::vector<int> fresh;
  work = work.subdivide(a, b, 2 * k - 1, &fresh);
  std::vector<int> pos;
  pos.push_back(a);
  pos.insert(pos.end(), fresh.begin(), fresh.end());
  std::sort(e.begin(), e.end());
  for (int t = 0; t < k; ++t)
    work = work.with_path(e[t], {pos[t], pos[k + t]});
  int chain_end = pos[2 * k - 1];
  for (const auto& x : to_extend)
    if (!work.path_vertex_set(x).count(chain_end))
      work = work.with_path(x, {far_end(work, x, a), chain_end});
  return work;
}

// Shared machinery for a single trivial element z inside a module whose
// superiors-within-the-module pin its placement. Case analysis runs on how
// the superiors meet z's vertex: a shared neighbor, a two-sided crossing,
// all stopping there, mixed with a shared through side, or retractable.
// Members with identical paths are incomparable and must stay that way, so
// they share one nesting depth; first appearance in the given order claims
// the next depth. Comparable members never share a path, and the order is a
// linear extension, so nested stems get increasing depths.
std::vector<int> nest_depths(const CptModel& model,
                             const std::vector<std::string>& ordered,
                             int* groups) {
  std::map<std::pair<int, int>, int> depth_of;
  std::vector<int> out;
  for (const auto& m : ordered) {
    PathInTree pt = model.path_of(m);
    std::pair<int, int> key{std::min(pt.a, pt.b), std::max(pt.a, pt.b)};
    auto [it, inserted] = depth_of.try_emplace(key, static_cast<int>(depth_of.size()));
    out.push_back(it->second);
  }
  *groups = static_cast<int>(depth_of.size());
  return out;
}

CptModel eliminate_single_pinned(const CptModel& model, const Poset& p,
                                 const std::vector<std::string>& module,
                                 const std::string& z) {
  int a = model.path_of(z).a;
  std::vector<std::string> sup;
  for (const auto& m : module)
    if (p.less(z, m)) sup.push_back(m);
  if (sup.empty()) return splay_trivials_at(model, a, -1);

  for (const auto& m : sup)
    if (!model.path_vertex_set(m).count(a))
      throw SuspicionError("a superior of '" + z + "' misses its trivial vertex");

  // Case 1: some neighbor of a lies on every superior path.
  std::set<int> common(model.tree().neighbors(a).begin(),
                       model.tree().neighbors(a).end());
  for (const auto& m : sup) {
    auto vs = model.path_vertex_set(m);
    for (auto it = common.begin(); it != common.end();)
      it = vs.count(*it) ? std::next(it) : common.erase(it);
  }
  if (!common.empty()) {
    int d0 = *common.begin();
    std::vector<int> fresh;
    CptModel work = model.subdivide(a, d0, 1, &fresh);
    return work.with_path(z, {a, fresh[0]});
  }

  // Case 2: superiors meet a from exactly two directions; enders on each
  // side relocate across onto the other side's fresh chain.
  std::set<int> used;
  std::vector<std::string> enders, throughs;
  for (const auto& m : sup) {
    auto vs = model.path_vertex_set(m);
    for (int nb : model.tree().neighbors(a))
      if (vs.count(nb)) used.insert(nb);
    (ends_at(model, m, a) ? enders : throughs).push_back(m);
  }
  if (used.size() == 2) {
    auto it = used.begin();
    int b = *it++;
    int c = *it;
    std::vector<std::string> eb, ec;
    for (const auto& m : enders)
      (arrival_neighbor(model, m, a) == b ? eb : ec).push_back(m);
    if (!eb.empty() && !ec.empty()) {
      eb = sorted_by_order(p, eb);
      ec = sorted_by_order(p, ec);
      int gb = 0, gc = 0;
      std::vector<int> db = nest_depths(model, eb, &gb);
      std::vector<int> dc = nest_depths(model, ec, &gc);
      std::vector<int> ab, ac;
      CptModel work = model.subdivide(a, b, gc + 1, &ab);
      work = work.subdivide(a, c, gb + 1, &ac);
      for (size_t t = 0; t < eb.size(); ++t)
        work = work.with_path(eb[t], {far_end(work, eb[t], a), ac[db[t]]});
      for (size_t t = 0; t < ec.size(); ++t)
        work = work.with_path(ec[t], {far_end(work, ec[t], a), ab[dc[t]]});
      return work.with_path(z, {ab[0], ac[0]});
    }
  }

  // Case 3: every superior stops at a; subdivide one arrival edge and pull
  // the other enders into the fresh vertex.
  if (throughs.empty()) {
    int s = arrival_neighbor(model, enders.front(), a);
    std::vector<int> fresh;
    CptModel work = model.subdivide(a, s, 1, &fresh);
    for (const auto& m : enders)
      if (!work.path_vertex_set(m).count(fresh[0]))
        work = work.with_path(m, {far_end(work, m, a), fresh[0]});
    return work.with_path(z, {a, fresh[0]});
  }

  // Case 4: enders mix with throughs that still share a neighbor of a.
  // Subdividing that through side once and stretching every ender across a
  // onto the fresh vertex hands z the fresh edge without moving anything
  // else; the final check guards paths above the stretched enders.
  if (!enders.empty() && trivials_at(model, a).size() == 1) {
    std::set<int> tcommon(model.tree().neighbors(a).begin(),
                          model.tree().neighbors(a).end());
    for (const auto& m : throughs) {
      auto vs = model.path_vertex_set(m);
      for (auto it = tcommon.begin(); it != tcommon.end();)
        it = vs.count(*it) ? std::next(it) : tcommon.erase(it);
    }
    if (!tcommon.empty()) {
      int b = *tcommon.begin();
      std::vector<int> fresh;
      CptModel work = model.subdivide(a, b, 1, &fresh);
      for (const auto& m : enders)
        if (!work.path_vertex_set(m).count(fresh[0]))
          work = work.with_path(m, {far_end(work, m, a), fresh[0]});
      work = work.with_path(z, {a, fresh[0]});
      verify_or_suspect(work, p,
                        "stretching enders across the pinned point of '" + z + "'");
      return work;
    }
  }

  // Case 5: a through side sometimes carries no relation of its own, so the
  // through can retract into an ender at a and the earlier cases rerun.
  // Only retractions that keep the whole realization are taken; each one
  // shortens a path, so the recursion bottoms out.
  for (const auto& t : throughs) {
    PathInTree pt = model.path_of(t);
    for (int far : {pt.a, pt.b}) {
      CptModel work = model.with_path(t, {far, a});
      if (!realizes(work, p)) continue;
      return eliminate_single_pinned(work, p, module, z);
    }
  }

  throw SuspicionError("superior paths pinch the trivial path of '" + z +
                       "' at vertex " + std::to_string(a));
}

}  // namespace

CptModel eliminate_trivial_clique(const CptModel& model, const Poset& p,
                                  const std::vector<std::string>& module,
                                  const std::string& z) {
  require_strong_module(p, module);
  require(module.size() >= 2, "module must have at least two elements");
  require(all_comparable(p, module), "module is not a chain");
  require(std::find(module.begin(), module.end(), z) != module.end(),
          "'" + z + "' is not in the module");
  require(model.path_of(z).trivial(), "'" + z + "' is not trivial in the model");
  int a = model.path_of(z).a;
  if (trivials_at(model, a).size() > 1)
    throw SuspicionError("another trivial path shares the vertex of '" + z + "'");

  std::vector<std::string> rest = sorted_by_order(p, [&] {
    std::vector<std::string> r;
    for (const auto& m : module)
      if (m != z) r.push_back(m);
    return r;
  }());
  const std::string& mstar = rest.front();
  auto mstar_set = model.path_vertex_set(mstar);
  if (!mstar_set.count(a))
    throw SuspicionError("the smallest chain path misses the trivial vertex");

  std::vector<std::string> enders, throughs;
  for (const auto& m : rest) (ends_at(model, m, a) ? enders : throughs).push_back(m);

  CptModel work = model;
  if (enders.empty()) {
    // a is interior to every other path; one subdivision on either side.
    int b = -1;
    for (int nb : work.tree().neighbors(a))
      if (mstar_set.count(nb)) {
        b = nb;
        break;
      }
    std::vector<int> fresh;
    work = work.subdivide(a, b, 1, &fresh);
    work = work.with_path(z, {a, fresh[0]});
  } else if (throughs.empty()) {
    // All other paths stop at a through one shared neighbor.
    int b = arrival_neighbor(work, mstar, a);
    std::vector<int> fresh;
    work = work.subdivide(a, b, 1, &fresh);
    work = work.with_path(z, {a, fresh[0]});
  } else {
    // Mixed: enders hug one side, the through paths fix the other; enders
    // stretch past a so z can sit strictly inside all of them.
    int b = arrival_neighbor(work, mstar, a);
    std::string tmin = sorted_by_order(p, throughs).front();
    int c = -1;
    for (int nb : work.tree().neighbors(a))
      if (nb != b && work.path_vertex_set(tmin).count(nb)) {
        c = nb;
        break;
      }
    if (c < 0) throw SuspicionError("through path of the chain does not cross its trivial vertex");
    std::vector<int> fi, fj;
    work = work.subdivide(a, b, 1, &fi);
    work = work.subdivide(a, c, 1, &fj);
    for (const auto& m : enders)
      work = work.with_path(m, {far_end(work, m, a), fj[0]});
    work = work.with_path(z, {fi[0], fj[0]});
  }
  verify_or_suspect(work, p, "chain-module trivial elimination");
  return work;
}

CptModel eliminate_trivial_stable(const CptModel& model, const Poset& p,
                                  const std::vector<std::string>& module) {
  require_strong_module(p, module);
  require(module.size() >= 2, "module must have at least two elements");
  require(all_incomparable(p, module), "module is not an antichain");
  auto module_trivial_spots = [&](const CptModel& m) {
    std::set<int> spots;
    for (const auto& u : module)
      if (m.path_of(u).trivial()) spots.insert(m.path_of(u).a);
    return spots;
  };
  require(!module_trivial_spots(model).empty(), "module has no trivial element");

  CptModel work = model;
  for (auto spots = module_trivial_spots(work); !spots.empty();
       spots = module_trivial_spots(work)) {
    int a = *spots.begin();
    int other = spots.size() > 1 ? *std::next(spots.begin()) : -1;
    work = splay_trivials_at(work, a, other);
  }
  verify_or_suspect(work, p, "antichain-module trivial elimination");
  return work;
}

CptModel eliminate_trivial_prime(const CptModel& model, const Poset& p,
                                 const std::vector<std::string>& module,
                                 const std::string& z) {
  require_strong_module(p, module);
  require(std::find(module.begin(), module.end(), z) != module.end(),
          "'" + z + "' is not in the module");
  require(model.path_of(z).trivial(), "'" + z + "' is not trivial in the model");
  Poset sub = p.induced(module);
  require(maximal_modular_partition(sub).kind == PartitionKind::prime,
          "module does not decompose as prime");

  int a = model.path_of(z).a;
  auto colocated = trivials_at(model, a);
  CptModel work = model;
  if (colocated.size() > 1) {
    for (const auto& t : colocated)
      if (std::find(module.begin(), module.end(), t) == module.end())
        throw SuspicionError("outside trivial path shares the vertex of '" + z + "'");
    work = splay_trivials_at(work, a, -1);
  } else {
    work = eliminate_single_pinned(work, p, module, z);
  }
  verify_or_suspect(work, p, "prime-module trivial elimination");
  return work;
}

CptModel eliminate_all_trivial_in_modules(const CptModel& model, const Poset& p) {
  auto mods = strong_modules(p);
  std::vector<std::vector<std::string>> proper;
  for (auto& m : mods)
    if (m.size() >= 2 && static_cast<int>(m.size()) < p.size()) proper.push_back(m);

  CptModel work = model;
  for (int guard = 0; guard <= 4 * p.size() + 8; ++guard) {
    const std::vector<std::string>* target_mod = nullptr;
    std::string target_z;
    for (const auto& m : proper) {
      for (const auto& el : m)
        if (work.path_of(el).trivial()) {
          target_mod = &m;
          target_z = el;
          break;
        }
      if (target_mod) break;
    }
    if (!target_mod) {
      verify_or_suspect(work, p, "module trivial sweep");
      return work;
    }
    const auto& m = *target_mod;
    if (all_comparable(p, m)) {
      work = eliminate_trivial_clique(work, p, m, target_z);
    } else if (all_incomparable(p, m)) {
      work = eliminate_trivial_stable(work, p, m);
    } else {
      // Mixed or prime composition; the pinned-superior machinery covers both.
      auto colocated = trivials_at(work, work.path_of(target_z).a);
      bool all_inside = true;
      for (const auto& t : colocated)
        if (std::find(m.begin(), m.end(), t) == m.end()) all_inside = false;
      if (colocated.size() > 1 && all_inside)
        work = splay_trivials_at(work, work.path_of(target_z).a, -1);
      else
        work = eliminate_single_pinned(work, p, m, target_z);
      verify_or_suspect(work, p, "module trivial elimination");
    }
  }
  throw InternalError("module trivial sweep failed to converge");
}

namespace {

struct EndingSiteInfo {
  std::vector<std::string> enders, throughs;
};

// M's paths all cover a when this is called.
EndingSiteInfo site_info(const CptModel& model,
                         const std::vector<std::string>& module, int a) {
  EndingSiteInfo info;
  for (const auto& m : module)
    (ends_at(model, m, a) ? info.enders : info.throughs).push_back(m);
  return info;
}

}  // namespace

EndingDiagnosis diagnose_endings(const CptModel& model, const Poset& p) {
  EndingDiagnosis d;
  auto mods = strong_modules(p);
  std::vector<std::string> trivs = model.trivial_elements();
  for (const auto& m : mods) {
    if (m.size() < 2 || static_cast<int>(m.size()) == p.size()) continue;
    std::set<std::string> mem(m.begin(), m.end());
    auto containers = containers_of(p, m);
    for (const auto& z : trivs) {
      if (mem.count(z)) continue;
      int a = model.path_of(z).a;
      bool covers_all = true;
      for (const auto& el : m)
        if (!model.path_vertex_set(el).count(a)) {
          covers_all = false;
          break;
        }
      if (!covers_all) continue;

      EndingRecord rec;
      rec.module = m;
      rec.trivial_element = z;
      rec.vertex = a;
      rec.has_container = !containers.empty();
      auto info = site_info(model, m, a);
      std::set<int> arrivals;
      for (const auto& el : info.enders)
        if (!model.path_of(el).trivial())
          arrivals.insert(arrival_neighbor(model, el, a));
      rec.arrival_neighbors.assign(arrivals.begin(), arrivals.end());
      rec.sides = arrivals.size() >= 2 ? EndingKind::two_sided : EndingKind::one_sided;
      if (info.enders.empty())
        rec.kind = EndingCase::interior;
      else if (info.throughs.empty())
        rec.kind = EndingCase::complete;
      else
        rec.kind = EndingCase::partial;

      if (rec.kind == EndingCase::complete && all_comparable(p, m)) {
        bool free_found = false;
        for (int b : model.tree().neighbors(a)) {
          bool in_module = false;
          for (const auto& el : m)
            if (model.path_vertex_set(el).count(b)) in_module = true;
          if (in_module) continue;
          bool in_all_containers = true;
          for (const auto& x : containers)
            if (!model.path_vertex_set(x).count(b)) in_all_containers = false;
          if (in_all_containers) {
            free_found = true;
            break;
          }
        }
        if (free_found) {
          rec.clique_status = CliqueStatus::is_free;
        } else {
          rec.clique_status = CliqueStatus::blocked;
          bool stops = false;
          for (const auto& x : containers)
            if (ends_at(model, x, a)) stops = true;
          if (stops)
            rec.blocked_reason = "a containing path also stops at the trivial vertex";
          else if (!containers.empty())
            rec.blocked_reason = "containing paths diverge at the trivial vertex";
          else
            rec.blocked_reason = "no free neighbor at the trivial vertex";
        }
      }
      d.records.push_back(std::move(rec));
    }
  }
  return d;
}

CptModel spread_complete_ending(const CptModel& model, const Poset& p,
                                const std::vector<std::string>& module, int a) {
  require_strong_module(p, module);
  require(module.size() >= 2, "module must have at least two elements");
  for (const auto& m : module)
    require(ends_at(model, m, a),
            "path of '" + m + "' does not end at vertex " + std::to_string(a));

  auto containers = containers_of(p, module);
  std::vector<std::string> ordered = sorted_by_order(p, module);
  CptModel work = model;

  if (containers.empty()) {
    // Fresh branch at a; members re-end along it, ranked by the module's
    // own order so nesting matches comparability.
    int groups = 0;
    std::vector<int> depth = nest_depths(model, ordered, &groups);
    std::vector<int> g;
    work = work.grow_branch(a, groups, &g);
    for (size_t r = 0; r < ordered.size(); ++r)
      work = work.with_path(ordered[r], {far_end(work, ordered[r], a), g[depth[r]]});
    verify_or_suspect(work, p, "branch spread of a complete ending");
    return work;
  }

  std::map<int, std::vector<std::string>> by_side;
  for (const auto& m : module) {
    if (model.path_of(m).trivial())
      throw SuspicionError("complete ending with a trivial member path");
    by_side[arrival_neighbor(model, m, a)].push_back(m);
  }

  if (by_side.size() >= 2) {
    // Cyclic cross-extension: each side's nested family stretches past a
    // into the next side's freshly subdivided edge.
    std::vector<int> sides;
    for (auto& [nb, _] : by_side) sides.push_back(nb);
    int k = static_cast<int>(sides.size());
    std::vector<std::vector<std::string>> members(k);
    std::vector<std::vector<int>> depth(k);
    std::vector<int> groups(k, 0);
    for (int t = 0; t < k; ++t) {
      members[t] = sorted_by_order(p, by_side[sides[t]]);
      depth[t] = nest_depths(model, members[t], &groups[t]);
    }
    std::vector<std::vector<int>> fresh(k);
    for (int t = 0; t < k; ++t)
      work = work.subdivide(a, sides[(t + 1) % k], groups[t], &fresh[(t + 1) % k]);
    for (int t = 0; t < k; ++t) {
      auto& chain = fresh[(t + 1) % k];
      for (size_t r = 0; r < members[t].size(); ++r)
        work = work.with_path(members[t][r],
                              {far_end(work, members[t][r], a), chain[depth[t][r]]});
    }
    verify_or_suspect(work, p, "cross-extension spread of a complete ending");
    return work;
  }

  // One arrival side with containers: the module is a nested chain; it can
  // fan out only through a neighbor free of module paths that every
  // containing path crosses.
  int own = by_side.begin()->first;
  int b = -1;
  for (int nb : work.tree().neighbors(a)) {
    if (nb == own) continue;
    bool ok = true;
    for (const auto& m : module)
      if (work.path_vertex_set(m).count(nb)) ok = false;
    for (const auto& x : containers)
      if (!work.path_vertex_set(x).count(nb)) ok = false;
    if (ok) {
      b = nb;
      break;
    }
  }
  if (b < 0) {
    std::string reason = "containing paths diverge at the trivial vertex";
    for (const auto& x : containers)
      if (ends_at(work, x, a)) reason = "a containing path also stops at the trivial vertex";
    throw BlockedCliqueError("module cannot leave vertex " + std::to_string(a) +
                             ": " + reason);
  }
  int fan_groups = 0;
  std::vector<int> fan_depth = nest_depths(work, ordered, &fan_groups);
  std::vector<int> h;
  work = work.subdivide(a, b, fan_groups, &h);
  for (size_t r = 0; r < ordered.size(); ++r)
    work = work.with_path(ordered[r], {far_end(work, ordered[r], a), h[fan_depth[r]]});
  verify_or_suspect(work, p, "fan spread of a complete ending");
  return work;
}

CptModel fix_partial_ending(const CptModel& model, const Poset& p,
                            const std::vector<std::string>& module,
                            const std::string& z) {
  require_strong_module(p, module);
  require(module.size() >= 2, "module must have at least two elements");
  require(std::find(module.begin(), module.end(), z) == module.end(),
          "'" + z + "' must lie outside the module");
  require(model.path_of(z).trivial(), "'" + z + "' is not trivial in the model");
  int a = model.path_of(z).a;
  for (const auto& m : module)
    require(model.path_vertex_set(m).count(a) != 0,
            "path of '" + m + "' does not cover the trivial vertex");
  auto info = site_info(model, module, a);
  require(!info.enders.empty() && !info.throughs.empty(),
          "the module ending at '" + z + "' is not partial");

  // Common segment of all member paths; a sits at one of its ends.
  std::set<int> common = model.path_vertex_set(module.front());
  for (const auto& m : module) {
    auto vs = model.path_vertex_set(m);
    for (auto it = common.begin(); it != common.end();)
      it = vs.count(*it) ? std::next(it) : common.erase(it);
  }
  int bv = a;
  int best = -1;
  for (int v : common) {
    int d = static_cast<int>(model.tree().path_between(a, v).size());
    if (d > best) {
      best = d;
      bv = v;
    }
  }

  auto containers = containers_of(p, module);
  CptModel work = model;

  if (containers.empty()) {
    // Nothing sits above the module, so its far extensions carry no
    // relations; re-lay the whole family as interval containment across two
    // fresh branches at the segment ends.
    auto r = ci_recognize(p.induced(module));
    if (!r)
      throw SuspicionError("module with a partial ending is not an interval containment order");
    CiModel cim = ci_model_from_realizer(p.induced(module), *r);
    int n = static_cast<int>(module.size());
    std::vector<int> h, g;
    work = work.grow_branch(bv, n, &h);
    work = work.grow_branch(a, n, &g);
    // Index along each branch by how far the interval reaches on that side:
    // wider left end = deeper on the bv branch, wider right = deeper on a's.
    std::vector<std::string> by_lo = cim.elements(), by_hi = cim.elements();
    std::sort(by_lo.begin(), by_lo.end(), [&](const auto& x, const auto& y) {
      return cim.interval_of(x).lo > cim.interval_of(y).lo;
    });
    std::sort(by_hi.begin(), by_hi.end(), [&](const auto& x, const auto& y) {
      return cim.interval_of(x).hi < cim.interval_of(y).hi;
    });
    std::map<std::string, int> hpos, gpos;
    for (int i = 0; i < n; ++i) hpos[by_lo[i]] = h[i];
    for (int i = 0; i < n; ++i) gpos[by_hi[i]] = g[i];
    for (const auto& m : module) work = work.with_path(m, {hpos[m], gpos[m]});
    verify_or_suspect(work, p, "re-laying a partially ending module");
    return work;
  }

  // With a containing path present, member paths use at most two directions
  // at a. If enders arrive from both, the common segment is just {a} and the
  // two nested families stretch across each other.
  {
    std::set<int> arrivals;
    for (const auto& e : info.enders)
      if (!work.path_of(e).trivial()) arrivals.insert(arrival_neighbor(work, e, a));
    if (arrivals.size() >= 2) {
      if (arrivals.size() > 2 || bv != a)
        throw SuspicionError("enders of a partial ending arrive from too many directions");
      auto it = arrivals.begin();
      int nb_l = *it++;
      int nb_r = *it;
      std::vector<std::string> left, right;
      for (const auto& e : info.enders)
        (arrival_neighbor(work, e, a) == nb_l ? left : right).push_back(e);
      std::vector<int> lef, rig;
      work = work.subdivide(a, nb_l, static_cast<int>(right.size()) + 1, &lef);
      work = work.subdivide(a, nb_r, static_cast<int>(left.size()) + 1, &rig);
      auto ls = sorted_by_order(p, left);
      auto rs = sorted_by_order(p, right);
      for (size_t t = 0; t < ls.size(); ++t)
        work = work.with_path(ls[t], {far_end(work, ls[t], a), rig[t]});
      for (size_t t = 0; t < rs.size(); ++t)
        work = work.with_path(rs[t], {far_end(work, rs[t], a), lef[t]});
      verify_or_suspect(work, p, "cross re-ending a partially ending module");
      return work;
    }
  }

  // Otherwise through paths continue past each segment end in a single
  // shared direction; enders relocate onto a fresh chain there.
  auto fix_side = [&](int end, const std::vector<std::string>& enders,
                      const std::vector<std::string>& throughs) {
    if (enders.empty()) return;
    int c = -1;
    int toward_common = -1;
    for (const auto& e : enders)
      if (!work.path_of(e).trivial()) {
        toward_common = arrival_neighbor(work, e, end);
        break;
      }
    for (const auto& t : throughs) {
      auto vs = work.path_vertex_set(t);
      for (int nb : work.tree().neighbors(end)) {
        if (nb == toward_common) continue;
        if (vs.count(nb)) {
          if (c >= 0 && c != nb)
            throw SuspicionError("through paths leave the segment end in different directions");
          c = nb;
        }
      }
    }
    if (c < 0) throw SuspicionError("no through path continues past the segment end");
    std::vector<int> fresh;
    work = work.subdivide(end, c, static_cast<int>(enders.size()), &fresh);
    auto ordered = sorted_by_order(p, enders);
    for (size_t t = 0; t < ordered.size(); ++t)
      work = work.with_path(ordered[t], {far_end(work, ordered[t], end), fresh[t]});
  };

  if (bv != a && !trivials_at(work, bv).empty()) {
    auto binfo = site_info(work, module, bv);
    if (!binfo.enders.empty() && !binfo.throughs.empty())
      fix_side(bv, binfo.enders, binfo.throughs);
  }
  fix_side(a, info.enders, info.throughs);
  verify_or_suspect(work, p, "re-ending a partially ending module");
  return work;
}

NormalizedModel normalize(const CptModel& model, const Poset& p) {
  {
    auto rep = check_realizes(model, p);
    if (!rep.ok)
      throw PreconditionError("input model does not realize the poset: " +
                              rep.violations.front());
  }
  NormalizedModel out{eliminate_all_trivial_in_modules(model, p), {}};
  auto flagged = [&](const std::vector<std::string>& m) {
    return std::find(out.blocked_modules.begin(), out.blocked_modules.end(), m) !=
           out.blocked_modules.end();
  };

  int guard = 4 * p.size() * p.size() + 16;
  for (int round = 0; round < guard; ++round) {
    EndingDiagnosis d = diagnose_endings(out.model, p);
    bool acted = false;
    for (const auto& rec : d.records) {
      if (rec.kind != EndingCase::partial) continue;
      out.model = fix_partial_ending(out.model, p, rec.module, rec.trivial_element);
      acted = true;
      break;
    }
    if (acted) continue;
    for (const auto& rec : d.records) {
      if (rec.kind != EndingCase::complete || flagged(rec.module)) continue;
      try {
        out.model = spread_complete_ending(out.model, p, rec.module, rec.vertex);
        acted = true;
        break;
      } catch (const BlockedCliqueError&) {
        out.blocked_modules.push_back(rec.module);
        acted = true;
        break;
      }
    }
    if (!acted) break;
    if (round + 1 == guard)
      throw InternalError("ending fixes failed to converge");
  }

  for (const auto& m : out.blocked_modules) {
    if (!all_comparable(p, m))
      throw SuspicionError("a blocked module is not a chain");
    for (const auto& s : strong_modules(p))
      if (s.size() >= 2 && s.size() < m.size() &&
          std::includes(m.begin(), m.end(), s.begin(), s.end()))
        throw SuspicionError("a blocked module contains a smaller strong module");
  }
  std::sort(out.blocked_modules.begin(), out.blocked_modules.end());
  verify_or_suspect(out.model, p, "normalization");
  return out;
}

}  // namespace cpt
