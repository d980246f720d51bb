// Acceptance gate: eight checks, one line each, nonzero exit on any failure.
// Time limits and sample sizes are pinned here on purpose.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cpt/ci.hpp"
#include "cpt/io.hpp"
#include "cpt/model.hpp"
#include "cpt/modular.hpp"
#include "cpt/normalize.hpp"
#include "cpt/oracle.hpp"
#include "cpt/poset.hpp"
#include "cpt/synthesize.hpp"
#include "helpers.hpp"

using cpt::CptModel;
using cpt::HostTree;
using cpt::PathInTree;
using cpt::Poset;
using testgen::OpCase;

namespace {

int failures = 0;

void report(int number, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s — %s\n", number, pass ? "PASS" : "FAIL",
              detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Poset fence4() {
  return Poset::from_pairs({"1", "2", "3", "4"},
                           {{"1", "2"}, {"3", "2"}, {"3", "4"}});
}

CptModel line_model(int len, std::map<std::string, PathInTree> paths) {
  return CptModel(testgen::line_tree(len), std::move(paths));
}

// ---------------------------------------------------------------- criterion 1

void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  auto posets = cpt::enumerate_posets(5);
  if (posets.size() != 63) {
    report(1, false, "expected 63 classes on 5 elements, got " +
                         std::to_string(posets.size()));
    return;
  }
  int mismatches = 0;
  for (const Poset& p : posets) {
    cpt::Classification c = cpt::classify(p);
    if (c.is_dually_cpt != c.is_strongly_cpt) ++mismatches;
  }
  double dt = seconds_since(t0);
  std::ostringstream msg;
  msg << "63 five-element posets classified, dually == strongly with "
      << mismatches << " exceptions in " << dt << "s (limit 600s)";
  report(1, mismatches == 0 && dt <= 600.0, msg.str());
}

// ---------------------------------------------------------------- criterion 2

void criterion_2() {
  int builds = 0, bad = 0;
  std::string first_bad;
  for (int n = 1; n <= 5; ++n) {
    for (const Poset& p : cpt::enumerate_posets(n)) {
      cpt::Classification c = cpt::classify(p);
      if (!c.is_dually_cpt || !c.cpt_model || !c.dual_model) {
        ++bad;
        if (first_bad.empty()) first_bad = "classify withheld a model for " + p.digest();
        continue;
      }
      for (const Poset& q :
           cpt::transitive_orientations(cpt::CompGraph::from_poset(p))) {
        ++builds;
        try {
          CptModel m = cpt::build_associated_representation(p, *c.cpt_model,
                                                            *c.dual_model, q);
          if (!cpt::realizes(m, q)) {
            ++bad;
            if (first_bad.empty()) first_bad = "output misses " + q.digest();
          }
        } catch (const std::exception& e) {
          ++bad;
          if (first_bad.empty()) first_bad = e.what();
        }
      }
    }
  }
  std::ostringstream msg;
  msg << builds << " orientation builds across all posets on up to 5 elements, "
      << bad << " failures";
  if (!first_bad.empty()) msg << " (first: " << first_bad << ")";
  report(2, bad == 0, msg.str());
}

// ---------------------------------------------------------------- criterion 3

struct OpStats {
  int applied = 0, bad = 0;
  std::string first_bad;
  void note(bool ok, const std::string& what) {
    ++applied;
    if (!ok) {
      ++bad;
      if (first_bad.empty()) first_bad = what;
    }
  }
};

bool no_trivial_in_unblocked_modules(const CptModel& m, const Poset& p,
                                     const std::vector<std::vector<std::string>>& blocked) {
  for (const auto& mod : cpt::strong_modules(p)) {
    if (mod.size() <= 1 || mod.size() == p.elements().size()) continue;
    if (std::find(blocked.begin(), blocked.end(), mod) != blocked.end()) continue;
    for (const auto& e : mod)
      if (m.path_of(e).trivial()) return false;
  }
  return true;
}

void criterion_3() {
  const int target = 500;
  const int max_attempts = 200 * target;
  std::map<std::string, OpStats> stats;

  // one frozen fixture per operation
  {
    CptModel m = line_model(13, {{"m0", {6, 6}}, {"m1", {5, 7}}, {"m2", {4, 8}},
                                 {"u", {3, 4}}, {"c0", {3, 9}}});
    Poset p = cpt::realized_poset(m);
    CptModel out = cpt::eliminate_trivial_clique(m, p, {"m0", "m1", "m2"}, "m0");
    stats["clique"].note(cpt::realizes(out, p) && !out.path_of("m0").trivial(),
                         "fixture");
  }
  {
    CptModel m = line_model(11, {{"m0", {2, 2}}, {"m1", {4, 5}}, {"m2", {7, 7}},
                                 {"c0", {1, 8}}});
    Poset p = cpt::realized_poset(m);
    CptModel out = cpt::eliminate_trivial_stable(m, p, {"m0", "m1", "m2"});
    stats["stable"].note(cpt::realizes(out, p) && !out.path_of("m0").trivial() &&
                             !out.path_of("m2").trivial(),
                         "fixture");
  }
  {
    CptModel m = line_model(15, {{"p2", {2, 9}}, {"p4", {7, 11}}, {"p1", {3, 5}},
                                 {"p3", {8, 8}}, {"c0", {1, 12}}});
    Poset p = cpt::realized_poset(m);
    CptModel out = cpt::eliminate_trivial_prime(m, p, {"p1", "p2", "p3", "p4"}, "p3");
    stats["prime"].note(cpt::realizes(out, p) && !out.path_of("p3").trivial(),
                        "fixture");
  }
  {
    CptModel m = line_model(13, {{"m0", {6, 6}}, {"m1", {5, 7}}, {"m2", {4, 8}},
                                 {"u", {3, 4}}, {"c0", {3, 9}}});
    Poset p = cpt::realized_poset(m);
    CptModel out = cpt::eliminate_all_trivial_in_modules(m, p);
    stats["all"].note(cpt::realizes(out, p) &&
                          no_trivial_in_unblocked_modules(out, p, {}),
                      "fixture");
  }
  {
    CptModel m = line_model(15, {{"m0", {6, 7}}, {"m1", {5, 7}}, {"z", {7, 7}},
                                 {"w", {7, 9}}, {"c0", {3, 10}}});
    Poset p = cpt::realized_poset(m);
    auto d = cpt::diagnose_endings(m, p);
    bool found = false;
    for (const auto& r : d.records)
      if (r.module == std::vector<std::string>{"m0", "m1"} && r.trivial_element == "z")
        found = r.vertex == 7 && r.clique_status == cpt::CliqueStatus::is_free;
    stats["diagnose"].note(found && cpt::realizes(m, p), "fixture");
  }
  {
    CptModel m = line_model(15, {{"m0", {6, 7}}, {"m1", {5, 7}}, {"z", {7, 7}},
                                 {"w", {7, 9}}, {"c0", {3, 10}}});
    Poset p = cpt::realized_poset(m);
    CptModel out = cpt::spread_complete_ending(m, p, {"m0", "m1"}, 7);
    stats["spread"].note(cpt::realizes(out, p), "fixture");
  }
  {
    CptModel m = line_model(13, {{"m0", {5, 6}}, {"m1", {4, 7}}, {"z", {6, 6}},
                                 {"w", {6, 8}}, {"c0", {2, 9}}});
    Poset p = cpt::realized_poset(m);
    CptModel out = cpt::fix_partial_ending(m, p, {"m0", "m1"}, "z");
    stats["fix"].note(cpt::realizes(out, p), "fixture");
  }
  {
    CptModel m = line_model(13, {{"m0", {6, 6}}, {"m1", {5, 7}}, {"m2", {4, 8}},
                                 {"u", {3, 4}}, {"c0", {3, 9}}});
    Poset p = cpt::realized_poset(m);
    cpt::NormalizedModel nm = cpt::normalize(m, p);
    stats["normalize"].note(cpt::realizes(nm.model, p) &&
                                no_trivial_in_unblocked_modules(nm.model, p,
                                                                nm.blocked_modules),
                            "fixture");
  }

  // randomized volume, one dedicated generator stream per operation
  {
    std::mt19937 g(7001);
    for (int a = 0; a < max_attempts && stats["clique"].applied <= target; ++a) {
      auto c = testgen::gen_clique_case(g);
      if (!c) continue;
      try {
        CptModel out = cpt::eliminate_trivial_clique(c->model, c->p, c->module, c->z);
        stats["clique"].note(cpt::realizes(out, c->p), "verdict lost");
      } catch (const std::exception& e) {
        stats["clique"].note(false, e.what());
      }
    }
  }
  {
    std::mt19937 g(7002);
    for (int a = 0; a < max_attempts && stats["stable"].applied <= target; ++a) {
      auto c = testgen::gen_stable_case(g);
      if (!c) continue;
      try {
        CptModel out = cpt::eliminate_trivial_stable(c->model, c->p, c->module);
        stats["stable"].note(cpt::realizes(out, c->p), "verdict lost");
      } catch (const std::exception& e) {
        stats["stable"].note(false, e.what());
      }
    }
  }
  {
    std::mt19937 g(7003);
    for (int a = 0; a < max_attempts && stats["prime"].applied <= target; ++a) {
      auto c = testgen::gen_prime_case(g);
      if (!c) continue;
      try {
        CptModel out = cpt::eliminate_trivial_prime(c->model, c->p, c->module, c->z);
        stats["prime"].note(cpt::realizes(out, c->p), "verdict lost");
      } catch (const std::exception& e) {
        stats["prime"].note(false, e.what());
      }
    }
  }
  {
    std::mt19937 g(7004);
    for (int a = 0; a < max_attempts && stats["all"].applied <= target; ++a) {
      CptModel m = testgen::random_line_model(g);
      Poset p = cpt::realized_poset(m);
      try {
        CptModel out = cpt::eliminate_all_trivial_in_modules(m, p);
        stats["all"].note(cpt::realizes(out, p), "verdict lost");
      } catch (const std::exception& e) {
        stats["all"].note(false, e.what());
      }
    }
  }
  {
    std::mt19937 g(7005);
    for (int a = 0; a < max_attempts && stats["diagnose"].applied <= target; ++a) {
      CptModel m = testgen::gen_ending_model(g, testgen::coin(g, 0.4));
      Poset p = cpt::realized_poset(m);
      try {
        auto d = cpt::diagnose_endings(m, p);
        bool ok = cpt::realizes(m, p);  // pure query, model must be untouched
        for (const auto& r : d.records) {
          if (!cpt::is_module(p, r.module) || !cpt::is_strong_module(p, r.module))
            ok = false;
          if (r.clique_status == cpt::CliqueStatus::blocked && r.blocked_reason.empty())
            ok = false;
        }
        stats["diagnose"].note(ok, "bad record");
      } catch (const std::exception& e) {
        stats["diagnose"].note(false, e.what());
      }
    }
  }
  {
    std::mt19937 g(7006);
    for (int a = 0; a < max_attempts && stats["spread"].applied <= target; ++a) {
      CptModel m = testgen::gen_ending_model(g, testgen::coin(g, 0.4));
      Poset p = cpt::realized_poset(m);
      for (const auto& r : cpt::diagnose_endings(m, p).records) {
        if (stats["spread"].applied > target) break;
        if (r.kind != cpt::EndingCase::complete) continue;
        if (r.clique_status == cpt::CliqueStatus::blocked) continue;
        try {
          CptModel out = cpt::spread_complete_ending(m, p, r.module, r.vertex);
          stats["spread"].note(cpt::realizes(out, p), "verdict lost");
        } catch (const std::exception& e) {
          stats["spread"].note(false, e.what());
        }
      }
    }
  }
  {
    std::mt19937 g(7007);
    for (int a = 0; a < max_attempts && stats["fix"].applied <= target; ++a) {
      CptModel m = testgen::gen_ending_model(g, true);
      Poset p = cpt::realized_poset(m);
      for (const auto& r : cpt::diagnose_endings(m, p).records) {
        if (stats["fix"].applied > target) break;
        if (r.kind != cpt::EndingCase::partial) continue;
        try {
          CptModel out = cpt::fix_partial_ending(m, p, r.module, r.trivial_element);
          stats["fix"].note(cpt::realizes(out, p), "verdict lost");
        } catch (const std::exception& e) {
          stats["fix"].note(false, e.what());
        }
      }
    }
  }
  {
    std::mt19937 g(7008);
    for (int a = 0; a < max_attempts && stats["normalize"].applied <= target; ++a) {
      CptModel m = testgen::random_line_model(g);
      Poset p = cpt::realized_poset(m);
      try {
        cpt::NormalizedModel nm = cpt::normalize(m, p);
        stats["normalize"].note(
            cpt::realizes(nm.model, p) &&
                no_trivial_in_unblocked_modules(nm.model, p, nm.blocked_modules),
            "verdict lost");
      } catch (const std::exception& e) {
        stats["normalize"].note(false, e.what());
      }
    }
  }

  bool pass = true;
  std::ostringstream msg;
  for (const auto& [op, s] : stats) {
    if (s.applied < target || s.bad > 0) pass = false;
    msg << op << " " << s.applied << "/" << s.bad << "bad ";
    if (!s.first_bad.empty()) msg << "(first: " << s.first_bad << ") ";
  }
  msg << "(target " << target << " valid inputs per operation, zero tolerance)";
  report(3, pass, msg.str());
}

// ---------------------------------------------------------------- criterion 4

void criterion_4() {
  int checked = 0, ci_count = 0, bad = 0;
  std::string first_bad;
  for (int n = 1; n <= 6; ++n) {
    for (const Poset& p : cpt::enumerate_posets(n)) {
      ++checked;
      auto guided = cpt::ci_recognize(p);
      auto brute = cpt::brute_force_realizer(p);
      if (guided.has_value() != brute.has_value()) {
        ++bad;
        if (first_bad.empty()) first_bad = "recognizers disagree on " + p.digest();
        continue;
      }
      if (!guided) continue;
      ++ci_count;
      cpt::CiModel m = cpt::ci_model_from_realizer(p, *guided);
      if (cpt::realized_poset(m) != p) {
        ++bad;
        if (first_bad.empty()) first_bad = "realizer model misses " + p.digest();
        continue;
      }
      cpt::CompressedCiModel cm = cpt::compress_ci_model(m);
      for (const auto& iv : cm.model.intervals()) {
        if (!(iv.lo < cm.core_lo && cm.core_hi < iv.hi)) {
          ++bad;
          if (first_bad.empty()) first_bad = "core leaves an interval interior";
          break;
        }
      }
    }
  }
  std::ostringstream msg;
  msg << checked << " posets on up to 6 elements, " << ci_count
      << " interval-containment, " << bad << " disagreements";
  if (!first_bad.empty()) msg << " (first: " << first_bad << ")";
  report(4, bad == 0, msg.str());
}

// ---------------------------------------------------------------- criterion 5

void criterion_5() {
  auto t0 = std::chrono::steady_clock::now();
  bool pass = false;
  std::ostringstream msg;
  try {
    cpt::SearchResult r = cpt::brute_force_cpt(fence4(), {}, true);
    double dt = seconds_since(t0);
    pass = !r.model.has_value() && dt <= 60.0;
    msg << "shared-endpoint search for the zigzag on 4 elements: "
        << (r.model ? "found a model (must not exist)" : "space exhausted, none")
        << ", " << r.trees_tried << " trees up to " << r.largest_tree_searched
        << " vertices in " << dt << "s (limit 60s)";
  } catch (const std::exception& e) {
    msg << "search aborted: " << e.what();
  }
  report(5, pass, msg.str());
}

// ---------------------------------------------------------------- criterion 6

void criterion_6() {
  int graphs = 0, orientations = 0, bad = 0;
  for (int n = 1; n <= 6; ++n) {
    for (const Poset& p : cpt::enumerate_posets(n)) {
      ++graphs;
      std::set<std::vector<std::string>> base;
      for (auto& m : cpt::strong_modules(p)) base.insert(m);
      for (const Poset& q :
           cpt::transitive_orientations(cpt::CompGraph::from_poset(p))) {
        ++orientations;
        std::set<std::vector<std::string>> other;
        for (auto& m : cpt::strong_modules(q)) other.insert(m);
        if (other != base) ++bad;
      }
    }
  }
  std::ostringstream msg;
  msg << graphs << " comparability graphs, " << orientations
      << " orientations, " << bad << " strong-module set mismatches";
  report(6, bad == 0, msg.str());
}

// ---------------------------------------------------------------- criterion 7

void criterion_7() {
  const int target = 200;
  std::mt19937 g(7100);
  std::vector<Poset> inner_pool;
  for (int n = 1; n <= 4; ++n)
    for (const auto& p : cpt::enumerate_posets(n)) inner_pool.push_back(p);

  int done = 0, bad = 0;
  std::string first_bad;
  for (int trial = 0; trial < 50 * target && done < target; ++trial) {
    int len = testgen::pick(g, 9, 14);
    std::map<std::string, PathInTree> paths;
    paths["v0"] = {2, len - 3};
    if (testgen::coin(g, 0.7)) paths["c0"] = {1, len - 2};
    if (testgen::coin(g, 0.5)) paths["c1"] = {0, len - 1};
    int inners = testgen::pick(g, 0, 2);
    for (int i = 0; i < inners; ++i) {
      int lo = testgen::pick(g, 3, len - 5);
      paths["i" + std::to_string(i)] = {lo,
                                        testgen::pick(g, lo, std::min(len - 4, lo + 3))};
    }
    if (testgen::coin(g, 0.4)) paths["f0"] = {0, 0};
    CptModel m(testgen::line_tree(len), paths);
    Poset p = cpt::realized_poset(m);
    const Poset& inner =
        inner_pool[static_cast<size_t>(
            testgen::pick(g, 0, static_cast<int>(inner_pool.size()) - 1))];
    try {
      auto realizer = cpt::ci_recognize(inner);
      cpt::CompressedCiModel cm =
          cpt::compress_ci_model(cpt::ci_model_from_realizer(inner, *realizer));
      CptModel out = cpt::substitute_ci(m, "v0", cm);
      Poset got = cpt::realized_poset(out);
      bool ok = got == cpt::substitute(p, "v0", inner);
      for (const auto& [o, path] : m.paths()) {
        if (o == "v0") continue;
        for (const auto& e : inner.elements()) {
          if (got.less(o, e) != p.less(o, "v0")) ok = false;
          if (got.less(e, o) != p.less("v0", o)) ok = false;
        }
      }
      ++done;
      if (!ok) {
        ++bad;
        if (first_bad.empty()) first_bad = "relations not uniform";
      }
    } catch (const std::exception& e) {
      ++done;
      ++bad;
      if (first_bad.empty()) first_bad = e.what();
    }
  }
  std::ostringstream msg;
  msg << done << " randomized substitutions, " << bad << " uniformity breaks";
  if (!first_bad.empty()) msg << " (first: " << first_bad << ")";
  report(7, done >= target && bad == 0, msg.str());
}

// ---------------------------------------------------------------- criterion 8

// Independent unpruned search: every assignment of paths to elements over
// every tree, smallest trees first, no consistency lookahead at all.
bool naive_model_exists(const Poset& p, int max_vertices) {
  std::vector<std::string> elems = p.elements();
  int n = static_cast<int>(elems.size());
  for (int s = 1; s <= max_vertices; ++s) {
    for (const HostTree& t : cpt::enumerate_trees(s)) {
      std::vector<PathInTree> pool;
      for (int u : t.vertices())
        for (int v : t.vertices())
          if (u <= v) pool.push_back({u, v});
      std::vector<size_t> idx(static_cast<size_t>(n), 0);
      while (true) {
        std::map<std::string, PathInTree> paths;
        for (int i = 0; i < n; ++i)
          paths[elems[static_cast<size_t>(i)]] = pool[idx[static_cast<size_t>(i)]];
        if (cpt::realizes(CptModel(t, paths), p)) return true;
        int j = n - 1;
        while (j >= 0 && ++idx[static_cast<size_t>(j)] == pool.size()) {
          idx[static_cast<size_t>(j)] = 0;
          --j;
        }
        if (j < 0) break;
      }
    }
  }
  return false;
}

void criterion_8() {
  int checked = 0, bad = 0;
  std::string first_bad;
  for (int n = 1; n <= 4; ++n) {
    for (const Poset& p : cpt::enumerate_posets(n)) {
      ++checked;
      bool pruned = cpt::brute_force_cpt(p).model.has_value();
      cpt::SearchBudget wide;
      wide.max_tree_vertices = 6 * n;
      bool widened = cpt::brute_force_cpt(p, wide).model.has_value();
      bool naive = naive_model_exists(p, 10);
      if (pruned != widened || pruned != naive) {
        ++bad;
        if (first_bad.empty())
          first_bad = p.digest() + " pruned=" + std::to_string(pruned) +
                      " widened=" + std::to_string(widened) +
                      " naive=" + std::to_string(naive);
      }
    }
  }
  std::ostringstream msg;
  msg << checked << " posets on up to 4 elements, pruned vs widened vs "
      << "unpruned-naive searches, " << bad << " existence disagreements";
  if (!first_bad.empty()) msg << " (first: " << first_bad << ")";
  report(8, bad == 0, msg.str());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  if (failures == 0) {
    std::printf("all 8 criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", failures);
  return 1;
}
