#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpt/ci.hpp"
#include "cpt/model.hpp"
#include "cpt/modular.hpp"
#include "cpt/normalize.hpp"
#include "cpt/poset.hpp"

namespace cpt {

// A normalized model cut down to one path per strong-module part. Flags name
// the representatives whose parts could not be spread off their trivial
// witness (nested chains that must be laid by the clique substitution).
struct QuotientModel {
  CptModel model;
  // rep -> full part, ordered by rep. Reps are the lex-least part members.
  std::vector<std::pair<std::string, std::vector<std::string>>> parts;
  std::vector<std::string> blocked_reps;
};

// One per quotient vertex: either an interval-containment embedding or a
// nested-chain lay-down for a blocked vertex.
struct SubstitutionStep {
  std::string vertex;
  bool clique = false;
  std::vector<std::string> chain_order;      // set iff clique
  std::optional<CompressedCiModel> intervals;  // set iff !clique
};

struct SubstitutionPlan {
  bool use_dual = false;
  std::vector<SubstitutionStep> steps;
};

QuotientModel quotient_model(const NormalizedModel& normalized, const Poset& p,
                             const ModularPartition& partition);

// Lengthens v0's path to span at least min_vertices host vertices by
// subdividing an edge inside it. Subdivision never changes any verdict.
CptModel ensure_min_path_length(const CptModel& model, const std::string& v0,
                                int min_vertices = 4);

// Replaces v0's path by an embedding of the given compressed interval model:
// both end edges are subdivided, the core stretches over the old interior,
// and every interval becomes a path with the matching reach on each side.
// Every outside path then relates to all embedded paths the way it related
// to v0's.
CptModel substitute_ci(const CptModel& modelH, const std::string& v0,
                       const CompressedCiModel& n_model);

// Replaces v0's path by |chain_order| nested paths sharing the endpoint that
// sits on a trivial path; chain_order lists the elements bottom to top.
CptModel substitute_blocked_clique(const CptModel& modelH, const std::string& v0,
                                   const std::vector<std::string>& chain_order);

// Full pipeline: q shares p's comparability graph; the result realizes q.
// When the quotient is an interval containment order, q is embedded
// directly; otherwise the matching orientation of p or its dual is
// normalized and each quotient vertex is substituted. model_pd may be
// omitted; a bounded exhaustive search then supplies the dual's model.
CptModel build_associated_representation(const Poset& p, const CptModel& model_p,
                                         const std::optional<CptModel>& model_pd,
                                         const Poset& q);

}  // namespace cpt
