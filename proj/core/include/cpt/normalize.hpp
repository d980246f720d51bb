#pragma once

#include <string>
#include <vector>

#include "cpt/model.hpp"
#include "cpt/poset.hpp"

namespace cpt {

// A model in which no element of a proper non-singleton strong module has a
// trivial path, and module paths never end on a trivial path of an outside
// element, except inside the listed blocked modules (chain modules whose
// containing paths pin them against a trivial path).
struct NormalizedModel {
  CptModel model;
  std::vector<std::vector<std::string>> blocked_modules;
};

enum class EndingCase { interior, complete, partial };
enum class CliqueStatus { not_applicable, is_free, blocked };

struct EndingRecord {
  std::vector<std::string> module;   // sorted member names
  std::string trivial_element;       // the outside element whose path is {vertex}
  int vertex = 0;
  EndingCase kind = EndingCase::interior;
  EndingKind sides = EndingKind::one_sided;  // arrival spread for complete endings
  std::vector<int> arrival_neighbors;
  bool has_container = false;
  CliqueStatus clique_status = CliqueStatus::not_applicable;
  std::string blocked_reason;
};

struct EndingDiagnosis {
  std::vector<EndingRecord> records;
};

// Rewrites that remove trivial paths from strong-module elements. Each one
// returns a model that still realizes p; if the surgery cannot be completed
// without breaking some containment, SuspicionError is thrown (the input was
// not a representation this rewrite family covers).
CptModel eliminate_trivial_clique(const CptModel& model, const Poset& p,
                                  const std::vector<std::string>& module,
                                  const std::string& z);
CptModel eliminate_trivial_stable(const CptModel& model, const Poset& p,
                                  const std::vector<std::string>& module);
CptModel eliminate_trivial_prime(const CptModel& model, const Poset& p,
                                 const std::vector<std::string>& module,
                                 const std::string& z);
CptModel eliminate_all_trivial_in_modules(const CptModel& model, const Poset& p);

// Reports how every proper non-singleton strong module meets every trivial
// path below it, and whether chain modules that end there completely can be
// freed past their containing paths.
EndingDiagnosis diagnose_endings(const CptModel& model, const Poset& p);

// Moves a complete ending off the vertex a so all module endpoints become
// distinct fresh vertices. Throws BlockedCliqueError when the module is a
// pinned chain that has to stay (the caller records it as blocked).
CptModel spread_complete_ending(const CptModel& model, const Poset& p,
                                const std::vector<std::string>& module, int a);

// Re-ends the module paths that stop on the trivial path of z (and of the
// matching trivial at the other end of the common segment, when present) so
// that no module path ends on a trivial path.
CptModel fix_partial_ending(const CptModel& model, const Poset& p,
                            const std::vector<std::string>& module,
                            const std::string& z);

NormalizedModel normalize(const CptModel& model, const Poset& p);

}  // namespace cpt
