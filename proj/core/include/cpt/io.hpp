#pragma once

#include <string>

#include "cpt/model.hpp"
#include "cpt/poset.hpp"

namespace cpt {

// Poset files: an `elements:` line, then one `x < y` relation per line.
// `#` starts a comment. Relations are closed transitively on parse.
Poset parse_poset(const std::string& text);
std::string print_poset(const Poset& p);

// Model files: a `tree:` line with u-v edges (a bare vertex id for the
// one-vertex tree), then `path <element>: u v` lines; u = v is a trivial
// path.
CptModel parse_model(const std::string& text);
std::string print_model(const CptModel& m);

// Hasse diagram, cover edges only, drawn bottom-up.
std::string poset_to_dot(const Poset& p);
// Host tree with the element paths listed in the graph label.
std::string model_to_dot(const CptModel& m);

}  // namespace cpt
