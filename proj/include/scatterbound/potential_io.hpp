#pragma once

#include <string>

#include "scatterbound/potential.hpp"

namespace scatterbound {

// Parses the structured-text potential document: one `kind = <family>` line plus
// parameter lines `name = value`; '#' starts a comment. Sampled profiles list
// whitespace-separated `x` and `v` arrays.
PotentialSpec parse_potential_document(const std::string& text);

// Inline form: "kind:name=value,name=value" (e.g. "square_barrier:V0=1,L=1").
PotentialSpec parse_potential_inline(const std::string& text);

// Loads either a document file path or, failing that, an inline description.
PotentialSpec load_potential(const std::string& path_or_inline);

} // namespace scatterbound
