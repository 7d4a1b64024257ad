// Composition of symbolic transition systems: alternative branching over a
// fresh initial location, sequential continuation glued at sink locations,
// and the depth-bounded master model built from both.
#pragma once

#include <string>
#include <vector>

#include "pickles/sts.hpp"

namespace pickles {

// Alternative composition. A fresh initial location (named "<name>.l0")
// adopts every switch the operands source at their initials; all other
// locations and switches are kept verbatim, so operand initials stay
// behind as ordinary (typically orphaned) locations. A single operand
// composes to itself. Operands must agree on variables and gates and have
// pairwise disjoint location sets.
Sts choice(const std::vector<Sts>& operands, const std::string& name);

// Sequential composition. Every switch `second` sources at its initial
// location is re-issued from every sink of `first`; `second`'s initial
// location and its original initial switches are dropped, everything else
// is kept. With no sinks in `first` the second operand cannot attach: the
// result is `first` unchanged and a note in `warnings`. A `second` whose
// initial location has incoming switches cannot be composed.
Sts sequential(const Sts& first, const Sts& second,
               std::vector<std::string>* warnings = nullptr);

// A copy of `s` with `suffix` appended to the system name and to every
// location identifier.
Sts rename_locations(const Sts& s, const std::string& suffix);

// The master model: alternative composition of the starting scenarios,
// sequentially continued by `depth - 1` renamed copies (suffix "#2",
// "#3", ...) of the alternative composition of all scenarios, associated
// to the right. `primary` must be non-empty and drawn from `all`.
Sts master_model(const std::vector<Sts>& primary, const std::vector<Sts>& all,
                 int depth = 3, std::vector<std::string>* warnings = nullptr);

}  // namespace pickles
