#pragma once

#include <utility>

#include "schottky/moebius.hpp"
#include "schottky/words.hpp"

namespace schottky {

// Z(w a_0...a_N-periodic) = w z+(a_0...a_N).
P1 code_fixed_point(const SchottkyGroup& group, const Word& prefix, const CyclicWord& cycle);
// Same, for a cycle given in a specific rotation (the prefix junction is checked
// against this rotation's first letter).
P1 code_fixed_point(const SchottkyGroup& group, const Word& prefix, const Word& cycle);

// Depth-|w| approximation (w) applied to a base point.
P1 code_truncated(const SchottkyGroup& group, const Word& w, const P1& base);

// Endpoints (z+, z-) of the lift of the closed geodesic of a primitive cycle.
std::pair<P1, P1> orbit_geodesic(const SchottkyGroup& group, const CyclicWord& cycle);

// One-sided shift on a finite window: drops the first letter.
Word shift(const Word& w);

}  // namespace schottky
