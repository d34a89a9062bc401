#include "schottky/coding.hpp"

#include "schottky/error.hpp"

namespace schottky {

P1 code_fixed_point(const SchottkyGroup& group, const Word& prefix, const Word& cycle) {
    const int g = group.genus;
    if (!cyclically_reduced(cycle, g)) fail("WordNotReduced", "cycle " + to_string(cycle));
    require_reduced(prefix, g);
    if (!prefix.empty() && cycle.front() == inverse(prefix.back(), g))
        fail("WordNotReduced", "prefix/cycle junction");
    const auto fp = fixed_points(word_to_matrix(group, cycle));
    return apply_boundary(word_to_matrix(group, prefix), fp.z_plus);
}

P1 code_fixed_point(const SchottkyGroup& group, const Word& prefix, const CyclicWord& cycle) {
    return code_fixed_point(group, prefix, cycle.letters());
}

P1 code_truncated(const SchottkyGroup& group, const Word& w, const P1& base) {
    return apply_boundary(word_to_matrix(group, w), base);
}

std::pair<P1, P1> orbit_geodesic(const SchottkyGroup& group, const CyclicWord& cycle) {
    if (!cycle.primitive()) fail("NotPrimitive", to_string(cycle.letters()));
    const auto fp = fixed_points(word_to_matrix(group, cycle.letters()));
    return {fp.z_plus, fp.z_minus};
}

Word shift(const Word& w) {
    if (w.empty()) return w;
    return Word(w.begin() + 1, w.end());
}

}  // namespace schottky
