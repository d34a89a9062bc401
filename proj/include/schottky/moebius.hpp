#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "schottky/words.hpp"

namespace schottky {

using cplx = std::complex<double>;

// A point of the Riemann sphere.
struct P1 {
    cplx z{0.0, 0.0};
    bool inf = false;

    static P1 infinity() { return {cplx{}, true}; }
    P1() = default;
    P1(cplx v) : z(v) {}
    P1(double v) : z(v) {}
    P1(cplx v, bool i) : z(v), inf(i) {}
};

double distance(const P1& a, const P1& b);  // chordal distance on the sphere

struct HalfSpacePoint {
    cplx z;
    double y;
};

// Normalized representative in SL(2,C).
struct MoebiusMap {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    static MoebiusMap identity() { return {}; }
    static MoebiusMap from(cplx a, cplx b, cplx c, cplx d);  // normalizes

    cplx det() const { return a * d - b * c; }
    MoebiusMap inverse() const { return {d, -b, -c, a}; }
    cplx trace() const { return a + d; }
    cplx derivative(cplx z) const { return 1.0 / ((c * z + d) * (c * z + d)); }
};

MoebiusMap normalize(MoebiusMap m);
MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2);
P1 apply_boundary(const MoebiusMap& m, const P1& z);
HalfSpacePoint apply_halfspace(const MoebiusMap& m, const HalfSpacePoint& p);

struct FixedPointData {
    P1 z_plus;   // attracting
    P1 z_minus;  // repelling
    double multiplier_norm;
    double length;
};

FixedPointData fixed_points(const MoebiusMap& m);

struct CircleSpec {
    cplx center;
    double radius;
};

// Image of a circle under a Moebius map whose pole lies outside the closed disc.
CircleSpec image_circle(const MoebiusMap& m, const CircleSpec& c);

struct SchottkyGroup {
    int genus = 0;
    std::vector<CircleSpec> circles;      // marking order, C_i paired with C_{i+g}
    std::vector<MoebiusMap> generators;  // g_i maps ext C_i onto int C_{i+g}
    bool fuchsian = false;

    // Letter a in 0..2g-1; letter i+g is the inverse of g_i.
    MoebiusMap letter(Letter a) const;
    // Disc containing the limit points whose code starts with letter a.
    const CircleSpec& letter_disc(Letter a) const { return circles[(a + genus) % (2 * genus)]; }
};

// General circle-pairing constructor; centers may be complex.
SchottkyGroup build_schottky(int genus, const std::vector<CircleSpec>& circles);
// Same construction restricted to real centers.
SchottkyGroup build_fuchsian_schottky(int genus, const std::vector<CircleSpec>& circles);

MoebiusMap word_to_matrix(const SchottkyGroup& group, const Word& w);

HalfSpacePoint geodesic_point(const P1& a, const P1& b, double s);

// Distance from p to the geodesic with endpoints (a, b), both finite, measured
// as the hyperbolic distance in the upper half-space.
double distance_to_geodesic(const HalfSpacePoint& p, cplx a, cplx b);

}  // namespace schottky
