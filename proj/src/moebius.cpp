#include "schottky/moebius.hpp"

#include <cmath>
#include <numbers>

#include "schottky/error.hpp"

namespace schottky {

namespace {

constexpr double kLoxodromyGap = 1e-12;

double arg_in_half_plane(cplx v) { return std::arg(v); }

}  // namespace

double distance(const P1& a, const P1& b) {
    if (a.inf && b.inf) return 0.0;
    if (a.inf) return 2.0 / std::sqrt(1.0 + std::norm(b.z));
    if (b.inf) return 2.0 / std::sqrt(1.0 + std::norm(a.z));
    return 2.0 * std::abs(a.z - b.z) / std::sqrt((1.0 + std::norm(a.z)) * (1.0 + std::norm(b.z)));
}

namespace {

MoebiusMap sign_normalize(MoebiusMap m) {
    // Pick the lift whose first nonzero entry has argument in (-pi/2, pi/2].
    for (cplx* e : {&m.a, &m.b, &m.c, &m.d}) {
        if (*e == 0.0) continue;
        double t = arg_in_half_plane(*e);
        if (t <= -std::numbers::pi / 2 || t > std::numbers::pi / 2) {
            m.a = -m.a;
            m.b = -m.b;
            m.c = -m.c;
            m.d = -m.d;
        }
        break;
    }
    return m;
}

}  // namespace

MoebiusMap normalize(MoebiusMap m) {
    cplx det = m.det();
    if (det == 0.0) fail("SingularMatrix");
    cplx r = std::sqrt(det);
    m.a /= r;
    m.b /= r;
    m.c /= r;
    m.d /= r;
    return sign_normalize(m);
}

MoebiusMap MoebiusMap::from(cplx a, cplx b, cplx c, cplx d) { return normalize({a, b, c, d}); }

// The product of two determinant-one matrices already has determinant one;
// recomputing ad - bc for long words cancels catastrophically, so only the
// sign is normalized here.
MoebiusMap compose(const MoebiusMap& x, const MoebiusMap& y) {
    return sign_normalize({x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                      x.c * y.b + x.d * y.d});
}

P1 apply_boundary(const MoebiusMap& m, const P1& p) {
    if (p.inf) {
        if (m.c == 0.0) return P1::infinity();
        return P1(m.a / m.c);
    }
    cplx den = m.c * p.z + m.d;
    if (den == 0.0) return P1::infinity();
    return P1((m.a * p.z + m.b) / den);
}

HalfSpacePoint apply_halfspace(const MoebiusMap& m, const HalfSpacePoint& p) {
    if (!(p.y > 0)) fail("InvalidHalfSpacePoint", "y must be positive");
    const cplx czd = m.c * p.z + m.d;
    const double y2 = p.y * p.y;
    const double den = std::norm(czd) + std::norm(m.c) * y2;
    const cplx z = ((m.a * p.z + m.b) * std::conj(czd) + m.a * std::conj(m.c) * y2) / den;
    const double y = p.y * std::abs(m.a * m.d - m.b * m.c) / den;
    return {z, y};
}

FixedPointData fixed_points(const MoebiusMap& m) {
    const cplx t = m.trace();
    const cplx disc = std::sqrt(t * t - 4.0);
    cplx l1 = (t + disc) / 2.0;
    cplx l2 = (t - disc) / 2.0;
    if (std::abs(l1) < std::abs(l2)) std::swap(l1, l2);
    if (std::abs(l1) - std::abs(l2) <= kLoxodromyGap) fail("NotLoxodromic", "eigenvalue moduli coincide");
    // Recompute the small eigenvalue from det = 1 to avoid cancellation.
    l2 = 1.0 / l1;

    // The eigenvector of the dominant eigenvalue gives the attracting point.
    auto eigen_point = [&](cplx lam) -> P1 {
        cplx x1 = m.b, y1 = lam - m.a;  // (a - lam) x + b y = 0
        cplx x2 = lam - m.d, y2 = m.c;  // c x + (d - lam) y = 0
        cplx x = x1, y = y1;
        if (std::norm(x2) + std::norm(y2) > std::norm(x1) + std::norm(y1)) {
            x = x2;
            y = y2;
        }
        if (y == 0.0) return P1::infinity();
        return P1(x / y);
    };
    FixedPointData f;
    f.z_plus = eigen_point(l1);
    f.z_minus = eigen_point(l2);
    const double mod = std::abs(l1);
    f.multiplier_norm = mod * mod;
    f.length = 2.0 * std::log(mod);
    return f;
}

CircleSpec image_circle(const MoebiusMap& m, const CircleSpec& c) {
    // The image center is the image of the inverse point of the pole.
    P1 star;
    if (m.c == 0.0) {
        star = P1(c.center);
    } else {
        const cplx pole = -m.d / m.c;
        const cplx off = pole - c.center;
        if (std::abs(off) <= c.radius) fail("PoleInsideDisc", "image of a disc containing the pole");
        star = P1(c.center + c.radius * c.radius / std::conj(off));
    }
    const P1 center = apply_boundary(m, star);
    const P1 on = apply_boundary(m, P1(c.center + c.radius));
    return {center.z, std::abs(on.z - center.z)};
}

MoebiusMap SchottkyGroup::letter(Letter a) const {
    if (a < 0 || a >= 2 * genus) fail("InvalidLetter", std::to_string(a));
    return a < genus ? generators[a] : generators[a - genus].inverse();
}

SchottkyGroup build_schottky(int genus, const std::vector<CircleSpec>& circles) {
    if (genus < 2) fail("InvalidGenus", "genus must be at least 2");
    if (static_cast<int>(circles.size()) != 2 * genus)
        fail("InvalidGroup", "expected " + std::to_string(2 * genus) + " circles");
    for (const auto& c : circles)
        if (!(c.radius > 0) || !std::isfinite(c.radius) || !std::isfinite(c.center.real()) ||
            !std::isfinite(c.center.imag()))
            fail("InvalidCircle", "radius must be positive and finite");
    for (std::size_t i = 0; i < circles.size(); ++i)
        for (std::size_t j = i + 1; j < circles.size(); ++j)
            if (std::abs(circles[i].center - circles[j].center) <= circles[i].radius + circles[j].radius)
                fail("DiscsOverlap", "circles " + std::to_string(i) + " and " + std::to_string(j));

    SchottkyGroup grp;
    grp.genus = genus;
    grp.circles = circles;
    bool real = true;
    for (int i = 0; i < genus; ++i) {
        const cplx ci = circles[i].center, cj = circles[i + genus].center;
        const double rr = circles[i].radius * circles[i + genus].radius;
        MoebiusMap gi = MoebiusMap::from(cj, -ci * cj - rr, 1.0, -ci);
        // Image-circle check on 200 sample points.
        for (int k = 0; k < 200; ++k) {
            const double t = 2.0 * std::numbers::pi * k / 200.0;
            const P1 w = apply_boundary(gi, P1(ci + circles[i].radius * std::polar(1.0, t)));
            const double rel =
                std::abs(std::abs(w.z - cj) - circles[i + genus].radius) / circles[i + genus].radius;
            if (w.inf || rel > 1e-9) fail("PairingBroken", "generator " + std::to_string(i));
        }
        const P1 at_inf = apply_boundary(gi, P1::infinity());
        if (at_inf.inf || std::abs(at_inf.z - cj) >= circles[i + genus].radius)
            fail("PairingBroken", "generator " + std::to_string(i) + " does not map infinity inside");
        fixed_points(gi);  // NotLoxodromic propagates
        for (cplx e : {gi.a, gi.b, gi.c, gi.d})
            if (std::abs(e.imag()) > 1e-14 * (1.0 + std::abs(e))) real = false;
        grp.generators.push_back(gi);
    }
    for (const auto& c : circles)
        if (c.center.imag() != 0.0) real = false;
    grp.fuchsian = real;
    return grp;
}

SchottkyGroup build_fuchsian_schottky(int genus, const std::vector<CircleSpec>& circles) {
    for (const auto& c : circles)
        if (c.center.imag() != 0.0) fail("NotFuchsian", "circle centers must be real");
    return build_schottky(genus, circles);
}

MoebiusMap word_to_matrix(const SchottkyGroup& group, const Word& w) {
    require_reduced(w, group.genus);
    MoebiusMap m = MoebiusMap::identity();
    for (Letter a : w) m = compose(m, group.letter(a));
    return m;
}

HalfSpacePoint geodesic_point(const P1& a, const P1& b, double s) {
    if (a.inf && b.inf) fail("DegenerateEndpoints");
    if (a.inf || b.inf) {
        // Rotate by R(z) = -1/(z - c), c = finite endpoint + 1, so both ends are finite.
        const cplx c = (a.inf ? b.z : a.z) + 1.0;
        const MoebiusMap r = MoebiusMap::from(0.0, -1.0, 1.0, -c);
        const HalfSpacePoint p = geodesic_point(apply_boundary(r, a), apply_boundary(r, b), s);
        return apply_halfspace(r.inverse(), p);
    }
    if (a.z == b.z) fail("DegenerateEndpoints");
    // Stable for large |s|: divide through by the dominant exponential.
    const double t = std::tanh(s);
    const double den = 2.0 * std::cosh(s);
    const cplx z = 0.5 * (a.z + b.z) + 0.5 * t * (a.z - b.z);
    return {z, std::abs(a.z - b.z) / den};
}

double distance_to_geodesic(const HalfSpacePoint& p, cplx a, cplx b) {
    const MoebiusMap m = MoebiusMap::from(1.0, -a, 1.0, -b);
    const HalfSpacePoint q = apply_halfspace(m, p);
    return std::asinh(std::abs(q.z) / q.y);
}

}  // namespace schottky
