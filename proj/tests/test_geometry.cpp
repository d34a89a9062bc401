#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "test_support.hpp"

#include "schottky/group_io.hpp"
#include "schottky/moebius.hpp"

using namespace schottky;

namespace {

double mat_dist(const MoebiusMap& m, const MoebiusMap& n) {
    // Matrices are defined up to sign.
    double plus = std::abs(m.a - n.a) + std::abs(m.b - n.b) + std::abs(m.c - n.c) + std::abs(m.d - n.d);
    double minus = std::abs(m.a + n.a) + std::abs(m.b + n.b) + std::abs(m.c + n.c) + std::abs(m.d + n.d);
    return std::min(plus, minus);
}

MoebiusMap diag(double q) { return MoebiusMap::from(q, 0, 0, 1.0 / q); }

const MoebiusMap kSample = MoebiusMap::from({2.0, 1.0}, {0.5, -1.0}, {0.25, 0.0}, {1.0, 0.5});

}  // namespace

TEST_CASE("compose") {
    CHECK(mat_dist(compose(MoebiusMap::identity(), kSample), kSample) < 1e-14);
    CHECK(mat_dist(compose(kSample, kSample.inverse()), MoebiusMap::identity()) < 1e-12);
    CHECK(mat_dist(compose(diag(2), diag(2)), diag(4)) < 1e-14);
    CHECK(std::abs(kSample.det() - 1.0) < 1e-14);
}

TEST_CASE("boundary action") {
    CHECK(std::abs(apply_boundary(MoebiusMap::from(2, 0, 0, 0.5), P1(1.0)).z - 4.0) < 1e-14);
    CHECK(apply_boundary(MoebiusMap::from(1, 0, 1, 1), P1(-1.0)).inf);
    FixedPointData fp = fixed_points(kSample);
    CHECK(distance(apply_boundary(kSample, fp.z_plus), fp.z_plus) < 1e-10);
    CHECK(distance(apply_boundary(kSample, fp.z_minus), fp.z_minus) < 1e-10);
}

TEST_CASE("half-space action") {
    HalfSpacePoint p = apply_halfspace(MoebiusMap::identity(), {0.0, 1.0});
    CHECK(std::abs(p.z) < 1e-15);
    CHECK(p.y == doctest::Approx(1.0));

    const cplx q{1.5, 0.7};
    const cplx z{0.3, -0.2};
    HalfSpacePoint r = apply_halfspace(MoebiusMap::from(std::sqrt(q), 0, 0, 1.0 / std::sqrt(q)), {z, 0.4});
    CHECK(std::abs(r.z - q * z) < 1e-12);
    CHECK(r.y == doctest::Approx(std::abs(q) * 0.4).epsilon(1e-12));

    const cplx w{0.7, 0.1};
    HalfSpacePoint h = apply_halfspace(kSample, {w, 1e-6});
    CHECK(std::abs(h.z - apply_boundary(kSample, P1(w)).z) < 1e-5);
}

TEST_CASE("fixed points") {
    FixedPointData fp = fixed_points(MoebiusMap::from(2, 0, 0, 0.5));
    CHECK(fp.z_plus.inf);
    CHECK(std::abs(fp.z_minus.z) < 1e-15);
    CHECK(fp.multiplier_norm == doctest::Approx(4.0));
    CHECK(fp.length == doctest::Approx(2 * std::log(2.0)));

    CHECK_THROWS_KIND(fixed_points(MoebiusMap::from(1, 1, 0, 1)), "NotLoxodromic");

    MoebiusMap g = MoebiusMap::from(3, 1, 2, 1);
    MoebiusMap h = MoebiusMap::from({1.0, 0.5}, 2, 0.5, 1.5);
    FixedPointData a = fixed_points(g);
    FixedPointData b = fixed_points(compose(compose(h, g), h.inverse()));
    CHECK(distance(b.z_plus, apply_boundary(h, a.z_plus)) < 1e-10);
    CHECK(distance(b.z_minus, apply_boundary(h, a.z_minus)) < 1e-10);
    CHECK(b.multiplier_norm == doctest::Approx(a.multiplier_norm).epsilon(1e-10));
}

TEST_CASE("schottky construction") {
    SchottkyGroup G = build_group(preset("sym2"));
    CHECK(G.genus == 2);
    CHECK(G.fuchsian);
    for (int i = 0; i < 2; ++i) {
        FixedPointData fp = fixed_points(G.generators[i]);
        CHECK(fp.multiplier_norm > 1);
        P1 img = apply_boundary(G.generators[i], P1::infinity());
        CHECK(!img.inf);
        CHECK(std::abs(img.z - G.circles[i + 2].center) < G.circles[i + 2].radius);
        // C_i is carried onto C_{i+g}
        for (double t : {0.1, 1.7, 3.0, 5.2}) {
            P1 z = apply_boundary(G.generators[i], P1(G.circles[i].center + std::polar(G.circles[i].radius, t)));
            CHECK(std::abs(std::abs(z.z - G.circles[i + 2].center) - G.circles[i + 2].radius) < 1e-12);
        }
    }
    CHECK_THROWS_KIND(build_group(preset("overlap2")), "DiscsOverlap");
    CHECK_THROWS_KIND(preset("nope"), "UnknownPreset");

    SchottkyGroup C = build_schottky(2, {{{0, 3}, 0.5}, {{-3, 0}, 0.5}, {{0, -3}, 0.5}, {{3, 0}, 0.5}});
    CHECK(!C.fuchsian);
    CHECK_THROWS_KIND(build_fuchsian_schottky(2, C.circles), "NotFuchsian");
}

TEST_CASE("words to matrices") {
    SchottkyGroup G = build_group(preset("sym2"));
    CHECK(mat_dist(word_to_matrix(G, {}), MoebiusMap::identity()) < 1e-15);
    CHECK_THROWS_KIND(word_to_matrix(G, {1, 3}), "WordNotReduced");
    MoebiusMap m = word_to_matrix(G, {0, 1, 0});
    MoebiusMap direct = compose(compose(G.letter(0), G.letter(1)), G.letter(0));
    CHECK(mat_dist(m, direct) < 1e-10);
    CHECK(fixed_points(m).multiplier_norm > 1);
    CHECK(mat_dist(G.letter(2), G.generators[0].inverse()) < 1e-14);
}

TEST_CASE("geodesics") {
    HalfSpacePoint mid = geodesic_point(P1(0.0), P1(1.0), 0.0);
    CHECK(std::abs(mid.z - 0.5) < 1e-15);
    CHECK(mid.y == doctest::Approx(0.5));
    HalfSpacePoint far = geodesic_point(P1(0.0), P1(1.0), 30.0);
    CHECK(std::abs(far.z) < 1e-10);
    CHECK(far.y < 1e-10);

    const cplx a{0.2, 0.3}, b{-1.0, 0.5};
    for (double s : {-1.0, 0.0, 0.7, 2.0}) {
        HalfSpacePoint img = apply_halfspace(kSample, geodesic_point(P1(a), P1(b), s));
        cplx ga = apply_boundary(kSample, P1(a)).z, gb = apply_boundary(kSample, P1(b)).z;
        CHECK(distance_to_geodesic(img, ga, gb) < 1e-8);
    }
}

TEST_CASE("group documents") {
    GroupDocument doc = preset("sym3");
    std::string text = dump_group_document(doc);
    GroupDocument back = parse_group_document(text);
    CHECK(dump_group_document(back) == text);
    CHECK(back.genus == 3);
    CHECK_THROWS_KIND(parse_group_document("{\"genus\": 2}"), "InvalidDocument");
    CHECK_THROWS_KIND(parse_group_document("{\"genus\": 2, \"circles\": [], \"extra\": 1}"), "InvalidDocument");
    CHECK_THROWS_KIND(parse_group_document("not json"), "InvalidDocument");
}
