#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "test_support.hpp"

#include "schottky/cuntz_krieger.hpp"
#include "schottky/group_io.hpp"
#include "schottky/zeta.hpp"

using namespace schottky;

namespace {
const SchottkyGroup& sym2() {
    static const SchottkyGroup G = build_group(preset("sym2"));
    return G;
}
}  // namespace

TEST_CASE("projections and partial isometries") {
    TruncatedSpace sp(sym2(), 5, CKMeasure::Uniform);
    CHECK(sp.dimension() == 1 + 4 + 12 + 36 + 108 + 324);

    auto P = op_P(sp, {0, 1});
    auto PP = op_compose(P, P);
    auto S = op_S(sp, 1), Sa = op_S_adjoint(sp, 1);
    auto SSa = op_compose(S, Sa);
    auto P1 = op_P(sp, {1});
    for (const Word& w : {Word{0, 1, 1}, Word{1}, Word{2, 3, 3, 0}, Word{1, 1, 0}}) {
        SymVector v = sp.basis(w);
        CHECK(difference(sp, PP(v), P(v)).nonzero == 0);
        CHECK(difference(sp, SSa(v), P1(v)).nonzero == 0);
    }
    SymVector c = sp.constant();
    CHECK(difference(sp, op_T_word(sp, {})(c), c).nonzero == 0);

    CHECK_THROWS_KIND(op_P(sp, Word(6, 0)), "WordTooLong");
    CHECK_THROWS_KIND(S(sp.basis({0, 1, 1, 0, 0})), "OutsideDomain");
}

TEST_CASE("relation reports") {
    for (CKMeasure m : {CKMeasure::Uniform, CKMeasure::PattersonSullivan}) {
        RelationReport r = ck_verify(sym2(), 5, m);
        CHECK(r.exact());
        CHECK(r.checks.size() >= 9);
        for (const auto& c : r.checks) {
            INFO(c.name);
            CHECK(c.vectors > 0);
            CHECK(c.nonzero == 0);
            CHECK(c.numeric <= 1e-12);
        }
    }
}

TEST_CASE("Dirac operator on the truncation") {
    DiracReport d = dirac_check(sym2(), 4, CKMeasure::Uniform);
    CHECK(d.symmetry_defect <= 1e-12);
    CHECK(d.rounding <= 1e-9);
    CHECK(d.spectrum == d.expected);
    CHECK(d.spectrum.begin()->first == -3);
    CHECK(d.spectrum.rbegin()->first == 4);
    CHECK(d.v_checked > 0);
    CHECK(d.v_failures == 0);
}

TEST_CASE("commutators with the Dirac operator") {
    auto t = commutator_trend(sym2(), 0, {3, 4, 5, 6});
    REQUIRE(t.size() == 4);
    for (const auto& c : t) {
        CHECK(std::isfinite(c.with_S));
        CHECK(c.with_S < 10.0);
        CHECK(c.with_S_adjoint < 10.0);
    }
    for (std::size_t k = 2; k < t.size(); ++k) {
        CHECK(std::abs(t[k].with_S - t[k - 1].with_S) <= std::abs(t[k - 1].with_S - t[k - 2].with_S) + 1e-12);
    }
}

TEST_CASE("compressed local factor") {
    CylinderMeasure mu = CylinderMeasure::uniform_markov(2, 4);
    CompressedFactor f = compressed_local_factor(2, 2.0, mu);
    for (long w : f.trace_weights) CHECK(w == 4);
    CHECK(f.weight_even == 2);
    CHECK(f.weight_odd == 2);
    CHECK(std::abs(f.log_det_C - f.log_direct_C) <= 1e-8);
    CHECK(std::abs(f.log_det_R - f.log_direct_R) <= 1e-8);
    CHECK(f.log_direct_C == doctest::Approx(-4 * log_gamma_C(2.0).real()));
}
