#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "test_support.hpp"

#include "schottky/cohomology.hpp"
#include "schottky/exact.hpp"

using namespace schottky;

TEST_CASE("coboundary") {
    CHECK(coboundary(Cochain::constant(2, 1, Rational(7, 3))).is_zero());

    Cochain d = coboundary(Cochain::indicator(2, {1}));
    const auto& idx = d.index();
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const Word& w = idx.word(i);
        const int expected = (w[0] == 1 ? 1 : 0) - (w[1] == 1 ? 1 : 0);
        CHECK(d.c[i] == expected);
    }
}

TEST_CASE("filtration ranks") {
    FiltrationReport r0 = filtration_rank(2, 0);
    CHECK(r0.rank_Fn == 4);
    FiltrationReport r1 = filtration_rank(2, 1);
    CHECK(r1.rank_Fn == 9);
    CHECK(r1.rank_image_delta == 3);
    CHECK(filtration_rank(2, 2).rank_Fn == 25);
    CHECK_THROWS_KIND(filtration_rank(2, 9), "LevelTooLarge");
}

TEST_CASE("Birkhoff pairing") {
    Cochain chi31 = to_cochain(chi_class(2, 3, 0));
    CHECK(pairing(chi31, Word{0, 0, 0}) == 3);
    CHECK(pairing(chi31, Word{1, 1, 1}) == 0);

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coef(-9, 9);
    for (int trial = 0; trial < 20; ++trial) {
        Cochain h = Cochain::zero(2, 2);
        for (auto& x : h.c) {
            x = Rational(coef(rng), 1 + trial % 4);
            x.canonicalize();
        }
        Word orbit(5);
        do {
            for (auto& a : orbit) a = static_cast<Letter>(rng() % 4);
        } while (!cyclically_reduced(orbit, 2));
        CHECK(pairing(coboundary(h), orbit) == 0);
    }
    CHECK_THROWS_KIND(pairing(chi31, Word{0, 2, 1}), "WordNotReduced");
}

TEST_CASE("chi classes") {
    for (int g : {2, 3})
        for (int n = 1; n <= 3; ++n) {
            std::vector<Cochain> v;
            for (Letter k = 0; k < 2 * g; ++k) v.push_back(to_cochain(chi_class(g, n, k)));
            CHECK(class_rank(g, n - 1, v) == 2 * g);
            CHECK(graded_rank(g, n - 1, v) == ((g == 2 && n == 2) ? 3 : 2 * g));
        }
    // At g = 2 the level-one classes satisfy one relation modulo F_0:
    // chi_{2,0} - chi_{2,1} + chi_{2,2} - chi_{2,3} = h + dh' with h, h' in P_0.
    Cochain lhs = to_cochain(chi_class(2, 2, 0)) - to_cochain(chi_class(2, 2, 1)) + to_cochain(chi_class(2, 2, 2)) -
                  to_cochain(chi_class(2, 2, 3));
    Cochain h = Cochain::indicator(2, {0}) - Cochain::indicator(2, {1}) + Cochain::indicator(2, {2}) -
                Cochain::indicator(2, {3});
    Cochain e = Cochain::indicator(2, {1}) + Cochain::indicator(2, {3});
    CHECK(lhs == extend(h, 1) + coboundary(e));
}

TEST_CASE("hat projection") {
    CylinderMeasure mu = CylinderMeasure::uniform_markov(2, 4);
    CHECK(mu.relabel_symmetric());
    CHECK(hat_projection(Cochain::indicator(2, {1, 0}), 2, mu).is_zero());

    Cochain f = Cochain::indicator(2, {0, 1, 1}) - Rational(2) * Cochain::indicator(2, {3, 3, 0});
    Cochain p = hat_projection(f, 2, mu);
    CHECK(hat_projection(p, 2, mu) == p);
    CHECK(hat_projection(orientation_involution(f), 2, mu) == orientation_involution(p));
}

TEST_CASE("real Frobenius") {
    for (int p : {0, -1, -2}) {
        const int n = -p + 1;
        GradedClass x = chi_class(2, n, 1);
        x.twist = p;
        GradedClass fx = frobenius(x);
        CHECK(frobenius(fx) == x);
        GradedClass expect = x;
        expect.coeffs.clear();
        expect.add(Word(n, 3), (p % 2 == 0) ? 1 : -1);
        CHECK(fx == expect);

        GradedClass h;
        h.side = Side::Homology;
        h.g = 2;
        h.twist = p;
        h.level = n;
        h.add(Word(n, 0), 1);
        GradedClass fh = frobenius(h);
        CHECK(fh.coeffs.size() == 1);
        CHECK(fh.coeffs.begin()->first == Word(n, 2));
        CHECK(fh.coeffs.begin()->second == ((p % 2 == 0) ? 1 : -1));
    }
}

TEST_CASE("Archimedean embeddings") {
    const int g = 2;
    for (int p : {0, -1, -2}) {
        const int n = -p + 1;
        CylinderMeasure mu = CylinderMeasure::uniform_markov(g, n + 1);
        std::vector<Cochain> images;
        for (int k = 0; k < 2 * g; ++k) {
            ArchClass x = ArchClass::basis(g, 1, p - 1, k);
            GradedClass u = embed_U(x, mu);
            images.push_back(to_cochain(u));
            CHECK(embed_U(frobenius(x), mu) == frobenius(u));
            CHECK(embed_Ubar(frobenius(x)) == frobenius(embed_Ubar(x)));

            GradedClass ut = embed_Utilde(ArchClass::basis(g, 2, -p, k));
            CHECK(ut.coeffs.size() == 2);
            for (const auto& [w, q] : ut.coeffs) CHECK(abs(q) == Rational(1, 2 * n));
        }
        std::vector<std::vector<Rational>> rows;
        for (const auto& c : images) rows.push_back(c.c);
        CHECK(rational_rank(rows) == 2 * g);
    }
}

TEST_CASE("twisted pairing and dual coboundary") {
    const int g = 3;
    for (int p : {0, -1, -3}) {
        const int n = -p + 1;
        for (Letter k = 0; k < 2 * g; ++k) {
            GradedClass c = chi_class(g, n, k);
            c.twist = p;
            for (Letter j = 0; j < 2 * g; ++j) {
                GradedClass h;
                h.side = Side::Homology;
                h.g = g;
                h.twist = n;
                h.level = n;
                h.add(Word(n, j), 1);
                TwistedRational t = graded_pairing(c, h);
                CHECK(t.twist == 1);
                CHECK(t.value == (j == k ? n : 0));
            }
            GradedClass sum = duality_tilde_delta1(frobenius(c));
            sum += frobenius(duality_tilde_delta1(c));
            sum.prune();
            CHECK(sum.coeffs.empty());
        }
        for (int k = 0; k < 2 * g; ++k) {
            ArchClass x = ArchClass::basis(g, 1, p - 1, k);
            CHECK(embed_Utilde(delta1(x)) == duality_tilde_delta1(embed_Ubar(x)));
        }
    }
}

TEST_CASE("grading eigenvalues") {
    CHECK(grading_eigenvalue(Summand::Second, 0) == 0);
    CHECK(grading_eigenvalue(Summand::Second, 3) == -3);
    CHECK(grading_eigenvalue(Summand::First, 0) == 1);
    CHECK(grading_eigenvalue(Summand::First, 2) == 3);
    CHECK_THROWS_KIND(grading_eigenvalue(Summand::First, -1), "InvalidLevel");
}
