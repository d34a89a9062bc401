#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "test_support.hpp"

#include "schottky/special.hpp"
#include "schottky/zeta.hpp"

using namespace schottky;

namespace {
const double kPi = std::numbers::pi;
double re(std::complex<double> z) { return z.real(); }
}  // namespace

TEST_CASE("log gamma") {
    CHECK(std::abs(re(log_gamma(1.0))) < 1e-14);
    CHECK(re(log_gamma(0.5)) == doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-14));
    CHECK(re(log_gamma(5.0)) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
}

TEST_CASE("archimedean gamma factors") {
    CHECK(re(gamma_C(1.0)) == doctest::Approx(1.0 / (2 * kPi)).epsilon(1e-14));
    CHECK(re(gamma_R(1.0)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    for (double s : {0.3, 1.0, 2.5, 4.7}) {
        const double rel = std::abs(gamma_C(s) / (gamma_R(s) * gamma_R(s + 1.0)) - 1.0);
        CHECK(rel <= 1e-12);
    }
}

TEST_CASE("Hurwitz zeta") {
    CHECK(re(hurwitz_zeta(1.0, 2.0)) == doctest::Approx(kPi * kPi / 6).epsilon(1e-12));
    CHECK(re(hurwitz_zeta(2.0, 0.0)) == doctest::Approx(-1.5).epsilon(1e-12));
    auto dz = derivative_at_zero([](double z) { return hurwitz_zeta(1.0, z); });
    CHECK(re(dz) == doctest::Approx(-0.5 * std::log(2 * kPi)).epsilon(1e-9));
    CHECK_THROWS_KIND(hurwitz_zeta(1.0, 1.0), "PoleAtZEqualsOne");
    CHECK_THROWS_KIND(hurwitz_zeta(-1.0, 2.0), "InvalidArgument");
    CHECK_THROWS_KIND(log_gamma(-2.0), "PoleAtNonpositiveInteger");
}

TEST_CASE("regularized determinants") {
    const double s = 2.3;
    SpectrumDescriptor nonpos{{{0.0, -1.0, 1}}, {}};
    CHECK(re(regdet(nonpos, s, DetMethod::Numeric)) == doctest::Approx(-re(log_gamma_C(s))).epsilon(1e-8));
    SpectrumDescriptor upto1{{{1.0, -1.0, 1}}, {}};
    CHECK(re(regdet(upto1, s, DetMethod::Numeric)) == doctest::Approx(-re(log_gamma_C(s - 1))).epsilon(1e-8));
    CHECK(re(regdet(phihat_spectrum(0, 2), s, DetMethod::Numeric)) ==
          doctest::Approx(-re(log_gamma_R(s))).epsilon(1e-8));

    for (int q = 0; q <= 2; ++q) {
        const double closed = re(regdet(phi_spectrum(q, 3), s, DetMethod::Closed));
        CHECK(closed == doctest::Approx(-re(local_factor({Field::C, q, 3}, s))).epsilon(1e-10));
        CHECK(re(regdet(phihat_spectrum(q, 3), s, DetMethod::Closed)) ==
              doctest::Approx(-re(local_factor({Field::R, q, 3}, s))).epsilon(1e-10));
    }
    CHECK_THROWS_KIND(regdet(phi_spectrum(0, 2), -0.5, DetMethod::Closed), "BranchCut");
    CHECK_THROWS_KIND(regdet({{{0.0, -1.0, 0}}, {}}, 2.0, DetMethod::Closed), "InvalidSpectrum");
}

TEST_CASE("local factors") {
    CHECK(re(local_factor({Field::C, 1, 2}, 3.0)) == doctest::Approx(4 * re(log_gamma_C(3.0))));
    CHECK(re(local_factor({Field::R, 1, 5}, 2.5)) == doctest::Approx(5 * re(log_gamma_C(2.5))));
    CHECK_THROWS_KIND(betti(3, 2), "InvalidDegree");
}

TEST_CASE("alternating product") {
    AlternatingProduct a = alternating_product(2, 2.0);
    const double expect = 4 * re(log_gamma_C(2.0)) - re(log_gamma_C(2.0)) - re(log_gamma_C(1.0));
    CHECK(re(a.direct) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::abs(a.regdet_route - a.direct) <= 1e-8);
    // b1 - b0 - b2 = 2g - 2
    for (int g = 2; g <= 4; ++g) CHECK(betti(1, g) - betti(0, g) - betti(2, g) == 2 * g - 2);
}

TEST_CASE("zeta of the grading operator") {
    CHECK(re(zeta_phi(2, 2.0)) == doctest::Approx(2 * kPi * kPi + 1.25).epsilon(1e-12));
    TruncatedSum t = zeta_phi_truncated(2, 2.0, 1000000);
    CHECK(std::abs(t.value - re(zeta_phi(2, 2.0))) <= 1e-6);
    CHECK(t.tail_bound <= 1e-6);
    CHECK(volume(2) == 12);
    for (int g = 2; g <= 5; ++g) CHECK(eta_invariant(g) == 2);
}

TEST_CASE("graded dimensions") {
    GradedDimensionTable t = graded_dims(2);
    for (int p = -5; p <= 0; ++p) CHECK(t.dims.at({1, p}) == 4);
    CHECK(t.eig_dims(1) == 13);
    CHECK(t.eig_dims(5) == 12);
}

TEST_CASE("torsion identity bookkeeping") {
    TorsionReport r = torsion_identity(2, 2.0);
    CHECK(r.log_rhs == doctest::Approx(-4 * std::log(2.0)).epsilon(1e-14));
    CHECK(r.residual_inverse <= 1e-8);
    CHECK_THROWS_KIND(torsion_identity(2, 3.5), "InvalidArgument");
}
