#include "schottky/special.hpp"

#include <cmath>
#include <numbers>

#include "schottky/error.hpp"

namespace schottky {

using cd = std::complex<double>;

namespace {

// Lanczos coefficients (g = 671/128, 14 terms).
constexpr double kCof[14] = {57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
                             -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
                             -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
                             .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
                             -.261908384015814087e-4, .368991826595316234e-5};

cd lanczos(cd x) {
    cd y = x;
    cd tmp = x + 5.24218750000000000;
    tmp = (x + 0.5) * std::log(tmp) - tmp;
    cd ser = 0.999999999999997092;
    for (double c : kCof) {
        y += 1.0;
        ser += c / y;
    }
    return tmp + std::log(2.5066282746310005) + std::log(ser) - std::log(x);
}

bool nonpositive_integer(cd s) { return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::round(s.real()); }

constexpr double kBernoulli[7] = {1.0, 1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730};

}  // namespace

cd log_gamma(cd s) {
    if (nonpositive_integer(s)) fail("PoleAtNonpositiveInteger", "log_gamma");
    if (s.real() < 0.5) {
        const double pi = std::numbers::pi;
        return std::log(pi) - std::log(std::sin(pi * s)) - lanczos(1.0 - s);
    }
    return lanczos(s);
}

cd log_gamma_C(cd s) {
    if (nonpositive_integer(s)) fail("PoleAtNonpositiveInteger", "gamma_C");
    return -s * std::log(2.0 * std::numbers::pi) + log_gamma(s);
}

cd log_gamma_R(cd s) {
    if (nonpositive_integer(s / 2.0)) fail("PoleAtNonpositiveInteger", "gamma_R");
    return -0.5 * std::log(2.0) - 0.5 * s * std::log(std::numbers::pi) + log_gamma(s / 2.0);
}

cd hurwitz_zeta(double s, cd z, const HurwitzConfig& cfg) {
    if (!(s > 0)) fail("InvalidArgument", "hurwitz_zeta needs s > 0");
    if (z == cd(1.0, 0.0)) fail("PoleAtZEqualsOne", "hurwitz_zeta");
    if (cfg.bernoulli_pairs > 6) fail("InvalidArgument", "Bernoulli numbers tabulated through B_12");
    const int N = cfg.direct_terms;
    cd sum = 0.0;
    for (int n = 0; n < N; ++n) sum += std::exp(-z * std::log(s + n));
    const double a = s + N;
    const double la = std::log(a);
    sum += std::exp((1.0 - z) * la) / (z - 1.0);
    sum += 0.5 * std::exp(-z * la);
    // sum_k B_2k/(2k)! (z)_{2k-1} a^{-z-2k+1}
    cd rising = z;  // (z)_1
    double fact = 2.0;  // (2k)!
    for (int k = 1; k <= cfg.bernoulli_pairs; ++k) {
        sum += kBernoulli[k] / fact * rising * std::exp((-z - (2.0 * k - 1.0)) * la);
        rising *= (z + 2.0 * k - 1.0) * (z + 2.0 * k);
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    return sum;
}

}  // namespace schottky
