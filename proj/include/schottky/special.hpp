#pragma once

#include <complex>

namespace schottky {

// Principal-branch log Gamma (Lanczos, reflection for Re s < 1/2).
std::complex<double> log_gamma(std::complex<double> s);
// Gamma_C(s) = (2 pi)^{-s} Gamma(s),  Gamma_R(s) = 2^{-1/2} pi^{-s/2} Gamma(s/2); log form.
std::complex<double> log_gamma_C(std::complex<double> s);
std::complex<double> log_gamma_R(std::complex<double> s);
inline std::complex<double> gamma_C(std::complex<double> s) { return std::exp(log_gamma_C(s)); }
inline std::complex<double> gamma_R(std::complex<double> s) { return std::exp(log_gamma_R(s)); }

struct HurwitzConfig {
    int direct_terms = 50;
    int bernoulli_pairs = 6;  // B_2 .. B_12
};

// zeta(s, z) = sum_{n >= 0} (s + n)^{-z}, continued in z by Euler-Maclaurin.
std::complex<double> hurwitz_zeta(double s, std::complex<double> z, const HurwitzConfig& cfg = {});
inline std::complex<double> riemann_zeta(std::complex<double> z) { return hurwitz_zeta(1.0, z); }

// d/dz of a function at z = 0 by 5-point central differences plus one
// Richardson step.
template <class F>
std::complex<double> derivative_at_zero(F f, double h = 1e-3) {
    auto d5 = [&](double step) {
        return (-f(2 * step) + 8.0 * f(step) - 8.0 * f(-step) + f(-2 * step)) / (12.0 * step);
    };
    const auto coarse = d5(h);
    const auto fine = d5(h / 2);
    return (16.0 * fine - coarse) / 15.0;
}

}  // namespace schottky
