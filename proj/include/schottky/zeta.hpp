#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "schottky/special.hpp"

namespace schottky {

// Eigenvalues {start + k step : k >= 0}; only decreasing progressions (step < 0)
// are admissible in regularized determinants.
struct Progression {
    double start;
    double step;
    long multiplicity;
};

struct SpectrumDescriptor {
    std::vector<Progression> progressions;
    std::vector<std::pair<double, long>> isolated;
};

enum class DetMethod { Closed, Numeric };

// log det_inf(s/2pi - u T/2pi) = -d/dz zeta_T(z)|_{z=0}; u scales the spectrum.
std::complex<double> regdet(const SpectrumDescriptor& spec, double s, DetMethod method, double u = 1.0,
                            const HurwitzConfig& cfg = {});

// Spectra of Phi_q and of the real-structure restrictions hat Phi_q.
SpectrumDescriptor phi_spectrum(int q, int g);
SpectrumDescriptor phihat_spectrum(int q, int g);

enum class Field { C, R };
struct LocalFactorSpec {
    Field field;
    int q;
    int g;
};

int betti(int q, int g);
std::complex<double> local_factor(const LocalFactorSpec& spec, double s);  // log form

struct AlternatingProduct {
    std::complex<double> direct;  // log of L(H^1)/(L(H^0) L(H^2))
    std::complex<double> regdet_route;
};
AlternatingProduct alternating_product(int g, double s);

struct GradedDimensionTable {
    int g = 0;
    int window = 0;                       // p ranges over [-window, window + 1]
    std::map<std::pair<int, int>, long> dims;  // (q, p) -> dim gr_{2p} H^q
    // Phi eigenvalue on each piece.
    static int eigenvalue(int q, int p);
    // Multiplicities of the eigenvalues -n and +n read off the table.
    std::pair<long, long> signed_dims(int n) const;
    // dim E_n(|Phi|) as listed for the eigenspaces (includes the extra summand
    // listed in E_2; see README).
    long eig_dims(int n) const;
    // Difference (#positive - #negative) at |eigenvalue| n, same convention.
    long eta_weight(int n) const;
};

GradedDimensionTable graded_dims(int g, int window = 12);

std::complex<double> zeta_phi(int g, std::complex<double> s);
struct TruncatedSum {
    double value;       // partial sum plus integral tail estimate
    double tail_bound;  // bound on the error of that estimate
};
TruncatedSum zeta_phi_truncated(int g, double s, long terms);
long volume(int g);
std::complex<double> eta(int g, std::complex<double> s);
long eta_invariant(int g);

struct TorsionReport {
    double log_Z;            // log Z_Phi(1/s), numeric regdet path
    double log_tau;          // log tau_Phi(s), closed Gamma path
    double log_rhs;          // (g-2) log s + chi s log s
    double residual;         // |log_Z + log_tau - log_rhs|
    double residual_inverse; // |log_Z + log_tau + log_rhs|
};
TorsionReport torsion_identity(int g, double s);
double torsion_identity_residual(int g, double s);

}  // namespace schottky
