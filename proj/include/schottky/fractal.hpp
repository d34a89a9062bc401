#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "schottky/moebius.hpp"
#include "schottky/words.hpp"

namespace schottky {

// Threads used by parallel loops; SCHOTTKY_THREADS overrides the hardware count.
unsigned thread_count();

struct CylinderTree {
    int genus = 0;
    int depth = 0;
    // discs[m] holds D_w for the reduced words of length m, in WordIndex order.
    std::vector<std::vector<CircleSpec>> discs;

    const CircleSpec& disc(const Word& w) const;
    double max_diameter(int m) const;
    double sum_diameter_power(int m, double s) const;
};

constexpr long kMaxCylinders = 200000;

CylinderTree cylinder_tree(const SchottkyGroup& group, int depth);

struct LimitSetSample {
    std::vector<cplx> points;
    std::vector<double> radii;  // radius of the cylinder each point represents
};
LimitSetSample limit_set_sample(const SchottkyGroup& group, int depth);
std::string limit_set_svg(const SchottkyGroup& group, const LimitSetSample& sample);

struct TransferMatrix {
    double s = 0;
    int depth = 0;
    // Row w lists (column, |g_i'(x_w)|^s) for the admissible preimage letters i.
    std::vector<std::vector<std::pair<int, double>>> rows;
};

TransferMatrix transfer_matrix(const SchottkyGroup& group, const CylinderTree& tree, double s);

struct LeadingEigen {
    double lambda = 0;       // from the right iteration
    double lambda_left = 0;  // from the left iteration
    std::vector<double> right;
    std::vector<double> left;
    long iterations = 0;
};

LeadingEigen transfer_leading(const TransferMatrix& m);
LeadingEigen transfer_leading(const SchottkyGroup& group, int depth, double s);

struct DimensionEstimate {
    double delta = 0;
    double delta_coarser = 0;  // same solve one depth lower
    double gap = 0;
    int depth = 0;
    int bisection_steps = 0;
};

DimensionEstimate hausdorff_dim(const SchottkyGroup& group, int depth, double tol = 1e-6);
double hausdorff_dim_at(const SchottkyGroup& group, const CylinderTree& tree, double tol, int* steps = nullptr);

struct MeasureVector {
    int depth = 0;
    double delta = 0;
    std::vector<double> weights;  // over reduced words of length depth
};

MeasureVector ps_measure(const SchottkyGroup& group, int depth, double tol = 1e-10);
// max over letters i and cylinders u of |mu(i u) - |g_i'(x_u)|^delta mu(u)| / mu(i u).
double quasi_invariance_residual(const SchottkyGroup& group, const MeasureVector& mu);

struct SelbergResult {
    double log_value = 0;
    double tail_bound = 0;
    bool tail_small = true;
    std::vector<double> length_sums;  // sum of N^{-s} over classes of each length
    long classes = 0;
};

SelbergResult selberg_zeta(const SchottkyGroup& group, double s, int lmax, bool oriented = true,
                           bool strict = false);

// Terms (h z+, h z-) of the Poincare series for omega_k, h over the coset
// transversal of word length <= lmax.
std::vector<std::pair<cplx, cplx>> poincare_terms(const SchottkyGroup& group, Letter k, int lmax);
cplx poincare_differential(const SchottkyGroup& group, Letter k, cplx z, int lmax);
cplx poincare_differential(const std::vector<std::pair<cplx, cplx>>& terms, cplx z);
// Sum of log cross-ratios <h z+, h z-, z, z0>; its z-derivative is the differential.
cplx poincare_log_series(const std::vector<std::pair<cplx, cplx>>& terms, cplx z, cplx z0);
// Values at truncation lengths 0..lmax; throws NonConvergent if the increments do not decay.
std::vector<cplx> poincare_convergence(const SchottkyGroup& group, Letter k, cplx z, int lmax);

// Contour integral of omega_k over the disc boundary of letter j (counterclockwise).
cplx period_integral(const SchottkyGroup& group, Letter j, Letter k, int lmax, int quadrature = 512);
std::vector<std::vector<cplx>> period_table(const SchottkyGroup& group, int lmax, int quadrature = 512);

}  // namespace schottky
