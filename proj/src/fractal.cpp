#include "schottky/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "schottky/error.hpp"

namespace schottky {

unsigned thread_count() {
    if (const char* env = std::getenv("SCHOTTKY_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// --- cylinders -------------------------------------------------------------

const CircleSpec& CylinderTree::disc(const Word& w) const {
    const int m = static_cast<int>(w.size());
    if (m < 1 || m > depth) fail("InvalidLevel", "cylinder length outside tree depth");
    const long i = word_index(genus, m).index(w);
    if (i < 0) fail("WordNotReduced", to_string(w));
    return discs[m][i];
}

double CylinderTree::max_diameter(int m) const {
    double r = 0;
    for (const auto& c : discs.at(m)) r = std::max(r, c.radius);
    return 2 * r;
}

double CylinderTree::sum_diameter_power(int m, double s) const {
    double acc = 0;
    for (const auto& c : discs.at(m)) acc += std::pow(2 * c.radius, s);
    return acc;
}

CylinderTree cylinder_tree(const SchottkyGroup& group, int depth) {
    const int g = group.genus;
    if (depth < 1) fail("InvalidLevel", "depth must be positive");
    long total = 0;
    for (int m = 1; m <= depth; ++m) {
        total += count_words(g, m).get_si();
        if (total > kMaxCylinders) fail("DepthTooLarge", "more than 2e5 cylinders at depth " + std::to_string(depth));
    }
    CylinderTree t;
    t.genus = g;
    t.depth = depth;
    t.discs.resize(depth + 1);
    std::vector<MoebiusMap> letters;
    for (Letter a = 0; a < 2 * g; ++a) letters.push_back(group.letter(a));
    {
        const auto& idx = word_index(g, 1);
        t.discs[1].resize(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) t.discs[1][i] = group.letter_disc(idx.word(i)[0]);
    }
    for (int m = 2; m <= depth; ++m) {
        const auto& idx = word_index(g, m);
        const auto& sub = word_index(g, m - 1);
        const auto& par = word_index(g, m - 1);
        t.discs[m].resize(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const Word& w = idx.word(i);
            // D_{a v} = g_a(D_v)
            const CircleSpec& inner = t.discs[m - 1][sub.index(w.data() + 1, m - 1)];
            const CircleSpec child = image_circle(letters[w[0]], inner);
            const CircleSpec& parent = t.discs[m - 1][par.index(w.data(), m - 1)];
            if (std::abs(child.center - parent.center) + child.radius > parent.radius + 1e-12)
                fail("NestingViolated", "cylinder " + to_string(w));
            t.discs[m][i] = child;
        }
    }
    return t;
}

LimitSetSample limit_set_sample(const SchottkyGroup& group, int depth) {
    const CylinderTree t = cylinder_tree(group, depth);
    LimitSetSample out;
    for (const auto& c : t.discs[depth]) {
        out.points.push_back(c.center);
        out.radii.push_back(c.radius);
    }
    return out;
}

std::string limit_set_svg(const SchottkyGroup& group, const LimitSetSample& sample) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& c : group.circles) {
        xmin = std::min(xmin, c.center.real() - c.radius);
        xmax = std::max(xmax, c.center.real() + c.radius);
        ymin = std::min(ymin, c.center.imag() - c.radius);
        ymax = std::max(ymax, c.center.imag() + c.radius);
    }
    const double span = std::max(xmax - xmin, ymax - ymin);
    const double scale = 800.0 / span;
    auto X = [&](double x) { return 20.0 + (x - xmin) * scale; };
    auto Y = [&](double y) { return 20.0 + (ymax - y) * scale; };
    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 40 + (xmax - xmin) * scale << "\" height=\""
       << 40 + (ymax - ymin) * scale << "\">\n";
    for (const auto& c : group.circles)
        os << "<circle cx=\"" << X(c.center.real()) << "\" cy=\"" << Y(c.center.imag()) << "\" r=\""
           << c.radius * scale << "\" fill=\"none\" stroke=\"#888\"/>\n";
    for (const auto& p : sample.points)
        os << "<circle cx=\"" << X(p.real()) << "\" cy=\"" << Y(p.imag()) << "\" r=\"1\" fill=\"black\"/>\n";
    os << "</svg>\n";
    return os.str();
}

// --- transfer operator -----------------------------------------------------

TransferMatrix transfer_matrix(const SchottkyGroup& group, const CylinderTree& tree, double s) {
    const int g = group.genus, n = tree.depth;
    TransferMatrix m;
    m.s = s;
    m.depth = n;
    const auto& idx = word_index(g, n);
    m.rows.resize(idx.size());
    std::vector<MoebiusMap> letters;
    for (Letter a = 0; a < 2 * g; ++a) letters.push_back(group.letter(a));
    Word v(n);
    for (std::size_t r = 0; r < idx.size(); ++r) {
        const Word& w = idx.word(r);
        const cplx x = tree.discs[n][r].center;
        for (Letter i = 0; i < 2 * g; ++i) {
            if (i == inverse(w[0], g)) continue;
            v[0] = i;
            std::copy(w.begin(), w.end() - 1, v.begin() + 1);
            const double d = std::abs(letters[i].derivative(x));
            m.rows[r].push_back({static_cast<int>(idx.index(v)), std::pow(d, s)});
        }
    }
    return m;
}

LeadingEigen transfer_leading(const TransferMatrix& m) {
    const std::size_t n = m.rows.size();
    LeadingEigen out;
    auto iterate = [&](bool left, std::vector<double>& v, double& lam) {
        v.assign(n, 1.0);
        lam = 0;
        std::vector<double> w(n);
        for (long it = 1; it <= 100000; ++it) {
            std::fill(w.begin(), w.end(), 0.0);
            for (std::size_t r = 0; r < n; ++r)
                for (const auto& [c, val] : m.rows[r]) {
                    if (left)
                        w[c] += v[r] * val;
                    else
                        w[r] += val * v[c];
                }
            double norm = 0;
            for (double x : w) norm = std::max(norm, x);
            if (!(norm > 0)) fail("NonConvergence", "transfer iteration collapsed");
            double change = 0;
            for (std::size_t i = 0; i < n; ++i) {
                w[i] /= norm;
                change = std::max(change, std::abs(w[i] - v[i]));
            }
            v.swap(w);
            const double prev = lam;
            lam = norm;
            if (it > 2 && std::abs(lam - prev) <= 1e-12 * lam && change <= 1e-12) {
                out.iterations = std::max(out.iterations, it);
                return;
            }
        }
        fail("NonConvergence", "power iteration did not converge in 1e5 steps");
    };
    iterate(false, out.right, out.lambda);
    iterate(true, out.left, out.lambda_left);
    return out;
}

LeadingEigen transfer_leading(const SchottkyGroup& group, int depth, double s) {
    if (s < 0 || s > 2) fail("InvalidArgument", "s must lie in [0, 2]");
    return transfer_leading(transfer_matrix(group, cylinder_tree(group, depth), s));
}

double hausdorff_dim_at(const SchottkyGroup& group, const CylinderTree& tree, double tol, int* steps) {
    auto lam = [&](double s) { return transfer_leading(transfer_matrix(group, tree, s)).lambda; };
    if (lam(0.0) < 1.0) fail("DimensionOutOfRange", "leading eigenvalue below one at s = 0");
    if (lam(2.0) >= 1.0) fail("DimensionOutOfRange", "no root of lambda(s) = 1 in [0, 2]");
    double lo = 0.0, hi = 2.0;
    int k = 0;
    while (hi - lo > tol) {
        if (++k > 60) fail("NonConvergence", "bisection exceeded 60 steps");
        const double mid = 0.5 * (lo + hi);
        (lam(mid) > 1.0 ? lo : hi) = mid;
    }
    if (steps) *steps = k;
    return 0.5 * (lo + hi);
}

DimensionEstimate hausdorff_dim(const SchottkyGroup& group, int depth, double tol) {
    if (depth < 2) fail("InvalidLevel", "hausdorff_dim needs depth >= 2");
    if (!(tol > 0)) fail("InvalidArgument", "tolerance must be positive");
    DimensionEstimate e;
    e.depth = depth;
    const CylinderTree tree = cylinder_tree(group, depth);
    e.delta = hausdorff_dim_at(group, tree, tol, &e.bisection_steps);
    CylinderTree coarse = tree;
    coarse.depth = depth - 1;
    coarse.discs.pop_back();
    e.delta_coarser = hausdorff_dim_at(group, coarse, tol);
    e.gap = std::abs(e.delta - e.delta_coarser);
    return e;
}

MeasureVector ps_measure(const SchottkyGroup& group, int depth, double tol) {
    const CylinderTree tree = cylinder_tree(group, depth);
    MeasureVector mu;
    mu.depth = depth;
    mu.delta = hausdorff_dim_at(group, tree, tol);
    const auto e = transfer_leading(transfer_matrix(group, tree, mu.delta));
    double sum = 0;
    for (double x : e.left) sum += x;
    mu.weights = e.left;
    for (auto& x : mu.weights) {
        x /= sum;
        if (!(x > 0)) fail("NonpositiveMeasure", "Patterson-Sullivan weight vanished");
    }
    return mu;
}

double quasi_invariance_residual(const SchottkyGroup& group, const MeasureVector& mu) {
    const int g = group.genus, n = mu.depth;
    if (n < 2) fail("InvalidLevel", "quasi-invariance check needs depth >= 2");
    const CylinderTree tree = cylinder_tree(group, n - 1);
    const auto& top = word_index(g, n);
    const auto& low = word_index(g, n - 1);
    std::vector<double> marg(low.size(), 0.0);
    for (std::size_t i = 0; i < top.size(); ++i) marg[low.index(top.word(i).data(), n - 1)] += mu.weights[i];
    double worst = 0;
    Word v(n);
    for (Letter i = 0; i < 2 * g; ++i) {
        const MoebiusMap gi = group.letter(i);
        for (std::size_t u = 0; u < low.size(); ++u) {
            const Word& w = low.word(u);
            if (w[0] == inverse(i, g)) continue;
            v[0] = i;
            std::copy(w.begin(), w.end(), v.begin() + 1);
            const double lhs = mu.weights[top.index(v)];
            const double jac = std::pow(std::abs(gi.derivative(tree.discs[n - 1][u].center)), mu.delta);
            worst = std::max(worst, std::abs(lhs - jac * marg[u]) / lhs);
        }
    }
    return worst;
}

// --- Selberg ---------------------------------------------------------------

SelbergResult selberg_zeta(const SchottkyGroup& group, double s, int lmax, bool oriented, bool strict) {
    const int g = group.genus;
    if (lmax < 1) fail("InvalidLevel", "lmax must be positive");
    SelbergResult r;
    double xmax = 0;
    for (int L = 1; L <= lmax; ++L) {
        double sum = 0;
        for (const auto& c : primitive_necklaces(g, L)) {
            if (!oriented && c.inverse_reversed().letters() < c.letters()) continue;
            const double N = fixed_points(word_to_matrix(group, c.letters())).multiplier_norm;
            const double x = std::pow(N, -s);
            xmax = std::max(xmax, x);
            r.log_value += std::log1p(-x);
            sum += x;
            ++r.classes;
        }
        r.length_sums.push_back(sum);
    }
    // Geometric tail: the ratio of successive cylinder-diameter sums tracks the
    // decay of the per-length class sums.
    int top = 1;
    long total = 0;
    while (true) {
        total += count_words(g, top + 1).get_si();
        if (top + 1 > lmax + 1 || total > kMaxCylinders) break;
        ++top;
    }
    const CylinderTree tree = cylinder_tree(group, top);
    const double theta = tree.sum_diameter_power(top, s) / tree.sum_diameter_power(top - 1 > 0 ? top - 1 : 1, s);
    if (top < 2 || !(theta < 1.0)) {
        r.tail_bound = std::numeric_limits<double>::infinity();
    } else {
        const double est = r.length_sums.back() * theta / (1.0 - theta);
        r.tail_bound = 2.0 * est / (1.0 - std::min(xmax, 0.5));
    }
    r.tail_small = r.tail_bound <= 1e-3;
    if (strict && !r.tail_small) fail("TailNotSmall", "tail bound exceeds 1e-3");
    return r;
}

// --- Poincare series -------------------------------------------------------

namespace {

struct Term {
    cplx a, b;
    int length;
};

std::vector<Term> collect_terms(const SchottkyGroup& group, Letter k, int lmax) {
    const int g = group.genus;
    if (k < 0 || k >= 2 * g) fail("InvalidLetter", std::to_string(k));
    if (lmax < 0) fail("InvalidLevel", "lmax must be nonnegative");
    const auto fp = fixed_points(group.letter(k));
    if (fp.z_plus.inf || fp.z_minus.inf) fail("InvalidGroup", "fixed point at infinity");
    std::vector<MoebiusMap> letters;
    for (Letter a = 0; a < 2 * g; ++a) letters.push_back(group.letter(a));
    std::vector<Term> out;
    out.push_back({fp.z_plus.z, fp.z_minus.z, 0});
    std::function<void(const MoebiusMap&, Letter, int)> rec = [&](const MoebiusMap& m, Letter last, int len) {
        if (len > 0 && last != k && last != inverse(k, g)) {
            const P1 a = apply_boundary(m, fp.z_plus), b = apply_boundary(m, fp.z_minus);
            if (a.inf || b.inf) fail("InvalidGroup", "translate of a fixed point at infinity");
            out.push_back({a.z, b.z, len});
        }
        if (len == lmax) return;
        for (Letter a = 0; a < 2 * g; ++a) {
            if (len > 0 && a == inverse(last, g)) continue;
            rec(compose(m, letters[a]), a, len + 1);
        }
    };
    rec(MoebiusMap::identity(), -1, 0);
    return out;
}

}  // namespace

std::vector<std::pair<cplx, cplx>> poincare_terms(const SchottkyGroup& group, Letter k, int lmax) {
    std::vector<std::pair<cplx, cplx>> out;
    for (const auto& t : collect_terms(group, k, lmax)) out.push_back({t.a, t.b});
    return out;
}

cplx poincare_differential(const std::vector<std::pair<cplx, cplx>>& terms, cplx z) {
    cplx acc = 0;
    for (const auto& [a, b] : terms) acc += 1.0 / (z - a) - 1.0 / (z - b);
    return acc;
}

cplx poincare_differential(const SchottkyGroup& group, Letter k, cplx z, int lmax) {
    return poincare_differential(poincare_terms(group, k, lmax), z);
}

cplx poincare_log_series(const std::vector<std::pair<cplx, cplx>>& terms, cplx z, cplx z0) {
    cplx acc = 0;
    for (const auto& [a, b] : terms) acc += std::log(((z - a) * (z0 - b)) / ((z - b) * (z0 - a)));
    return acc;
}

std::vector<cplx> poincare_convergence(const SchottkyGroup& group, Letter k, cplx z, int lmax) {
    const auto terms = collect_terms(group, k, lmax);
    std::vector<cplx> by_len(lmax + 1, 0.0);
    for (const auto& t : terms) by_len[t.length] += 1.0 / (z - t.a) - 1.0 / (z - t.b);
    std::vector<cplx> partial;
    cplx acc = 0;
    for (int L = 0; L <= lmax; ++L) {
        acc += by_len[L];
        partial.push_back(acc);
    }
    for (int L = 3; L <= lmax; ++L) {
        const double prev = std::abs(by_len[L - 1]), cur = std::abs(by_len[L]);
        if (cur > prev && cur > 1e-14) fail("NonConvergent", "Poincare increments grow at length " + std::to_string(L));
    }
    return partial;
}

cplx period_integral(const SchottkyGroup& group, Letter j, Letter k, int lmax, int quadrature) {
    if (quadrature < 8) fail("InvalidArgument", "quadrature needs at least 8 points");
    const auto terms = poincare_terms(group, k, lmax);
    const CircleSpec& c = group.letter_disc(j);
    cplx acc = 0;
    for (int t = 0; t < quadrature; ++t) {
        const cplx e = std::polar(1.0, 2.0 * std::numbers::pi * t / quadrature);
        acc += poincare_differential(terms, c.center + c.radius * e) * cplx(0, 1) * c.radius * e;
    }
    return acc * (2.0 * std::numbers::pi / quadrature);
}

std::vector<std::vector<cplx>> period_table(const SchottkyGroup& group, int lmax, int quadrature) {
    const int n = 2 * group.genus;
    std::vector<std::vector<cplx>> table(n, std::vector<cplx>(n));
    std::vector<std::vector<std::pair<cplx, cplx>>> terms(n);
    for (Letter k = 0; k < n; ++k) terms[k] = poincare_terms(group, k, lmax);
    auto work = [&](int k) {
        for (Letter j = 0; j < n; ++j) {
            const CircleSpec& c = group.letter_disc(j);
            cplx acc = 0;
            for (int t = 0; t < quadrature; ++t) {
                const cplx e = std::polar(1.0, 2.0 * std::numbers::pi * t / quadrature);
                acc += poincare_differential(terms[k], c.center + c.radius * e) * cplx(0, 1) * c.radius * e;
            }
            table[j][k] = acc * (2.0 * std::numbers::pi / quadrature);
        }
    };
    const unsigned threads = std::min<unsigned>(thread_count(), n);
    if (threads <= 1) {
        for (int k = 0; k < n; ++k) work(k);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (int k = static_cast<int>(t); k < n; k += threads) work(k);
            });
        for (auto& th : pool) th.join();
    }
    return table;
}

}  // namespace schottky
