#include "schottky/cohomology.hpp"

#include "schottky/error.hpp"

namespace schottky {

// --- Cochain ---------------------------------------------------------------

Cochain Cochain::zero(int g, int level) {
    if (level < 0) fail("InvalidLevel", std::to_string(level));
    Cochain f;
    f.g = g;
    f.level = level;
    f.c.assign(word_index(g, level + 1).size(), Rational(0));
    return f;
}

Cochain Cochain::indicator(int g, const Word& w) {
    if (w.empty()) fail("InvalidLevel", "indicator of the empty word");
    require_reduced(w, g);
    Cochain f = zero(g, static_cast<int>(w.size()) - 1);
    f.c[f.index().index(w)] = 1;
    return f;
}

Cochain Cochain::constant(int g, int level, const Rational& v) {
    Cochain f = zero(g, level);
    for (auto& x : f.c) x = v;
    return f;
}

Rational Cochain::value(const Word& w) const {
    if (static_cast<int>(w.size()) < level + 1) fail("InvalidLevel", "word shorter than level");
    long i = index().index(w.data(), level + 1);
    if (i < 0) fail("WordNotReduced", to_string(w));
    return c[i];
}

bool Cochain::is_zero() const {
    for (const auto& x : c)
        if (x != 0) return false;
    return true;
}

static void same_space(const Cochain& a, const Cochain& b) {
    if (a.g != b.g || a.level != b.level) fail("LevelMismatch", "cochains live at different levels");
}

Cochain& Cochain::operator+=(const Cochain& o) {
    same_space(*this, o);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
    same_space(*this, o);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
}

Cochain& Cochain::operator*=(const Rational& q) {
    for (auto& x : c) x *= q;
    return *this;
}

Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
Cochain operator*(const Rational& q, Cochain a) { return a *= q; }

Cochain extend(const Cochain& f, int m) {
    if (m < f.level) fail("InvalidLevel", "extension must not lower the level");
    if (m == f.level) return f;
    Cochain r = Cochain::zero(f.g, m);
    const auto& idx = r.index();
    const auto& src = f.index();
    for (std::size_t i = 0; i < idx.size(); ++i) r.c[i] = f.c[src.index(idx.word(i).data(), f.level + 1)];
    return r;
}

Cochain coboundary(const Cochain& f) {
    Cochain r = Cochain::zero(f.g, f.level + 1);
    const auto& idx = r.index();
    const auto& src = f.index();
    const int len = f.level + 1;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const Word& w = idx.word(i);
        r.c[i] = f.c[src.index(w.data(), len)] - f.c[src.index(w.data() + 1, len)];
    }
    return r;
}

Cochain orientation_involution(const Cochain& f) {
    Cochain r = Cochain::zero(f.g, f.level);
    const auto& idx = f.index();
    Word w;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        w = idx.word(i);
        for (auto& a : w) a = inverse(a, f.g);
        r.c[idx.index(w)] = f.c[i];
    }
    return r;
}

// --- filtration ------------------------------------------------------------

int default_level_cap(int g) { return g <= 2 ? 4 : 3; }

FiltrationReport filtration_rank(int g, int n, int cap) {
    if (cap < 0) cap = default_level_cap(g);
    if (n < 0) fail("InvalidLevel", std::to_string(n));
    if (n > cap) fail("LevelTooLarge", "level " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    FiltrationReport rep;
    rep.n = n;
    rep.rank_Pn = static_cast<long>(word_index(g, n + 1).size());
    if (n == 0) {
        rep.rank_image_delta = 0;
        rep.closed_form = 2 * g;
    } else {
        const auto& lower = word_index(g, n);
        IntMatrix rows;
        rows.reserve(lower.size());
        for (std::size_t i = 0; i < lower.size(); ++i) {
            Cochain e = Cochain::zero(g, n - 1);
            e.c[i] = 1;
            Cochain d = coboundary(e);
            std::vector<mpz_class> row(d.c.size());
            for (std::size_t j = 0; j < d.c.size(); ++j) row[j] = d.c[j].get_num();
            rows.push_back(std::move(row));
        }
        rep.rank_image_delta = static_cast<long>(bareiss_rank(std::move(rows)));
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2 * g - 1, n - 1);
        mpz_class cf = 2 * g * p * (2 * g - 2) + 1;
        rep.closed_form = cf.get_si();
    }
    rep.rank_Fn = rep.rank_Pn - rep.rank_image_delta;
    return rep;
}

Rational pairing(const Cochain& f, const Word& cycle) {
    const int N = static_cast<int>(cycle.size());
    if (!cyclically_reduced(cycle, f.g)) fail("WordNotReduced", "orbit " + to_string(cycle));
    const int len = f.level + 1;
    const auto& idx = f.index();
    Word window(len);
    Rational s = 0;
    for (int i = 0; i < N; ++i) {
        for (int k = 0; k < len; ++k) window[k] = cycle[(i + k) % N];
        s += f.c[idx.index(window)];
    }
    return s;
}

Rational pairing(const Cochain& f, const CyclicWord& cycle) { return pairing(f, cycle.letters()); }

namespace {

long quotient_rank(int g, int level, const std::vector<Cochain>& vectors, bool drop_lower) {
    std::vector<std::vector<Rational>> base;
    if (level > 0) {
        const auto& lower = word_index(g, level);
        for (std::size_t i = 0; i < lower.size(); ++i) {
            Cochain e = Cochain::zero(g, level - 1);
            e.c[i] = 1;
            base.push_back(coboundary(e).c);
            if (drop_lower) base.push_back(extend(e, level).c);
        }
    }
    const long r0 = static_cast<long>(rational_rank(base));
    for (const auto& v : vectors) {
        if (v.g != g || v.level != level) fail("LevelMismatch", "graded_rank input");
        base.push_back(v.c);
    }
    return static_cast<long>(rational_rank(base)) - r0;
}

}  // namespace

long graded_rank(int g, int level, const std::vector<Cochain>& vectors) { return quotient_rank(g, level, vectors, true); }

long class_rank(int g, int level, const std::vector<Cochain>& vectors) { return quotient_rank(g, level, vectors, false); }

// --- measures --------------------------------------------------------------

CylinderMeasure::CylinderMeasure(int g, int depth, std::vector<Rational> weights) : g_(g), depth_(depth) {
    if (depth < 1) fail("InvalidLevel", "measure depth must be positive");
    const auto& top = word_index(g, depth);
    if (weights.size() != top.size()) fail("InvalidMeasure", "weight count does not match cylinders");
    for (const auto& w : weights)
        if (w <= 0) fail("NonpositiveMeasure", "cylinder weight must be positive");
    mass_.resize(depth + 1);
    mass_[depth] = std::move(weights);
    for (int len = depth - 1; len >= 1; --len) {
        const auto& idx = word_index(g, len);
        const auto& up = word_index(g, len + 1);
        mass_[len].assign(idx.size(), Rational(0));
        for (std::size_t i = 0; i < up.size(); ++i) mass_[len][idx.index(up.word(i).data(), len)] += mass_[len + 1][i];
    }
}

CylinderMeasure CylinderMeasure::uniform_markov(int g, int depth) {
    Rational w(1, 2 * g);
    for (int k = 1; k < depth; ++k) w /= (2 * g - 1);
    return CylinderMeasure(g, depth, std::vector<Rational>(word_index(g, depth).size(), w));
}

CylinderMeasure CylinderMeasure::from_doubles(int g, int depth, const std::vector<double>& weights) {
    std::vector<Rational> q;
    q.reserve(weights.size());
    for (double x : weights) {
        if (!(x > 0)) fail("NonpositiveMeasure", "cylinder weight must be positive");
        q.emplace_back(x);
    }
    return CylinderMeasure(g, depth, std::move(q));
}

Rational CylinderMeasure::mass(const Word& w) const {
    const int len = static_cast<int>(w.size());
    if (len < 1 || len > depth_) fail("InvalidLevel", "cylinder length outside measure depth");
    long i = word_index(g_, len).index(w);
    if (i < 0) fail("WordNotReduced", to_string(w));
    return mass_[len][i];
}

bool CylinderMeasure::relabel_symmetric() const {
    const auto& idx = word_index(g_, depth_);
    Word w;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        w = idx.word(i);
        for (auto& a : w) a = inverse(a, g_);
        if (mass_[depth_][idx.index(w)] != mass_[depth_][i]) return false;
    }
    return true;
}

Cochain conditional_expectation(const Cochain& f, int k, const CylinderMeasure& mu) {
    if (k > f.level) fail("InvalidLevel", "conditional expectation onto a finer level");
    if (k < 0) fail("InvalidLevel", std::to_string(k));
    if (f.level + 1 > mu.depth()) fail("InvalidMeasure", "measure depth below cochain level");
    if (k == f.level) return f;
    Cochain r = Cochain::zero(f.g, k);
    const auto& idx = f.index();
    const auto& fine = mu.masses(f.level + 1);
    const auto& coarse = mu.masses(k + 1);
    const auto& cidx = r.index();
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (f.c[i] == 0) continue;
        r.c[cidx.index(idx.word(i).data(), k + 1)] += fine[i] * f.c[i];
    }
    for (std::size_t j = 0; j < r.c.size(); ++j) r.c[j] /= coarse[j];
    return r;
}

Cochain hat_projection(const Cochain& f, int n, const CylinderMeasure& mu) {
    if (n < 0) fail("InvalidLevel", std::to_string(n));
    if (f.level < n) return Cochain::zero(f.g, n);
    Cochain top = conditional_expectation(f, n, mu);
    if (n == 0) return top;
    return top - extend(conditional_expectation(f, n - 1, mu), n);
}

Rational inner(const Cochain& f, const Cochain& h, const CylinderMeasure& mu) {
    const int m = std::max(f.level, h.level);
    const Cochain a = extend(f, m), b = extend(h, m);
    const auto& w = mu.masses(m + 1);
    Rational s = 0;
    for (std::size_t i = 0; i < a.c.size(); ++i) s += w[i] * a.c[i] * b.c[i];
    return s;
}

// --- graded classes --------------------------------------------------------

std::string side_name(Side s) {
    switch (s) {
        case Side::Cochain: return "cochain";
        case Side::Cohomology: return "cohomology";
        case Side::Homology: return "homology";
    }
    return "?";
}

void GradedClass::add(const Word& w, const Rational& q) {
    if (q == 0) return;
    auto& v = coeffs[w];
    v += q;
    if (v == 0) coeffs.erase(w);
}

void GradedClass::prune() {
    for (auto it = coeffs.begin(); it != coeffs.end();) it = it->second == 0 ? coeffs.erase(it) : std::next(it);
}

bool GradedClass::operator==(const GradedClass& o) const {
    return side == o.side && g == o.g && twist == o.twist && level == o.level && coeffs == o.coeffs;
}

GradedClass& GradedClass::operator+=(const GradedClass& o) {
    if (side != o.side || g != o.g || twist != o.twist || level != o.level)
        fail("TwistMismatch", "adding classes of different grade, side or twist");
    for (const auto& [w, q] : o.coeffs) add(w, q);
    return *this;
}

GradedClass& GradedClass::operator*=(const Rational& q) {
    for (auto& kv : coeffs) kv.second *= q;
    prune();
    return *this;
}

GradedClass negate(GradedClass x) { return x *= Rational(-1); }

GradedClass to_class(const Cochain& f, int twist, Side side) {
    GradedClass x;
    x.side = side;
    x.g = f.g;
    x.twist = twist;
    x.level = f.level;
    const auto& idx = f.index();
    for (std::size_t i = 0; i < idx.size(); ++i)
        if (f.c[i] != 0) x.coeffs[idx.word(i)] = f.c[i];
    return x;
}

Cochain to_cochain(const GradedClass& x) {
    if (x.side == Side::Homology) fail("SideMismatch", "homology class is not a cochain");
    Cochain f = Cochain::zero(x.g, x.level);
    const auto& idx = f.index();
    for (const auto& [w, q] : x.coeffs) {
        long i = idx.index(w);
        if (i < 0) fail("WordNotReduced", to_string(w));
        f.c[i] = q;
    }
    return f;
}

GradedClass chi_class(int g, int n, Letter k) {
    if (n < 1) fail("InvalidLevel", "chi_class needs n >= 1");
    if (k < 0 || k >= 2 * g) fail("InvalidLetter", std::to_string(k));
    GradedClass x;
    x.side = Side::Cohomology;
    x.g = g;
    x.twist = -(n - 1);
    x.level = n - 1;
    x.coeffs[Word(n, k)] = 1;
    return x;
}

GradedClass frobenius(const GradedClass& x) {
    GradedClass r = x;
    r.coeffs.clear();
    const Rational sign = (x.twist % 2 == 0) ? 1 : -1;
    for (const auto& [w, q] : x.coeffs) {
        Word v;
        if (x.side == Side::Homology) {
            v = canonical_rotation(inverse_word(w, x.g));
        } else {
            v = w;
            for (auto& a : v) a = inverse(a, x.g);
        }
        r.add(v, sign * q);
    }
    return r;
}

TwistedRational graded_pairing(const GradedClass& cohom, const GradedClass& hom) {
    if (cohom.side == Side::Homology || hom.side != Side::Homology)
        fail("SideMismatch", "pairing needs a cohomology class and a homology class");
    Rational s = 0;
    const Cochain f = to_cochain(cohom);
    for (const auto& [w, q] : hom.coeffs) s += q * pairing(f, w);
    return {cohom.twist + hom.twist, s};
}

ArchClass ArchClass::basis(int g, int degree, int twist, int k) {
    if (k < 0 || k >= 2 * g) fail("InvalidLetter", std::to_string(k));
    ArchClass x{g, degree, twist, std::vector<Rational>(2 * g, Rational(0))};
    x.coeffs[k] = 1;
    return x;
}

bool ArchClass::operator==(const ArchClass& o) const {
    return g == o.g && degree == o.degree && twist == o.twist && coeffs == o.coeffs;
}

ArchClass frobenius(const ArchClass& x) {
    ArchClass r = x;
    const int s = (x.twist % 2 == 0) ? 1 : -1;
    for (int k = 0; k < 2 * x.g; ++k) r.coeffs[k] *= (k < x.g ? s : -s);
    return r;
}

ArchClass delta1(const ArchClass& x) {
    if (x.degree != 1) fail("SideMismatch", "delta_1 starts in degree one");
    ArchClass r = x;
    r.degree = 2;
    r.twist = -(x.twist + 1);  // (2 pi i)^{p-1} -> (2 pi i)^{-p}
    return r;
}

namespace {

void check_grade(int p) {
    if (p > 0) fail("InvalidGrade", "grade must satisfy p <= 0");
}

// Pair index: basis vector k < g pairs letters (k, k+g) with sign -1, k >= g with +1.
std::pair<Letter, Rational> pair_of(int g, int k) {
    if (k < 0 || k >= 2 * g) fail("InvalidLetter", std::to_string(k));
    return k < g ? std::pair<Letter, Rational>{k, -1} : std::pair<Letter, Rational>{k - g, 1};
}

}  // namespace

GradedClass embed_U(int g, int p, int k, const CylinderMeasure& mu) {
    check_grade(p);
    const int n = -p + 1;
    auto [letter, sign] = pair_of(g, k);
    Cochain f = Cochain::indicator(g, Word(n, letter)) + sign * Cochain::indicator(g, Word(n, inverse(letter, g)));
    f *= Rational(1, 2);
    return to_class(hat_projection(f, -p, mu), p, Side::Cochain);
}

GradedClass embed_Ubar(int g, int p, int k) {
    check_grade(p);
    const int n = -p + 1;
    auto [letter, sign] = pair_of(g, k);
    GradedClass x;
    x.side = Side::Cohomology;
    x.g = g;
    x.twist = p;
    x.level = -p;
    x.add(Word(n, letter), Rational(1, 2));
    x.add(Word(n, inverse(letter, g)), sign / 2);
    return x;
}

GradedClass embed_Utilde(int g, int p, int k) {
    check_grade(p);
    const int n = -p + 1;
    auto [letter, sign] = pair_of(g, k);
    GradedClass x;
    x.side = Side::Homology;
    x.g = g;
    x.twist = n;
    x.level = n;
    const Rational c(1, 2 * n);
    x.add(Word(n, letter), c);
    x.add(Word(n, inverse(letter, g)), sign * c);
    return x;
}

namespace {

template <class F>
GradedClass extend_linear(const ArchClass& x, int p, F f) {
    GradedClass r;
    bool first = true;
    for (int k = 0; k < 2 * x.g; ++k) {
        GradedClass img = f(k);
        if (first) {
            r = img;
            r.coeffs.clear();
            first = false;
        }
        if (x.coeffs[k] != 0) r += (img *= x.coeffs[k]);
    }
    (void)p;
    return r;
}

}  // namespace

GradedClass embed_U(const ArchClass& x, const CylinderMeasure& mu) {
    if (x.degree != 1) fail("SideMismatch", "U acts on degree one");
    const int p = x.twist + 1;
    return extend_linear(x, p, [&](int k) { return embed_U(x.g, p, k, mu); });
}

GradedClass embed_Ubar(const ArchClass& x) {
    if (x.degree != 1) fail("SideMismatch", "Ubar acts on degree one");
    const int p = x.twist + 1;
    return extend_linear(x, p, [&](int k) { return embed_Ubar(x.g, p, k); });
}

GradedClass embed_Utilde(const ArchClass& x) {
    if (x.degree != 2) fail("SideMismatch", "Utilde acts on degree two");
    const int p = -x.twist;
    return extend_linear(x, p, [&](int k) { return embed_Utilde(x.g, p, k); });
}

GradedClass duality_tilde_delta1(const GradedClass& x) {
    if (x.side != Side::Cohomology) fail("SideMismatch", "tilde delta_1 acts on cohomology classes");
    const int p = x.twist;
    check_grade(p);
    const int n = -p + 1;
    if (x.level != n - 1) fail("InvalidGrade", "level does not match twist");
    GradedClass r;
    r.side = Side::Homology;
    r.g = x.g;
    r.twist = n;
    r.level = n;
    for (const auto& [w, q] : x.coeffs) {
        for (Letter a : w)
            if (a != w.front()) fail("OutsideDomain", "tilde delta_1 is defined on the chi_{n,k} span");
        r.add(w, q / n);
    }
    return r;
}

int grading_eigenvalue(Summand s, int level) {
    if (level < 0) fail("InvalidLevel", std::to_string(level));
    return s == Summand::First ? level + 1 : -level;
}

}  // namespace schottky
