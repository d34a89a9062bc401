#pragma once

#include <map>
#include <string>
#include <vector>

#include "schottky/exact.hpp"
#include "schottky/words.hpp"

namespace schottky {

// Element of P_n: a locally constant function depending on the first n+1
// letters, stored densely over the reduced words of length n+1.
struct Cochain {
    int g = 0;
    int level = 0;
    std::vector<Rational> c;

    static Cochain zero(int g, int level);
    static Cochain indicator(int g, const Word& w);  // chi of the cylinder of w, at level |w|-1
    static Cochain constant(int g, int level, const Rational& v);

    const WordIndex& index() const { return word_index(g, level + 1); }
    Rational value(const Word& w) const;  // w of length >= level+1, uses the prefix
    bool is_zero() const;

    Cochain& operator+=(const Cochain& o);
    Cochain& operator-=(const Cochain& o);
    Cochain& operator*=(const Rational& q);
    bool operator==(const Cochain& o) const { return g == o.g && level == o.level && c == o.c; }
};

Cochain operator+(Cochain a, const Cochain& b);
Cochain operator-(Cochain a, const Cochain& b);
Cochain operator*(const Rational& q, Cochain a);

// Constant extension from level n to level m >= n.
Cochain extend(const Cochain& f, int m);

// (df)(a_0..a_{n+1}) = f(a_0..a_n) - f(a_1..a_{n+1}).
Cochain coboundary(const Cochain& f);

// Relabel every letter k <-> k+g.
Cochain orientation_involution(const Cochain& f);

struct FiltrationReport {
    int n = 0;
    long rank_Pn = 0;
    long rank_image_delta = 0;
    long rank_Fn = 0;
    long closed_form = 0;
};

int default_level_cap(int g);
FiltrationReport filtration_rank(int g, int n, int cap = -1);

// Birkhoff sum of f over one period of the orbit (cycle read cyclically).
Rational pairing(const Cochain& f, const Word& cycle);
Rational pairing(const Cochain& f, const CyclicWord& cycle);

// Rank of the span of `vectors` inside Gr_level = P_level / (dP_{level-1} + P_{level-1}).
long graded_rank(int g, int level, const std::vector<Cochain>& vectors);
// Rank of the span modulo dP_{level-1} only, i.e. as classes in H^1.
long class_rank(int g, int level, const std::vector<Cochain>& vectors);

// Cylinder measure given by its weights on words of a fixed length; masses of
// shorter cylinders are marginal sums.
class CylinderMeasure {
public:
    CylinderMeasure(int g, int depth, std::vector<Rational> weights);
    static CylinderMeasure uniform_markov(int g, int depth);
    // Each double is converted exactly to a rational.
    static CylinderMeasure from_doubles(int g, int depth, const std::vector<double>& weights);

    int genus() const { return g_; }
    int depth() const { return depth_; }
    // Masses of the cylinders of length `len` (1 <= len <= depth), in WordIndex order.
    const std::vector<Rational>& masses(int len) const { return mass_[len]; }
    Rational mass(const Word& w) const;
    bool relabel_symmetric() const;

private:
    int g_;
    int depth_;
    std::vector<std::vector<Rational>> mass_;
};

// Conditional expectation of f onto P_k (averaging over cylinders of length k+1).
Cochain conditional_expectation(const Cochain& f, int k, const CylinderMeasure& mu);
// Pi_n - Pi_{n-1}, returned at level n (Pi_{-1} = 0).
Cochain hat_projection(const Cochain& f, int n, const CylinderMeasure& mu);
Rational inner(const Cochain& f, const Cochain& h, const CylinderMeasure& mu);

// --- graded classes with symbolic Tate twists -------------------------------

enum class Side { Cochain, Cohomology, Homology };
std::string side_name(Side s);

// Coefficients keyed by words: cochain side uses words of length level+1,
// homology side uses canonical rotations of cyclic words of length `level`.
struct GradedClass {
    Side side = Side::Cochain;
    int g = 0;
    int twist = 0;
    int level = 0;
    std::map<Word, Rational> coeffs;

    void add(const Word& w, const Rational& q);
    void prune();
    bool operator==(const GradedClass& o) const;
    GradedClass& operator+=(const GradedClass& o);
    GradedClass& operator*=(const Rational& q);
};

GradedClass negate(GradedClass x);
GradedClass to_class(const Cochain& f, int twist, Side side = Side::Cochain);
Cochain to_cochain(const GradedClass& x);

// chi_{n,k}: class of the indicator of k repeated n times, twist -(n-1).
GradedClass chi_class(int g, int n, Letter k);

GradedClass frobenius(const GradedClass& x);

// Pairing of a cohomology-side class with a homology-side class; the twist of
// the result is the sum of the twists.
struct TwistedRational {
    int twist;
    Rational value;
};
TwistedRational graded_pairing(const GradedClass& cohom, const GradedClass& hom);

// Archimedean side: (2 pi i)^twist phi_k, k = 0..2g-1, in H^1 (degree 1) or
// H^2 (degree 2).
struct ArchClass {
    int g = 0;
    int degree = 1;
    int twist = 0;
    std::vector<Rational> coeffs;

    static ArchClass basis(int g, int degree, int twist, int k);
    bool operator==(const ArchClass& o) const;
};

ArchClass frobenius(const ArchClass& x);
// delta_1: (2 pi i)^{p-1} phi_k in H^1 -> (2 pi i)^{-p} phi_k in H^2.
ArchClass delta1(const ArchClass& x);

// Images of the Archimedean basis vector at grade p <= 0.
GradedClass embed_U(int g, int p, int k, const CylinderMeasure& mu);
GradedClass embed_Ubar(int g, int p, int k);
GradedClass embed_Utilde(int g, int p, int k);
GradedClass embed_U(const ArchClass& x, const CylinderMeasure& mu);
GradedClass embed_Ubar(const ArchClass& x);
GradedClass embed_Utilde(const ArchClass& x);

GradedClass duality_tilde_delta1(const GradedClass& x);

enum class Summand { First, Second };
// Eigenvalue of the two-sided grading at a level: n+1 on L+0, -n on 0+L.
int grading_eigenvalue(Summand s, int level);

}  // namespace schottky
