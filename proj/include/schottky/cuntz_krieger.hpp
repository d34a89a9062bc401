#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "schottky/cohomology.hpp"
#include "schottky/exact.hpp"
#include "schottky/moebius.hpp"
#include "schottky/words.hpp"

namespace schottky {

enum class CKMeasure { PattersonSullivan, Uniform };
std::string measure_name(CKMeasure m);

// Product of weight symbols w(i,u)^{e/2}, sorted by key; w(i,u) stands for
// |g_i'|^delta at the representative of the cylinder u.
using WeightMonomial = std::vector<std::pair<long, int>>;

struct SymScalar {
    std::map<WeightMonomial, Rational> terms;

    bool is_zero() const { return terms.empty(); }
    SymScalar& operator+=(const SymScalar& o);
    SymScalar& operator-=(const SymScalar& o);
    // Multiply by the monomial w^{half/2}.
    SymScalar times_weight(long key, int half) const;
    bool operator==(const SymScalar& o) const { return terms == o.terms; }
    static SymScalar one();
};

// Function constant on the cylinders of words of length `level` (>= 1),
// stored sparsely by WordIndex position.
struct LevelVector {
    int level = 1;
    std::map<long, SymScalar> entries;
};

// Element of the level-graded space: one component per level.  Components
// are kept apart because the weight symbols attached by S and S* only match
// when both act on the same level.
struct SymVector {
    std::map<int, std::map<long, SymScalar>> parts;
    int top_level() const;  // 0 for the zero vector
    void add(const LevelVector& v);
};

// Cylinder functions up to a fixed word length with the weight table of one
// measure.  Level-m vectors live on cylinders of length m; the shift moves
// them between levels, so each operator records the largest level it accepts.
class TruncatedSpace {
public:
    TruncatedSpace(const SchottkyGroup& group, int depth, CKMeasure measure);

    int genus() const { return g_; }
    int depth() const { return depth_; }
    CKMeasure measure() const { return measure_; }
    double delta() const { return delta_; }
    // Constants plus one indicator per word of length 1..depth.
    long dimension() const;

    SymVector basis(const Word& w) const;
    SymVector constant() const;
    LevelVector expand(const LevelVector& v, int level) const;
    // Sum of all components as one function on cylinders of length `level`.
    LevelVector flatten(const SymVector& v, int level) const;

    long weight_key(Letter i, int len, long u) const;
    double weight_value(long key) const { return weights_[key]; }
    double evaluate(const SymScalar& x) const;

private:
    int g_;
    int depth_;
    CKMeasure measure_;
    double delta_ = 0;
    std::vector<long> offset_;
    std::vector<double> weights_;
};

struct TruncatedOperator {
    std::string name;
    int domain_level = 0;
    std::function<int(int)> out_level;
    std::function<SymVector(const SymVector&)> apply;

    SymVector operator()(const SymVector& v) const;
};

TruncatedOperator op_P(const TruncatedSpace& sp, const Word& gamma);
TruncatedOperator op_S(const TruncatedSpace& sp, Letter i);
TruncatedOperator op_S_adjoint(const TruncatedSpace& sp, Letter i);
// T_i = S_{i+g} + S_i^*.
TruncatedOperator op_T(const TruncatedSpace& sp, Letter i);
// f -> |g_i'(x)|^{delta/2} f(g_i x), assembled cell by cell.
TruncatedOperator op_T_direct(const TruncatedSpace& sp, Letter i);
TruncatedOperator op_T_word(const TruncatedSpace& sp, const Word& gamma);
TruncatedOperator op_identity(const TruncatedSpace& sp);
TruncatedOperator op_compose(const TruncatedOperator& a, const TruncatedOperator& b);  // a after b
TruncatedOperator op_sum(const TruncatedSpace& sp, const std::vector<TruncatedOperator>& terms);

struct Residual {
    long nonzero = 0;      // symbolic entries that fail to cancel
    double numeric = 0.0;  // largest evaluated entry of the difference
};
Residual difference(const TruncatedSpace& sp, const SymVector& a, const SymVector& b);

struct RelationCheck {
    std::string name;
    int domain_level = 0;  // highest level tested
    int lowest_level = 1;  // largest of the per-relation lower bounds
    long vectors = 0;
    long nonzero = 0;
    double numeric = 0.0;
};

struct RelationReport {
    int g = 0;
    int depth = 0;
    std::string measure;
    long dimension = 0;
    double delta = 0;
    std::vector<RelationCheck> checks;
    bool exact() const;
};

RelationReport ck_verify(const SchottkyGroup& group, int depth, CKMeasure measure);

// --- two-sided Dirac operator ----------------------------------------------

// Numeric cylinder masses at one depth for the chosen measure.
std::vector<double> ck_masses(const SchottkyGroup& group, int depth, CKMeasure measure);
CylinderMeasure ck_cylinder_measure(const SchottkyGroup& group, int depth, CKMeasure measure);

struct DiracReport {
    int depth = 0;
    long dimension = 0;              // of L + L
    double symmetry_defect = 0;      // in the orthonormalized basis
    double rounding = 0;             // largest distance of an eigenvalue from its integer
    std::map<int, long> spectrum;    // computed, rounded
    std::map<int, long> expected;    // from the level dimensions
    long v_checked = 0;
    long v_failures = 0;             // embedded classes that are not exact eigenvectors
};

DiracReport dirac_check(const SchottkyGroup& group, int depth, CKMeasure measure);

struct CommutatorNorm {
    int depth = 0;
    double with_S = 0;
    double with_S_adjoint = 0;
};

// ||[D, S_i]|| and ||[D, S_i^*]|| on the exact domain at each depth.
std::vector<CommutatorNorm> commutator_trend(const SchottkyGroup& group, Letter i, const std::vector<int>& depths,
                                             CKMeasure measure = CKMeasure::PattersonSullivan);

struct CompressedFactor {
    std::vector<long> trace_weights;  // at lambda = 0, -1, ..., one per level
    long weight_even = 0;             // real side, F-fixed classes at even lambda
    long weight_odd = 0;              // real side, F-anti-fixed classes at odd lambda
    double log_det_C = 0;
    double log_direct_C = 0;          // -log L_C(H^1, s)
    double log_det_R = 0;
    double log_direct_R = 0;          // -log L_R(H^1, s)
};

CompressedFactor compressed_local_factor(int g, double s, const CylinderMeasure& mu);

}  // namespace schottky
