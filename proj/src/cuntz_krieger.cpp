#include "schottky/cuntz_krieger.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "schottky/error.hpp"
#include "schottky/fractal.hpp"
#include "schottky/zeta.hpp"

namespace schottky {

std::string measure_name(CKMeasure m) { return m == CKMeasure::Uniform ? "uniform" : "ps"; }

// --- symbolic scalars ------------------------------------------------------

SymScalar SymScalar::one() {
    SymScalar s;
    s.terms[{}] = 1;
    return s;
}

SymScalar& SymScalar::operator+=(const SymScalar& o) {
    for (const auto& [m, q] : o.terms) {
        auto& slot = terms[m];
        slot += q;
        if (slot == 0) terms.erase(m);
    }
    return *this;
}

SymScalar& SymScalar::operator-=(const SymScalar& o) {
    for (const auto& [m, q] : o.terms) {
        auto& slot = terms[m];
        slot -= q;
        if (slot == 0) terms.erase(m);
    }
    return *this;
}

SymScalar SymScalar::times_weight(long key, int half) const {
    SymScalar out;
    for (const auto& [m, q] : terms) {
        WeightMonomial r;
        r.reserve(m.size() + 1);
        bool placed = false;
        for (const auto& [k, e] : m) {
            if (!placed && key <= k) {
                placed = true;
                if (key == k) {
                    if (e + half != 0) r.push_back({k, e + half});
                    continue;
                }
                r.push_back({key, half});
            }
            r.push_back({k, e});
        }
        if (!placed) r.push_back({key, half});
        auto& slot = out.terms[r];
        slot += q;
        if (slot == 0) out.terms.erase(r);
    }
    return out;
}

// --- space -----------------------------------------------------------------

TruncatedSpace::TruncatedSpace(const SchottkyGroup& group, int depth, CKMeasure measure)
    : g_(group.genus), depth_(depth), measure_(measure) {
    if (depth < 2) fail("InvalidLevel", "truncation depth must be at least 2");
    offset_.assign(depth + 1, 0);
    long total = 0;
    for (int len = 1; len <= depth; ++len) {
        offset_[len] = total;
        total += 2L * g_ * static_cast<long>(word_index(g_, len).size());
    }
    weights_.assign(total, 0.0);
    if (measure == CKMeasure::Uniform) {
        std::fill(weights_.begin(), weights_.end(), 1.0 / (2 * g_ - 1));
        return;
    }
    const CylinderTree tree = cylinder_tree(group, depth);
    delta_ = hausdorff_dim_at(group, tree, 1e-10);
    for (Letter i = 0; i < 2 * g_; ++i) {
        const MoebiusMap gi = group.letter(i);
        for (int len = 1; len <= depth; ++len) {
            const auto& idx = word_index(g_, len);
            for (std::size_t u = 0; u < idx.size(); ++u)
                weights_[weight_key(i, len, static_cast<long>(u))] =
                    std::pow(std::abs(gi.derivative(tree.discs[len][u].center)), delta_);
        }
    }
}

long TruncatedSpace::dimension() const {
    long d = 1;
    for (int len = 1; len <= depth_; ++len) d += static_cast<long>(word_index(g_, len).size());
    return d;
}

long TruncatedSpace::weight_key(Letter i, int len, long u) const {
    return offset_[len] + i * static_cast<long>(word_index(g_, len).size()) + u;
}

SymVector TruncatedSpace::basis(const Word& w) const {
    const int len = static_cast<int>(w.size());
    if (len < 1 || len > depth_) fail("InvalidLevel", "basis word length outside 1..depth");
    const long i = word_index(g_, len).index(w);
    if (i < 0) fail("WordNotReduced", to_string(w));
    SymVector v;
    v.parts[len][i] = SymScalar::one();
    return v;
}

SymVector TruncatedSpace::constant() const {
    SymVector v;
    for (long i = 0; i < 2 * g_; ++i) v.parts[1][i] = SymScalar::one();
    return v;
}

LevelVector TruncatedSpace::expand(const LevelVector& v, int level) const {
    if (level < v.level) fail("InvalidLevel", "cannot expand to a coarser level");
    if (level == v.level) return v;
    if (level > depth_) fail("OutsideDomain", "expansion beyond truncation depth");
    const auto& from = word_index(g_, v.level);
    const auto& to = word_index(g_, level);
    LevelVector out;
    out.level = level;
    Word w;
    std::function<void(const SymScalar&)> rec = [&](const SymScalar& x) {
        if (static_cast<int>(w.size()) == level) {
            out.entries[to.index(w)] = x;
            return;
        }
        for (Letter a = 0; a < 2 * g_; ++a) {
            if (a == inverse(w.back(), g_)) continue;
            w.push_back(a);
            rec(x);
            w.pop_back();
        }
    };
    for (const auto& [i, x] : v.entries) {
        w = from.word(i);
        rec(x);
    }
    return out;
}

LevelVector TruncatedSpace::flatten(const SymVector& v, int level) const {
    LevelVector out;
    out.level = level;
    for (const auto& [m, cells] : v.parts)
        for (const auto& [i, x] : expand(LevelVector{m, cells}, level).entries) {
            auto& slot = out.entries[i];
            slot += x;
            if (slot.is_zero()) out.entries.erase(i);
        }
    return out;
}

double TruncatedSpace::evaluate(const SymScalar& x) const {
    double acc = 0;
    for (const auto& [m, q] : x.terms) {
        double t = q.get_d();
        for (const auto& [k, e] : m) t *= std::pow(weights_[k], 0.5 * e);
        acc += t;
    }
    return acc;
}

int SymVector::top_level() const {
    int t = 0;
    for (const auto& [m, cells] : parts)
        if (!cells.empty()) t = std::max(t, m);
    return t;
}

void SymVector::add(const LevelVector& v) {
    auto& cells = parts[v.level];
    for (const auto& [i, x] : v.entries) {
        auto& slot = cells[i];
        slot += x;
        if (slot.is_zero()) cells.erase(i);
    }
    if (cells.empty()) parts.erase(v.level);
}

// --- operators -------------------------------------------------------------

SymVector TruncatedOperator::operator()(const SymVector& v) const {
    if (v.top_level() > domain_level)
        fail("OutsideDomain", name + " accepts levels <= " + std::to_string(domain_level) + ", got " +
                                  std::to_string(v.top_level()));
    return apply(v);
}

namespace {

void add_into(LevelVector& out, long i, const SymScalar& x) {
    auto& slot = out.entries[i];
    slot += x;
    if (slot.is_zero()) out.entries.erase(i);
}

void check_letter(const TruncatedSpace& sp, Letter i) {
    if (i < 0 || i >= 2 * sp.genus()) fail("InvalidLetter", std::to_string(i));
}

// Lift a map on single-level vectors to the graded sum, level by level.
std::function<SymVector(const SymVector&)> per_level(std::function<LevelVector(const LevelVector&)> f) {
    return [f](const SymVector& v) {
        SymVector out;
        for (const auto& [m, cells] : v.parts) out.add(f(LevelVector{m, cells}));
        return out;
    };
}

}  // namespace

TruncatedOperator op_identity(const TruncatedSpace& sp) {
    return {"I", sp.depth(), [](int m) { return m; }, [](const SymVector& v) { return v; }};
}

TruncatedOperator op_P(const TruncatedSpace& sp, const Word& gamma) {
    const int g = sp.genus();
    const int k = static_cast<int>(gamma.size());
    if (k > sp.depth()) fail("WordTooLong", "|gamma| exceeds truncation depth");
    require_reduced(gamma, g);
    for (Letter a : gamma) check_letter(sp, a);
    const TruncatedSpace* s = &sp;
    return {"P" + to_string(gamma), sp.depth(), [k](int m) { return std::max(m, k); },
            per_level([s, gamma, k, g](const LevelVector& v) {
                const LevelVector e = s->expand(v, std::max(v.level, std::max(k, 1)));
                const auto& idx = word_index(g, e.level);
                LevelVector out;
                out.level = e.level;
                for (const auto& [i, x] : e.entries) {
                    const Word& w = idx.word(i);
                    if (std::equal(gamma.begin(), gamma.end(), w.begin())) out.entries[i] = x;
                }
                return out;
            })};
}

TruncatedOperator op_S(const TruncatedSpace& sp, Letter i) {
    check_letter(sp, i);
    const TruncatedSpace* s = &sp;
    const int g = sp.genus();
    return {"S" + std::to_string(i), sp.depth() - 1, [](int m) { return m + 1; },
            per_level([s, i, g](const LevelVector& v) {
                const auto& from = word_index(g, v.level);
                const auto& to = word_index(g, v.level + 1);
                LevelVector out;
                out.level = v.level + 1;
                Word w(v.level + 1);
                w[0] = i;
                for (const auto& [u, x] : v.entries) {
                    const Word& uw = from.word(u);
                    if (uw[0] == inverse(i, g)) continue;
                    std::copy(uw.begin(), uw.end(), w.begin() + 1);
                    add_into(out, to.index(w), x.times_weight(s->weight_key(i, v.level, u), -1));
                }
                return out;
            })};
}

TruncatedOperator op_S_adjoint(const TruncatedSpace& sp, Letter i) {
    check_letter(sp, i);
    const TruncatedSpace* s = &sp;
    const int g = sp.genus();
    return {"S" + std::to_string(i) + "*", sp.depth(), [](int m) { return std::max(m - 1, 1); },
            per_level([s, i, g](const LevelVector& v0) {
                // A level-1 input is read on level-2 cylinders so the output
                // can vanish on the cylinder of inverse(i).
                const LevelVector v = v0.level == 1 ? s->expand(v0, 2) : v0;
                const int m = v.level;
                const auto& from = word_index(g, m);
                const auto& to = word_index(g, m - 1);
                LevelVector out;
                out.level = m - 1;
                for (const auto& [w, x] : v.entries) {
                    const Word& ww = from.word(w);
                    if (ww[0] != i) continue;
                    const long u = to.index(ww.data() + 1, m - 1);
                    add_into(out, u, x.times_weight(s->weight_key(i, m - 1, u), +1));
                }
                return out;
            })};
}

TruncatedOperator op_compose(const TruncatedOperator& a, const TruncatedOperator& b) {
    int dom = 0;
    for (int m = b.domain_level; m >= 1; --m)
        if (b.out_level(m) <= a.domain_level) {
            dom = m;
            break;
        }
    auto ao = a.out_level, bo = b.out_level;
    auto aa = a.apply, ba = b.apply;
    return {a.name + " " + b.name, dom, [ao, bo](int m) { return ao(bo(m)); },
            [aa, ba](const SymVector& v) { return aa(ba(v)); }};
}

TruncatedOperator op_sum(const TruncatedSpace&, const std::vector<TruncatedOperator>& terms) {
    if (terms.empty()) fail("InvalidArgument", "empty operator sum");
    int dom = terms[0].domain_level;
    std::string name = "(";
    for (const auto& t : terms) {
        dom = std::min(dom, t.domain_level);
        name += (name.size() > 1 ? " + " : "") + t.name;
    }
    name += ")";
    return {name, dom,
            [terms](int m) {
                int r = 0;
                for (const auto& t : terms) r = std::max(r, t.out_level(m));
                return r;
            },
            [terms](const SymVector& v) {
                SymVector out;
                for (const auto& t : terms)
                    for (const auto& [m, cells] : t.apply(v).parts) out.add(LevelVector{m, cells});
                return out;
            }};
}

TruncatedOperator op_T(const TruncatedSpace& sp, Letter i) {
    check_letter(sp, i);
    TruncatedOperator t = op_sum(sp, {op_S(sp, inverse(i, sp.genus())), op_S_adjoint(sp, i)});
    t.name = "T" + std::to_string(i);
    return t;
}

TruncatedOperator op_T_direct(const TruncatedSpace& sp, Letter i) {
    check_letter(sp, i);
    const TruncatedSpace* s = &sp;
    const int g = sp.genus();
    // Level-m input gives the level m+1 piece on the cylinder of j = inverse(i)
    // and the level max(m-1, 1) piece off it.  On the cylinder of j the point
    // is g_j(y) and |g_i'(g_j y)| = 1/|g_j'(y)|, with y read at level m.
    return {"T" + std::to_string(i) + "[direct]", sp.depth() - 1, [](int m) { return m + 1; },
            [s, i, g](const SymVector& v) {
                const Letter j = inverse(i, g);
                SymVector out;
                for (const auto& [m, cells] : v.parts) {
                    const auto& in = word_index(g, m);
                    const auto& up = word_index(g, m + 1);
                    LevelVector on_j{m + 1, {}};
                    for (std::size_t c = 0; c < up.size(); ++c) {
                        const Word& x = up.word(c);
                        if (x[0] != j) continue;
                        const long u = in.index(x.data() + 1, m);
                        auto it = cells.find(u);
                        if (it == cells.end()) continue;
                        add_into(on_j, static_cast<long>(c), it->second.times_weight(s->weight_key(j, m, u), -1));
                    }
                    out.add(on_j);
                    // off the cylinder of j: f(g_i x) = f(i x), x on cylinders of
                    // length max(m-1, 1)
                    const int low = std::max(m - 1, 1);
                    const LevelVector src = m == 1 ? s->expand(LevelVector{m, cells}, 2) : LevelVector{m, cells};
                    const auto& src_idx = word_index(g, src.level);
                    const auto& low_idx = word_index(g, low);
                    LevelVector off{low, {}};
                    Word t(src.level);
                    t[0] = i;
                    for (std::size_t c = 0; c < low_idx.size(); ++c) {
                        const Word& x = low_idx.word(c);
                        if (x[0] == j) continue;
                        std::copy(x.begin(), x.end(), t.begin() + 1);
                        auto it = src.entries.find(src_idx.index(t));
                        if (it == src.entries.end()) continue;
                        add_into(off, static_cast<long>(c), it->second.times_weight(s->weight_key(i, low, c), +1));
                    }
                    out.add(off);
                }
                return out;
            }};
}

TruncatedOperator op_T_word(const TruncatedSpace& sp, const Word& gamma) {
    require_reduced(gamma, sp.genus());
    TruncatedOperator r = op_identity(sp);
    for (Letter a : gamma) r = op_compose(op_T(sp, a), r);
    r.name = "T[" + to_string(gamma) + "]";
    return r;
}

Residual difference(const TruncatedSpace& sp, const SymVector& a, const SymVector& b) {
    const int top = std::max({a.top_level(), b.top_level(), 1});
    LevelVector d = sp.flatten(a, top);
    for (const auto& [i, x] : sp.flatten(b, top).entries) {
        auto& slot = d.entries[i];
        slot -= x;
        if (slot.is_zero()) d.entries.erase(i);
    }
    Residual r;
    for (const auto& [i, x] : d.entries) {
        ++r.nonzero;
        r.numeric = std::max(r.numeric, std::abs(sp.evaluate(x)));
    }
    return r;
}

bool RelationReport::exact() const {
    for (const auto& c : checks)
        if (c.nonzero != 0) return false;
    return true;
}

namespace {

struct Checker {
    const TruncatedSpace& sp;
    RelationReport& rep;

    // Compare lhs and rhs on every basis vector of the listed levels.
    void run(const std::string& name, const TruncatedOperator& lhs, const TruncatedOperator& rhs,
             const std::vector<int>& levels) {
        RelationCheck c;
        c.name = name;
        c.domain_level = std::min(lhs.domain_level, rhs.domain_level);
        c.lowest_level = levels.empty() ? 0 : *std::min_element(levels.begin(), levels.end());
        for (int m : levels) {
            if (m > c.domain_level) fail("OutsideDomain", name + " tested above its domain");
            for (const Word& w : word_index(sp.genus(), m).words()) {
                const SymVector e = sp.basis(w);
                const Residual r = difference(sp, lhs(e), rhs(e));
                c.nonzero += r.nonzero;
                c.numeric = std::max(c.numeric, r.numeric);
                ++c.vectors;
            }
        }
        rep.checks.push_back(c);
    }
    void merge(RelationCheck& into, const RelationCheck& from) {
        into.vectors += from.vectors;
        into.nonzero += from.nonzero;
        into.numeric = std::max(into.numeric, from.numeric);
        into.domain_level = std::min(into.domain_level, from.domain_level);
        into.lowest_level = std::max(into.lowest_level, from.lowest_level);
    }
    // Run a family of relations and fold them into one report line.
    template <class F>
    void family(const std::string& name, F body) {
        const std::size_t before = rep.checks.size();
        body();
        RelationCheck c;
        c.name = name;
        c.domain_level = sp.depth();
        c.lowest_level = 1;
        for (std::size_t k = before; k < rep.checks.size(); ++k) merge(c, rep.checks[k]);
        rep.checks.resize(before);
        rep.checks.push_back(c);
    }
};

std::vector<int> levels_between(int lo, int hi) {
    std::vector<int> r;
    for (int m = lo; m <= hi; ++m) r.push_back(m);
    return r;
}

std::vector<int> levels_upto(int top) { return levels_between(1, top); }

TruncatedOperator zero_op(const TruncatedSpace& sp) {
    return {"0", sp.depth(), [](int m) { return m; }, [](const SymVector&) { return SymVector{}; }};
}

}  // namespace

RelationReport ck_verify(const SchottkyGroup& group, int depth, CKMeasure measure) {
    const TruncatedSpace sp(group, depth, measure);
    const int g = group.genus, d = depth;
    RelationReport rep;
    rep.g = g;
    rep.depth = d;
    rep.measure = measure_name(measure);
    rep.dimension = sp.dimension();
    rep.delta = sp.delta();
    Checker ck{sp, rep};
    const auto all = levels_upto(d);
    const TruncatedOperator I = op_identity(sp);

    std::vector<TruncatedOperator> S, Ss, P;
    for (Letter i = 0; i < 2 * g; ++i) {
        S.push_back(op_S(sp, i));
        Ss.push_back(op_S_adjoint(sp, i));
        P.push_back(op_P(sp, Word{i}));
    }

    ck.family("P_gamma^2 = P_gamma", [&] {
        for (int k = 1; k <= 2 && k <= d; ++k)
            for (const Word& w : word_index(g, k).words()) ck.run("", op_compose(op_P(sp, w), op_P(sp, w)), op_P(sp, w), all);
    });
    ck.family("P_i P_j = 0 (i != j)", [&] {
        for (Letter i = 0; i < 2 * g; ++i)
            for (Letter j = 0; j < 2 * g; ++j)
                if (i != j) ck.run("", op_compose(P[i], P[j]), zero_op(sp), all);
    });
    ck.run("sum_i P_i = I", op_sum(sp, P), I, all);
    ck.family("S_i S_i* = P_i", [&] {
        for (Letter i = 0; i < 2 * g; ++i) ck.run("", op_compose(S[i], Ss[i]), P[i], all);
    });
    {
        std::vector<TruncatedOperator> terms;
        for (Letter j = 0; j < 2 * g; ++j) terms.push_back(op_compose(S[j], Ss[j]));
        ck.run("sum_j S_j S_j* = I", op_sum(sp, terms), I, all);
    }
    ck.family("S_i* S_i = sum_j A_ij S_j S_j*", [&] {
        for (Letter i = 0; i < 2 * g; ++i) {
            std::vector<TruncatedOperator> terms;
            for (Letter j = 0; j < 2 * g; ++j)
                if (j != inverse(i, g)) terms.push_back(op_compose(S[j], Ss[j]));
            ck.run("", op_compose(Ss[i], S[i]), op_sum(sp, terms), levels_upto(d - 1));
        }
    });
    ck.family("P_gamma = S_gamma S_gamma*", [&] {
        for (int k = 1; k <= d - 1; ++k)
            for (const Word& w : word_index(g, k).words()) {
                TruncatedOperator down = I;
                for (Letter a : w) down = op_compose(Ss[a], down);
                TruncatedOperator up = I;
                for (auto it = w.rbegin(); it != w.rend(); ++it) up = op_compose(S[*it], up);
                // the descending chain has to stay at level >= 1
                ck.run("", op_compose(up, down), op_P(sp, w), levels_between(k + 1, d));
            }
    });
    ck.family("Q_{i,n} = S_i^n S_i*^n = P_{i^n}", [&] {
        for (Letter i = 0; i < 2 * g; ++i)
            for (int n = 1; n <= d - 1; ++n) {
                TruncatedOperator q = I;
                for (int k = 0; k < n; ++k) q = op_compose(Ss[i], q);
                for (int k = 0; k < n; ++k) q = op_compose(S[i], q);
                ck.run("", q, op_P(sp, Word(n, i)), levels_between(n + 1, d));
            }
    });
    ck.family("T_i = direct weighted composition", [&] {
        for (Letter i = 0; i < 2 * g; ++i) ck.run("", op_T(sp, i), op_T_direct(sp, i), levels_upto(d - 1));
    });
    ck.family("T_i* T_i = I (T_i* = T_{i+g})", [&] {
        for (Letter i = 0; i < 2 * g; ++i)
            ck.run("", op_compose(op_T(sp, inverse(i, g)), op_T(sp, i)), I, levels_upto(d - 2));
    });
    ck.run("T_identity = I", op_T_word(sp, {}), I, all);
    // Both descending and ascending pieces of a length-2 product must stay
    // in 1..d, which leaves levels 3..d-4.
    if (d >= 7)
        ck.family("T_gamma^-1 T_gamma = I, |gamma| = 2", [&] {
            for (const Word& w : word_index(g, 2).words())
                ck.run("", op_compose(op_T_word(sp, inverse_word(w, g)), op_T_word(sp, w)), I, levels_between(3, d - 4));
        });
    return rep;
}

// --- numeric Dirac operator ------------------------------------------------

std::vector<double> ck_masses(const SchottkyGroup& group, int depth, CKMeasure measure) {
    if (measure == CKMeasure::Uniform) {
        const auto n = word_index(group.genus, depth).size();
        return std::vector<double>(n, 1.0 / static_cast<double>(n));
    }
    return ps_measure(group, depth).weights;
}

CylinderMeasure ck_cylinder_measure(const SchottkyGroup& group, int depth, CKMeasure measure) {
    if (measure == CKMeasure::Uniform) return CylinderMeasure::uniform_markov(group.genus, depth);
    return CylinderMeasure::from_doubles(group.genus, depth, ps_measure(group, depth).weights);
}

namespace {

// Conditional expectations on functions of the first `depth` letters.
struct Averager {
    int g, depth;
    std::vector<double> mu;
    std::vector<std::vector<int>> prefix;      // prefix[len][cell]
    std::vector<std::vector<double>> mass;     // mass[len][prefix]

    Averager(int g_, int depth_, std::vector<double> mu_) : g(g_), depth(depth_), mu(std::move(mu_)) {
        const auto& top = word_index(g, depth);
        prefix.resize(depth + 1);
        mass.resize(depth + 1);
        for (int len = 1; len <= depth; ++len) {
            const auto& idx = word_index(g, len);
            prefix[len].resize(top.size());
            mass[len].assign(idx.size(), 0.0);
            for (std::size_t c = 0; c < top.size(); ++c) {
                prefix[len][c] = static_cast<int>(idx.index(top.word(c).data(), len));
                mass[len][prefix[len][c]] += mu[c];
            }
        }
    }
    // E_len f: average over cylinders of length len; len = 0 gives 0.
    Eigen::VectorXd E(const Eigen::VectorXd& f, int len) const {
        if (len <= 0) return Eigen::VectorXd::Zero(f.size());
        if (len >= depth) return f;
        std::vector<double> acc(mass[len].size(), 0.0);
        for (Eigen::Index c = 0; c < f.size(); ++c) acc[prefix[len][c]] += mu[c] * f[c];
        Eigen::VectorXd out(f.size());
        for (Eigen::Index c = 0; c < f.size(); ++c) out[c] = acc[prefix[len][c]] / mass[len][prefix[len][c]];
        return out;
    }
    // First copy: (n+1) on level n; second copy: -n.  Level n = functions of
    // n+1 letters, so Pi_hat_n = E_{n+1} - E_n.
    Eigen::VectorXd D(const Eigen::VectorXd& f, Summand side) const {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(f.size());
        Eigen::VectorXd prev = Eigen::VectorXd::Zero(f.size());
        for (int n = 0; n < depth; ++n) {
            const Eigen::VectorXd cur = E(f, n + 1);
            out += grading_eigenvalue(side, n) * (cur - prev);
            prev = cur;
        }
        return out;
    }
};

double top_singular(const Eigen::MatrixXd& c) {
    const Eigen::MatrixXd gram = c.transpose() * c;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace

DiracReport dirac_check(const SchottkyGroup& group, int depth, CKMeasure measure) {
    const int g = group.genus;
    if (depth < 1) fail("InvalidLevel", "depth must be positive");
    const Averager av(g, depth, ck_masses(group, depth, measure));
    const auto N = static_cast<Eigen::Index>(av.mu.size());
    DiracReport rep;
    rep.depth = depth;
    rep.dimension = 2 * static_cast<long>(N);
    for (Summand side : {Summand::First, Summand::Second}) {
        Eigen::MatrixXd m(N, N);
        for (Eigen::Index j = 0; j < N; ++j) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(N);
            e[j] = 1.0 / std::sqrt(av.mu[j]);
            const Eigen::VectorXd col = av.D(e, side);
            for (Eigen::Index r = 0; r < N; ++r) m(r, j) = std::sqrt(av.mu[r]) * col[r];
        }
        rep.symmetry_defect = std::max(rep.symmetry_defect, (m - m.transpose()).cwiseAbs().maxCoeff());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
        for (Eigen::Index k = 0; k < N; ++k) {
            const double x = es.eigenvalues()[k];
            const double r = std::round(x);
            rep.rounding = std::max(rep.rounding, std::abs(x - r));
            ++rep.spectrum[static_cast<int>(r)];
        }
        for (int n = 0; n < depth; ++n) {
            const long dim = static_cast<long>(word_index(g, n + 1).size()) -
                             (n == 0 ? 0L : static_cast<long>(word_index(g, n).size()));
            rep.expected[grading_eigenvalue(side, n)] += dim;
        }
    }
    // Exact part: on 0 + L the embedded Archimedean classes at grade p are
    // eigenvectors with eigenvalue p.
    const CylinderMeasure mu = ck_cylinder_measure(group, depth, measure);
    for (int p = 0; p >= -(depth - 1); --p)
        for (int k = 0; k < 2 * g; ++k) {
            const Cochain v = extend(to_cochain(embed_U(g, p, k, mu)), depth - 1);
            Cochain dv = Cochain::zero(g, depth - 1);
            for (int n = 0; n < depth; ++n) {
                const Cochain piece = extend(hat_projection(v, n, mu), depth - 1);
                dv += Rational(grading_eigenvalue(Summand::Second, n)) * piece;
            }
            ++rep.v_checked;
            if (!(dv == Rational(p) * v)) ++rep.v_failures;
        }
    return rep;
}

std::vector<CommutatorNorm> commutator_trend(const SchottkyGroup& group, Letter i, const std::vector<int>& depths,
                                             CKMeasure measure) {
    const int g = group.genus;
    if (i < 0 || i >= 2 * g) fail("InvalidLetter", std::to_string(i));
    std::vector<CommutatorNorm> out;
    for (int d : depths) {
        if (d < 2) fail("InvalidLevel", "commutator depth must be at least 2");
        const Averager av(g, d, ck_masses(group, d, measure));
        const auto& top = word_index(g, d);
        const auto& low = word_index(g, d - 1);
        const auto N = static_cast<Eigen::Index>(top.size());
        const auto Nl = static_cast<Eigen::Index>(low.size());
        // weight |g_i'|^delta at the level-(d-1) representatives
        std::vector<double> w(Nl, 1.0 / (2 * g - 1));
        if (measure == CKMeasure::PattersonSullivan) {
            const CylinderTree tree = cylinder_tree(group, d);
            const double delta = hausdorff_dim_at(group, tree, 1e-10);
            const MoebiusMap gi = group.letter(i);
            for (Eigen::Index u = 0; u < Nl; ++u)
                w[u] = std::pow(std::abs(gi.derivative(tree.discs[d - 1][u].center)), delta);
        }
        // target cell i.u for each u, or -1
        std::vector<long> lift(Nl, -1);
        Word t(d);
        t[0] = i;
        for (Eigen::Index u = 0; u < Nl; ++u) {
            const Word& uw = low.word(u);
            if (uw[0] == inverse(i, g)) continue;
            std::copy(uw.begin(), uw.end(), t.begin() + 1);
            lift[u] = top.index(t);
        }
        auto apply_S = [&](const Eigen::VectorXd& f) {  // f in P_{d-1}, read at any child
            Eigen::VectorXd r = Eigen::VectorXd::Zero(N);
            for (Eigen::Index c = 0; c < N; ++c) {
                const long u = av.prefix[d - 1][c];
                if (lift[u] >= 0) r[lift[u]] = f[c] / std::sqrt(w[u]);
            }
            return r;
        };
        auto apply_Ss = [&](const Eigen::VectorXd& h) {
            Eigen::VectorXd r = Eigen::VectorXd::Zero(N);
            for (Eigen::Index c = 0; c < N; ++c) {
                const long u = av.prefix[d - 1][c];
                if (lift[u] >= 0) r[c] = std::sqrt(w[u]) * h[lift[u]];
            }
            return r;
        };
        CommutatorNorm cn;
        cn.depth = d;
        for (Summand side : {Summand::First, Summand::Second}) {
            // [D, S] on the orthonormal cylinder basis of P_{d-1}
            Eigen::MatrixXd c1(N, Nl);
            for (Eigen::Index u = 0; u < Nl; ++u) {
                Eigen::VectorXd f = Eigen::VectorXd::Zero(N);
                const double norm = std::sqrt(av.mass[d - 1][u]);
                for (Eigen::Index c = 0; c < N; ++c)
                    if (av.prefix[d - 1][c] == u) f[c] = 1.0 / norm;
                const Eigen::VectorXd col = av.D(apply_S(f), side) - apply_S(av.D(f, side));
                for (Eigen::Index r = 0; r < N; ++r) c1(r, u) = std::sqrt(av.mu[r]) * col[r];
            }
            cn.with_S = std::max(cn.with_S, top_singular(c1));
            Eigen::MatrixXd c2(N, N);
            for (Eigen::Index j = 0; j < N; ++j) {
                Eigen::VectorXd h = Eigen::VectorXd::Zero(N);
                h[j] = 1.0 / std::sqrt(av.mu[j]);
                const Eigen::VectorXd col = av.D(apply_Ss(h), side) - apply_Ss(av.D(h, side));
                for (Eigen::Index r = 0; r < N; ++r) c2(r, j) = std::sqrt(av.mu[r]) * col[r];
            }
            cn.with_S_adjoint = std::max(cn.with_S_adjoint, top_singular(c2));
        }
        out.push_back(cn);
    }
    return out;
}

// --- compressed zeta route -------------------------------------------------

CompressedFactor compressed_local_factor(int g, double s, const CylinderMeasure& mu) {
    if (mu.genus() != g) fail("InvalidMeasure", "measure genus does not match");
    CompressedFactor r;
    const int levels = mu.depth();
    std::vector<long> even, odd;
    for (int p = 0; p >= -(levels - 1); --p) {
        std::vector<std::vector<Rational>> rows, fixed;
        for (int k = 0; k < 2 * g; ++k) {
            const GradedClass x = embed_U(g, p, k, mu);
            rows.push_back(to_cochain(x).c);
            GradedClass y = frobenius(x);
            if (p % 2 != 0) y = negate(y);
            y += x;
            y.prune();
            fixed.push_back(y.coeffs.empty() ? std::vector<Rational>(rows.back().size(), Rational(0))
                                             : to_cochain(y).c);
        }
        r.trace_weights.push_back(static_cast<long>(rational_rank(rows)));
        (p % 2 == 0 ? even : odd).push_back(static_cast<long>(rational_rank(fixed)));
    }
    for (long w : r.trace_weights)
        if (w != r.trace_weights.front()) fail("InvalidSpectrum", "trace weights vary with the eigenvalue");
    for (long w : even)
        if (w != even.front()) fail("InvalidSpectrum", "even real weights vary");
    for (long w : odd)
        if (w != odd.front()) fail("InvalidSpectrum", "odd real weights vary");
    r.weight_even = even.front();
    r.weight_odd = odd.empty() ? even.front() : odd.front();
    r.log_det_C = regdet({{{0.0, -1.0, r.trace_weights.front()}}, {}}, s, DetMethod::Numeric).real();
    r.log_direct_C = -local_factor({Field::C, 1, g}, s).real();
    r.log_det_R =
        regdet({{{0.0, -2.0, r.weight_even}, {-1.0, -2.0, r.weight_odd}}, {}}, s, DetMethod::Numeric).real();
    r.log_direct_R = -local_factor({Field::R, 1, g}, s).real();
    return r;
}

}  // namespace schottky
