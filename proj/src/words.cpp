#include "schottky/words.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "schottky/error.hpp"

namespace schottky {

bool is_reduced(const Word& w, int g) {
    for (Letter a : w)
        if (a < 0 || a >= 2 * g) return false;
    for (std::size_t k = 0; k + 1 < w.size(); ++k)
        if (w[k + 1] == inverse(w[k], g)) return false;
    return true;
}

void require_reduced(const Word& w, int g) {
    if (!is_reduced(w, g)) fail("WordNotReduced", to_string(w));
}

Word inverse_word(const Word& w, int g) {
    Word r(w.rbegin(), w.rend());
    for (auto& a : r) a = inverse(a, g);
    return r;
}

std::string to_string(const Word& w) {
    std::string s = "(";
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(w[k]);
    }
    return s + ")";
}

Word group_multiply(const Word& w1, const Word& w2, int g) {
    require_reduced(w1, g);
    require_reduced(w2, g);
    Word r = w1;
    std::size_t j = 0;
    while (!r.empty() && j < w2.size() && w2[j] == inverse(r.back(), g)) {
        r.pop_back();
        ++j;
    }
    r.insert(r.end(), w2.begin() + j, w2.end());
    return r;
}

TransitionMatrix transition_matrix(int g) {
    if (g < 1) fail("InvalidGenus", std::to_string(g));
    TransitionMatrix t;
    t.size = 2 * g;
    t.a.assign(t.size, std::vector<int>(t.size, 1));
    for (int i = 0; i < t.size; ++i) t.a[i][inverse(i, g)] = 0;
    return t;
}

std::vector<Word> enumerate_words(int g, int n) {
    std::vector<Word> out;
    if (n <= 0) {
        out.emplace_back();
        return out;
    }
    Word w(n);
    std::function<void(int)> rec = [&](int k) {
        if (k == n) {
            out.push_back(w);
            return;
        }
        for (Letter a = 0; a < 2 * g; ++a) {
            if (k > 0 && a == inverse(w[k - 1], g)) continue;
            w[k] = a;
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

mpz_class count_words(int g, int n) {
    if (n <= 0) return 1;
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2 * g - 1, n - 1);
    return r * (2 * g);
}

Word canonical_rotation(const Word& w) {
    Word best = w;
    Word cur = w;
    for (std::size_t k = 1; k < w.size(); ++k) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

bool is_primitive(const Word& w) {
    const std::size_t n = w.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d) continue;
        bool periodic = true;
        for (std::size_t k = d; k < n && periodic; ++k) periodic = w[k] == w[k - d];
        if (periodic) return false;
    }
    return true;
}

bool cyclically_reduced(const Word& w, int g) {
    if (w.empty() || !is_reduced(w, g)) return false;
    return w.back() != inverse(w.front(), g);
}

CyclicWord::CyclicWord(Word letters, int g) : g_(g) {
    if (!cyclically_reduced(letters, g)) fail("WordNotReduced", "cyclic word " + to_string(letters));
    w_ = canonical_rotation(letters);
    primitive_ = is_primitive(w_);
}

Word CyclicWord::rotated(std::size_t k) const {
    Word r = w_;
    std::rotate(r.begin(), r.begin() + (k % r.size()), r.end());
    return r;
}

CyclicWord CyclicWord::inverse_reversed() const { return CyclicWord(inverse_word(w_, g_), g_); }

mpz_class periodic_points(int g, int N) {
    const auto t = transition_matrix(g);
    const int m = t.size;
    std::vector<std::vector<mpz_class>> p(m, std::vector<mpz_class>(m));
    for (int i = 0; i < m; ++i) p[i][i] = 1;
    for (int step = 0; step < N; ++step) {
        std::vector<std::vector<mpz_class>> q(m, std::vector<mpz_class>(m));
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < m; ++k) {
                if (p[i][k] == 0) continue;
                for (int j = 0; j < m; ++j)
                    if (t.a[k][j]) q[i][j] += p[i][k];
            }
        p.swap(q);
    }
    mpz_class tr = 0;
    for (int i = 0; i < m; ++i) tr += p[i][i];
    return tr;
}

mpz_class periodic_points_bruteforce(int g, int N) {
    // Count letter cycles a_0..a_{N-1} with every cyclically consecutive pair
    // admissible, by depth-first search.
    unsigned long long count = 0;
    Word w(N);
    std::function<void(int)> rec = [&](int k) {
        if (k == N) {
            if (w[N - 1] != inverse(w[0], g)) ++count;
            return;
        }
        for (Letter a = 0; a < 2 * g; ++a) {
            if (k > 0 && a == inverse(w[k - 1], g)) continue;
            w[k] = a;
            rec(k + 1);
        }
    };
    rec(0);
    return mpz_class(std::to_string(count));
}

int mobius_mu(int n) {
    int mu = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

mpz_class primitive_orbits(int g, int N) {
    mpz_class s = 0;
    for (int d = 1; d <= N; ++d)
        if (N % d == 0) s += mobius_mu(N / d) * periodic_points(g, d);
    if (s % N != 0) fail("NonIntegralOrbitCount", std::to_string(N));
    return s / N;
}

namespace {

template <class Keep>
std::vector<CyclicWord> collect_necklaces(int g, int N, Keep keep) {
    std::vector<CyclicWord> out;
    Word w(N);
    std::function<void(int)> rec = [&](int k) {
        if (k == N) {
            if (w[N - 1] == inverse(w[0], g)) return;
            if (canonical_rotation(w) != w) return;
            if (keep(w)) out.emplace_back(w, g);
            return;
        }
        for (Letter a = 0; a < 2 * g; ++a) {
            if (k > 0 && a == inverse(w[k - 1], g)) continue;
            // Canonical words start with their least letter.
            if (k > 0 && a < w[0]) continue;
            w[k] = a;
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

}  // namespace

std::vector<CyclicWord> primitive_necklaces(int g, int N) {
    return collect_necklaces(g, N, [](const Word& w) { return is_primitive(w); });
}

std::vector<CyclicWord> necklaces(int g, int N) {
    return collect_necklaces(g, N, [](const Word&) { return true; });
}

mpz_class paper_KN(int g, int N) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2 * g - 1, N);
    return N % 2 == 0 ? r + 1 : r + (2 * g - 1);
}

mpz_class paper_RN(int g, int N) {
    mpz_class s = 0;
    for (int d = 1; d <= N; ++d) {
        if (N % d) continue;
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2 * g - 1, N / d);
        s += mobius_mu(d) * p;
    }
    // The printed form is not always divisible by N; report the floor.
    mpz_class q;
    mpz_fdiv_q_ui(q.get_mpz_t(), s.get_mpz_t(), N);
    return q;
}

WordIndex::WordIndex(int g, int length) : g_(g), len_(length), words_(enumerate_words(g, length)) {
    double span = 1;
    for (int k = 0; k < length; ++k) span *= 2 * g;
    if (span > 1e8) fail("LevelTooLarge", "word index of length " + std::to_string(length));
    code_.assign(static_cast<std::size_t>(span), -1);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::size_t c = 0;
        for (Letter a : words_[i]) c = c * (2 * g) + a;
        code_[c] = static_cast<std::int32_t>(i);
    }
}

long WordIndex::index(const Letter* begin, int len) const {
    if (len != len_) return -1;
    std::size_t c = 0;
    for (int k = 0; k < len; ++k) {
        if (begin[k] < 0 || begin[k] >= 2 * g_) return -1;
        c = c * (2 * g_) + begin[k];
    }
    return code_[c];
}

const WordIndex& word_index(int g, int length) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<WordIndex>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{g, length}];
    if (!slot) slot = std::make_unique<WordIndex>(g, length);
    return *slot;
}

long WordIndex::index(const Word& w) const { return index(w.data(), static_cast<int>(w.size())); }

}  // namespace schottky
