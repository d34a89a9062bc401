#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace schottky {

// Letters are 0-indexed; letter i+g stands for the inverse of generator i.
using Letter = int;
using Word = std::vector<Letter>;

inline Letter inverse(Letter a, int g) { return (a + g) % (2 * g); }

bool is_reduced(const Word& w, int g);
void require_reduced(const Word& w, int g);
Word inverse_word(const Word& w, int g);
std::string to_string(const Word& w);

// Free-group product with cancellation at the junction.
Word group_multiply(const Word& w1, const Word& w2, int g);

struct TransitionMatrix {
    int size = 0;
    std::vector<std::vector<int>> a;
    int operator()(int i, int j) const { return a[i][j]; }
};

TransitionMatrix transition_matrix(int g);

// Reduced words of length n in lexicographic order.
std::vector<Word> enumerate_words(int g, int n);
mpz_class count_words(int g, int n);

// Cyclically reduced, nonempty; stored in its lexicographically least rotation.
class CyclicWord {
public:
    CyclicWord(Word letters, int g);

    const Word& letters() const { return w_; }
    int genus() const { return g_; }
    std::size_t length() const { return w_.size(); }
    bool primitive() const { return primitive_; }
    // T acting on the orbit: rotation by one.  The canonical form is unchanged,
    // so this returns the representative starting at the old second letter.
    Word rotated(std::size_t k) const;
    CyclicWord inverse_reversed() const;

    bool operator==(const CyclicWord& o) const { return g_ == o.g_ && w_ == o.w_; }
    bool operator<(const CyclicWord& o) const { return w_ < o.w_; }

private:
    Word w_;
    int g_;
    bool primitive_;
};

Word canonical_rotation(const Word& w);
bool is_primitive(const Word& w);
bool cyclically_reduced(const Word& w, int g);

mpz_class periodic_points(int g, int N);
mpz_class periodic_points_bruteforce(int g, int N);
mpz_class primitive_orbits(int g, int N);
std::vector<CyclicWord> primitive_necklaces(int g, int N);
// All necklaces (primitive or not) of period N.
std::vector<CyclicWord> necklaces(int g, int N);

// The closed forms printed for K_N and R_N; kept only for side-by-side reports.
mpz_class paper_KN(int g, int N);
mpz_class paper_RN(int g, int N);

int mobius_mu(int n);

// Dense index of reduced words of a fixed length (lexicographic order).
class WordIndex {
public:
    WordIndex(int g, int length);
    int genus() const { return g_; }
    int length() const { return len_; }
    std::size_t size() const { return words_.size(); }
    const Word& word(std::size_t i) const { return words_[i]; }
    const std::vector<Word>& words() const { return words_; }
    // -1 if w is not a reduced word of this length.
    long index(const Word& w) const;
    long index(const Letter* begin, int len) const;

private:
    int g_;
    int len_;
    std::vector<Word> words_;
    std::vector<std::int32_t> code_;
};

// Shared, immutable index (built once per (g, length), thread-safe).
const WordIndex& word_index(int g, int length);

}  // namespace schottky
