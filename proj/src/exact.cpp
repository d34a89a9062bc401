#include "schottky/exact.hpp"

namespace schottky {

std::size_t bareiss_rank(IntMatrix m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t rank = 0;
    mpz_class prev = 1;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        const mpz_class& p = m[rank][col];
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const mpz_class f = m[r][col];
            for (std::size_t c = col + 1; c < cols; ++c) {
                mpz_class v = p * m[r][c] - f * m[rank][c];
                mpz_divexact(m[r][c].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            m[r][col] = 0;
        }
        prev = p;
        ++rank;
    }
    return rank;
}

std::size_t rational_rank(const std::vector<std::vector<Rational>>& rows) {
    IntMatrix m;
    m.reserve(rows.size());
    for (const auto& row : rows) {
        mpz_class l = 1;
        for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        std::vector<mpz_class> r;
        r.reserve(row.size());
        for (const auto& q : row) r.push_back(q.get_num() * (l / q.get_den()));
        m.push_back(std::move(r));
    }
    return bareiss_rank(std::move(m));
}

}  // namespace schottky
