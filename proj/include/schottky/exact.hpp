#pragma once

#include <vector>

#include <gmpxx.h>

namespace schottky {

using Rational = mpq_class;
using IntMatrix = std::vector<std::vector<mpz_class>>;

// Rank by fraction-free (Bareiss) elimination.  Rows are vectors; the input is
// copied.
std::size_t bareiss_rank(IntMatrix m);

// Rank of a rational matrix: each row is scaled to integers first.
std::size_t rational_rank(const std::vector<std::vector<Rational>>& rows);

}  // namespace schottky
