#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "supercong/modarith.hpp"

namespace supercong {

// Bernoulli numbers modulo an odd prime p: values[i] = B_i mod p for
// 0 <= i <= p-3 (even-index entries carry the content; odd i >= 3 are 0,
// values[1] = -1/2 mod p).
struct BernoulliTable {
    std::int64_t p = 0;
    std::vector<std::int64_t> values;
};

// Build the table with the defining recurrence
//   sum_{j=0}^{m} C(m+1, j) B_j = 0,  B_0 = 1.
// Indices stay below p-2, so every C(m+1, j) and 1/(m+1) is a unit mod p.
// Requires prime p >= 5.
BernoulliTable bernoulli_table(std::int64_t p);

// B_i mod p for 0 <= i <= p-2. The table stops at p-3; the one extra index
// p-2 is odd and >= 3 for p >= 5, hence 0.
Residue bernoulli_mod(int i, const BernoulliTable& table);

// beta_k = -B_{p-k} / k mod p, defined for 3 <= k <= p-2.
Residue beta(int k, const BernoulliTable& table);

// A monomial beta_{k_1} beta_{k_2} ... with k_i odd, >= 3, stored sorted so
// equal monomials compare equal. Used as the key of rational combinations.
class BetaMonomial {
public:
    BetaMonomial() = default;
    explicit BetaMonomial(std::vector<int> indices);

    const std::vector<int>& indices() const { return indices_; }
    int weight() const;
    int depth() const { return static_cast<int>(indices_.size()); }

    auto operator<=>(const BetaMonomial&) const = default;

private:
    std::vector<int> indices_;
};

// Evaluate a monomial at a concrete prime via its Bernoulli table.
Residue eval_monomial(const BetaMonomial& mono, const BernoulliTable& table);

// Table cache on disk, one JSON file per prime:
//   {"version": 1, "p": 7, "values": [1, 3, 6, 0, 3]}
// Writes go through a temp file + rename. A cache entry that fails
// validation is recomputed and rewritten, never trusted.
void store_bernoulli_table(const BernoulliTable& table,
                           const std::string& cache_dir);
bool load_bernoulli_table(std::int64_t p, const std::string& cache_dir,
                          BernoulliTable& out);
BernoulliTable bernoulli_table_cached(std::int64_t p,
                                      const std::string& cache_dir);

} // namespace supercong
