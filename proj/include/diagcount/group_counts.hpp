#pragma once

// Closed-form group orders: |GL_n(Z_{p^k})|, centralizer orders of diagonal
// types, and similarity-class sizes via orbit-stabilizer.

#include <cstdint>
#include <string>
#include <vector>

#include "diagcount/bigint.hpp"

namespace diagcount {

// The type of a diagonal matrix: multiplicities of the g distinct diagonal
// values plus the symmetric matrix of valuations l_ij of their pairwise
// differences. `canon` is invariant under simultaneous permutation of
// (mults, weights), so equal canon <=> same type.
struct MatrixType {
    int g = 0;
    std::vector<int> mults;    // m_1..m_g, all >= 1
    std::vector<int> weights;  // g*g symmetric, diagonal entries -1 (unused)
    std::string canon;

    int n() const;
    int weight(int i, int j) const { return weights[size_t(i) * g + j]; }
};

MatrixType make_type(int g, std::vector<int> mults, std::vector<int> weights);

// p^(n^2 (k-1)) * prod_{l=1..n} (p^n - p^(l-1)).
BigCount gl_order(int n, uint64_t p, unsigned k);

// prod_i |GL_{m_i}(Z_{p^k})| * prod_{i<j} p^(2 m_i m_j l_ij).
// Requires every weight < k; asserts the result divides |GL_n| (Lagrange).
BigCount centralizer_order(const MatrixType& t, uint64_t p, unsigned k);

// |GL_n| / centralizer_order, division checked exact.
BigCount class_size(const MatrixType& t, uint64_t p, unsigned k);

}  // namespace diagcount
