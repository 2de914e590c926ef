#pragma once

// Enumerates the diagonal types for (n, p, k) via graph-class instantiation,
// computes per-type class counts t, centralizer orders c and class sizes s,
// and assembles |Diag_n(Z_{p^k})| as sum t*s. Closed forms for n = 2, 3, 4
// and the exact diagonalizable proportion live here too. Because types come
// from abstract graph classes rather than concrete diagonal values, the
// engine runs at parameter sizes the semidirect and brute routes cannot.

#include <cstdint>
#include <vector>

#include "diagcount/bigint.hpp"
#include "diagcount/group_counts.hpp"
#include "diagcount/matrix_ring.hpp"

namespace diagcount {

struct TypeReport {
    MatrixType type;
    BigCount t;             // diagonal classes of this exact type
    BigCount c;             // centralizer order
    BigCount s;             // class size; s*c = |GL_n| exactly
    BigCount contribution;  // t*s
    // t computed the other way: the distinct-entry class count times the
    // number of ways to arrange the multiplicity blocks. Equals t exactly
    // when the weighted automorphisms act transitively on the multiplicity
    // assignments of a multiset; kept visible because the two routes
    // genuinely differ on some asymmetric types (see the oracle tests).
    BigCount t_block_arrangements;
};

// Groups equal entries, computes the valuations between distinct values,
// returns the canonical type. Prime-power modulus required.
MatrixType classify_diagonal(const DiagonalSpec& spec);

// p^k / |Aut_m(G)| * prod of phi_i factors, where Aut_m also preserves the
// per-vertex multiplicities.
BigCount t_of_type(const MatrixType& type, uint64_t p, unsigned k);

// One report per type: every graph class on g <= n vertices, every strictly
// increasing weight assignment into {0..k-1}, every multiplicity assignment
// up to weighted automorphism. Types with vanishing phi factors are emitted
// with t = 0 rather than skipped. Deterministic order.
std::vector<TypeReport> enumerate_types(int n, uint64_t p, unsigned k);

BigCount diag_count_engine(int n, uint64_t p, unsigned k);

// Direct evaluation of the class-size sum over all sorted diagonal
// multisets; needs C(p^k + n - 1, n) within budget.
BigCount diag_count_semidirect(int n, uint64_t p, unsigned k,
                               uint64_t budget = 1000000);

// p^k + p^(k+1)(p^2-1)(p^(3k)-1) / (2(p^3-1)).
BigCount diag2_closed(uint64_t p, unsigned k);

// The four-term closed form for n = 3; every division checked exact.
BigCount diag3_closed(uint64_t p, unsigned k);

// Assembled table sum for n = 4 over the weight-index ranges i, i<j, i<j<m,
// with multiplicity-aware t values throughout.
BigCount diag4_closed(uint64_t p, unsigned k);

// |Diag_n(Z_{p^k})| / p^(k n^2), reduced.
ExactRatio proportion(int n, uint64_t p, unsigned k);

}  // namespace diagcount
