#pragma once

// Dense matrix algebra over Z_m: products, exact determinants, adjugate
// inverses, conjugation, and a streaming enumerator of GL_n(Z_m) for
// desk-scale moduli. Matrices are immutable values; the GL stream is a
// deterministic generator whose first-column ranges can be split across
// workers (count_gl does exactly that).

#include <cstdint>
#include <functional>
#include <vector>

#include "diagcount/bigint.hpp"
#include "diagcount/residue_ring.hpp"

namespace diagcount {

struct RingMatrix {
    int n = 0;
    Modulus mod;
    std::vector<uint64_t> e;  // row-major, entries in [0, m)

    uint64_t at(int i, int j) const { return e[size_t(i) * n + j]; }
    uint64_t& at(int i, int j) { return e[size_t(i) * n + j]; }
    bool operator==(const RingMatrix& o) const {
        return n == o.n && mod.value == o.mod.value && e == o.e;
    }
};

RingMatrix make_matrix(int n, const Modulus& mod, std::vector<uint64_t> entries);
RingMatrix identity_matrix(int n, const Modulus& mod);
RingMatrix diagonal_matrix(const std::vector<uint64_t>& diag, const Modulus& mod);

RingMatrix mat_mul(const RingMatrix& a, const RingMatrix& b);

// Exact: entries lifted to unbounded integers, expansion evaluated, result
// reduced mod m. Division-free, so zero divisors never matter.
Residue det(const RingMatrix& a);

bool is_invertible(const RingMatrix& a);

// inv(det) * adjugate. NotInvertibleError when det is not a unit.
RingMatrix inverse(const RingMatrix& a);

// P A P^{-1}.
RingMatrix conjugate(const RingMatrix& p, const RingMatrix& a);

// Sorted multiset of diagonal entries: the canonical representative of a
// similarity class of diagonal matrices.
struct DiagonalSpec {
    Modulus mod;
    std::vector<uint64_t> entries;  // ascending
};

DiagonalSpec make_diagonal_spec(std::vector<uint64_t> entries, const Modulus& mod);
RingMatrix matrix_of(const DiagonalSpec& spec);

// All sorted n-multisets over Z_m in lexicographic order.
std::vector<DiagonalSpec> all_diagonal_specs(int n, const Modulus& mod);

struct GlBudget {
    uint64_t max_candidates = uint64_t(1) << 28;  // bound on m^(n^2)
};

// Streams every invertible matrix exactly once, ascending in column-major
// lexicographic order of the entries. Column prefixes linearly dependent
// mod some prime divisor of m are pruned without expansion.
void enumerate_gl(int n, const Modulus& mod,
                  const std::function<void(const RingMatrix&)>& visit,
                  GlBudget budget = {});

uint64_t count_gl(int n, const Modulus& mod, GlBudget budget = {});  // OpenMP
uint64_t count_gl_serial(int n, const Modulus& mod, GlBudget budget = {});

}  // namespace diagcount
