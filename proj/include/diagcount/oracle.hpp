#pragma once

// Ground-truth brute force: explicit conjugation orbits, diagonalizable
// counts by orbit union, uniqueness verification, and the composite-modulus
// and Jordan-form demonstrations. The orbit kernels are the OpenMP-parallel
// core of the project; the *_serial twins are straightforward reference
// implementations that the tests and bench/ compare against. Work partitions
// across diagonal representatives; each worker owns a private member set and
// the union merge is order-independent, so counts are schedule-invariant.

#include <cstdint>
#include <utility>
#include <vector>

#include "diagcount/bigint.hpp"
#include "diagcount/group_counts.hpp"
#include "diagcount/matrix_ring.hpp"

namespace diagcount {

enum class OrbitStrategy {
    Auto,              // FullGroup when |GL| is materializable, else closure
    FullGroup,         // conjugate by every element of GL_n(Z_m)
    GeneratorClosure,  // BFS closure under transvections + unit dilations
};

struct OracleBudget {
    uint64_t max_space = uint64_t(1) << 28;  // bound on m^(n^2) packed codes
    uint64_t max_group = uint64_t(1) << 21;  // bound on materialized |GL|
};

// Matrices are identified by their packed code: sum of row-major entries
// times m^position. Codes index directly into bitmaps of size m^(n^2).
uint64_t pack_matrix(const RingMatrix& a);
RingMatrix unpack_matrix(uint64_t code, int n, const Modulus& mod);

struct OrbitRecord {
    DiagonalSpec representative;
    BigCount orbit_size;
    std::vector<uint64_t> members;  // packed codes, sorted
};

OrbitRecord orbit_of(const DiagonalSpec& spec,
                     OrbitStrategy strategy = OrbitStrategy::Auto,
                     OracleBudget budget = {});

// |union of orbits over all sorted diagonal specs|. Over a prime power the
// orbits must be pairwise disjoint and this is asserted (sum of orbit sizes
// equals the union size); over composite m overlapping orbits are expected
// and the union deduplicates them.
BigCount diag_count_brute(int n, const Modulus& mod,
                          OrbitStrategy strategy = OrbitStrategy::Auto,
                          OracleBudget budget = {});
BigCount diag_count_brute_serial(int n, const Modulus& mod,
                                 OrbitStrategy strategy = OrbitStrategy::Auto,
                                 OracleBudget budget = {});

// Number of invertible P with PD = DP, by scan over GL_n(Z_m).
uint64_t centralizer_brute(const DiagonalSpec& spec, GlBudget budget = {});

// Batch commutant counts sharing one GL materialization, parallel over specs.
std::vector<uint64_t> commutant_counts(const std::vector<DiagonalSpec>& specs,
                                       GlBudget budget = {});

struct UniquenessReport {
    int spec_count = 0;
    uint64_t pairs_checked = 0;
    bool all_disjoint = false;
    std::vector<std::pair<int, int>> collisions;  // spec index pairs sharing a matrix
};

// Orbits of non-permutation-equivalent sorted diagonals are pairwise
// disjoint over a prime power; this verifies it exhaustively.
UniquenessReport verify_unique_diagonalization(int n, const Modulus& mod,
                                               OracleBudget budget = {});

// Sorted diagonal pairs (as multisets, not permutation-equivalent) that are
// similar over Z_m. Empty over prime powers; Z_6 has the classic pairs.
std::vector<std::pair<DiagonalSpec, DiagonalSpec>> similar_diagonal_pairs(
    int n, const Modulus& mod, OracleBudget budget = {});

// diag(2,3) and diag(5,0) are both diagonalizations of [[2,3],[4,3]] over
// Z_6, yet {2,3} != {5,0} as multisets.
bool z6_counterexample_check();

struct JordanDemoReport {
    // [[0,1],[0,0]] = P [[2,1],[0,2]] P^{-1} over Z_4 with P = [[1,0],[2,1]].
    bool nilpotent_conjugation_identity = false;
    // [[x,2],[0,x]] is similar to no diagonal matrix and no [[a,1],[0,a]]
    // over Z_4, for every x — checked by exhausting all 96 conjugators.
    bool shifted_blocks_lack_jordan_form = false;
    bool ok() const {
        return nilpotent_conjugation_identity && shifted_blocks_lack_jordan_form;
    }
};

JordanDemoReport jordan_demo_checks();

// Number of sorted n-multisets over Z_m whose diagonal type matches the
// given one. Exhaustive scan; the arbiter for per-type t values.
uint64_t count_diagonals_of_type_brute(const MatrixType& type, int n,
                                       const Modulus& mod);

// t(T) with the exhaustive scan switched on: computes the formula value and
// the multiset scan, and throws InternalInconsistencyError carrying both
// values when they disagree.
BigCount t_of_type_checked(const MatrixType& type, int n, const Modulus& mod);

}  // namespace diagcount
