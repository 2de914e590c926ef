#include "diagcount/matrix_ring.hpp"

#include <algorithm>
#include <sstream>

#include "diagcount/errors.hpp"
#include "diagcount/threading.hpp"

namespace diagcount {

namespace {

void require_compatible(const RingMatrix& a, const RingMatrix& b) {
    if (a.n != b.n) throw DimensionMismatchError("matrix dimensions differ");
    if (a.mod.value != b.mod.value) throw DimensionMismatchError("matrix moduli differ");
}

// Exact integer determinant of the submatrix given by `rows`, expanding
// along column `col`. Entries are lifted to mpz; no reductions, no division.
BigCount det_lifted(const RingMatrix& a, std::vector<int>& rows, int col) {
    if (rows.size() == 1) return BigCount(static_cast<unsigned long>(a.at(rows[0], col)));
    BigCount acc = 0;
    std::vector<int> rest;
    rest.reserve(rows.size() - 1);
    for (size_t i = 0; i < rows.size(); ++i) {
        uint64_t pivot = a.at(rows[i], col);
        if (pivot != 0) {
            rest.clear();
            for (size_t j = 0; j < rows.size(); ++j) {
                if (j != i) rest.push_back(rows[j]);
            }
            BigCount term = BigCount(static_cast<unsigned long>(pivot)) *
                            det_lifted(a, rest, col + 1);
            if (i % 2 == 0) {
                acc += term;
            } else {
                acc -= term;
            }
        }
    }
    return acc;
}

BigCount det_integer(const RingMatrix& a) {
    std::vector<int> rows(a.n);
    for (int i = 0; i < a.n; ++i) rows[i] = i;
    return det_lifted(a, rows, 0);
}

uint64_t reduce_to_u64(const BigCount& v, uint64_t m) {
    BigCount r;
    mpz_mod_ui(r.get_mpz_t(), v.get_mpz_t(), m);  // non-negative remainder
    return r.get_ui();
}

// Row-echelon basis over F_p for incremental column-independence tests.
// Rows are only appended, so undoing an insert is a pop.
class FpElim {
  public:
    FpElim(uint64_t p, int n) : p_(p), n_(n) {}

    bool insert(const std::vector<uint64_t>& col) {
        std::vector<uint64_t> v(n_);
        for (int i = 0; i < n_; ++i) v[i] = col[i] % p_;
        for (size_t r = 0; r < rows_.size(); ++r) {
            uint64_t c = v[pivots_[r]];
            if (c != 0) {
                for (int i = 0; i < n_; ++i) {
                    v[i] = (v[i] + (p_ - c) * rows_[r][i]) % p_;
                }
            }
        }
        int pivot = -1;
        for (int i = 0; i < n_; ++i) {
            if (v[i] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) return false;
        uint64_t inv = inv_in_fp(v[pivot]);
        for (int i = 0; i < n_; ++i) v[i] = (v[i] * inv) % p_;
        rows_.push_back(std::move(v));
        pivots_.push_back(pivot);
        return true;
    }

    void pop() {
        rows_.pop_back();
        pivots_.pop_back();
    }

  private:
    uint64_t inv_in_fp(uint64_t x) const {
        uint64_t r = 1, b = x % p_;
        uint64_t e = p_ - 2;  // Fermat
        while (e) {
            if (e & 1) r = (r * b) % p_;
            b = (b * b) % p_;
            e >>= 1;
        }
        return r;
    }

    uint64_t p_;
    int n_;
    std::vector<std::vector<uint64_t>> rows_;
    std::vector<int> pivots_;
};

void check_gl_budget(int n, const Modulus& mod, const GlBudget& budget) {
    BigCount space = big_pow(mod.value, unsigned(n) * unsigned(n));
    if (space > BigCount(static_cast<unsigned long>(budget.max_candidates))) {
        uint64_t required =
            space.fits_ulong_p() ? uint64_t(space.get_ui()) : UINT64_MAX;
        std::ostringstream os;
        os << "GL enumeration over Z_" << mod.value << " with n = " << n
           << " needs a candidate budget of " << space << " (have "
           << budget.max_candidates << ")";
        throw BudgetExceededError(os.str(), required);
    }
}

// Shared recursion: choose columns `c`.. in ascending column-major
// lexicographic order, pruning prefixes dependent mod some prime of m.
template <typename Emit>
void gl_columns(int n, const Modulus& mod, std::vector<FpElim>& elims,
                RingMatrix& work, int c, Emit&& emit) {
    uint64_t m = mod.value;
    std::vector<uint64_t> col(n, 0);
    while (true) {
        size_t ok = 0;
        for (; ok < elims.size(); ++ok) {
            if (!elims[ok].insert(col)) break;
        }
        if (ok == elims.size()) {
            for (int i = 0; i < n; ++i) work.at(i, c) = col[i];
            if (c == n - 1) {
                emit(work);
            } else {
                gl_columns(n, mod, elims, work, c + 1, emit);
            }
            for (size_t u = 0; u < elims.size(); ++u) elims[u].pop();
        } else {
            for (size_t u = 0; u < ok; ++u) elims[u].pop();
        }
        // odometer: row n-1 is the least significant digit
        int r = n - 1;
        while (r >= 0 && col[r] == m - 1) col[r--] = 0;
        if (r < 0) break;
        ++col[r];
    }
}

}  // namespace

RingMatrix make_matrix(int n, const Modulus& mod, std::vector<uint64_t> entries) {
    if (n < 1) throw DimensionMismatchError("matrix dimension must be >= 1");
    if (entries.size() != size_t(n) * size_t(n)) {
        throw DimensionMismatchError("entry count does not match dimension");
    }
    RingMatrix a;
    a.n = n;
    a.mod = mod;
    a.e = std::move(entries);
    for (auto& x : a.e) x %= mod.value;
    return a;
}

RingMatrix identity_matrix(int n, const Modulus& mod) {
    RingMatrix a;
    a.n = n;
    a.mod = mod;
    a.e.assign(size_t(n) * size_t(n), 0);
    for (int i = 0; i < n; ++i) a.at(i, i) = 1 % mod.value;
    return a;
}

RingMatrix diagonal_matrix(const std::vector<uint64_t>& diag, const Modulus& mod) {
    RingMatrix a = identity_matrix(int(diag.size()), mod);
    for (int i = 0; i < a.n; ++i) a.at(i, i) = diag[i] % mod.value;
    return a;
}

RingMatrix mat_mul(const RingMatrix& a, const RingMatrix& b) {
    require_compatible(a, b);
    int n = a.n;
    uint64_t m = a.mod.value;
    RingMatrix r;
    r.n = n;
    r.mod = a.mod;
    r.e.assign(size_t(n) * size_t(n), 0);
    for (int i = 0; i < n; ++i) {
        for (int l = 0; l < n; ++l) {
            uint64_t aik = a.at(i, l);
            if (aik == 0) continue;
            for (int j = 0; j < n; ++j) {
                r.at(i, j) = (r.at(i, j) + aik * b.at(l, j)) % m;
            }
        }
    }
    return r;
}

Residue det(const RingMatrix& a) {
    return Residue{reduce_to_u64(det_integer(a), a.mod.value), a.mod};
}

bool is_invertible(const RingMatrix& a) { return is_unit(det(a).value, a.mod); }

RingMatrix inverse(const RingMatrix& a) {
    Residue d = det(a);
    uint64_t dinv = inv_mod(d.value, a.mod);  // throws on non-units
    int n = a.n;
    uint64_t m = a.mod.value;
    RingMatrix r;
    r.n = n;
    r.mod = a.mod;
    r.e.assign(size_t(n) * size_t(n), 0);
    if (n == 1) {
        r.at(0, 0) = dinv % m;
        return r;
    }
    RingMatrix minor;
    minor.n = n - 1;
    minor.mod = a.mod;
    minor.e.assign(size_t(n - 1) * size_t(n - 1), 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // adjugate: adj[j][i] = (-1)^(i+j) det(minor of a without row i, col j)
            int mi = 0;
            for (int r2 = 0; r2 < n; ++r2) {
                if (r2 == i) continue;
                int mj = 0;
                for (int c2 = 0; c2 < n; ++c2) {
                    if (c2 == j) continue;
                    minor.at(mi, mj) = a.at(r2, c2);
                    ++mj;
                }
                ++mi;
            }
            BigCount cof = det_integer(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            r.at(j, i) = (reduce_to_u64(cof, m) * dinv) % m;
        }
    }
    return r;
}

RingMatrix conjugate(const RingMatrix& p, const RingMatrix& a) {
    require_compatible(p, a);
    return mat_mul(mat_mul(p, a), inverse(p));
}

DiagonalSpec make_diagonal_spec(std::vector<uint64_t> entries, const Modulus& mod) {
    for (auto& x : entries) x %= mod.value;
    std::sort(entries.begin(), entries.end());
    return DiagonalSpec{mod, std::move(entries)};
}

RingMatrix matrix_of(const DiagonalSpec& spec) {
    return diagonal_matrix(spec.entries, spec.mod);
}

std::vector<DiagonalSpec> all_diagonal_specs(int n, const Modulus& mod) {
    std::vector<DiagonalSpec> out;
    std::vector<uint64_t> cur(n, 0);
    while (true) {
        out.push_back(DiagonalSpec{mod, cur});
        int i = n - 1;
        while (i >= 0 && cur[i] == mod.value - 1) --i;
        if (i < 0) break;
        uint64_t v = cur[i] + 1;
        for (int j = i; j < n; ++j) cur[j] = v;  // keep nondecreasing
    }
    return out;
}

void enumerate_gl(int n, const Modulus& mod,
                  const std::function<void(const RingMatrix&)>& visit,
                  GlBudget budget) {
    check_gl_budget(n, mod, budget);
    std::vector<FpElim> elims;
    for (uint64_t p : mod.primes) elims.emplace_back(p, n);
    RingMatrix work = identity_matrix(n, mod);
    gl_columns(n, mod, elims, work, 0, [&](const RingMatrix& a) { visit(a); });
}

uint64_t count_gl_serial(int n, const Modulus& mod, GlBudget budget) {
    uint64_t count = 0;
    enumerate_gl(n, mod, [&](const RingMatrix&) { ++count; }, budget);
    return count;
}

uint64_t count_gl(int n, const Modulus& mod, GlBudget budget) {
    check_gl_budget(n, mod, budget);
    uint64_t m = mod.value;
    uint64_t colspace = 1;
    for (int i = 0; i < n; ++i) colspace *= m;
    uint64_t total = 0;
    // split the deterministic stream by first-column index range
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : total) schedule(static) \
    num_threads(configured_threads())
#endif
    for (int64_t first = 0; first < int64_t(colspace); ++first) {
        std::vector<uint64_t> col(n);
        uint64_t code = uint64_t(first);
        for (int r = n - 1; r >= 0; --r) {
            col[r] = code % m;
            code /= m;
        }
        std::vector<FpElim> elims;
        for (uint64_t p : mod.primes) elims.emplace_back(p, n);
        bool ok = true;
        for (auto& el : elims) {
            if (!el.insert(col)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        if (n == 1) {
            ++total;
            continue;
        }
        RingMatrix work = identity_matrix(n, mod);
        for (int i = 0; i < n; ++i) work.at(i, 0) = col[i];
        uint64_t sub = 0;
        gl_columns(n, mod, elims, work, 1, [&](const RingMatrix&) { ++sub; });
        total += sub;
    }
    return total;
}

}  // namespace diagcount
