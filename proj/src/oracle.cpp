#include "diagcount/oracle.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <unordered_set>

#include "diagcount/errors.hpp"
#include "diagcount/threading.hpp"
#include "diagcount/type_engine.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace diagcount {

namespace {

// Fixed-size matrix kernel for the brute-force loops: n <= 4, m <= 255,
// row-major uint8 entries. Codes are base-m with entry 0 least significant.
struct KMat {
    std::array<uint8_t, 16> e{};
};

KMat kmul(const KMat& a, const KMat& b, int n, uint32_t m) {
    KMat r;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            uint32_t acc = 0;
            for (int l = 0; l < n; ++l) {
                acc += uint32_t(a.e[i * n + l]) * b.e[l * n + j];
            }
            r.e[i * n + j] = uint8_t(acc % m);
        }
    }
    return r;
}

uint64_t kpack(const KMat& a, int n2, uint64_t m) {
    uint64_t code = 0;
    for (int i = n2 - 1; i >= 0; --i) code = code * m + a.e[i];
    return code;
}

KMat kunpack(uint64_t code, int n2, uint64_t m) {
    KMat a;
    for (int i = 0; i < n2; ++i) {
        a.e[i] = uint8_t(code % m);
        code /= m;
    }
    return a;
}

int64_t kdet(const KMat& a, int n) {
    if (n == 1) return a.e[0];
    if (n == 2) return int64_t(a.e[0]) * a.e[3] - int64_t(a.e[1]) * a.e[2];
    int64_t acc = 0;
    KMat minor;
    for (int i = 0; i < n; ++i) {
        if (a.e[i * n] == 0) continue;
        int mi = 0;
        for (int r = 0; r < n; ++r) {
            if (r == i) continue;
            for (int c = 1; c < n; ++c) minor.e[mi * (n - 1) + (c - 1)] = a.e[r * n + c];
            ++mi;
        }
        int64_t term = int64_t(a.e[i * n]) * kdet(minor, n - 1);
        acc += (i % 2 == 0) ? term : -term;
    }
    return acc;
}

KMat kinverse(const KMat& a, int n, const Modulus& mod) {
    int64_t m = int64_t(mod.value);
    uint64_t d = uint64_t(((kdet(a, n) % m) + m) % m);
    uint64_t dinv = inv_mod(d, mod);
    KMat r;
    if (n == 1) {
        r.e[0] = uint8_t(dinv);
        return r;
    }
    KMat minor;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            int mi = 0;
            for (int r2 = 0; r2 < n; ++r2) {
                if (r2 == i) continue;
                int mj = 0;
                for (int c2 = 0; c2 < n; ++c2) {
                    if (c2 == j) continue;
                    minor.e[mi * (n - 1) + mj] = a.e[r2 * n + c2];
                    ++mj;
                }
                ++mi;
            }
            int64_t cof = kdet(minor, n - 1);
            if ((i + j) % 2 == 1) cof = -cof;
            uint64_t cm = uint64_t(((cof % m) + m) % m);
            r.e[j * n + i] = uint8_t((cm * dinv) % uint64_t(m));
        }
    }
    return r;
}

KMat kmat_of(const RingMatrix& a) {
    KMat r;
    for (int i = 0; i < a.n * a.n; ++i) r.e[i] = uint8_t(a.e[i]);
    return r;
}

class Bitmap {
  public:
    explicit Bitmap(uint64_t bits) : words_((bits + 63) / 64, 0) {}
    bool test_set(uint64_t i) {
        uint64_t& w = words_[i >> 6];
        uint64_t mask = uint64_t(1) << (i & 63);
        bool old = (w & mask) != 0;
        w |= mask;
        return old;
    }
    void set(uint64_t i) { words_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(uint64_t i) { words_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    void or_with(const Bitmap& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    }
    uint64_t popcount() const {
        uint64_t total = 0;
        for (uint64_t w : words_) total += uint64_t(__builtin_popcountll(w));
        return total;
    }

  private:
    std::vector<uint64_t> words_;
};

uint64_t code_space(int n, const Modulus& mod, const OracleBudget& budget) {
    if (n < 1 || n > 4) {
        throw BudgetExceededError("brute force supports 1 <= n <= 4", 4);
    }
    if (mod.value > 255) {
        throw BudgetExceededError("brute force supports m <= 255", 255);
    }
    BigCount space = big_pow(mod.value, unsigned(n) * unsigned(n));
    if (space > BigCount(static_cast<unsigned long>(budget.max_space))) {
        uint64_t req = space.fits_ulong_p() ? uint64_t(space.get_ui()) : UINT64_MAX;
        std::ostringstream os;
        os << "orbit enumeration over Z_" << mod.value << " with n = " << n
           << " needs a code-space budget of " << space;
        throw BudgetExceededError(os.str(), req);
    }
    return space.get_ui();
}

BigCount gl_order_any(int n, const Modulus& mod) {
    BigCount total = 1;
    for (uint64_t p : mod.primes) {
        unsigned k = 0;
        for (uint64_t t = mod.value; t % p == 0; t /= p) ++k;
        total *= gl_order(n, p, k);
    }
    return total;
}

OrbitStrategy resolve_strategy(int n, const Modulus& mod, OrbitStrategy strategy,
                               const OracleBudget& budget) {
    if (strategy == OrbitStrategy::GeneratorClosure) {
        if (!mod.is_prime_power) {
            throw UnsupportedOperationError(
                "generator closure requires a prime-power modulus");
        }
        return strategy;
    }
    if (strategy == OrbitStrategy::FullGroup) return strategy;
    if (!mod.is_prime_power) return OrbitStrategy::FullGroup;
    if (gl_order_any(n, mod) <= BigCount(static_cast<unsigned long>(budget.max_group))) {
        return OrbitStrategy::FullGroup;
    }
    return OrbitStrategy::GeneratorClosure;
}

std::vector<std::pair<KMat, KMat>> materialize_gl(int n, const Modulus& mod,
                                                  const OracleBudget& budget) {
    BigCount order = gl_order_any(n, mod);
    if (order > BigCount(static_cast<unsigned long>(budget.max_group))) {
        uint64_t req = order.fits_ulong_p() ? uint64_t(order.get_ui()) : UINT64_MAX;
        std::ostringstream os;
        os << "materializing GL_" << n << "(Z_" << mod.value << ") needs a group budget of "
           << order;
        throw BudgetExceededError(os.str(), req);
    }
    std::vector<std::pair<KMat, KMat>> pairs;
    pairs.reserve(size_t(order.get_ui()));
    enumerate_gl(n, mod, [&](const RingMatrix& a) {
        KMat p = kmat_of(a);
        pairs.emplace_back(p, kinverse(p, n, mod));
    });
    return pairs;
}

// Transvections I +- E_ij plus unit dilations diag(u,1,..,1): generate
// GL_n over Z_{p^k}, and the set is closed under inverses.
std::vector<std::pair<KMat, KMat>> closure_generators(int n, const Modulus& mod) {
    uint64_t m = mod.value;
    std::vector<KMat> gens;
    KMat id;
    for (int i = 0; i < n; ++i) id.e[i * n + i] = 1;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            for (uint64_t c : {uint64_t(1), m - 1}) {
                KMat t = id;
                t.e[i * n + j] = uint8_t(c % m);
                gens.push_back(t);
            }
        }
    }
    for (uint64_t u = 2; u < m; ++u) {
        if (!is_unit(u, mod)) continue;
        KMat d = id;
        d.e[0] = uint8_t(u);
        gens.push_back(d);
    }
    std::vector<std::pair<KMat, KMat>> out;
    std::unordered_set<uint64_t> seen;
    for (const KMat& g : gens) {
        if (seen.insert(kpack(g, n * n, m)).second) {
            out.emplace_back(g, kinverse(g, n, mod));
        }
    }
    return out;
}

// Orbit codes of d under conjugation by every listed pair (P, P^{-1}).
// `scratch` must arrive all-zero and is handed back all-zero.
std::vector<uint64_t> orbit_full_group(const KMat& d, int n, uint64_t m,
                                       const std::vector<std::pair<KMat, KMat>>& pairs,
                                       Bitmap& scratch) {
    int n2 = n * n;
    std::vector<uint64_t> codes;
    for (const auto& [p, pinv] : pairs) {
        uint64_t code = kpack(kmul(kmul(p, d, n, uint32_t(m)), pinv, n, uint32_t(m)),
                              n2, m);
        if (!scratch.test_set(code)) codes.push_back(code);
    }
    for (uint64_t code : codes) scratch.reset(code);
    return codes;
}

// BFS closure of d under conjugation by the generator pairs.
std::vector<uint64_t> orbit_closure(const KMat& d, int n, uint64_t m,
                                    const std::vector<std::pair<KMat, KMat>>& gens,
                                    Bitmap& scratch) {
    int n2 = n * n;
    std::vector<uint64_t> codes;
    codes.push_back(kpack(d, n2, m));
    scratch.set(codes[0]);
    for (size_t head = 0; head < codes.size(); ++head) {
        KMat x = kunpack(codes[head], n2, m);
        for (const auto& [g, ginv] : gens) {
            uint64_t code = kpack(
                kmul(kmul(g, x, n, uint32_t(m)), ginv, n, uint32_t(m)), n2, m);
            if (!scratch.test_set(code)) codes.push_back(code);
        }
    }
    for (uint64_t code : codes) scratch.reset(code);
    return codes;
}

std::vector<uint64_t> orbit_codes(const DiagonalSpec& spec, OrbitStrategy strategy,
                                  Bitmap& scratch,
                                  const std::vector<std::pair<KMat, KMat>>& group) {
    int n = int(spec.entries.size());
    KMat d = kmat_of(matrix_of(spec));
    if (strategy == OrbitStrategy::FullGroup) {
        return orbit_full_group(d, n, spec.mod.value, group, scratch);
    }
    return orbit_closure(d, n, spec.mod.value, group, scratch);
}

BigCount union_count(int n, const Modulus& mod, OrbitStrategy strategy,
                     const OracleBudget& budget, bool parallel) {
    uint64_t space = code_space(n, mod, budget);
    strategy = resolve_strategy(n, mod, strategy, budget);
    std::vector<std::pair<KMat, KMat>> group = strategy == OrbitStrategy::FullGroup
                                                   ? materialize_gl(n, mod, budget)
                                                   : closure_generators(n, mod);
    std::vector<DiagonalSpec> specs = all_diagonal_specs(n, mod);
    std::vector<uint64_t> sizes(specs.size(), 0);
    Bitmap global(space);

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel num_threads(configured_threads())
        {
            Bitmap local(space), scratch(space);
#pragma omp for schedule(dynamic)
            for (int64_t i = 0; i < int64_t(specs.size()); ++i) {
                auto codes = orbit_codes(specs[i], strategy, scratch, group);
                sizes[i] = codes.size();
                for (uint64_t c : codes) local.set(c);
            }
#pragma omp critical
            global.or_with(local);
        }
#else
        parallel = false;
#endif
    }
    if (!parallel) {
        Bitmap scratch(space);
        for (size_t i = 0; i < specs.size(); ++i) {
            auto codes = orbit_codes(specs[i], strategy, scratch, group);
            sizes[i] = codes.size();
            for (uint64_t c : codes) global.set(c);
        }
    }

    uint64_t count = global.popcount();
    uint64_t total_sizes = 0;
    for (uint64_t s : sizes) total_sizes += s;
    if (mod.is_prime_power && total_sizes != count) {
        throw InternalInconsistencyError(
            "orbits of distinct sorted diagonals overlap over a prime power");
    }
    return BigCount(static_cast<unsigned long>(count));
}

}  // namespace

uint64_t pack_matrix(const RingMatrix& a) {
    uint64_t code = 0;
    for (size_t i = a.e.size(); i-- > 0;) code = code * a.mod.value + a.e[i];
    return code;
}

RingMatrix unpack_matrix(uint64_t code, int n, const Modulus& mod) {
    RingMatrix a = identity_matrix(n, mod);
    for (int i = 0; i < n * n; ++i) {
        a.e[i] = code % mod.value;
        code /= mod.value;
    }
    return a;
}

OrbitRecord orbit_of(const DiagonalSpec& spec, OrbitStrategy strategy,
                     OracleBudget budget) {
    int n = int(spec.entries.size());
    uint64_t space = code_space(n, spec.mod, budget);
    strategy = resolve_strategy(n, spec.mod, strategy, budget);
    std::vector<std::pair<KMat, KMat>> group =
        strategy == OrbitStrategy::FullGroup ? materialize_gl(n, spec.mod, budget)
                                             : closure_generators(n, spec.mod);
    Bitmap scratch(space);
    OrbitRecord rec;
    rec.representative = spec;
    rec.members = orbit_codes(spec, strategy, scratch, group);
    std::sort(rec.members.begin(), rec.members.end());
    rec.orbit_size = BigCount(static_cast<unsigned long>(rec.members.size()));
    return rec;
}

BigCount diag_count_brute(int n, const Modulus& mod, OrbitStrategy strategy,
                          OracleBudget budget) {
    return union_count(n, mod, strategy, budget, true);
}

BigCount diag_count_brute_serial(int n, const Modulus& mod, OrbitStrategy strategy,
                                 OracleBudget budget) {
    return union_count(n, mod, strategy, budget, false);
}

uint64_t centralizer_brute(const DiagonalSpec& spec, GlBudget budget) {
    return commutant_counts({spec}, budget)[0];
}

std::vector<uint64_t> commutant_counts(const std::vector<DiagonalSpec>& specs,
                                       GlBudget budget) {
    if (specs.empty()) return {};
    const Modulus& mod = specs.front().mod;
    int n = int(specs.front().entries.size());
    for (const auto& spec : specs) {
        if (spec.mod.value != mod.value || int(spec.entries.size()) != n) {
            throw DimensionMismatchError("commutant batch must share (n, m)");
        }
    }
    std::vector<KMat> group;
    enumerate_gl(n, mod, [&](const RingMatrix& a) { group.push_back(kmat_of(a)); },
                 budget);
    std::vector<uint64_t> counts(specs.size(), 0);
    uint32_t m = uint32_t(mod.value);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(configured_threads())
#endif
    for (int64_t i = 0; i < int64_t(specs.size()); ++i) {
        KMat d = kmat_of(matrix_of(specs[i]));
        uint64_t count = 0;
        for (const KMat& p : group) {
            KMat lhs = kmul(p, d, n, m);
            KMat rhs = kmul(d, p, n, m);
            if (lhs.e == rhs.e) ++count;
        }
        counts[i] = count;
    }
    return counts;
}

UniquenessReport verify_unique_diagonalization(int n, const Modulus& mod,
                                               OracleBudget budget) {
    if (!mod.is_prime_power) {
        throw UnsupportedOperationError(
            "uniqueness verification is a prime-power statement");
    }
    uint64_t space = code_space(n, mod, budget);
    OrbitStrategy strategy = resolve_strategy(n, mod, OrbitStrategy::Auto, budget);
    std::vector<std::pair<KMat, KMat>> group =
        strategy == OrbitStrategy::FullGroup ? materialize_gl(n, mod, budget)
                                             : closure_generators(n, mod);
    std::vector<DiagonalSpec> specs = all_diagonal_specs(n, mod);
    std::vector<std::vector<uint64_t>> members(specs.size());
#ifdef _OPENMP
#pragma omp parallel num_threads(configured_threads())
    {
        Bitmap scratch(space);
#pragma omp for schedule(dynamic)
        for (int64_t i = 0; i < int64_t(specs.size()); ++i) {
            members[i] = orbit_codes(specs[i], strategy, scratch, group);
        }
    }
#else
    {
        Bitmap scratch(space);
        for (size_t i = 0; i < specs.size(); ++i) {
            members[i] = orbit_codes(specs[i], strategy, scratch, group);
        }
    }
#endif

    std::vector<std::pair<uint64_t, int>> tagged;
    for (size_t i = 0; i < specs.size(); ++i) {
        for (uint64_t c : members[i]) tagged.emplace_back(c, int(i));
    }
    std::sort(tagged.begin(), tagged.end());
    UniquenessReport report;
    report.spec_count = int(specs.size());
    report.pairs_checked = uint64_t(specs.size()) * (specs.size() - 1) / 2;
    for (size_t i = 1; i < tagged.size(); ++i) {
        if (tagged[i].first == tagged[i - 1].first) {
            auto pr = std::minmax(tagged[i - 1].second, tagged[i].second);
            std::pair<int, int> collision{pr.first, pr.second};
            if (report.collisions.empty() || report.collisions.back() != collision) {
                report.collisions.push_back(collision);
            }
        }
    }
    report.all_disjoint = report.collisions.empty();
    return report;
}

std::vector<std::pair<DiagonalSpec, DiagonalSpec>> similar_diagonal_pairs(
    int n, const Modulus& mod, OracleBudget budget) {
    uint64_t space = code_space(n, mod, budget);
    std::vector<std::pair<KMat, KMat>> group = materialize_gl(n, mod, budget);
    std::vector<DiagonalSpec> specs = all_diagonal_specs(n, mod);
    Bitmap scratch(space);
    std::vector<std::pair<uint64_t, int>> tagged;
    for (size_t i = 0; i < specs.size(); ++i) {
        for (uint64_t c :
             orbit_codes(specs[i], OrbitStrategy::FullGroup, scratch, group)) {
            tagged.emplace_back(c, int(i));
        }
    }
    std::sort(tagged.begin(), tagged.end());
    std::vector<std::pair<int, int>> hits;
    for (size_t i = 1; i < tagged.size(); ++i) {
        if (tagged[i].first == tagged[i - 1].first) {
            auto pr = std::minmax(tagged[i - 1].second, tagged[i].second);
            hits.emplace_back(pr.first, pr.second);
        }
    }
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
    std::vector<std::pair<DiagonalSpec, DiagonalSpec>> out;
    out.reserve(hits.size());
    for (auto [a, b] : hits) out.emplace_back(specs[a], specs[b]);
    return out;
}

bool z6_counterexample_check() {
    Modulus z6 = modulus_from_value(6);
    RingMatrix p1 = make_matrix(2, z6, {1, 3, 2, 1});
    RingMatrix p2 = make_matrix(2, z6, {1, 3, 5, 2});
    RingMatrix d1 = diagonal_matrix({2, 3}, z6);
    RingMatrix d2 = diagonal_matrix({5, 0}, z6);
    RingMatrix expected = make_matrix(2, z6, {2, 3, 4, 3});
    bool both = conjugate(p1, d1) == expected && conjugate(p2, d2) == expected;
    std::vector<uint64_t> m1 = {2, 3};
    std::vector<uint64_t> m2 = {0, 5};  // sorted multisets
    return both && m1 != m2;
}

JordanDemoReport jordan_demo_checks() {
    Modulus z4 = prime_power_modulus(2, 2);
    JordanDemoReport report;

    RingMatrix p = make_matrix(2, z4, {1, 0, 2, 1});
    RingMatrix shifted_block = make_matrix(2, z4, {2, 1, 0, 2});
    RingMatrix nilpotent = make_matrix(2, z4, {0, 1, 0, 0});
    report.nilpotent_conjugation_identity = conjugate(p, shifted_block) == nilpotent;

    // [[x,2],[0,x]]: exhaust all conjugates, look for any Jordan matrix
    // (diagonal, or a single block [[a,1],[0,a]])
    bool none_found = true;
    for (uint64_t x = 0; x < 4 && none_found; ++x) {
        RingMatrix a = make_matrix(2, z4, {x, 2, 0, x});
        enumerate_gl(2, z4, [&](const RingMatrix& q) {
            RingMatrix b = conjugate(q, a);
            bool diagonal = b.at(0, 1) == 0 && b.at(1, 0) == 0;
            bool block = b.at(0, 1) == 1 && b.at(1, 0) == 0 && b.at(0, 0) == b.at(1, 1);
            if (diagonal || block) none_found = false;
        });
    }
    report.shifted_blocks_lack_jordan_form = none_found;
    return report;
}

BigCount t_of_type_checked(const MatrixType& type, int n, const Modulus& mod) {
    if (!mod.is_prime_power) {
        throw UnsupportedOperationError("type counts require a prime-power modulus");
    }
    BigCount formula = t_of_type(type, mod.p, mod.k);
    BigCount scanned((unsigned long)count_diagonals_of_type_brute(type, n, mod));
    if (formula != scanned) {
        std::ostringstream os;
        os << "t(T) mismatch for type " << type.canon << " over Z_" << mod.value
           << ": formula " << formula << ", multiset scan " << scanned;
        throw InternalInconsistencyError(os.str());
    }
    return formula;
}

uint64_t count_diagonals_of_type_brute(const MatrixType& type, int n,
                                       const Modulus& mod) {
    uint64_t count = 0;
    std::vector<uint64_t> cur(n, 0);
    while (true) {
        if (classify_diagonal(DiagonalSpec{mod, cur}).canon == type.canon) ++count;
        int i = n - 1;
        while (i >= 0 && cur[i] == mod.value - 1) --i;
        if (i < 0) break;
        uint64_t v = cur[i] + 1;
        for (int j = i; j < n; ++j) cur[j] = v;
    }
    return count;
}

}  // namespace diagcount
