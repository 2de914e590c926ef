#include "diagcount/type_engine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "diagcount/errors.hpp"
#include "diagcount/valuation_graph.hpp"

namespace diagcount {

namespace {

std::vector<std::vector<int>> compositions(int n, int parts) {
    // vectors of `parts` positive integers summing to n, lexicographic
    std::vector<std::vector<int>> out;
    std::vector<int> cur(parts);
    std::function<void(int, int)> rec = [&](int idx, int left) {
        if (idx == parts - 1) {
            cur[idx] = left;
            out.push_back(cur);
            return;
        }
        for (int v = 1; v <= left - (parts - 1 - idx); ++v) {
            cur[idx] = v;
            rec(idx + 1, left - v);
        }
    };
    if (parts >= 1 && n >= parts) rec(0, n);
    return out;
}

std::vector<int> apply_perm(const std::vector<int>& mults, const std::vector<int>& perm) {
    std::vector<int> out(mults.size());
    for (size_t i = 0; i < mults.size(); ++i) out[i] = mults[perm[i]];
    return out;
}

BigCount block_arrangements(const std::vector<int>& mults) {
    // g! / prod over multiplicity values m of (number of vertices with m)!
    std::map<int, unsigned> freq;
    for (int m : mults) ++freq[m];
    BigCount denom = 1;
    for (auto [m, cnt] : freq) denom *= factorial(cnt);
    return exact_div(factorial(unsigned(mults.size())), denom, "block arrangement count");
}

// strictly increasing r-subsets of {0..k-1}, lexicographic
std::vector<std::vector<int>> weight_combinations(unsigned k, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(r);
    std::function<void(int, int)> rec = [&](int idx, int lo) {
        if (idx == r) {
            out.push_back(cur);
            return;
        }
        for (int v = lo; v <= int(k) - (r - idx); ++v) {
            cur[idx] = v;
            rec(idx + 1, v + 1);
        }
    };
    if (r == 0) {
        out.push_back({});
    } else if (r <= int(k)) {
        rec(0, 0);
    }
    return out;
}

}  // namespace

MatrixType classify_diagonal(const DiagonalSpec& spec) {
    if (!spec.mod.is_prime_power) {
        throw UnsupportedOperationError("diagonal types require a prime-power modulus");
    }
    if (spec.entries.empty()) throw UsageError("empty diagonal");
    std::vector<uint64_t> values;
    std::vector<int> mults;
    for (uint64_t x : spec.entries) {
        if (!values.empty() && values.back() == x) {
            ++mults.back();
        } else {
            values.push_back(x);
            mults.push_back(1);
        }
    }
    int g = int(values.size());
    std::vector<int> weights(size_t(g) * g, -1);
    for (int i = 0; i < g; ++i) {
        for (int j = i + 1; j < g; ++j) {
            int w = val_p(values[j] - values[i], spec.mod);
            weights[size_t(i) * g + j] = w;
            weights[size_t(j) * g + i] = w;
        }
    }
    return make_type(g, std::move(mults), std::move(weights));
}

BigCount t_of_type(const MatrixType& type, uint64_t p, unsigned k) {
    ValuationGraph graph = graph_from_weights(type.g, type.weights);
    BigCount prod = linked_cell_phi_product(hierarchy_of(graph), p, k);
    BigCount aut_m = aut_order(graph, type.mults);
    return exact_div(big_pow(p, k) * prod, aut_m, "t(T) aut quotient");
}

std::vector<TypeReport> enumerate_types(int n, uint64_t p, unsigned k) {
    if (n < 1) throw UsageError("n must be >= 1");
    if (!is_prime_u64(p)) throw UsageError("p must be prime");
    if (k < 1) throw UsageError("k must be >= 1");

    BigCount gl_n = gl_order(n, p, k);
    BigCount pk = big_pow(p, k);
    std::vector<TypeReport> reports;

    for (int g = 1; g <= n; ++g) {
        auto mult_vectors = compositions(n, g);
        for (const GraphClass& cls : enumerate_graph_classes(g)) {
            for (const auto& weights : weight_combinations(k, cls.ranks)) {
                ValuationGraph graph = instantiate(cls, weights);
                auto auts = weight_automorphisms(graph);
                BigCount prod = linked_cell_phi_product(hierarchy_of(graph), p, k);
                BigCount t_distinct =
                    exact_div(pk * prod, BigCount((unsigned long)auts.size()),
                              "distinct-entry t(T)");
                for (const auto& mults : mult_vectors) {
                    // one report per orbit of multiplicity assignments
                    bool canonical = true;
                    unsigned long stab = 0;
                    for (const auto& perm : auts) {
                        auto moved = apply_perm(mults, perm);
                        if (moved < mults) {
                            canonical = false;
                            break;
                        }
                        if (moved == mults) ++stab;
                    }
                    if (!canonical) continue;
                    MatrixType type = make_type(g, mults, graph.w);
                    TypeReport rep;
                    rep.t = exact_div(pk * prod, BigCount(stab), "t(T) aut quotient");
                    rep.c = centralizer_order(type, p, k);
                    rep.s = exact_div(gl_n, rep.c, "s(T) = |GL_n| / c(T)");
                    rep.contribution = rep.t * rep.s;
                    rep.t_block_arrangements = block_arrangements(mults) * t_distinct;
                    rep.type = std::move(type);
                    reports.push_back(std::move(rep));
                }
            }
        }
    }
    return reports;
}

BigCount diag_count_engine(int n, uint64_t p, unsigned k) {
    BigCount total = 0;
    for (const TypeReport& rep : enumerate_types(n, p, k)) total += rep.contribution;
    return total;
}

BigCount diag_count_semidirect(int n, uint64_t p, unsigned k, uint64_t budget) {
    Modulus mod = prime_power_modulus(p, k);
    BigCount specs = binomial(BigCount(static_cast<unsigned long>(mod.value)) + n - 1,
                              unsigned(n));
    if (specs > BigCount(static_cast<unsigned long>(budget))) {
        uint64_t req = specs.fits_ulong_p() ? uint64_t(specs.get_ui()) : UINT64_MAX;
        std::ostringstream os;
        os << "semidirect sum needs a budget of " << specs << " multisets (have "
           << budget << ")";
        throw BudgetExceededError(os.str(), req);
    }
    BigCount gl_n = gl_order(n, p, k);
    BigCount total = 0;
    std::vector<uint64_t> cur(n, 0);
    while (true) {
        MatrixType type = classify_diagonal(DiagonalSpec{mod, cur});
        total += exact_div(gl_n, centralizer_order(type, p, k), "orbit size |GL|/|C|");
        int i = n - 1;
        while (i >= 0 && cur[i] == mod.value - 1) --i;
        if (i < 0) break;
        uint64_t v = cur[i] + 1;
        for (int j = i; j < n; ++j) cur[j] = v;
    }
    return total;
}

BigCount diag2_closed(uint64_t p, unsigned k) {
    if (!is_prime_u64(p) || k < 1) throw UsageError("need prime p and k >= 1");
    BigCount pk = big_pow(p, k);
    BigCount num = big_pow(p, k + 1) * (big_pow(p, 2) - 1) * (big_pow(p, 3 * k) - 1);
    BigCount den = 2 * (big_pow(p, 3) - 1);
    return pk + exact_div(num, den, "closed form n=2");
}

BigCount diag3_closed(uint64_t p, unsigned k) {
    if (!is_prime_u64(p) || k < 1) throw UsageError("need prime p and k >= 1");
    BigCount p3 = big_pow(p, 3) - 1;
    BigCount p5 = big_pow(p, 5) - 1;
    BigCount p8 = big_pow(p, 8) - 1;

    BigCount term1 = big_pow(p, k);
    BigCount term2 =
        exact_div(big_pow(p, k + 2) * p3 * (big_pow(p, 5 * k) - 1), p5,
                  "closed form n=3, second term");
    BigCount term3 = exact_div(
        big_pow(p, k + 3) * p3 * BigCount(static_cast<unsigned long>(p - 2)) *
            BigCount(static_cast<unsigned long>(p + 1)) * (big_pow(p, 8 * k) - 1),
        6 * p8, "closed form n=3, third term");
    BigCount inner8 = exact_div(big_pow(p, 8 * k) - big_pow(p, 8), p8,
                                "closed form n=3, geometric tail (8)");
    BigCount inner5 = exact_div(big_pow(p, 5 * k) - big_pow(p, 5), p5,
                                "closed form n=3, geometric tail (5)");
    BigCount term4 =
        exact_div(big_pow(p, k + 3) * (big_pow(p, 2) - 1) * (inner8 - inner5), 2,
                  "closed form n=3, fourth term");
    return term1 + term2 + term3 + term4;
}

BigCount diag4_closed(uint64_t p, unsigned k) {
    if (!is_prime_u64(p) || k < 1) throw UsageError("need prime p and k >= 1");
    BigCount pk = big_pow(p, k);
    BigCount gl4 = gl_order(4, p, k);
    BigCount gl3 = gl_order(3, p, k);
    BigCount gl2 = gl_order(2, p, k);
    BigCount phk = phi_pow(p, k);
    BigCount phk2 = phk * phk;
    BigCount phk4 = phk2 * phk2;

    auto add_row = [&](BigCount& total, const BigCount& t, const BigCount& c) {
        total += t * exact_div(gl4, c, "class size in the n=4 table sum");
    };

    BigCount total = pk;  // scalar row, s = 1
    for (unsigned i = 0; i < k; ++i) {
        BigCount fi = phi_pow(p, k - i);
        // partition 3+1, weight i
        add_row(total, pk * fi, big_pow(p, 6 * i) * phk * gl3);
        // partition 2+2, weight i
        add_row(total, exact_div(pk * fi, 2, "t, partition 2+2"),
                big_pow(p, 8 * i) * gl2 * gl2);
        // partition 2+1+1, all weights i
        add_row(total, exact_div(pk * phi_chain(p, k - i, 2), 2, "t, 2+1+1 equal weights"),
                big_pow(p, 10 * i) * phk2 * gl2);
        // distinct entries, all weights i
        add_row(total, exact_div(pk * phi_chain(p, k - i, 3), 24, "t, distinct equal weights"),
                big_pow(p, 12 * i) * phk4);
    }
    for (unsigned i = 0; i < k; ++i) {
        for (unsigned j = i + 1; j < k; ++j) {
            BigCount fi = phi_pow(p, k - i);
            BigCount fj = phi_pow(p, k - j);
            // partition 2+1+1 on the (i,i,j) triangle: doubled vertex either
            // sits on the two i-edges (apex) or on the j-edge
            add_row(total, exact_div(pk * fi * fj, 2, "t, 2+1+1 apex"),
                    big_pow(p, 8 * i + 2 * j) * phk2 * gl2);
            add_row(total, pk * fi * fj, big_pow(p, 6 * i + 4 * j) * phk2 * gl2);
            // distinct entries: triple at j inside the i-root
            add_row(total,
                    exact_div(pk * fi * phi_chain(p, k - j, 2), 6, "t, triple at j"),
                    big_pow(p, 6 * i + 6 * j) * phk4);
            // distinct entries: two pairs, both at j
            add_row(total, exact_div(pk * fi * fj * fj, 8, "t, two equal pairs"),
                    big_pow(p, 8 * i + 4 * j) * phk4);
            // distinct entries: one pair at j
            add_row(total,
                    exact_div(pk * phi_chain(p, k - i, 2) * fj, 4, "t, one pair"),
                    big_pow(p, 10 * i + 2 * j) * phk4);
        }
    }
    for (unsigned i = 0; i < k; ++i) {
        for (unsigned j = i + 1; j < k; ++j) {
            for (unsigned m = j + 1; m < k; ++m) {
                BigCount f = phi_pow(p, k - i) * phi_pow(p, k - j) * phi_pow(p, k - m);
                // distinct entries: nested chain i < j < m
                add_row(total, exact_div(pk * f, 2, "t, nested chain"),
                        big_pow(p, 6 * i + 4 * j + 2 * m) * phk4);
                // distinct entries: two pairs at j and m
                add_row(total, exact_div(pk * f, 4, "t, pairs at j and m"),
                        big_pow(p, 8 * i + 2 * j + 2 * m) * phk4);
            }
        }
    }
    return total;
}

ExactRatio proportion(int n, uint64_t p, unsigned k) {
    return ExactRatio(diag_count_engine(n, p, k),
                      big_pow(p, (unsigned long)(k) * unsigned(n) * unsigned(n)));
}

}  // namespace diagcount
