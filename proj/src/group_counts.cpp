#include "diagcount/group_counts.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "diagcount/errors.hpp"

namespace diagcount {

namespace {

std::string encode(const std::vector<int>& mults, const std::vector<int>& weights,
                   const std::vector<int>& perm) {
    int g = int(mults.size());
    std::ostringstream os;
    for (int i = 0; i < g; ++i) os << mults[perm[i]] << ',';
    os << '|';
    for (int i = 0; i < g; ++i) {
        for (int j = i + 1; j < g; ++j) {
            os << weights[size_t(perm[i]) * g + perm[j]] << ',';
        }
    }
    return os.str();
}

}  // namespace

int MatrixType::n() const { return std::accumulate(mults.begin(), mults.end(), 0); }

MatrixType make_type(int g, std::vector<int> mults, std::vector<int> weights) {
    if (g < 1) throw InvalidTypeError("type needs g >= 1");
    if (mults.size() != size_t(g) || weights.size() != size_t(g) * size_t(g)) {
        throw InvalidTypeError("type field sizes do not match g");
    }
    for (int m : mults) {
        if (m < 1) throw InvalidTypeError("multiplicities must be >= 1");
    }
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            if (i == j) continue;
            int w = weights[size_t(i) * g + j];
            if (w < 0) throw InvalidTypeError("weights must be >= 0");
            if (w != weights[size_t(j) * g + i]) {
                throw InvalidTypeError("weight matrix must be symmetric");
            }
        }
    }
    for (int i = 0; i < g; ++i) weights[size_t(i) * g + i] = -1;

    MatrixType t;
    t.g = g;
    t.mults = std::move(mults);
    t.weights = std::move(weights);

    // canonical key: lexicographically smallest joint encoding over S_g
    std::vector<int> perm(g);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best = encode(t.mults, t.weights, perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
        std::string cand = encode(t.mults, t.weights, perm);
        if (cand < best) best = std::move(cand);
    }
    t.canon = std::move(best);
    return t;
}

BigCount gl_order(int n, uint64_t p, unsigned k) {
    if (n < 1 || k < 1) throw UsageError("gl_order requires n >= 1 and k >= 1");
    BigCount order = big_pow(p, (unsigned long)(n) * unsigned(n) * (k - 1));
    BigCount pn = big_pow(p, unsigned(n));
    for (int l = 1; l <= n; ++l) {
        order *= pn - big_pow(p, unsigned(l - 1));
    }
    return order;
}

BigCount centralizer_order(const MatrixType& t, uint64_t p, unsigned k) {
    unsigned long pair_exp = 0;
    for (int i = 0; i < t.g; ++i) {
        for (int j = i + 1; j < t.g; ++j) {
            int w = t.weight(i, j);
            if (w >= int(k)) {
                std::ostringstream os;
                os << "type weight " << w << " is out of range for k = " << k;
                throw InvalidTypeError(os.str());
            }
            pair_exp += 2ul * unsigned(t.mults[i]) * unsigned(t.mults[j]) * unsigned(w);
        }
    }
    BigCount c = big_pow(p, pair_exp);
    for (int m : t.mults) c *= gl_order(m, p, k);
    // Lagrange: |C(D)| divides |GL_n|
    BigCount full = gl_order(t.n(), p, k);
    if (full % c != 0) {
        throw InternalInconsistencyError("centralizer order does not divide |GL_n|");
    }
    return c;
}

BigCount class_size(const MatrixType& t, uint64_t p, unsigned k) {
    return exact_div(gl_order(t.n(), p, k), centralizer_order(t, p, k),
                     "class_size = |GL_n| / |C|");
}

}  // namespace diagcount
