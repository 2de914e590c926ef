#include "diagcount/residue_ring.hpp"

#include <sstream>

#include "diagcount/errors.hpp"

namespace diagcount {

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (uint64_t d = 5; d <= n / d; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

Modulus prime_power_modulus(uint64_t p, unsigned k) {
    if (!is_prime_u64(p)) {
        std::ostringstream os;
        os << "p must be prime, got " << p;
        throw UsageError(os.str());
    }
    if (k < 1) throw UsageError("k must be >= 1");
    uint64_t m = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (m > UINT64_MAX / p) throw UsageError("p^k does not fit in 64 bits");
        m *= p;
    }
    Modulus mod;
    mod.value = m;
    mod.p = p;
    mod.k = k;
    mod.is_prime_power = true;
    mod.primes = {p};
    return mod;
}

Modulus modulus_from_value(uint64_t m) {
    if (m < 2) throw UsageError("modulus must be >= 2");
    Modulus mod;
    mod.value = m;
    uint64_t rest = m;
    for (uint64_t d = 2; d <= rest / d; ++d) {
        if (rest % d == 0) {
            mod.primes.push_back(d);
            while (rest % d == 0) rest /= d;
        }
    }
    if (rest > 1) mod.primes.push_back(rest);
    if (mod.primes.size() == 1) {
        mod.is_prime_power = true;
        mod.p = mod.primes[0];
        mod.k = 0;
        for (uint64_t t = m; t > 1; t /= mod.p) ++mod.k;
    }
    return mod;
}

Residue make_residue(uint64_t v, const Modulus& mod) {
    return Residue{v % mod.value, mod};
}

bool is_unit(uint64_t x, const Modulus& mod) {
    x %= mod.value;
    for (uint64_t p : mod.primes) {
        if (x % p == 0) return false;
    }
    return true;
}

int val_p(uint64_t x, const Modulus& mod) {
    if (!mod.is_prime_power) {
        throw UnsupportedOperationError("val_p requires a prime-power modulus");
    }
    x %= mod.value;
    if (x == 0) return val_infinity;
    int l = 0;
    while (x % mod.p == 0) {
        x /= mod.p;
        ++l;
    }
    return l;
}

int val_p(const Residue& x) { return val_p(x.value, x.mod); }

uint64_t inv_mod(uint64_t x, const Modulus& mod) {
    uint64_t m = mod.value;
    x %= m;
    // extended Euclid on (x, m); works for any m
    int64_t t = 0, newt = 1;
    int64_t r = int64_t(m), newr = int64_t(x);
    while (newr != 0) {
        int64_t q = r / newr;
        int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) {
        std::ostringstream os;
        os << x << " is not invertible mod " << m;
        int v = mod.is_prime_power ? val_p(x, mod) : -1;
        throw NotInvertibleError(os.str(), v);
    }
    if (t < 0) t += int64_t(m);
    return uint64_t(t);
}

Residue inv(const Residue& x) { return Residue{inv_mod(x.value, x.mod), x.mod}; }

BigCount phi_pow(uint64_t p, unsigned l) {
    if (l == 0) return 1;
    return big_pow(p, l - 1) * BigCount(static_cast<unsigned long>(p - 1));
}

BigCount phi_i(uint64_t p, unsigned j, unsigned i) {
    if (j < 1 || i < 1) throw UsageError("phi_i requires j >= 1 and i >= 1");
    if (i > p) {
        std::ostringstream os;
        os << "phi_" << i << "(" << p << "^" << j << ") is negative (i > p)";
        throw NegativeCountError(os.str());
    }
    return big_pow(p, j) - BigCount(static_cast<unsigned long>(i)) * big_pow(p, j - 1);
}

BigCount phi_chain(uint64_t p, unsigned j, unsigned count) {
    BigCount prod = 1;
    for (unsigned i = 1; i <= count; ++i) {
        // phi_p(p^j) = 0, so the product hits zero before i could exceed p
        BigCount f = phi_i(p, j, i);
        if (f == 0) return 0;
        prod *= f;
    }
    return prod;
}

}  // namespace diagcount
