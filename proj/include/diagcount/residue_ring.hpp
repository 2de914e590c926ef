#pragma once

// Exact arithmetic in Z_m with p-adic valuations and the phi family of
// counting functions. All values are immutable and every operation is a pure
// function, so everything here can be shared freely across threads.

#include <cstdint>
#include <limits>
#include <vector>

#include "diagcount/bigint.hpp"

namespace diagcount {

// val_p(0). Distinct diagonal entries always have finite valuation <= k-1,
// so an infinite valuation escaping into graph weights is loudly wrong.
inline constexpr int val_infinity = std::numeric_limits<int>::max();

struct Modulus {
    uint64_t value = 0;  // m
    uint64_t p = 0;      // prime base, prime-power moduli only
    unsigned k = 0;      // exponent, prime-power moduli only
    bool is_prime_power = false;
    std::vector<uint64_t> primes;  // distinct prime divisors of m

    bool operator==(const Modulus& o) const { return value == o.value; }
};

bool is_prime_u64(uint64_t n);

// Validates that p is prime and k >= 1; m = p^k must fit in 64 bits.
Modulus prime_power_modulus(uint64_t p, unsigned k);

// Factors m (m >= 2) and flags prime powers. Composite m is admitted for
// ring and matrix operations only, never for valuations or counting.
Modulus modulus_from_value(uint64_t m);

struct Residue {
    uint64_t value = 0;
    Modulus mod;
};

Residue make_residue(uint64_t v, const Modulus& mod);

bool is_unit(uint64_t x, const Modulus& mod);

// Largest l with p^l | x; val_infinity iff x = 0. Prime-power moduli only.
int val_p(uint64_t x, const Modulus& mod);
int val_p(const Residue& x);

// Multiplicative inverse in Z_m; NotInvertibleError on non-units.
uint64_t inv_mod(uint64_t x, const Modulus& mod);
Residue inv(const Residue& x);

// phi(p^l) = p^(l-1)(p-1); phi(p^0) = 1.
BigCount phi_pow(uint64_t p, unsigned l);

// phi_i(p^j) = p^j - i p^(j-1), j >= 1, i >= 1. The count of admissible
// values for the i-th edge difference in a linked cell; i > p would be
// negative and throws NegativeCountError.
BigCount phi_i(uint64_t p, unsigned j, unsigned i);

// prod_{i=1..count} phi_i(p^j), stopping at the first zero factor (which
// occurs at i = p, before any factor could go negative).
BigCount phi_chain(uint64_t p, unsigned j, unsigned count);

}  // namespace diagcount
