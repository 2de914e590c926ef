#pragma once

// Arbitrary-precision counters and exact rationals for the counting layer.
// Counts leave 64 bits quickly (|GL_4(Z_{7^3})| already has 41 digits), so
// every count is an mpz and every proportion an exact reduced fraction.

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace diagcount {

using BigCount = mpz_class;

BigCount big_pow(uint64_t base, unsigned long exp);
BigCount big_pow(const BigCount& base, unsigned long exp);
BigCount factorial(unsigned n);
BigCount binomial(const BigCount& n, unsigned long k);

// Quotient of num/den; throws InternalInconsistencyError when the division
// leaves a remainder. `what` names the identity being evaluated.
BigCount exact_div(const BigCount& num, const BigCount& den, const char* what);

std::string dec_string(const BigCount& v);

// Reduced fraction, den >= 1, gcd(|num|, den) = 1.
struct ExactRatio {
    BigCount num;
    BigCount den;

    ExactRatio() : num(0), den(1) {}
    ExactRatio(BigCount numerator, BigCount denominator);

    bool operator==(const ExactRatio& o) const = default;
    bool less_than(const ExactRatio& o) const;

    // Fixed-point decimal rendering, round half up. Deterministic.
    std::string decimal(unsigned digits = 6) const;
};

}  // namespace diagcount
