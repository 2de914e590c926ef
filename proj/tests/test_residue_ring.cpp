#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "diagcount/errors.hpp"
#include "diagcount/residue_ring.hpp"

using namespace diagcount;

TEST_CASE("primality") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK(is_prime_u64(13));
    CHECK(is_prime_u64(7919));
    CHECK_FALSE(is_prime_u64(0));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(4));
    CHECK_FALSE(is_prime_u64(6));
    CHECK_FALSE(is_prime_u64(7917));
}

TEST_CASE("modulus construction") {
    Modulus z27 = prime_power_modulus(3, 3);
    CHECK(z27.value == 27);
    CHECK(z27.is_prime_power);
    CHECK(z27.p == 3);
    CHECK(z27.k == 3);

    Modulus z8 = modulus_from_value(8);
    CHECK(z8.is_prime_power);
    CHECK(z8.p == 2);
    CHECK(z8.k == 3);

    Modulus z6 = modulus_from_value(6);
    CHECK_FALSE(z6.is_prime_power);
    CHECK(z6.primes == std::vector<uint64_t>{2, 3});

    CHECK_THROWS_AS(prime_power_modulus(4, 1), UsageError);
    CHECK_THROWS_AS(prime_power_modulus(2, 0), UsageError);
    CHECK_THROWS_AS(modulus_from_value(1), UsageError);
}

TEST_CASE("val_p") {
    Modulus z27 = prime_power_modulus(3, 3);
    Modulus z8 = prime_power_modulus(2, 3);
    CHECK(val_p(18, z27) == 2);
    CHECK(val_p(0, z8) == val_infinity);
    CHECK(val_p(4, z8) == 2);

    // 0 <= l <= k-1 for nonzero residues
    for (uint64_t x = 1; x < 27; ++x) {
        int v = val_p(x, z27);
        CHECK(v >= 0);
        CHECK(v <= 2);
    }

    Modulus z6 = modulus_from_value(6);
    CHECK_THROWS_AS(val_p(3, z6), UnsupportedOperationError);
}

TEST_CASE("val_p is an ultrametric valuation") {
    Modulus z27 = prime_power_modulus(3, 3);
    for (uint64_t x = 0; x < 27; ++x) {
        for (uint64_t y = 0; y < 27; ++y) {
            int vx = val_p(x, z27);
            int vy = val_p(y, z27);
            int vsum = val_p((x + y) % 27, z27);
            CHECK(vsum >= std::min(vx, vy));
            if (vx != vy) CHECK(vsum == std::min(vx, vy));
            if (x != 0 && y != 0 && vx + vy < 3) {
                CHECK(val_p((x * y) % 27, z27) == vx + vy);
            }
        }
    }
}

TEST_CASE("inverses") {
    Modulus z8 = prime_power_modulus(2, 3);
    Modulus z27 = prime_power_modulus(3, 3);
    CHECK(inv(make_residue(3, z8)).value == 3);
    CHECK(inv(make_residue(1, z8)).value == 1);

    // independent oracle: scan all residues for the product hitting 1
    uint64_t expected = 0;
    for (uint64_t y = 0; y < 27; ++y) {
        if ((5 * y) % 27 == 1) expected = y;
    }
    CHECK(expected == 11);
    CHECK(inv(make_residue(5, z27)).value == 11);

    try {
        inv(make_residue(6, z27));
        FAIL("expected NotInvertibleError");
    } catch (const NotInvertibleError& e) {
        CHECK(e.valuation == 1);
    }
    try {
        inv(make_residue(0, z8));
        FAIL("expected NotInvertibleError");
    } catch (const NotInvertibleError& e) {
        CHECK(e.valuation == val_infinity);
    }

    // composite moduli still invert their units
    Modulus z6 = modulus_from_value(6);
    CHECK(inv(make_residue(5, z6)).value == 5);
}

TEST_CASE("inv is an involution on units") {
    for (uint64_t m : {8, 9, 27, 25}) {
        Modulus mod = modulus_from_value(m);
        for (uint64_t x = 1; x < m; ++x) {
            if (!is_unit(x, mod)) continue;
            Residue r = make_residue(x, mod);
            CHECK((x * inv(r).value) % m == 1);
            CHECK(inv(inv(r)).value == x);
        }
    }
}

TEST_CASE("phi_pow") {
    CHECK(phi_pow(2, 3) == 4);
    CHECK(phi_pow(3, 2) == 6);
    CHECK(phi_pow(5, 0) == 1);
    CHECK(phi_pow(7, 1) == 6);
}

TEST_CASE("phi_i") {
    CHECK(phi_i(3, 3, 2) == 9);
    CHECK(phi_i(2, 2, 2) == 0);
    CHECK(phi_i(3, 3, 1) == 18);
    CHECK_THROWS_AS(phi_i(2, 1, 3), NegativeCountError);
    CHECK_THROWS_AS(phi_i(2, 0, 1), UsageError);
}

TEST_CASE("phi identities") {
    for (uint64_t p : {2, 3, 5, 7}) {
        for (unsigned j = 1; j <= 5; ++j) {
            CHECK(phi_i(p, j, 1) == phi_pow(p, j));
        }
        for (unsigned k = 1; k <= 5; ++k) {
            BigCount sum = 0;
            for (unsigned i = 0; i < k; ++i) sum += phi_pow(p, k - i);
            CHECK(sum == big_pow(p, k) - 1);
        }
    }
}

TEST_CASE("phi_chain stops at zero") {
    CHECK(phi_chain(2, 2, 3) == 0);            // phi_2(4) = 0 kills the product
    CHECK(phi_chain(3, 1, 2) == 2);            // phi_1(3) phi_2(3) = 2 * 1
    CHECK(phi_chain(5, 1, 4) == 4 * 3 * 2 * 1);
    CHECK(phi_chain(2, 3, 1) == 4);
    CHECK(phi_chain(7, 2, 0) == 1);            // empty product
}

TEST_CASE("exact ratio") {
    ExactRatio r(BigCount(112), BigCount(256));
    CHECK(r.num == 7);
    CHECK(r.den == 16);
    CHECK(r.decimal() == "0.437500");
    CHECK(ExactRatio(BigCount(1), BigCount(3)).decimal(4) == "0.3333");
    CHECK(ExactRatio(BigCount(2), BigCount(3)).decimal(4) == "0.6667");
    CHECK(ExactRatio(BigCount(5), BigCount(5)).decimal(2) == "1.00");
    CHECK(ExactRatio(BigCount(0), BigCount(7)).num == 0);
    ExactRatio a(BigCount(1), BigCount(2));
    ExactRatio b(BigCount(2), BigCount(3));
    CHECK(a.less_than(b));
    CHECK_FALSE(b.less_than(a));
}

TEST_CASE("exact division is checked") {
    CHECK(exact_div(BigCount(96), BigCount(16), "test") == 6);
    CHECK_THROWS_AS(exact_div(BigCount(7), BigCount(2), "test"),
                    InternalInconsistencyError);
}
