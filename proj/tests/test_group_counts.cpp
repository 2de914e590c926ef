#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>

#include "diagcount/errors.hpp"
#include "diagcount/group_counts.hpp"
#include "diagcount/matrix_ring.hpp"
#include "diagcount/oracle.hpp"
#include "diagcount/type_engine.hpp"

using namespace diagcount;

namespace {

MatrixType two_vertex_type(int m1, int m2, int w) {
    return make_type(2, {m1, m2}, {-1, w, w, -1});
}

}  // namespace

TEST_CASE("gl_order closed form vs explicit enumeration") {
    CHECK(gl_order(2, 2, 1) == 6);
    CHECK(gl_order(2, 2, 2) == 96);
    CHECK(gl_order(3, 2, 2) == 86016);
    CHECK(gl_order(1, 3, 2) == 6);  // phi(9)

    for (auto [n, p, k] : std::vector<std::array<uint64_t, 3>>{
             {2, 2, 1}, {2, 3, 1}, {2, 2, 2}, {2, 2, 3}, {2, 3, 2}, {3, 2, 1}, {3, 3, 1}}) {
        Modulus mod = prime_power_modulus(p, unsigned(k));
        CHECK(gl_order(int(n), p, unsigned(k)) ==
              BigCount((unsigned long)count_gl(int(n), mod)));
    }
}

TEST_CASE("type canonicalization") {
    MatrixType a = two_vertex_type(2, 1, 1);
    MatrixType b = two_vertex_type(1, 2, 1);
    CHECK(a.canon == b.canon);
    CHECK(a.n() == 3);

    // triangle types agree regardless of the vertex listing order
    MatrixType t1 = make_type(3, {1, 1, 2}, {-1, 0, 0, 0, -1, 1, 0, 1, -1});
    MatrixType t2 = make_type(3, {2, 1, 1}, {-1, 1, 0, 1, -1, 0, 0, 0, -1});
    CHECK(t1.canon == t2.canon);
    MatrixType t3 = make_type(3, {1, 1, 2}, {-1, 1, 0, 1, -1, 0, 0, 0, -1});
    CHECK(t1.canon != t3.canon);

    CHECK_THROWS_AS(make_type(2, {1, 0}, {-1, 0, 0, -1}), InvalidTypeError);
    CHECK_THROWS_AS(make_type(2, {1, 1}, {-1, 0, 1, -1}), InvalidTypeError);
}

TEST_CASE("centralizer orders of small types") {
    // scalar type: everything invertible commutes
    for (int n = 1; n <= 4; ++n) {
        MatrixType scalar = make_type(1, {n}, {-1});
        CHECK(centralizer_order(scalar, 2, 2) == gl_order(n, 2, 2));
    }

    // two distinct values, n = 2: c = p^(2i) phi(p^k)^2
    CHECK(centralizer_order(two_vertex_type(1, 1, 1), 2, 2) == 16);
    CHECK(centralizer_order(two_vertex_type(1, 1, 0), 2, 2) == 4);

    // n = 3, mults (2,1): c = p^(4i) phi(p^k) |GL_2|
    for (unsigned i = 0; i < 2; ++i) {
        CHECK(centralizer_order(two_vertex_type(2, 1, int(i)), 2, 2) ==
              big_pow(2, 4 * i) * phi_pow(2, 2) * gl_order(2, 2, 2));
    }

    CHECK_THROWS_AS(centralizer_order(two_vertex_type(1, 1, 2), 2, 2),
                    InvalidTypeError);
}

TEST_CASE("centralizer formula matches brute commutant scans") {
    for (auto [n, m] : std::vector<std::pair<int, uint64_t>>{{2, 4}, {2, 9}, {3, 2}}) {
        Modulus mod = modulus_from_value(m);
        auto specs = all_diagonal_specs(n, mod);
        auto scans = commutant_counts(specs);
        for (size_t i = 0; i < specs.size(); ++i) {
            MatrixType type = classify_diagonal(specs[i]);
            CHECK(centralizer_order(type, mod.p, mod.k) ==
                  BigCount((unsigned long)scans[i]));
        }
    }
}

TEST_CASE("class sizes") {
    MatrixType scalar = make_type(1, {2}, {-1});
    CHECK(class_size(scalar, 2, 2) == 1);
    CHECK(class_size(two_vertex_type(1, 1, 0), 2, 1) == 6);   // diag(0,1) over Z_2
    CHECK(class_size(two_vertex_type(1, 1, 1), 2, 2) == 6);   // diag(0,2) over Z_4

    // orbit-stabilizer product holds exactly
    for (auto [p, k] : std::vector<std::pair<uint64_t, unsigned>>{{2, 2}, {3, 1}, {3, 2}}) {
        for (int w = 0; w < int(k); ++w) {
            MatrixType t = two_vertex_type(1, 1, w);
            CHECK(class_size(t, p, k) * centralizer_order(t, p, k) == gl_order(2, p, k));
        }
    }
}
