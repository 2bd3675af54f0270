#include "doctest.h"
#include "polar/ffield.hpp"

using polar::Field;

TEST_CASE("prime field Z/7") {
    Field F(7, 1);
    CHECK(F.size() == 7);
    CHECK(F.add(3, 5) == 1);
    CHECK(F.mul(3, 5) == 1);
    CHECK(F.inv(3) == 5);
    CHECK(F.neg(2) == 5);
    CHECK(F.pow(3, 6) == 1);
}

TEST_CASE("GF(4) has modulus x^2+x+1 and the right conjugation") {
    Field F(2, 2);
    CHECK(F.size() == 4);
    CHECK(F.modulus() == std::vector<int>{1, 1, 1});
    // subfield GF(2) is fixed by x -> x^2
    CHECK(F.frobenius(0) == 0);
    CHECK(F.frobenius(1) == 1);
    // the generator x (code 2) maps to x^2 = x+1 (code 3)
    CHECK(F.frobenius(2) == 3);
    CHECK(F.frobenius(3) == 2);
    // conjugation is an involution
    for (int a = 0; a < 4; ++a) CHECK(F.frobenius(F.frobenius(a)) == a);
}

TEST_CASE("GF(9) modulus is lexicographically smallest") {
    Field F(3, 2);
    // candidates in code order: x^2, x^2+1 (irreducible: no root mod 3)
    CHECK(F.modulus() == std::vector<int>{1, 0, 1});
}

static void check_axioms(Field& F) {
    const int n = static_cast<int>(F.size());
    for (int a = 0; a < n; ++a) {
        CHECK(F.add(a, 0) == a);
        CHECK(F.mul(a, 1) == a);
        CHECK(F.add(a, F.neg(a)) == 0);
        if (a) CHECK(F.mul(a, F.inv(a)) == 1);
        CHECK(F.pow(a, F.size()) == a);  // x^q = x
    }
    // spot-check associativity and distributivity
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            CHECK(F.add(a, b) == F.add(b, a));
            CHECK(F.mul(a, b) == F.mul(b, a));
            for (int c = 0; c < n; c += 3) {
                CHECK(F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c));
                CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            }
        }
}

TEST_CASE("field axioms") {
    for (auto [p, t] : {std::pair{2, 3}, {3, 2}, {5, 1}, {2, 4}}) {
        Field F(p, t);
        check_axioms(F);
    }
}

TEST_CASE("frobenius is a field automorphism") {
    Field F(2, 4);  // GF(16), conjugation over GF(4) is frobenius^2
    for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b) {
            CHECK(F.frobenius(F.add(a, b), 2) == F.add(F.frobenius(a, 2), F.frobenius(b, 2)));
            CHECK(F.frobenius(F.mul(a, b), 2) == F.mul(F.frobenius(a, 2), F.frobenius(b, 2)));
        }
    // norm a * a^4 lands in GF(4) = fixed field
    for (int a = 0; a < 16; ++a) {
        int nm = F.mul(a, F.frobenius(a, 2));
        CHECK(F.frobenius(nm, 2) == nm);
    }
}

TEST_CASE("bad parameters") {
    CHECK_THROWS(Field(1, 1));
    CHECK_THROWS(Field(2, 0));
}
