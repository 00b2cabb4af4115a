#include <doctest.h>

#include "hecke/errors.hpp"
#include "hecke/field.hpp"

#include <utility>
#include <vector>

using namespace hecke;

namespace {

// Oracle: x^2 + c1 x + c0 over F_p is irreducible iff it has no root.
bool quadratic_has_root(std::uint32_t c0, std::uint32_t c1, std::uint32_t p) {
    for (std::uint32_t x = 0; x < p; ++x)
        if ((x * x + c1 * x + c0) % p == 0) return true;
    return false;
}

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kSmallFields{{2, 1}, {3, 1}, {5, 1}, {7, 1},
                                                                       {2, 2}, {3, 2}, {2, 3}};

} // namespace

TEST_SUITE("field") {

TEST_CASE("prime field has modulus x") {
    Field F(2, 1);
    CHECK(F.modulus() == std::vector<std::uint32_t>{0, 1});
    CHECK(F.q() == 2);
}

TEST_CASE("quadratic moduli are the first irreducible in low-first order") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        std::vector<std::uint32_t> expected;
        // enumerate (c0, c1) with c0 most significant
        for (std::uint32_t c0 = 0; c0 < p && expected.empty(); ++c0)
            for (std::uint32_t c1 = 0; c1 < p; ++c1)
                if (!quadratic_has_root(c0, c1, p)) {
                    expected = {c0, c1, 1};
                    break;
                }
        CHECK(Field(p, 2).modulus() == expected);
    }
    CHECK(Field(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});
    CHECK(Field(2, 2).modulus() == std::vector<std::uint32_t>{1, 1, 1});
}

TEST_CASE("modulus selection is deterministic") {
    CHECK(Field(3, 3).modulus() == Field(3, 3).modulus());
    CHECK(is_irreducible_mod_p(Field(2, 4).modulus(), 2));
}

TEST_CASE("x times x is -1 in F_9") {
    Field F(3, 2);
    const FqElem x = F.generator();
    CHECK(x.value == 3);
    CHECK(F.mul(x, x) == F.from_int(-1));
    CHECK(F.mul(x, x).value == 2);
}

TEST_CASE("Frobenius in F_4 sends x to x+1") {
    Field F(2, 2);
    const FqElem x = F.generator();
    CHECK(F.frobenius(x, 1) == F.add(x, F.one()));
    CHECK(F.frobenius(x, 0) == x);
}

TEST_CASE("field axioms by enumeration for q <= 9") {
    for (auto [p, d] : kSmallFields) {
        Field F(p, d);
        if (F.q() > 9) continue;
        CAPTURE(F.q());
        const auto E = F.elements();
        for (FqElem a : E) {
            CHECK(F.add(a, F.neg(a)) == F.zero());
            if (a != F.zero()) {
                CHECK(F.mul(a, F.inv(a)) == F.one());
                CHECK(F.pow(a, F.q() - 1) == F.one());
            }
            CHECK(F.frobenius(a, d) == a);
            for (FqElem b : E) {
                CHECK(F.add(a, b) == F.add(b, a));
                CHECK(F.mul(a, b) == F.mul(b, a));
                // Frobenius is additive and multiplicative
                CHECK(F.frobenius(F.add(a, b), 1) == F.add(F.frobenius(a, 1), F.frobenius(b, 1)));
                CHECK(F.frobenius(F.mul(a, b), 1) == F.mul(F.frobenius(a, 1), F.frobenius(b, 1)));
                for (FqElem c : E) {
                    CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
                    CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
                    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("Frobenius fixes exactly the prime field") {
    for (auto [p, d] : kSmallFields) {
        Field F(p, d);
        std::uint32_t fixed = 0;
        for (FqElem a : F.elements())
            if (F.frobenius(a, 1) == a) ++fixed;
        CHECK(fixed == p);
    }
}

TEST_CASE("inverse of one and of zero") {
    Field F(5, 1);
    CHECK(F.inv(F.one()) == F.one());
    CHECK_THROWS_AS(F.inv(F.zero()), DivisionByZero);
}

TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(Field(4, 1), InvalidParameter);
    CHECK_THROWS_AS(Field(1, 1), InvalidParameter);
    CHECK_THROWS_AS(Field(3, 0), InvalidParameter);
    CHECK_THROWS_AS(Field(2, 11), InvalidParameter);
}

TEST_CASE("element serialization is base-p digits low first") {
    Field F(3, 2);
    const FqElem e = F.from_coeffs({2, 1});
    CHECK(e.value == 2 + 1 * 3);
    CHECK(F.coeffs(e) == std::vector<std::uint32_t>{2, 1});
}

}
