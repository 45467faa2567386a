#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "divcode/gf.hpp"

using divcode::gf::Elem;
using divcode::gf::Field;

TEST_CASE("default moduli for q = 4, 8, 9 are the published Conway polynomials") {
    CHECK(Field::make(2, 2).modulus() == std::vector<unsigned>{1, 1, 1});        // a^2+a+1
    CHECK(Field::make(2, 3).modulus() == std::vector<unsigned>{1, 1, 0, 1});     // a^3+a+1
    CHECK(Field::make(3, 2).modulus() == std::vector<unsigned>{2, 2, 1});        // a^2+2a+2
}

TEST_CASE("multiplication goldens") {
    const Field f4 = Field::make(2, 2);
    CHECK(f4.mul(2, 2) == 3);  // a * a = a + 1
    const Field f8 = Field::make(2, 3);
    CHECK(f8.mul(2, 4) == 3);  // a * a^2 = a + 1
    for (Elem x = 0; x < 8; ++x) CHECK(f8.mul(x, 1) == x);
}

TEST_CASE("field axioms hold exhaustively for small q") {
    for (auto [p, e] : {std::pair<unsigned, unsigned>{2, 1}, {3, 1}, {2, 2}, {5, 1},
                        {7, 1}, {2, 3}, {3, 2}, {2, 4}}) {
        const Field F = Field::make(p, e);
        const unsigned q = F.q();
        INFO("q = ", q);
        for (unsigned x = 0; x < q; ++x) {
            for (unsigned y = 0; y < q; ++y) {
                const Elem ex = static_cast<Elem>(x), ey = static_cast<Elem>(y);
                CHECK(F.add(ex, ey) == F.add(ey, ex));
                CHECK(F.mul(ex, ey) == F.mul(ey, ex));
                for (unsigned z = 0; z < q; ++z) {
                    const Elem ez = static_cast<Elem>(z);
                    REQUIRE(F.add(F.add(ex, ey), ez) == F.add(ex, F.add(ey, ez)));
                    REQUIRE(F.mul(F.mul(ex, ey), ez) == F.mul(ex, F.mul(ey, ez)));
                    REQUIRE(F.mul(ex, F.add(ey, ez)) == F.add(F.mul(ex, ey), F.mul(ex, ez)));
                }
            }
        }
        for (unsigned x = 1; x < q; ++x) {
            const Elem ex = static_cast<Elem>(x);
            CHECK(F.mul(ex, F.inv(ex)) == 1);
            CHECK(F.pow(ex, static_cast<long long>(q) - 1) == 1);
            CHECK(F.pow(ex, -1) == F.inv(ex));
            CHECK(F.add(ex, F.neg(ex)) == 0);
        }
        // Frobenius is additive
        for (unsigned x = 0; x < q; ++x)
            for (unsigned y = 0; y < q; ++y)
                CHECK(F.frobenius(F.add(static_cast<Elem>(x), static_cast<Elem>(y))) ==
                      F.add(F.frobenius(static_cast<Elem>(x)), F.frobenius(static_cast<Elem>(y))));
    }
}

TEST_CASE("digit serialization round-trips") {
    for (auto [p, e] : {std::pair<unsigned, unsigned>{2, 3}, {3, 2}, {2, 4}, {13, 1}}) {
        const Field F = Field::make(p, e, p == 13 ? std::vector<unsigned>{1, 1}
                                                  : *divcode::gf::conway_polynomial(p, e));
        for (unsigned x = 0; x < F.q(); ++x)
            CHECK(F.parse_digit(F.digit(static_cast<Elem>(x))) == x);
    }
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(Field::make(4, 1), std::invalid_argument);                       // p not prime
    CHECK_THROWS_AS(Field::make(2, 2, {1, 0, 1}), std::invalid_argument);            // (x+1)^2
    CHECK_THROWS_AS(Field::make(2, 3, {1, 1, 1}), std::invalid_argument);            // wrong degree
    CHECK_THROWS_AS(Field::make(11, 2), std::invalid_argument);                      // not in table
    CHECK_THROWS_AS(Field::make(2, 2).inv(0), std::domain_error);
    CHECK_THROWS_AS(Field::make(2, 2).add(4, 0), std::invalid_argument);             // out of range
    CHECK_NOTHROW(Field::make(11, 1, {1, 1}));  // explicit modulus overrides the table
}

TEST_CASE("irreducibility testing") {
    using divcode::gf::is_irreducible;
    CHECK(is_irreducible({1, 1, 1}, 2));
    CHECK(!is_irreducible({1, 0, 1}, 2));        // x^2 + 1 = (x+1)^2 over GF(2)
    CHECK(is_irreducible({1, 1, 0, 1}, 2));
    CHECK(!is_irreducible({1, 1, 1, 1}, 2));     // divisible by x+1
    CHECK(is_irreducible({2, 2, 1}, 3));
    CHECK(!is_irreducible({2, 0, 1}, 3));        // x^2 + 2 = (x+1)(x+2) over GF(3)
}

// Every built-in table entry must be primitive and compatible with the table
// entries of its subfields (the defining property of the Conway tower, up to
// the minimality convention).
TEST_CASE("built-in modulus table is primitive and subfield-compatible") {
    const std::vector<std::pair<unsigned, unsigned>> entries = {
        {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 7}, {2, 8}, {2, 9}, {2, 10},
        {3, 1}, {3, 2}, {3, 3}, {3, 4}, {3, 5}, {3, 6},
        {5, 1}, {5, 2}, {5, 3}, {5, 4},
        {7, 1}, {7, 2}, {7, 3},
    };
    for (auto [p, e] : entries) {
        INFO("p = ", p, ", e = ", e);
        const auto cw = divcode::gf::conway_polynomial(p, e);
        REQUIRE(cw.has_value());
        const Field F = Field::make(p, e);
        const unsigned q = F.q();

        // alpha, the residue class of x, must generate the multiplicative group
        const Elem alpha = e == 1 ? static_cast<Elem>((p - (*cw)[0] % p) % p)
                                  : static_cast<Elem>(p);
        unsigned order = 1;
        Elem acc = alpha;
        while (acc != 1) {
            acc = F.mul(acc, alpha);
            ++order;
            REQUIRE(order <= q);
        }
        CHECK(order == q - 1);

        // norm compatibility with every table subfield
        for (unsigned m = 1; m < e; ++m) {
            if (e % m != 0) continue;
            const auto sub = divcode::gf::conway_polynomial(p, m);
            REQUIRE(sub.has_value());
            unsigned long long pm = 1;
            for (unsigned i = 0; i < m; ++i) pm *= p;
            const Elem beta = F.pow(alpha, static_cast<long long>((q - 1) / (pm - 1)));
            // evaluate the subfield polynomial at beta (prime coefficients)
            Elem val = 0;
            for (std::size_t i = sub->size(); i-- > 0;)
                val = F.add(F.mul(val, beta), static_cast<Elem>((*sub)[i]));
            CHECK(val == 0);
        }
    }
}
