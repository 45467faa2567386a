#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "divcode/codes.hpp"
#include "divcode/geometry.hpp"

using namespace divcode;
using codes::LinearCode;
using geometry::Point;
using geometry::PointMultiset;
using gf::Elem;
using gf::Field;

namespace {

geometry::Subspace coordinate_subspace(const Field& F, unsigned v, unsigned dim) {
    std::vector<Point> basis;
    for (unsigned i = 0; i < dim; ++i) {
        Point e(v, 0);
        e[i] = 1;
        basis.push_back(std::move(e));
    }
    return geometry::make_subspace(F, v, std::move(basis));
}

}  // namespace

TEST_CASE("code from a line of PG(1,4)") {
    const Field F = Field::make(2, 2);
    const auto chiL = geometry::chi_subspace(F, coordinate_subspace(F, 2, 2));
    const auto C = codes::code_from_multiset(chiL);
    CHECK(C.k == 2);
    CHECK(C.n == 5);
    CHECK(codes::weight_divisibility(C) == 4);  // every nonzero weight is exactly 4
}

TEST_CASE("repeated columns") {
    const Field F = Field::make(2, 3);
    PointMultiset M(F, 3);
    M.add({1, 2, 3}, 3);
    const auto C = codes::code_from_multiset(M);
    CHECK(C.n == 3);
    for (unsigned j = 1; j < 3; ++j)
        for (unsigned r = 0; r < 3; ++r) CHECK(C.rows[r][j] == C.rows[r][0]);
    CHECK_FALSE(codes::is_projective(C));
    CHECK(codes::multiset_from_code(C) == M);
}

TEST_CASE("multiset round-trip and zero columns") {
    const Field F = Field::make(2, 3);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<unsigned> coord(0, 7);
    for (int it = 0; it < 25; ++it) {
        PointMultiset M(F, 3);
        for (int b = 0; b < 6; ++b) {
            Point p{static_cast<Elem>(coord(rng)), static_cast<Elem>(coord(rng)),
                    static_cast<Elem>(coord(rng))};
            if (p == Point{0, 0, 0}) continue;
            M.add(p, 1 + it % 3);
        }
        if (M.empty()) continue;
        REQUIRE(codes::multiset_from_code(codes::code_from_multiset(M)) == M);
    }

    // zero columns drop from the effective length
    auto C = codes::parse_matrix("10\n00\n", Field::make(2, 2));
    CHECK(C.n == 2);
    CHECK(codes::effective_length(C) == 1);
    CHECK(codes::multiset_from_code(C).cardinality() == 1);
}

TEST_CASE("matrix text round-trip") {
    const Field f8 = Field::make(2, 3);
    const char* text =
        "111111111100\n"
        "001234567010\n"
        "136547277001\n";
    const auto C = codes::parse_matrix(text, f8);
    CHECK(C.k == 3);
    CHECK(C.n == 12);
    CHECK(codes::format_matrix(C) == text);

    // tolerant parsing: parentheses and spaces
    const auto C2 = codes::parse_matrix("(1 1 1)\n(0 1 2)\n", Field::make(2, 2));
    CHECK(C2.k == 2);
    CHECK(C2.n == 3);

    // header-driven parsing
    const auto C3 = codes::parse_matrix("q=9 k=1 n=3\n012\n");
    CHECK(C3.field.q() == 9);
    CHECK(codes::format_matrix(C3, true) == "q=9 k=1 n=3\n012\n");

    CHECK_THROWS_AS(codes::parse_matrix("11\n1\n", f8), std::invalid_argument);   // ragged
    CHECK_THROWS_AS(codes::parse_matrix("19\n11\n", f8), std::invalid_argument);  // digit >= q
    CHECK_THROWS_AS(codes::parse_matrix("11\n11\n"), std::invalid_argument);      // no header
    const auto one = codes::parse_matrix("1", Field::make(2, 2));
    CHECK(one.k == 1);
    CHECK(one.n == 1);
}

TEST_CASE("the seven base example matrices verify") {
    const auto& all = codes::base_examples();
    REQUIRE(all.size() == 7);
    const std::vector<unsigned> expected_n = {12, 13, 14, 15, 17, 27, 31};
    for (std::size_t i = 0; i < all.size(); ++i) {
        const auto& C = all[i];
        INFO("example ", i, " (n = ", C.n, ")");
        CHECK(C.n == expected_n[i]);
        CHECK(C.k == 3);
        CHECK(codes::effective_length(C) == C.n);
        CHECK(codes::is_projective(C));
        CHECK(codes::is_spanning(C));
        const auto g = codes::weight_divisibility(C);
        if (C.field.q() == 8)
            CHECK(g % 2 == 0);
        else
            CHECK(g % 3 == 0);
    }
    // the GF(9) examples are over GF(9)
    CHECK(all[5].field.q() == 9);
    CHECK(all[6].field.q() == 9);
}

TEST_CASE("derived construction codes verify") {
    const Field f8 = Field::make(2, 3);
    // line -> [9, k] code with all weights multiples of 8
    const auto line = geometry::chi_subspace(f8, coordinate_subspace(f8, 3, 2));
    CHECK(codes::weight_divisibility(codes::code_from_multiset(line)) % 8 == 0);
    // hyperoval -> [10,3]_8 projective 2-divisible
    const auto oval = codes::code_from_multiset(geometry::hyperoval(f8));
    CHECK(oval.n == 10);
    CHECK(codes::is_projective(oval));
    CHECK(codes::weight_divisibility(oval) % 2 == 0);
    // two-lines constructions
    const auto t16 = codes::code_from_multiset(geometry::two_lines_construction(f8, 1));
    CHECK(t16.n == 16);
    CHECK(codes::weight_divisibility(t16) % 2 == 0);
    const auto t32 = codes::code_from_multiset(geometry::two_lines_construction(f8, 2));
    CHECK(t32.n == 32);
    CHECK(codes::weight_divisibility(t32) % 4 == 0);
}

TEST_CASE("weight divisibility is invariant under column permutation and scaling") {
    const Field F = Field::make(3, 2);
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<unsigned> coord(0, 8);
    for (int it = 0; it < 10; ++it) {
        LinearCode C{F, 3, 8, {}};
        C.rows.assign(3, std::vector<Elem>(8, 0));
        for (auto& row : C.rows)
            for (auto& x : row) x = static_cast<Elem>(coord(rng));
        const auto base = codes::weight_divisibility(C);

        LinearCode P = C;
        std::vector<unsigned> perm(P.n);
        std::iota(perm.begin(), perm.end(), 0u);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (unsigned r = 0; r < P.k; ++r)
            for (unsigned j = 0; j < P.n; ++j) P.rows[r][j] = C.rows[r][perm[j]];
        CHECK(codes::weight_divisibility(P) == base);

        LinearCode S = C;
        for (unsigned j = 0; j < S.n; ++j) {
            const Elem s = static_cast<Elem>(1 + coord(rng) % 8);
            for (unsigned r = 0; r < S.k; ++r) S.rows[r][j] = F.mul(S.rows[r][j], s);
        }
        CHECK(codes::weight_divisibility(S) == base);
    }
}

TEST_CASE("divisibility equivalence across the correspondence") {
    const Field F = Field::make(2, 2);
    const auto params = expansion::DivParams::make(4, 2, 1);
    for (long long n : {8, 10, 21, 44, 50}) {
        const auto M = geometry::construct_from_expansion(F, n, params);
        const auto g = codes::weight_divisibility(codes::code_from_multiset(M));
        CHECK(g % 8 == 0);
        CHECK(geometry::is_divisible(M, 8));
    }
}

TEST_CASE("enumeration guard") {
    const Field F = Field::make(2, 3);
    LinearCode C{F, 11, 4, {}};
    C.rows.assign(11, std::vector<Elem>(4, 1));
    CHECK_THROWS_AS(codes::weight_divisibility(C), std::invalid_argument);  // 8^11 > 2^28
}
