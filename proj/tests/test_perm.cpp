#include "doctest.h"

#include "braidfac/error.hpp"
#include "braidfac/perm.hpp"
#include "oracles.hpp"

using namespace braidfac;

TEST_CASE("cycle notation") {
    Perm p = parse_perm("(1 2)(3 4)", 4);
    CHECK(p(1) == 2);
    CHECK(p(3) == 4);
    CHECK(to_string(p) == "(1 2)(3 4)");
    CHECK(to_string(Perm(3)) == "()");
    CHECK(parse_perm("()", 3).is_identity());
    CHECK(to_string(parse_perm("(3 1 2)", 3)) == "(1 2 3)");
    CHECK(p.cycle_type() == std::vector<int>{2, 2});
    CHECK(p.order() == 2);
    CHECK(parse_perm("(1 2 3)(4 5)", 5).order() == 6);
    CHECK_THROWS_AS(parse_perm("(1 5)", 4), ParseError);
    CHECK_THROWS_AS(parse_perm("(1 2)(2 3)", 4), ParseError);
    CHECK_THROWS_AS(parse_perm("1 2", 4), ParseError);
}

TEST_CASE("products follow composition") {
    Perm a = Perm::transposition(1, 2, 3), b = Perm::transposition(2, 3, 3);
    // a after b sends 3 -> 2 -> 1
    CHECK((a * b)(3) == 1);
    CHECK((a * b).inverse() == b * a);
    CHECK(a.is_transposition());
    CHECK_FALSE((a * b).is_transposition());
}

TEST_CASE("symmetric tables agree with direct products") {
    for (int n = 1; n <= 5; ++n) {
        const SymmetricTable& G = symmetric_table(n);
        auto all = oracle::all_perms(n);
        CHECK(G.size() == static_cast<int>(all.size()));
        CHECK(G.elem(G.identity()).is_identity());
        int tr = 0;
        for (int a = 0; a < G.size(); ++a) {
            tr += G.is_transposition(a);
            CHECK(G.mul(a, G.inv(a)) == G.identity());
            for (int b = 0; b < G.size(); b += 7) {
                oracle::Perm pa = G.elem(a).images(), pb = G.elem(b).images();
                CHECK(G.elem(G.mul(a, b)).images() == oracle::perm_mul(pa, pb));
            }
        }
        CHECK(tr == n * (n - 1) / 2);
    }
    CHECK_THROWS_AS(symmetric_table(6), PreconditionError);
}
