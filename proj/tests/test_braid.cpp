#include "doctest.h"

#include "braidfac/braid.hpp"
#include "braidfac/error.hpp"
#include "braidfac/random.hpp"
#include "oracles.hpp"

using namespace braidfac;

static Word W(const char* s, int rank) { return parse_word(s, rank); }
static Braid B(const char* s) { return parse_braid(s); }

TEST_CASE("artin action on generators") {
    CHECK(artin_apply(B("strands=2; a1"), W("x1", 2)) == W("x1 x2 x1^-1", 2));
    CHECK(artin_apply(B("strands=2; a1"), W("x2", 2)) == W("x1", 2));
    CHECK(artin_apply(B("strands=3; a1"), W("x3", 3)) == W("x3", 3));
    CHECK(artin_apply(B("strands=2; a1^-1"), W("x1", 2)) == W("x2", 2));
    CHECK(artin_apply(B("strands=2; a1^-1"), W("x2", 2)) == W("x2^-1 x1 x2", 2));
    CHECK(artin_apply(Braid(3), W("x1 x3^-1", 3)) == W("x1 x3^-1", 3));
    CHECK_THROWS_AS(artin_apply(B("strands=3; a1"), W("x1", 2)), RankError);
}

TEST_CASE("artin action matches the substitution oracle") {
    Rng rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        int m = 2 + static_cast<int>(uniform(rng, 4));
        Braid b = random_braid(rng, m, static_cast<int>(uniform(rng, 10)));
        Word w = random_word(rng, m, 6);
        CHECK(artin_apply(b, w).letters() == oracle::naive_apply(b.word(), w.letters()));
    }
}

TEST_CASE("canonical forms") {
    CHECK(canonical_form(Braid(3)).images ==
          std::vector<Word>{W("x1", 3), W("x2", 3), W("x3", 3)});
    CHECK(braid_equal(B("strands=3; a1 a2 a1"), B("strands=3; a2 a1 a2")));
    ArtinForm f = canonical_form(B("strands=2; a1 a1"));
    CHECK(f.images[0] == W("x1 x2 x1 x2^-1 x1^-1", 2));
    CHECK(f.images[1] == W("x1 x2 x1^-1", 2));
    Word l = W("x1 x2", 2);
    CHECK(f.images[0] == compose({l, W("x1", 2), invert(l)}));
}

TEST_CASE("equality and hashing") {
    CHECK(braid_equal(B("strands=4; a1 a3"), B("strands=4; a3 a1")));
    CHECK_FALSE(braid_equal(B("strands=3; a1"), B("strands=3; a2")));
    CHECK(braid_equal(full_twist(3), B("strands=3; a1 a2 a1 a2 a1 a2")));
    CHECK(braid_hash(B("strands=4; a1 a3")) == braid_hash(B("strands=4; a3 a1")));
    CHECK_THROWS_AS(braid_equal(Braid(2), Braid(3)), RankError);
}

TEST_CASE("permutation") {
    CHECK(permutation(B("strands=2; a1")) == std::vector<int>{2, 1});
    for (int m = 1; m <= 6; ++m) {
        std::vector<int> id(m);
        for (int i = 0; i < m; ++i) id[i] = i + 1;
        CHECK(permutation(full_twist(m)) == id);
    }
    CHECK(permutation(garside(3, 0, 3)) == std::vector<int>{3, 2, 1});
}

TEST_CASE("garside, full twist, shift, embed") {
    CHECK(garside(2, 0, 2).word() == std::vector<Letter>{1});
    CHECK(garside(3, 0, 3).word() == std::vector<Letter>{1, 2, 1});
    CHECK(garside(2, 2, 4).word() == std::vector<Letter>{3});
    CHECK(garside(1, 0, 3).empty());
    CHECK_THROWS_AS(garside(3, 1, 3), RankError);
    CHECK(full_twist(2).word() == std::vector<Letter>{1, 1});
    CHECK(full_twist(1).empty());
    CHECK(artin_apply(full_twist(3), W("x2", 3)) == W("x1 x2 x3 x2 x3^-1 x2^-1 x1^-1", 3));
    CHECK(to_string(shift_braid(B("strands=2; a1"))) == "strands=4; a3");
    CHECK(to_string(embed(B("strands=2; a1"), 5)) == "strands=5; a1");
    CHECK(shift_braid(Braid(3)).empty());
    CHECK(shift_braid(Braid(3)).strands() == 6);
}

TEST_CASE("transported forms agree with recomputed ones") {
    Rng rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        int m = 2 + static_cast<int>(uniform(rng, 3));
        Braid b = random_braid(rng, m, 10);
        (void)b.form();
        Braid s = shift_braid(b);
        Braid e = embed(b, m + 3);
        CHECK(s.form() == form_of_word(s.strands(), s.word()));
        CHECK(e.form() == form_of_word(e.strands(), e.word()));
        Braid c = random_braid(rng, m, 10);
        (void)c.form();
        Braid prod = b * c;
        CHECK(prod.form() == form_of_word(m, prod.word()));
    }
}

TEST_CASE("boundary, homomorphism, permutation consistency") {
    Rng rng(13);
    for (int trial = 0; trial < 500; ++trial) {
        int m = 1 + static_cast<int>(uniform(rng, 6));
        Braid b = random_braid(rng, m, static_cast<int>(uniform(rng, 21)));
        CHECK(artin_apply(b, Word::boundary(m)) == Word::boundary(m));
        Braid c = random_braid(rng, m, static_cast<int>(uniform(rng, 21)));
        CHECK(canonical_form(b * c) == compose_forms(b.form(), c.form()));
        auto p = permutation(b);
        for (int i = 1; i <= m; ++i) {
            auto j = is_conjugate_to_generator(b.form().images[i - 1]);
            REQUIRE(j);
            CHECK(*j == p[i - 1]);
        }
        auto pc = permutation(c), pbc = permutation(b * c);
        for (int i = 0; i < m; ++i) CHECK(pbc[i] == p[pc[i] - 1]);
    }
}

TEST_CASE("centrality of the full twist") {
    Rng rng(17);
    for (int m = 1; m <= 5; ++m)
        for (int trial = 0; trial < 100; ++trial) {
            Braid b = random_braid(rng, m, 15);
            CHECK(braid_equal(full_twist(m) * b, b * full_twist(m)));
        }
}

TEST_CASE("exponent sum survives random relation insertions") {
    Rng rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        int m = 3 + static_cast<int>(uniform(rng, 3));
        Braid b = random_braid(rng, m, 12);
        std::vector<Letter> w = b.word();
        for (int step = 0; step < 5; ++step) {
            std::size_t at = uniform(rng, w.size() + 1);
            int i = 1 + static_cast<int>(uniform(rng, m - 2));
            std::vector<Letter> ins;
            switch (uniform(rng, 3)) {
                case 0: ins = {i, i + 1, i, -(i + 1), -i, -(i + 1)}; break;
                case 1: ins = {i, -i}; break;
                default:
                    if (m >= 4 && i + 2 <= m - 1) ins = {i, i + 2, -i, -(i + 2)};
                    else ins = {-i, i};
            }
            w.insert(w.begin() + static_cast<long>(at), ins.begin(), ins.end());
        }
        Braid b2(m, w);
        CHECK(braid_equal(b, b2));
        CHECK(exponent_sum(b) == exponent_sum(b2));
    }
}

TEST_CASE("text round trip") {
    CHECK(to_string(B("strands=4; a1 a3^-1")) == "strands=4; a1 a3^-1");
    CHECK(to_string(B("strands=3;")) == "strands=3;");
    CHECK_THROWS_AS(B("strands=3; a3"), ParseError);
    CHECK_THROWS_AS(B("a1 a2"), ParseError);
    CHECK_THROWS_AS(B("strands=x; a1"), ParseError);
}
