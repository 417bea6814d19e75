#include "doctest.h"

#include <omp.h>

#include "braidfac/cgroups.hpp"
#include "braidfac/error.hpp"
#include "braidfac/random.hpp"
#include "oracles.hpp"

using namespace braidfac;

static Word W(const char* s, int rank) { return parse_word(s, rank); }
static CPresentation Pres(const char* s) { return parse_presentation(s); }

static std::vector<std::vector<int>> raw_relators(const CPresentation& p) {
    std::vector<std::vector<int>> out;
    for (const Word& w : p.relators()) out.emplace_back(w.letters().begin(), w.letters().end());
    return out;
}

static std::uint64_t brute(const CPresentation& p, int n, bool tr = false) {
    return oracle::brute_hom_count(p.rank, raw_relators(p), n, tr);
}

static Word exact_word(Rng& rng, int rank, int n) {
    while (true) {
        Word w = random_word(rng, rank, n);
        if (static_cast<int>(w.length()) == n) return w;
    }
}

static CPresentation random_presentation(Rng& rng, int rank, int rels, int len) {
    CPresentation p(rank);
    for (int r = 0; r < rels; ++r)
        p.add(CRelation::raw(random_word(rng, rank, 1 + static_cast<int>(uniform(rng, len)))));
    return p;
}

static Factorization standard_twist(int m) {
    Factorization s(m);
    for (int r = 0; r < m; ++r)
        for (int k = 1; k < m; ++k) s.factors.push_back(Factor::tagged(generator_conjugator(k, m), 1));
    return s;
}

TEST_CASE("relations and the presentation format") {
    CRelation c = CRelation::conj(1, 2, W("x2 x1", 2));
    CHECK(c.relator(2) == W("x1^-1 x1^-1 x2^-1 x2 x2 x1", 2));
    CHECK(c.relator(2) == W("x1^-1 x1^-1 x2 x1", 2));
    CHECK_THROWS_AS(c.relator(1), RankError);
    CHECK_THROWS_AS(CPresentation(1, {c}), RankError);

    const char* text = "rank=3;  # three generators\nrel: x1 x2 x1^-1\n\nconj: i=1; j=3; w=x2^-1 x1\nconj: i=2; j=2; w=\n";
    CPresentation p = Pres(text);
    CHECK(p.rank == 3);
    REQUIRE(p.relations.size() == 3);
    CHECK(p.relations[1] == CRelation::conj(1, 3, W("x2^-1 x1", 3)));
    CHECK(to_string(p) == "rank=3;\nrel: x1 x2 x1^-1\nconj: i=1; j=3; w=x2^-1 x1\nconj: i=2; j=2; w=\n");
    CHECK(Pres(to_string(p).c_str()).relations == p.relations);
    CHECK(to_json(p).dump() ==
          R"({"rank":3,"relations":[{"kind":"raw","word":"x1 x2 x1^-1"},{"kind":"conj","i":1,"j":3,"w":"x2^-1 x1"},{"kind":"conj","i":2,"j":2,"w":""}]})");

    auto err = [](const char* t) -> std::pair<int, int> {
        try {
            parse_presentation(t);
        } catch (const ParseError& e) {
            return {e.line, e.column};
        }
        return {0, 0};
    };
    CHECK(err("rank=2;\nrel: x3\n") == std::pair{2, 6});
    CHECK(err("rank=2\n") == std::pair{1, 7});
    CHECK(err("rank=2;\nconj: i=3; j=1; w=x1\n") == std::pair{2, 9});
    CHECK(err("rank=2;\nconj: i=1 j=1\n").first == 2);
    CHECK(err("rank=2;\nrelation: x1\n") == std::pair{2, 1});
    CHECK(err("") == std::pair{1, 1});
}

TEST_CASE("presentations from factorizations") {
    Factorization d(2, {Factor::raw(full_twist(2))});
    CPresentation g = presentation_from_factorization(d);
    REQUIRE(g.relations.size() == 2);
    CHECK(g.relations[0].u == full_twist_relator(1, 2));
    CHECK(g.relations[1].u == full_twist_relator(2, 2));
    CHECK(is_full_twist_class(g));
    CHECK(hom_count(g, 2) == 4);
    CHECK(hom_count(g, 3) == 18);
    CHECK(brute(g, 2) == 4);
    CHECK(brute(g, 3) == 18);

    Factorization a(2, {Factor::raw(Braid::gen(1, 2))});
    CPresentation pa = presentation_from_factorization(a);
    REQUIRE(pa.relations.size() == 2);
    CHECK(pa.relations[0].u == W("x2 x1^-1", 2));
    CHECK(pa.relations[1].u == W("x2^-1 x1", 2));
    CHECK(hom_count(pa, 3) == hom_count(CPresentation(2, {lemma_ak_reduce(Braid(2), 1, 0)}), 3));
    CHECK(hom_count(pa, 3) == 6);

    CHECK(presentation_from_factorization(Factorization(3)).relations.empty());
    CHECK(presentation_from_factorization(Factorization(3)).rank == 3);
    // repeated factors give each relation once
    Factorization twice(2, {Factor::raw(Braid::gen(1, 2)), Factor::raw(Braid::gen(1, 2))});
    CHECK(presentation_from_factorization(twice).relations.size() == 2);

    CPresentation q = projective_quotient(g);
    CHECK(q.rank == 2);
    CHECK(hom_count(q, 2) == 2);
    CHECK(brute(q, 2) == 2);
    CHECK(hom_count(projective_quotient(q), 3) == hom_count(q, 3));
    CHECK(projective_quotient(CPresentation(0)).relations.size() == 1);

    CHECK(is_full_twist_class(append_full_twist_relations(CPresentation(3))));
    CHECK_FALSE(is_full_twist_class(CPresentation(2)));
    Rng rng(11);
    for (int t = 0; t < 5; ++t) {
        Factorization s = standard_twist(3);
        for (int k = 0; k < 6; ++k)
            s = hurwitz_move(s, 1 + static_cast<int>(uniform(rng, s.size() - 1)),
                             uniform(rng, 2) ? Direction::Fwd : Direction::Bwd);
        CPresentation ps = append_full_twist_relations(presentation_from_factorization(s));
        CHECK(is_full_twist_class(ps));
        CHECK(hom_count(ps, 3) == hom_count(presentation_from_factorization(s), 3));
    }
}

TEST_CASE("hom counts match brute force") {
    CHECK(hom_count(CPresentation(2), 3) == 36);
    CHECK(hom_count(CPresentation(0), 4) == 1);
    CHECK(hom_count(CPresentation(2, {CRelation::raw(W("x1", 2))}), 3) == 6);
    CHECK(hom_count(CPresentation(1, {CRelation::raw(W("x1 x1", 1))}), 3) == 4);
    CHECK(hom_count(CPresentation(1, {CRelation::raw(W("x1 x1", 1))}), 3, true) == 3);
    CHECK(hom_count(CPresentation(2), 3, true) == 9);
    Rng rng(12);
    for (int t = 0; t < 60; ++t) {
        int rank = 1 + static_cast<int>(uniform(rng, 3));
        int n = 2 + static_cast<int>(uniform(rng, 2));
        bool tr = uniform(rng, 2);
        CPresentation p = random_presentation(rng, rank, static_cast<int>(uniform(rng, 4)), 6);
        std::uint64_t want = brute(p, n, tr);
        CHECK(hom_count(p, n, tr) == want);
        CHECK(hom_count_serial(p, n, tr) == want);
    }
}

TEST_CASE("hom count does not depend on the thread count") {
    Rng rng(13);
    int saved = omp_get_max_threads();
    for (int t = 0; t < 10; ++t) {
        CPresentation p = random_presentation(rng, 4, 3, 8);
        std::uint64_t ref = hom_count_serial(p, 4);
        for (int th : {1, 2, 3, 8}) {
            omp_set_num_threads(th);
            CHECK(hom_count(p, 4) == ref);
        }
    }
    omp_set_num_threads(saved);
}

TEST_CASE("hom count budget") {
    CPresentation p(6, {CRelation::raw(W("x1 x2 x3 x4 x5 x6", 6))});
    CHECK_THROWS_AS(hom_count(p, 4, false, 1000), BudgetError);
    CHECK_THROWS_AS(hom_count_serial(p, 4, false, 1000), BudgetError);
    CHECK(hom_count(CPresentation(3, {CRelation::raw(W("x1 x2 x3", 3))}), 3) == 36);
    CHECK_THROWS_AS(hom_count(p, 6), PreconditionError);
}

TEST_CASE("doubling relation sets") {
    CPresentation e = double_relations(CPresentation(1), DoublingMode::Full);
    CHECK(e.rank == 2);
    REQUIRE(e.relations.size() == 1);
    CHECK(e.relations[0].u == W("x1^-1 x2", 2));

    CPresentation w(2, {CRelation::raw(W("x1 x2 x1^-1 x2^-1", 2))});
    CPresentation d = double_relations(w, DoublingMode::Full);
    CHECK(d.rank == 4);
    REQUIRE(d.relations.size() == 4);
    CHECK(d.relations[0].u == W("x1 x2 x1^-1 x2^-1", 4));
    CHECK(d.relations[1].u == W("x3 x4 x3^-1 x4^-1", 4));
    CHECK(d.relations[2].u == W("x1^-1 x3", 4));
    CHECK(d.relations[3].u == W("x2^-1 x4", 4));
    CHECK(hom_count(w, 3) == 18);
    CHECK(hom_count(d, 3) == 18);
    CHECK(brute(d, 3) == 18);
    CPresentation rd = double_relations(w, DoublingMode::Reduced);
    CHECK(rd.relations.size() == 3);

    CPresentation c(2, {CRelation::conj(1, 2, W("x1", 2))});
    CHECK(double_relations(c, DoublingMode::Reduced).relations[0] == CRelation::conj(3, 4, W("x3", 4)));
    CHECK(iterate_double_relations(c, 2, DoublingMode::Full).rank == 8);

    // 20 random relation sets
    Rng rng(14);
    for (int t = 0; t < 20; ++t) {
        int m = 1 + static_cast<int>(uniform(rng, 3));
        CPresentation p = random_presentation(rng, m, 1 + static_cast<int>(uniform(rng, 3)), 6);
        for (int n = 2; n <= 4; ++n) {
            std::uint64_t base = hom_count(p, n);
            CHECK(hom_count(double_relations(p, DoublingMode::Full), n) == base);
            CHECK(hom_count(double_relations(p, DoublingMode::Reduced), n) == base);
            if (n <= 3) {
                CHECK(brute(p, n) == base);
                CHECK(hom_count(iterate_double_relations(p, 2, DoublingMode::Full), n) == base);
                CHECK(hom_count(iterate_double_relations(p, 2, DoublingMode::Reduced), n) == base);
            }
        }
    }
}

TEST_CASE("rewriting to conjugation chains") {
    auto rs = rewrite_to_c_relations(1, 2, W("x2 x1", 2));
    REQUIRE(rs.size() == 2);
    CHECK(rs[0] == CRelation::conj(3, 2, W("x2", 3)));
    CHECK(rs[1] == CRelation::conj(1, 3, W("x1", 3)));
    CHECK_THROWS_AS(rewrite_to_c_relations(1, 2, W("x2", 2)), PreconditionError);
    CHECK(rewrite_to_c_relations(2, 1, W("x1^-1 x1^-1", 2)).size() == 2);

    Rng rng(15);
    for (int t = 0; t < 20; ++t) {
        int m = 1 + static_cast<int>(uniform(rng, 3));
        int n = 2 + static_cast<int>(uniform(rng, 3));
        if (m == 1) n = 2;  // reduced words in one letter have one sign
        Word w = exact_word(rng, m, n);
        int i1 = 1 + static_cast<int>(uniform(rng, m)), i2 = 1 + static_cast<int>(uniform(rng, m));
        auto chain = rewrite_to_c_relations(i1, i2, w);
        CHECK(chain.size() == static_cast<std::size_t>(n));
        CPresentation orig(m, {CRelation::conj(i1, i2, w)});
        CPresentation re(m + n - 1, chain);
        CHECK(hom_count(re, 3) == hom_count(orig, 3));
        CHECK(hom_count(re, 3) == brute(orig, 3));
    }
}

TEST_CASE("single relation lemma") {
    CHECK(lemma_ak_reduce(Braid(2), 1, 0).u == W("x1^-1 x2", 2));
    CHECK(lemma_ak_reduce(Braid(2), 1, 1).u == commutator(W("x1", 2), W("x2", 2)));
    CHECK(lemma_ak_reduce(Braid(2), 1, -3).u == commutator(W("x1", 2), W("x2", 2)));
    Word y2 = W("x2 x3 x2^-1", 3);
    CHECK(lemma_ak_reduce(Braid::gen(2, 3), 1, 2).u ==
          compose({W("x1", 3), y2, W("x1", 3), invert(compose({y2, W("x1", 3), y2}))}));
    CHECK_THROWS_AS(lemma_ak_reduce(Braid(3), 3, 0), PreconditionError);
    CHECK_THROWS_AS(lemma_ak_reduce(Braid(3), 1, 3), PreconditionError);

    // pointwise equivalence over all maps to S_2 and S_3
    Rng rng(16);
    const int ks[] = {0, 1, 2, -3};
    for (int t = 0; t < 40; ++t) {
        int m = 2 + static_cast<int>(uniform(rng, 2));
        Braid g = random_braid(rng, m, static_cast<int>(uniform(rng, 4)));
        int j = 1 + static_cast<int>(uniform(rng, m - 1));
        int k = ks[uniform(rng, 4)];
        std::vector<int> bw;
        for (Letter l : g.word()) bw.push_back(l);
        for (int e = 0; e < std::abs(k + 1); ++e) bw.push_back(k + 1 > 0 ? j : -j);
        for (auto it = g.word().rbegin(); it != g.word().rend(); ++it) bw.push_back(-*it);
        std::vector<std::vector<int>> full;
        for (int i = 1; i <= m; ++i) {
            std::vector<int> r = {-i};
            auto img = oracle::naive_apply(bw, {i});
            r.insert(r.end(), img.begin(), img.end());
            full.push_back(oracle::naive_reduce(r));
        }
        Word single = lemma_ak_reduce(g, j, k).u;
        std::vector<int> sw(single.letters().begin(), single.letters().end());
        for (int n = 2; n <= 3; ++n) {
            auto perms = oracle::all_perms(n);
            oracle::Perm id = perms[0];
            std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
            std::vector<oracle::Perm> imgs(static_cast<std::size_t>(m));
            bool same = true;
            while (true) {
                for (int i = 0; i < m; ++i) imgs[i] = perms[idx[i]];
                bool a = true;
                for (const auto& r : full) a = a && oracle::eval(r, imgs, n) == id;
                bool b = oracle::eval(sw, imgs, n) == id;
                same = same && a == b;
                int pos = 0;
                while (pos < m && ++idx[pos] == perms.size()) idx[pos++] = 0;
                if (pos == m) break;
            }
            CHECK(same);
        }
    }
}

TEST_CASE("generator relations versus subgroup words") {
    Rng rng(17);
    for (int t = 0; t < 8; ++t) {
        Factorization s(3);
        int n = 1 + static_cast<int>(uniform(rng, 4));
        for (int k = 0; k < n; ++k)
            s.factors.push_back(Factor::tagged(random_braid(rng, 3, static_cast<int>(uniform(rng, 3))),
                                               1 + static_cast<int>(uniform(rng, 2))));
        CPresentation gen = presentation_from_factorization(s);
        CPresentation more = gen;
        for (int w = 0; w < 50; ++w) {
            Braid b(3);
            int len = 1 + static_cast<int>(uniform(rng, 4));
            for (int q = 0; q < len; ++q) {
                const Factor& f = s.factors[uniform(rng, s.size())];
                b = b * (uniform(rng, 2) ? f.value() : f.inverse_value());
            }
            for (int i = 1; i <= 3; ++i) {
                Word r = compose(invert(Word::gen(i, 3)), artin_apply(b, Word::gen(i, 3)));
                if (!r.empty()) more.add(CRelation::raw(r));
            }
        }
        CHECK(hom_count(more, 3) == hom_count(gen, 3));
        CHECK(hom_count(more, 3, true) == hom_count(gen, 3, true));
    }
}

TEST_CASE("realizing braids") {
    Rng rng(18);
    for (int t = 0; t < 30; ++t) {
        int m = 1 + static_cast<int>(uniform(rng, 3));
        Word w = random_word(rng, m, static_cast<int>(uniform(rng, 4)));
        int i = 1 + static_cast<int>(uniform(rng, m)), j = 1 + static_cast<int>(uniform(rng, m));
        int strands = realizing_strands(w, m) + static_cast<int>(uniform(rng, 3));
        RealizingBraid r = realizing_braid(i, j, w, m, strands);
        CHECK(verify_realizing_braid(r));
        CHECK(r.target == 2 * (static_cast<int>(w.length()) + 1) * m + i);
        CHECK(braid_equal(r.b, r.g * Braid::gen(1, strands) * r.g.inverse()));
        // folding x_{tm+q} to x_q recovers w^-1 x_j w
        std::vector<Letter> folded;
        for (Letter l : r.y.letters()) {
            int a = l > 0 ? l : -l;
            int q = (a - 1) % m + 1;
            folded.push_back(l > 0 ? q : -q);
        }
        CHECK(Word(folded, m) == compose({invert(w), Word::gen(j, m), w}));
    }
    CHECK_THROWS_AS(realizing_braid(1, 1, W("x1", 2), 2, 9), PreconditionError);
}

TEST_CASE("compiling full twist presentations") {
    for (int m = 1; m <= 3; ++m) {
        CompileResult r = compile_dgroup(append_full_twist_relations(CPresentation(m)));
        CHECK(r.s.strands == m);
        REQUIRE(r.s.size() == 1);
        CHECK(braid_equal(r.s.factors[0].value(), full_twist(m)));
        CHECK(r.log.size() == static_cast<std::size_t>(m));
        CHECK(r.log[0].full_twist);
    }

    CPresentation p = append_full_twist_relations(CPresentation(2));
    p.add(CRelation::conj(1, 2, Word(2)));
    CompileResult r = compile_dgroup(p);
    CHECK(r.s.strands == 32);
    CHECK(r.s.size() == 736);
    CHECK(alpha(r.s).form() == full_twist(32).form());
    // untagged factors are copies of the base full twist block
    for (const Factor& f : r.s.factors)
        if (!f.is_tagged()) CHECK(f.exponent_sum() == 2);
    CPresentation ex = presentation_from_factorization(r.s);
    CHECK(hom_count(p, 3) == 6);
    CHECK(hom_count(ex, 3) == 6);
    CHECK(hom_count(p, 2) == hom_count(ex, 2));
    REQUIRE(r.log.size() == 3);
    CHECK(r.log[2].doublings == 2);
    CHECK(r.log[2].strands_before == 2);
    CHECK(r.log[2].strands_after == 32);
    CHECK(r.log[2].target == 5);
    CHECK(r.log[2].y == "x4");
    CHECK(r.to_json()["factors"] == 736);

    // a relation already implied grows M and keeps the fingerprint
    CPresentation dup = p;
    dup.add(CRelation::raw(W("x1^-1 x2", 2)));
    CompileResult rd = compile_dgroup(dup, {}, DoublingPolicy::Minimal);
    CHECK(rd.s.strands == 128);
    CHECK(rd.s.size() == 12160);
    CHECK(rd.log[3].doublings == 0);
    CHECK(alpha_is_full_twist(rd.s));
    CHECK(hom_count(presentation_from_factorization(rd.s), 3) == 6);

    CompileResult rm = compile_dgroup(p, {}, DoublingPolicy::Minimal);
    CHECK(rm.s == r.s);

    // x1 = x2^-1 x1 x2: the quotient is free abelian of rank 2
    CPresentation ab = append_full_twist_relations(CPresentation(2));
    ab.add(CRelation::conj(1, 1, W("x2", 2)));
    CompileResult ra = compile_dgroup(ab, {}, DoublingPolicy::Minimal);
    CHECK(alpha_is_full_twist(ra.s));
    CPresentation exa = presentation_from_factorization(ra.s);
    CHECK(hom_count(ab, 3) == 18);
    CHECK(hom_count(exa, 3) == 18);
    CHECK(hom_count(exa, 2) == hom_count(ab, 2));
}

TEST_CASE("compiler hints and errors") {
    CPresentation p = append_full_twist_relations(CPresentation(2));
    p.add(CRelation::conj(1, 2, Word(2)));
    CompileResult r = compile_dgroup(p);
    RealizingBraid rb = realizing_braid(1, 2, Word(2), 2, 8);
    CompileResult h = compile_dgroup(p, {{3, rb.g}});
    CHECK(h.log[2].hint);
    CHECK(h.s == r.s);
    // a wrong conjugator is rejected
    CHECK_THROWS_AS(compile_dgroup(p, {{3, Braid(8)}}), PreconditionError);
    CHECK_THROWS_AS(compile_dgroup(CPresentation(2, {CRelation::conj(1, 2, Word(2))})), PreconditionError);
    CPresentation bad = append_full_twist_relations(CPresentation(2));
    bad.add(CRelation::raw(W("x1 x1 x2", 2)));
    CHECK_THROWS_AS(compile_dgroup(bad), PreconditionError);
    // raw relations in conjugation shape are accepted after rotation
    CPresentation rot = append_full_twist_relations(CPresentation(2));
    rot.add(CRelation::raw(W("x2 x1^-1", 2)));
    CHECK(compile_dgroup(rot).s == r.s);
}

TEST_CASE("torus factorizations") {
    for (int p = 1; p <= 4; ++p) {
        Braid prod = embed(full_twist(p), p + 1);
        for (int k = 1; k <= p; ++k) prod = prod * b_kl(k, p + 1, p + 1).pow(2);
        CHECK(prod.form() == full_twist(p + 1).form());
    }
    CHECK(braid_equal(b_kl(1, 3, 3), Braid(3, {2, 1, -2})));
    CHECK(braid_equal(b_kl(2, 3, 3), Braid::gen(2, 3)));
    for (auto [p, q] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{2, 5}}) {
        Factorization s = torus_factorization(p, q);
        CHECK(s.strands == p + 1);
        CHECK(s.size() == static_cast<std::size_t>(p + q * p));
        CHECK(alpha(s).form() == full_twist(p + 1).pow(q).form());
    }
    Factorization t = torus_factorization(2, 3);
    CHECK(braid_equal(t.factors[0].value(), Braid(3, {1, 1, 1})));
    CHECK(t.factors[0].cls() == FactorClass::Generic);
    for (std::size_t k = 2; k < t.size(); ++k) CHECK(t.factors[k].cls() == FactorClass::A1);
    Factorization one = torus_factorization(1, 3);
    CHECK(one.size() == 3);
    for (const Factor& f : one.factors) CHECK(braid_equal(f.value(), Braid(2, {1, 1})));
    CHECK(alpha(one).form() == full_twist(2).pow(3).form());
    CHECK_THROWS_AS(torus_factorization(0, 1), PreconditionError);
}
