#include "braidfac/twist.hpp"

#include "braidfac/error.hpp"
#include "braidfac/random.hpp"

namespace braidfac {

Braid a_mi(int m, int i) {
    if (i < 1 || i > m - 1) throw RankError("a_{m,i} needs 1 <= i <= m-1");
    return Braid(2 * m, {i, 2 * m - i});
}

namespace {
Braid chain(int m, int i) {
    std::vector<Letter> w;
    for (int j = i; j <= m - 1; ++j) {
        w.push_back(j);
        w.push_back(2 * m - j);
    }
    return Braid(2 * m, std::move(w));
}

void check_i(int m, int i) {
    if (m < 1 || i < 1 || i > m) throw RankError("index i must satisfy 1 <= i <= m");
}
}  // namespace

Braid c_bar(int m, int i) {
    check_i(m, i);
    Braid p = chain(m, i);
    return p * Braid::gen(m, 2 * m) * p.inverse();
}

Braid c_elem(int m, int i) {
    Braid d = garside(m, m, 2 * m);
    return d.inverse() * c_bar(m, i) * d;
}

Braid c_conjugator(int m, int i) {
    check_i(m, i);
    return garside(m, m, 2 * m).inverse() * chain(m, i);
}

Braid r_bar(int m) {
    Braid r(2 * m);
    for (int i = m; i >= 1; --i) r = r * c_bar(m, i);
    return r;
}

Braid r_elem(int m) {
    Braid r(2 * m);
    for (int i = m; i >= 1; --i) r = r * c_elem(m, i);
    return r;
}

TwistElement build(TwistKind kind, int m, int i) {
    switch (kind) {
        case TwistKind::A_MI: return {kind, m, i, a_mi(m, i)};
        case TwistKind::C_BAR: return {kind, m, i, c_bar(m, i)};
        case TwistKind::C: return {kind, m, i, c_elem(m, i)};
        case TwistKind::R_BAR: return {kind, m, 0, r_bar(m)};
        case TwistKind::R: return {kind, m, 0, r_elem(m)};
    }
    throw RankError("unknown twist kind");
}

json Report::to_json() const {
    json j;
    j["statement"] = statement;
    j["m"] = m;
    if (i) j["i"] = *i;
    j["pass"] = pass;
    if (!witness.is_null()) j["witness"] = witness;
    return j;
}

json form_difference(const ArtinForm& lhs, const ArtinForm& rhs) {
    if (lhs.strands != rhs.strands) return json{{"strands", {lhs.strands, rhs.strands}}};
    for (int k = 0; k < lhs.strands; ++k)
        if (lhs.images[k] != rhs.images[k])
            return json{{"generator", k + 1},
                        {"lhs", to_string(lhs.images[k])},
                        {"rhs", to_string(rhs.images[k])}};
    return nullptr;
}

namespace {
Report compare(std::string statement, int m, const Braid& lhs, const Braid& rhs) {
    Report r;
    r.statement = std::move(statement);
    r.m = m;
    r.witness = form_difference(lhs.form(), rhs.form());
    r.pass = r.witness.is_null();
    return r;
}
}  // namespace

Report verify_lemma_delta(int m) {
    if (m < 1) throw RankError("m must be positive");
    Braid d0 = garside(m, 0, 2 * m);
    Braid dm = garside(m, m, 2 * m);
    Braid rhs = d0.pow(2) * dm.pow(2) * r_bar(m);
    return compare("lemma-delta", m, garside(2 * m, 0, 2 * m), rhs);
}

Report verify_doubling_formula(int m) {
    if (m < 1) throw RankError("m must be positive");
    Braid d0 = garside(m, 0, 2 * m);
    Braid dm = garside(m, m, 2 * m);
    Braid rhs = d0.pow(4) * dm.pow(4) * r_elem(m).pow(2);
    return compare("doubling", m, full_twist(2 * m), rhs);
}

Report verify_claim_shift(int m, int i) {
    check_i(m, i);
    Braid g = c_conjugator(m, i);
    Report r;
    r.statement = "claim-shift";
    r.m = m;
    r.i = i;
    Word gm = artin_apply(g, Word::gen(m, 2 * m));
    Word gm1 = artin_apply(g, Word::gen(m + 1, 2 * m));
    bool ok1 = gm == Word::gen(i, 2 * m);
    bool ok2 = gm1 == Word::gen(m + i, 2 * m);
    r.pass = ok1 && ok2;
    if (!r.pass)
        r.witness = json{{"g", word_string(g)},
                         {"g(x_m)", to_string(gm)},
                         {"g(x_m+1)", to_string(gm1)}};
    return r;
}

Report verify_garside_action(int m_max, int k_max) {
    Report r;
    r.statement = "garside-action";
    r.m = m_max;
    for (int m = 1; m <= m_max; ++m)
        for (int k = 1; k <= std::min(k_max, m); ++k)
            for (int i = 0; i + k <= m; ++i) {
                Braid d = garside(k, i, m);
                for (int x = 1; x <= m; ++x) {
                    Word expect = Word::gen(x, m);
                    if (x > i && x <= i + k) {
                        int j = x - i;
                        std::vector<Letter> p;
                        for (int t = i + 1; t <= i + k - j; ++t) p.push_back(t);
                        Word pw(p, m);
                        expect = compose({pw, Word::gen(i + k - j + 1, m), invert(pw)});
                    }
                    Word got = artin_apply(d, Word::gen(x, m));
                    if (got != expect) {
                        r.witness = json{{"m", m},          {"k", k},
                                         {"i", i},          {"x", x},
                                         {"expected", to_string(expect)},
                                         {"got", to_string(got)}};
                        return r;
                    }
                }
            }
    r.pass = true;
    return r;
}

Report verify_full_twist(int m, int samples, std::uint64_t seed, int length) {
    Report r;
    r.statement = "full-twist";
    r.m = m;
    Braid t = full_twist(m);
    Word l = Word::boundary(m);
    for (int x = 1; x <= m; ++x) {
        Word expect = compose({l, Word::gen(x, m), invert(l)});
        Word got = artin_apply(t, Word::gen(x, m));
        if (got != expect) {
            r.witness = json{{"generator", x}, {"expected", to_string(expect)},
                             {"got", to_string(got)}};
            return r;
        }
    }
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        Braid b = random_braid(rng, m, 1 + static_cast<int>(uniform(rng, length)));
        if (!braid_equal(t * b, b * t)) {
            r.witness = json{{"sample", s}, {"braid", to_string(b)}};
            return r;
        }
    }
    r.pass = true;
    return r;
}

}  // namespace braidfac
