#include "braidfac/cgroups.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <set>
#include <unordered_set>

#include <omp.h>

#include "braidfac/error.hpp"
#include "braidfac/perm.hpp"
#include "text.hpp"

namespace braidfac {

CRelation CRelation::conj(int i, int j, const Word& w) {
    if (i < 1 || j < 1) throw RankError("conjugation relation indices must be positive");
    CRelation r;
    r.kind = Kind::Conj;
    r.i = i;
    r.j = j;
    r.w = w;
    return r;
}

CRelation CRelation::raw(const Word& u) {
    CRelation r;
    r.kind = Kind::Raw;
    r.u = u;
    return r;
}

Word CRelation::relator(int rank) const {
    if (max_index() > rank) throw RankError("relation outside rank " + std::to_string(rank));
    if (kind == Kind::Raw) return u.with_rank(rank);
    Word wr = w.with_rank(rank);
    return compose({invert(Word::gen(i, rank)), invert(wr), Word::gen(j, rank), wr});
}

int CRelation::max_index() const {
    if (kind == Kind::Raw) return u.max_index();
    return std::max({i, j, w.max_index()});
}

bool CRelation::operator==(const CRelation& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::Raw) return u.letters() == o.u.letters();
    return i == o.i && j == o.j && w.letters() == o.w.letters();
}

CPresentation::CPresentation(int m, std::vector<CRelation> rs) : rank(m) {
    for (auto& r : rs) add(r);
}

void CPresentation::add(const CRelation& r) {
    if (r.max_index() > rank)
        throw RankError("relation uses x" + std::to_string(r.max_index()) + " beyond rank " +
                        std::to_string(rank));
    relations.push_back(r);
}

std::vector<Word> CPresentation::relators() const {
    std::vector<Word> out;
    out.reserve(relations.size());
    for (const auto& r : relations) out.push_back(r.relator(rank));
    return out;
}

CPresentation presentation_from_factorization(const Factorization& s) {
    const int m = s.strands;
    const long n = static_cast<long>(s.size());
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < n; ++k) {
        try {
            (void)s.factors[static_cast<std::size_t>(k)].value().form();
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    CPresentation p(m);
    std::set<std::vector<Letter>> seen;
    for (const Factor& f : s.factors) {
        const auto& img = f.value().form().images;
        for (int i = 1; i <= m; ++i) {
            Word r = compose(invert(Word::gen(i, m)), img[i - 1]);
            if (r.empty()) continue;
            if (seen.insert(r.letters()).second) p.relations.push_back(CRelation::raw(r));
        }
    }
    return p;
}

CPresentation projective_quotient(const CPresentation& p) {
    CPresentation q = p;
    q.add(CRelation::raw(Word::boundary(p.rank)));
    return q;
}

namespace {
CRelation widened(const CRelation& r, int rank) {
    if (r.kind == CRelation::Kind::Raw) return CRelation::raw(r.u.with_rank(rank));
    return CRelation::conj(r.i, r.j, r.w.with_rank(rank));
}

CRelation shifted(const CRelation& r, int m) {
    if (r.kind == CRelation::Kind::Raw) return CRelation::raw(shift_word(r.u.with_rank(m), m));
    return CRelation::conj(r.i + m, r.j + m, shift_word(r.w.with_rank(m), m));
}
}  // namespace

CPresentation double_relations(const CPresentation& p, DoublingMode mode) {
    const int m = p.rank;
    CPresentation d(2 * m);
    if (mode == DoublingMode::Full)
        for (const auto& r : p.relations) d.add(widened(r, 2 * m));
    for (const auto& r : p.relations) d.add(shifted(r, m));
    for (int i = 1; i <= m; ++i)
        d.add(CRelation::raw(compose(invert(Word::gen(i, 2 * m)), Word::gen(m + i, 2 * m))));
    return d;
}

CPresentation iterate_double_relations(const CPresentation& p, int n, DoublingMode mode) {
    CPresentation out = p;
    for (int t = 0; t < n; ++t) out = double_relations(out, mode);
    return out;
}

std::vector<CRelation> rewrite_to_c_relations(int i1, int i2, const Word& w) {
    const int m = w.rank();
    const int n = static_cast<int>(w.length());
    if (n < 2) throw PreconditionError("rewriting needs a word of length at least 2");
    if (i1 < 1 || i2 < 1 || i1 > m || i2 > m) throw RankError("relation index outside rank");
    const int rank = m + n - 1;
    auto letter = [&](int k) { return Word({w[static_cast<std::size_t>(k - 1)]}, rank); };
    std::vector<CRelation> out;
    out.push_back(CRelation::conj(m + 1, i2, letter(1)));
    for (int k = 2; k <= n - 1; ++k) out.push_back(CRelation::conj(m + k, m + k - 1, letter(k)));
    out.push_back(CRelation::conj(i1, m + n - 1, letter(n)));
    return out;
}

CRelation lemma_ak_reduce(const Braid& g, int j, int k) {
    const int m = g.strands();
    if (j < 1 || j + 1 > m) throw PreconditionError("reduced relation needs 1 <= j < strands");
    Word yj = artin_apply(g, Word::gen(j, m));
    Word yk = artin_apply(g, Word::gen(j + 1, m));
    switch (k) {
        case 0: return CRelation::raw(compose(invert(yj), yk));
        case 1:
        case -3: return CRelation::raw(commutator(yj, yk));
        case 2: return CRelation::raw(compose({yj, yk, yj, invert(compose({yk, yj, yk}))}));
        default: throw PreconditionError("reduced relation needs k in {0, 1, 2, -3}");
    }
}

// ---------------------------------------------------------------------------
// hom counting

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error("hom count overflows 64 bits");
    return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error("hom count overflows 64 bits");
    return r;
}

std::vector<Letter> cyclic_reduce(const Word& w) {
    const auto& ls = w.letters();
    std::size_t a = 0, b = ls.size();
    while (b - a >= 2 && ls[a] == -ls[b - 1]) {
        ++a;
        --b;
    }
    return {ls.begin() + static_cast<std::ptrdiff_t>(a), ls.begin() + static_cast<std::ptrdiff_t>(b)};
}

struct HomProblem {
    const SymmetricTable* G = nullptr;
    int rank = 0;
    std::vector<std::vector<Letter>> rels;
    std::vector<std::vector<int>> gens_of;  // distinct 0-based generators
    std::vector<std::vector<int>> rels_of;
    std::vector<int> domain;
    std::vector<bool> used;
    int free_gens = 0;
    bool transpositions_only = false;
    std::uint64_t budget = 0;
    mutable std::atomic<std::uint64_t> nodes{0};

    HomProblem(const CPresentation& p, int n, bool tr, std::uint64_t b)
        : G(&symmetric_table(n)), rank(p.rank), transpositions_only(tr), budget(b) {
        std::set<std::vector<Letter>> seen;
        for (const Word& w : p.relators()) {
            auto c = cyclic_reduce(w);
            if (!c.empty() && seen.insert(c).second) rels.push_back(std::move(c));
        }
        rels_of.resize(static_cast<std::size_t>(rank));
        used.assign(static_cast<std::size_t>(rank), false);
        for (std::size_t r = 0; r < rels.size(); ++r) {
            std::vector<int> g;
            for (Letter l : rels[r]) g.push_back((l > 0 ? l : -l) - 1);
            std::sort(g.begin(), g.end());
            g.erase(std::unique(g.begin(), g.end()), g.end());
            for (int x : g) {
                rels_of[static_cast<std::size_t>(x)].push_back(static_cast<int>(r));
                used[static_cast<std::size_t>(x)] = true;
            }
            gens_of.push_back(std::move(g));
        }
        for (int x = 0; x < rank; ++x) free_gens += !used[static_cast<std::size_t>(x)];
        for (int e = 0; e < G->size(); ++e)
            if (!tr || G->is_transposition(e)) domain.push_back(e);
    }

    void charge() const {
        if (nodes.fetch_add(1, std::memory_order_relaxed) + 1 > budget)
            throw BudgetError("hom count search exceeds node budget", budget);
    }
};

struct HomState {
    std::vector<int> val;   // -1 unassigned
    std::vector<int> open;  // unassigned distinct generators per relator
    std::vector<int> trail;
    std::vector<int> queue;
};

class HomSearch {
public:
    explicit HomSearch(const HomProblem& P) : P_(P) {}

    HomState root() const {
        HomState s;
        s.val.assign(static_cast<std::size_t>(P_.rank), -1);
        for (const auto& g : P_.gens_of) s.open.push_back(static_cast<int>(g.size()));
        return s;
    }

    // false on contradiction
    bool propagate_all(HomState& s) const {
        s.queue.clear();
        for (std::size_t r = 0; r < P_.rels.size(); ++r) s.queue.push_back(static_cast<int>(r));
        return drain(s);
    }

    bool assign(HomState& s, int x, int v) const {
        s.val[static_cast<std::size_t>(x)] = v;
        s.trail.push_back(x);
        for (int r : P_.rels_of[static_cast<std::size_t>(x)]) {
            --s.open[static_cast<std::size_t>(r)];
            s.queue.push_back(r);
        }
        return true;
    }

    void undo_to(HomState& s, std::size_t mark) const {
        while (s.trail.size() > mark) {
            int x = s.trail.back();
            s.trail.pop_back();
            s.val[static_cast<std::size_t>(x)] = -1;
            for (int r : P_.rels_of[static_cast<std::size_t>(x)]) ++s.open[static_cast<std::size_t>(r)];
        }
    }

    bool drain(HomState& s) const {
        while (!s.queue.empty()) {
            int r = s.queue.back();
            s.queue.pop_back();
            int o = s.open[static_cast<std::size_t>(r)];
            if (o == 0) {
                if (eval(s, r, 0, P_.rels[static_cast<std::size_t>(r)].size()) != P_.G->identity()) {
                    s.queue.clear();
                    return false;
                }
            } else if (o == 1) {
                if (!solve(s, r)) {
                    s.queue.clear();
                    return false;
                }
            }
        }
        return true;
    }

    // unassigned generators of non-free kind remaining
    int pick(const HomState& s) const {
        int best = -1;
        long best_score = -1;
        for (int x = 0; x < P_.rank; ++x) {
            if (s.val[static_cast<std::size_t>(x)] >= 0 || !P_.used[static_cast<std::size_t>(x)]) continue;
            long score = 0;
            for (int r : P_.rels_of[static_cast<std::size_t>(x)])
                score += s.open[static_cast<std::size_t>(r)] <= 2 ? 1000 : 1;
            if (score > best_score) {
                best_score = score;
                best = x;
            }
        }
        return best;
    }

    std::uint64_t count(HomState& s) const {
        int x = pick(s);
        if (x < 0) return 1;
        std::uint64_t total = 0;
        for (int v : P_.domain) {
            P_.charge();
            std::size_t mark = s.trail.size();
            assign(s, x, v);
            if (drain(s)) total = checked_add(total, count(s));
            undo_to(s, mark);
        }
        return total;
    }

private:
    int eval(const HomState& s, int r, std::size_t from, std::size_t to) const {
        const auto& w = P_.rels[static_cast<std::size_t>(r)];
        int acc = P_.G->identity();
        for (std::size_t k = from; k < to; ++k) {
            Letter l = w[k];
            int e = s.val[static_cast<std::size_t>((l > 0 ? l : -l) - 1)];
            acc = P_.G->mul(acc, l > 0 ? e : P_.G->inv(e));
        }
        return acc;
    }

    bool solve(HomState& s, int r) const {
        const auto& w = P_.rels[static_cast<std::size_t>(r)];
        int x = -1;
        for (int g : P_.gens_of[static_cast<std::size_t>(r)])
            if (s.val[static_cast<std::size_t>(g)] < 0) x = g;
        std::size_t pos = w.size();
        int occ = 0;
        for (std::size_t k = 0; k < w.size(); ++k)
            if ((w[k] > 0 ? w[k] : -w[k]) - 1 == x) {
                ++occ;
                pos = k;
            }
        if (occ != 1) return true;
        // A x^e B = 1
        int a = eval(s, r, 0, pos), b = eval(s, r, pos + 1, w.size());
        int ba = P_.G->mul(b, a);
        int v = w[pos] > 0 ? P_.G->inv(ba) : ba;
        if (P_.transpositions_only && !P_.G->is_transposition(v)) return false;
        assign(s, x, v);
        return true;
    }

    const HomProblem& P_;
};

std::uint64_t run_hom_count(const CPresentation& p, int n, bool tr, std::uint64_t budget,
                            bool parallel) {
    HomProblem P(p, n, tr, budget);
    HomSearch search(P);
    std::uint64_t factor = 1;
    for (int t = 0; t < P.free_gens; ++t) factor = checked_mul(factor, P.domain.size());
    HomState s = search.root();
    if (!search.propagate_all(s)) return 0;
    int x = search.pick(s);
    if (x < 0) return factor;
    const long nd = static_cast<long>(P.domain.size());
    std::vector<std::uint64_t> part(P.domain.size(), 0);
    std::exception_ptr err;
    auto branch = [&](long k) {
        HomState t = s;
        P.charge();
        search.assign(t, x, P.domain[static_cast<std::size_t>(k)]);
        part[static_cast<std::size_t>(k)] = search.drain(t) ? search.count(t) : 0;
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long k = 0; k < nd; ++k) {
            try {
                branch(k);
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
    } else {
        for (long k = 0; k < nd; ++k) branch(k);
    }
    if (err) std::rethrow_exception(err);
    std::uint64_t total = 0;
    for (auto v : part) total = checked_add(total, v);
    return checked_mul(total, factor);
}

}  // namespace

std::uint64_t hom_count(const CPresentation& p, int n, bool transpositions_only,
                        std::uint64_t node_budget) {
    return run_hom_count(p, n, transpositions_only, node_budget, true);
}

std::uint64_t hom_count_serial(const CPresentation& p, int n, bool transpositions_only,
                               std::uint64_t node_budget) {
    return run_hom_count(p, n, transpositions_only, node_budget, false);
}

// ---------------------------------------------------------------------------

Word full_twist_relator(int i, int m) {
    return commutator(invert(Word::gen(i, m)), Word::boundary(m));
}

bool is_full_twist_class(const CPresentation& p) {
    std::set<std::vector<Letter>> have;
    for (const Word& w : p.relators()) have.insert(w.letters());
    for (int i = 1; i <= p.rank; ++i)
        if (!have.count(full_twist_relator(i, p.rank).letters())) return false;
    return true;
}

CPresentation append_full_twist_relations(const CPresentation& p) {
    CPresentation q = p;
    for (int i = 1; i <= p.rank; ++i) q.add(CRelation::raw(full_twist_relator(i, p.rank)));
    return q;
}

int realizing_strands(const Word& w, int m) {
    const int k = static_cast<int>(w.length()) + 1;
    return 2 * k * m + m;
}

RealizingBraid realizing_braid(int i, int j, const Word& w, int m, int strands) {
    if (i < 1 || j < 1 || i > m || j > m) throw RankError("relation index outside rank");
    if (strands < realizing_strands(w, m))
        throw PreconditionError("realizing braid needs " + std::to_string(realizing_strands(w, m)) +
                                " strands");
    Word v = invert(w.with_rank(m));
    const int k = static_cast<int>(v.length()) + 1;
    Word vbar = moving_apart(v, k, 1).with_rank(strands);
    const int c = k * m + j;
    const int target = 2 * k * m + i;
    Word y = compose({vbar, Word::gen(c, strands), invert(vbar)});

    Braid gy(strands);
    int lo = c, hi = c;
    std::vector<Braid> ds;
    for (std::size_t t = vbar.length(); t-- > 0;) {
        Letter l = vbar[t];
        int q = l > 0 ? l : -l;
        if (l > 0) {
            ds.push_back(window_full_twist(q, hi, strands) * window_full_twist(q + 1, hi, strands).inverse());
            lo = q;
        } else {
            ds.push_back(window_full_twist(lo, q, strands).inverse() * window_full_twist(lo, q - 1, strands));
            hi = q;
        }
    }
    for (auto it = ds.rbegin(); it != ds.rend(); ++it) gy = gy * *it;
    std::vector<Letter> qp;
    for (int t = c - 1; t >= 1; --t) qp.push_back(-t);
    for (int t = target - 1; t >= 2; --t) qp.push_back(-t);
    Braid g = gy * Braid(strands, qp);
    RealizingBraid r{g, g * Braid::gen(1, strands) * g.inverse(), y, target};
    return r;
}

bool verify_realizing_braid(const RealizingBraid& r) {
    const int m = r.g.strands();
    return artin_apply(r.g, Word::gen(1, m)) == r.y.with_rank(m) &&
           artin_apply(r.g, Word::gen(2, m)) == Word::gen(r.target, m);
}

json CompileStep::to_json() const {
    json j;
    j["relation"] = relation;
    j["text"] = text;
    j["full_twist"] = full_twist;
    if (!full_twist) {
        j["doublings"] = doublings;
        j["strands_before"] = strands_before;
        j["strands_after"] = strands_after;
        j["target"] = target;
        j["y"] = y;
        j["g_length"] = g_length;
        j["hint"] = hint;
    }
    j["factors"] = factors;
    return j;
}

json CompileResult::to_json() const {
    json j;
    j["strands"] = s.strands;
    j["factors"] = s.size();
    std::map<std::string, int> classes;
    for (const Factor& f : s.factors) ++classes[class_name(f.cls())];
    json cj = json::object();
    for (auto& [k, v] : classes) cj[k] = v;
    j["classes"] = cj;
    json lj = json::array();
    for (const auto& st : log) lj.push_back(st.to_json());
    j["log"] = lj;
    return j;
}

namespace {
struct ConjForm {
    int i, j;
    Word w;
};

std::optional<ConjForm> match_conjugation(const Word& u, int m) {
    if (u.empty() || u[0] > 0) return std::nullopt;
    Word rest({u.letters().begin() + 1, u.letters().end()}, m);
    auto gc = generator_conjugate(rest);
    if (!gc) return std::nullopt;
    return ConjForm{-u[0], gc->index, invert(gc->v)};
}

// any cyclic rotation of the relator or of its inverse
std::optional<ConjForm> as_conjugation(const CRelation& r, int m) {
    if (r.kind == CRelation::Kind::Conj) return ConjForm{r.i, r.j, r.w.with_rank(m)};
    for (const Word& u : {r.u.with_rank(m), invert(r.u.with_rank(m))}) {
        const auto& ls = u.letters();
        for (std::size_t k = 0; k < ls.size(); ++k) {
            std::vector<Letter> rot(ls.begin() + static_cast<std::ptrdiff_t>(k), ls.end());
            rot.insert(rot.end(), ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(k));
            if (auto c = match_conjugation(Word(rot, m), m)) return c;
        }
    }
    return std::nullopt;
}
}  // namespace

CompileResult compile_dgroup(const CPresentation& p, const std::map<std::size_t, Braid>& hints,
                             DoublingPolicy policy) {
    if (!is_full_twist_class(p))
        throw PreconditionError("presentation lacks the full twist relations");
    const int m = p.rank;
    CompileResult out;
    Factorization s(m, {Factor::raw(full_twist(m))});
    std::set<std::vector<Letter>> twist;
    for (int i = 1; i <= m; ++i) twist.insert(full_twist_relator(i, m).letters());
    for (std::size_t n = 0; n < p.relations.size(); ++n) {
        const CRelation& rel = p.relations[n];
        CompileStep st;
        st.relation = n + 1;
        st.text = to_string(rel);
        if (twist.count(rel.relator(m).letters())) {
            st.full_twist = true;
            st.factors = s.size();
            out.log.push_back(st);
            continue;
        }
        auto cf = as_conjugation(rel, m);
        if (!cf)
            throw PreconditionError("relation " + std::to_string(n + 1) + " is not a conjugation relation",
                                    st.text);
        const int need = realizing_strands(cf->w, m);
        int r = 0;
        if (policy == DoublingPolicy::Fixed) {
            r = static_cast<int>(cf->w.length()) + 2;
        } else {
            while ((s.strands << r) < need) ++r;
        }
        st.doublings = r;
        st.strands_before = s.strands;
        Factorization st_s = iterate_double(s, r);
        const int M = st_s.strands;
        RealizingBraid rb = realizing_braid(cf->i, cf->j, cf->w, m, M);
        auto h = hints.find(n + 1);
        if (h != hints.end()) {
            if (h->second.strands() > M)
                throw PreconditionError("hint for relation " + std::to_string(n + 1) + " has too many strands");
            rb.g = embed(h->second, M);
            rb.b = rb.g * Braid::gen(1, M) * rb.g.inverse();
            st.hint = true;
        }
        if (!verify_realizing_braid(rb)) {
            json wit = {{"relation", n + 1}, {"y", to_string(rb.y)}, {"target", rb.target}};
            throw PreconditionError(st.hint ? "hint does not realize the pair for relation " + std::to_string(n + 1)
                                            : "missing realizing braid for relation " + std::to_string(n + 1),
                                    wit.dump());
        }
        Factorization ds = double1(st_s);
        Braid b2 = embed(rb.b, ds.strands);
        s = double_factorization(conjugate_factorization(ds, b2), ds, ds, ds);
        st.strands_after = s.strands;
        st.target = rb.target;
        st.y = to_string(rb.y);
        st.g_length = rb.g.length();
        st.factors = s.size();
        out.log.push_back(st);
    }
    if (!alpha_is_full_twist(s)) throw Error("compiled factorization does not multiply to the full twist");
    out.s = std::move(s);
    return out;
}

Braid b_kl(int k, int l, int strands) {
    if (k < 1 || l <= k || l > strands) throw RankError("b_kl needs 1 <= k < l <= strands");
    std::vector<Letter> c;
    for (int t = l - 1; t >= k + 1; --t) c.push_back(t);
    Braid cb(strands, c);
    return cb * Braid::gen(k, strands) * cb.inverse();
}

Factorization torus_factorization(int p, int q) {
    if (p < 1 || q < 1) throw PreconditionError("torus factorization needs p, q >= 1");
    const int m = p + 1;
    Factorization s(m);
    if (p >= 2) {
        std::vector<Letter> w;
        for (int r = 0; r < q; ++r)
            for (int t = 1; t <= p - 1; ++t) w.push_back(t);
        Factor f = Factor::raw(Braid(m, w));
        for (int t = 0; t < p; ++t) s.factors.push_back(f);
    }
    for (int r = 0; r < q; ++r)
        for (int k = 1; k <= p; ++k) {
            std::vector<Letter> c;
            for (int t = m - 1; t >= k + 1; --t) c.push_back(t);
            s.factors.push_back(Factor::tagged(Braid(m, c) * generator_conjugator(k, m), 2));
        }
    return s;
}

Report verify_torus_identity(int p) {
    if (p < 1) throw PreconditionError("torus identity needs p >= 1");
    Report r;
    r.statement = "torus-identity";
    r.m = p + 1;
    Braid prod = embed(full_twist(p), p + 1);
    for (int k = 1; k <= p; ++k) prod = prod * b_kl(k, p + 1, p + 1).pow(2);
    r.pass = prod.form() == full_twist(p + 1).form();
    if (!r.pass) r.witness = form_difference(prod.form(), full_twist(p + 1).form());
    return r;
}

Report verify_torus_factorization(int p, int q) {
    Factorization s = torus_factorization(p, q);
    Report r;
    r.statement = "torus-factorization q=" + std::to_string(q);
    r.m = p + 1;
    Braid target = full_twist(p + 1).pow(q);
    const ArtinForm& want = target.form();
    ArtinForm got = alpha(s).form();
    r.pass = got == want;
    if (!r.pass) r.witness = form_difference(got, want);
    return r;
}

// ---------------------------------------------------------------------------

CPresentation parse_presentation(std::string_view t) {
    auto lines = text::split_lines(t);
    if (lines.empty()) throw ParseError("empty presentation file", 1, 1);
    const auto& head = lines.front();
    std::string_view rest = head.body;
    auto val = text::trim(text::take_field(rest, "rank", head.number, head.body));
    if (head.body.find(';') == std::string_view::npos)
        throw ParseError("expected ';' after rank", head.number, static_cast<int>(head.body.size()) + 1);
    long long m = text::parse_int(val, head.number, text::column_of(head.body, val));
    if (m < 0 || m > (1 << 20)) throw ParseError("rank out of range", head.number, text::column_of(head.body, val));
    if (!text::trim(rest).empty())
        throw ParseError("unexpected text after header", head.number, text::column_of(head.body, text::trim(rest)));
    const int rank = static_cast<int>(m);
    CPresentation p(rank);
    auto word = [&](std::string_view w, const text::Line& ln) {
        int col = text::column_of(ln.body, w);
        std::vector<Letter> ls;
        std::size_t pos = 0;
        while (pos < w.size()) {
            while (pos < w.size() && std::isspace(static_cast<unsigned char>(w[pos]))) ++pos;
            std::size_t start = pos;
            while (pos < w.size() && !std::isspace(static_cast<unsigned char>(w[pos]))) ++pos;
            if (start == pos) break;
            int tcol = col + static_cast<int>(start);
            for (Letter l : text::parse_letters(w.substr(start, pos - start), 'x', ln.number, tcol)) {
                if ((l > 0 ? l : -l) > rank)
                    throw ParseError("generator x" + std::to_string(l > 0 ? l : -l) + " outside rank " +
                                         std::to_string(rank),
                                     ln.number, tcol);
                ls.push_back(l);
            }
        }
        return Word(ls, rank);
    };
    auto index = [&](std::string_view v, const text::Line& ln) {
        v = text::trim(v);
        int col = text::column_of(ln.body, v);
        long long x = text::parse_int(v, ln.number, col);
        if (x < 1 || x > rank) throw ParseError("index outside rank", ln.number, col);
        return static_cast<int>(x);
    };
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto& ln = lines[k];
        std::string_view body = text::trim(ln.body);
        int col = text::column_of(ln.body, body);
        if (body.substr(0, 4) == "rel:") {
            p.relations.push_back(CRelation::raw(word(body.substr(4), ln)));
        } else if (body.substr(0, 5) == "conj:") {
            std::string_view r = body.substr(5);
            int i = index(text::take_field(r, "i", ln.number, ln.body), ln);
            if (r.data() == nullptr) throw ParseError("expected ';' after i", ln.number, static_cast<int>(ln.body.size()) + 1);
            int j = index(text::take_field(r, "j", ln.number, ln.body), ln);
            if (r.data() == nullptr) throw ParseError("expected ';' after j", ln.number, static_cast<int>(ln.body.size()) + 1);
            std::string_view w = text::take_field(r, "w", ln.number, ln.body);
            if (!text::trim(r).empty())
                throw ParseError("unexpected text after word", ln.number, text::column_of(ln.body, text::trim(r)));
            p.relations.push_back(CRelation::conj(i, j, word(w, ln)));
        } else {
            throw ParseError("expected 'rel:' or 'conj:'", ln.number, col);
        }
    }
    return p;
}

std::string to_string(const CRelation& r) {
    if (r.kind == CRelation::Kind::Raw) return "rel: " + (r.u.empty() ? std::string("1") : to_string(r.u));
    return "conj: i=" + std::to_string(r.i) + "; j=" + std::to_string(r.j) + "; w=" + to_string(r.w);
}

std::string to_string(const CPresentation& p) {
    std::string out = "rank=" + std::to_string(p.rank) + ";\n";
    for (const auto& r : p.relations) out += to_string(r) + "\n";
    return out;
}

json to_json(const CPresentation& p) {
    json rs = json::array();
    for (const auto& r : p.relations) {
        if (r.kind == CRelation::Kind::Raw)
            rs.push_back({{"kind", "raw"}, {"word", to_string(r.u)}});
        else
            rs.push_back({{"kind", "conj"}, {"i", r.i}, {"j", r.j}, {"w", to_string(r.w)}});
    }
    return {{"rank", p.rank}, {"relations", rs}};
}

}  // namespace braidfac
