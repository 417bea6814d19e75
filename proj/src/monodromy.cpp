#include "braidfac/monodromy.hpp"

#include <atomic>
#include <cstdio>
#include <numeric>
#include <set>

#include "braidfac/cgroups.hpp"
#include "braidfac/error.hpp"
#include "text.hpp"

namespace braidfac {

MonodromyAssignment::MonodromyAssignment(int n, std::vector<Perm> imgs) : degree(n), images(std::move(imgs)) {
    for (std::size_t k = 0; k < images.size(); ++k) {
        if (images[k].degree() != n)
            throw PreconditionError("image of x" + std::to_string(k + 1) + " has the wrong degree");
        if (!images[k].is_transposition())
            throw PreconditionError("image of x" + std::to_string(k + 1) + " is not a transposition");
    }
}

std::uint64_t MonodromyAssignment::hash() const {
    std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(degree);
    for (const Perm& p : images)
        for (int v : p.images()) {
            h ^= static_cast<std::uint64_t>(v) + 1;
            h *= 1099511628211ULL;
        }
    return h;
}

MonodromyAssignment periodic_extension(const MonodromyAssignment& mu, int rank) {
    if (mu.rank() == 0) throw PreconditionError("cannot extend an empty assignment");
    std::vector<Perm> imgs;
    for (int i = 0; i < rank; ++i) imgs.push_back(mu.images[static_cast<std::size_t>(i % mu.rank())]);
    return MonodromyAssignment(mu.degree, std::move(imgs));
}

Perm evaluate_mu(const MonodromyAssignment& mu, const Word& w) {
    if (w.max_index() > mu.rank())
        throw RankError("word uses x" + std::to_string(w.max_index()) + " but the assignment has rank " +
                        std::to_string(mu.rank()));
    Perm acc(mu.degree);
    for (Letter l : w.letters()) {
        const Perm& p = mu(l > 0 ? l : -l);
        acc = acc * (l > 0 ? p : p.inverse());
    }
    return acc;
}

namespace {
// first (factor, generator) whose relation fails, 1-based
std::optional<std::pair<std::size_t, int>> first_failure(const Factorization& s, const MonodromyAssignment& mu) {
    const long n = static_cast<long>(s.size());
    std::vector<int> bad(s.size(), 0);
    std::atomic<bool> err{false};
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < n; ++k) {
        try {
            const auto& img = s.factors[static_cast<std::size_t>(k)].value().form().images;
            for (int i = 1; i <= s.strands; ++i)
                if (evaluate_mu(mu, img[static_cast<std::size_t>(i - 1)]) != mu(i)) {
                    bad[static_cast<std::size_t>(k)] = i;
                    break;
                }
        } catch (...) {
            err = true;
        }
    }
    if (err) throw Error("evaluation failed while checking the monodromy");
    for (std::size_t k = 0; k < s.size(); ++k)
        if (bad[k]) return std::pair{k + 1, bad[k]};
    return std::nullopt;
}
}  // namespace

bool check_mu_homomorphism(const Factorization& s, const MonodromyAssignment& mu) {
    if (mu.rank() != s.strands) return false;
    return !first_failure(s, mu);
}

std::uint64_t generated_order(const std::vector<Perm>& gens, int degree) {
    std::set<std::vector<int>> seen;
    std::vector<Perm> todo{Perm(degree)};
    seen.insert(todo[0].images());
    while (!todo.empty()) {
        Perm p = todo.back();
        todo.pop_back();
        for (const Perm& g : gens) {
            Perm q = g * p;
            if (seen.insert(q.images()).second) todo.push_back(q);
        }
    }
    return seen.size();
}

bool generates_symmetric(const std::vector<Perm>& gens, int degree) {
    std::vector<int> parent(static_cast<std::size_t>(degree));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    bool odd = false, all_transpositions = true;
    for (const Perm& g : gens) {
        for (int x = 0; x < degree; ++x) parent[static_cast<std::size_t>(find(x))] = find(g.images()[static_cast<std::size_t>(x)]);
        int parity = 0;
        for (int c : g.cycle_type()) parity += c - 1;
        odd = odd || parity % 2 == 1;
        all_transpositions = all_transpositions && g.is_transposition();
    }
    for (int x = 1; x < degree; ++x)
        if (find(x) != find(0)) return false;
    if (degree <= 1) return true;
    if (!odd) return false;
    // a transitive set of transpositions generates the whole group
    if (all_transpositions) return true;
    std::uint64_t fact = 1;
    for (int k = 2; k <= degree; ++k) fact *= static_cast<std::uint64_t>(k);
    return generated_order(gens, degree) == fact;
}

std::uint64_t local_order(const MonodromyAssignment& mu, const Factor& f) {
    if (!f.is_tagged()) throw ClassError("local group of an untagged factor is undefined");
    const int m = f.strands();
    if (m < 2) throw RankError("local group needs two strands");
    Perm a = evaluate_mu(mu, artin_apply(f.conjugator(), Word::gen(1, m)));
    Perm b = evaluate_mu(mu, artin_apply(f.conjugator(), Word::gen(2, m)));
    return generated_order({a, b}, mu.degree);
}

json GenericReport::to_json() const {
    json j;
    j["generic"] = generic();
    j["epimorphism"] = epimorphism;
    j["transpositions"] = transpositions;
    j["local_orders"] = local_orders;
    j["image_order"] = image_order;
    json ls = json::array();
    for (const auto& l : locals)
        ls.push_back({{"factor", l.factor}, {"class", l.cls}, {"order", l.order}, {"pass", l.pass}});
    j["locals"] = ls;
    return j;
}

GenericReport check_generic(const Factorization& s, const MonodromyAssignment& mu) {
    if (mu.rank() != s.strands) throw RankError("assignment rank does not match the strand count");
    GenericReport r;
    for (std::size_t k = 0; k < s.size(); ++k)
        if (!s.factors[k].is_tagged())
            throw ClassError("factor " + std::to_string(k + 1) + " is untagged; its class is unknown");
    r.epimorphism = generates_symmetric(mu.images, mu.degree);
    if (mu.degree <= 8) r.image_order = generated_order(mu.images, mu.degree);
    for (std::size_t k = 0; k < s.size(); ++k) {
        const Factor& f = s.factors[k];
        FactorClass c = f.cls();
        if (c != FactorClass::Am3 && c != FactorClass::A1 && c != FactorClass::A2) continue;
        GenericReport::Local l;
        l.factor = k + 1;
        l.cls = class_name(c);
        l.order = local_order(mu, f);
        l.pass = l.order > 2;
        r.local_orders = r.local_orders && l.pass;
        r.locals.push_back(l);
    }
    return r;
}

MonodromyPair MonodromyPair::make(Factorization s, MonodromyAssignment mu) {
    if (mu.rank() != s.strands)
        throw RankError("assignment has rank " + std::to_string(mu.rank()) + " but the factorization has " +
                        std::to_string(s.strands) + " strands");
    if (auto f = first_failure(s, mu)) {
        json w = {{"factor", f->first}, {"generator", f->second}};
        throw PreconditionError("monodromy is not a homomorphism on factor " + std::to_string(f->first), w.dump());
    }
    MonodromyPair p;
    p.s = std::move(s);
    p.mu = std::move(mu);
    return p;
}

std::uint64_t MonodromyPair::hash() const { return s.hash() ^ (mu.hash() * 0x9e3779b97f4a7c15ULL); }

MonodromyPair transport_mu_double(const MonodromyPair& p) {
    if (!alpha_is_full_twist(p.s)) throw PreconditionError("doubling needs a factorization of the full twist");
    return MonodromyPair::make(double1(p.s), periodic_extension(p.mu, 2 * p.s.strands));
}

MonodromyPair admissible_transform(const MonodromyPair& p, int pos, const Factor& g, PairDirection d) {
    MonodromyPair out;
    out.mu = p.mu;
    if (d == PairDirection::Create) {
        out.s = insert_cancel_pair(p.s, pos, g);
        if (!check_mu_homomorphism(Factorization(p.s.strands, {g}), p.mu))
            throw InadmissibleError("monodromy does not extend over the inserted pair");
    } else {
        if (pos < 1 || pos + 1 > static_cast<int>(p.s.size()) || p.s.factors[static_cast<std::size_t>(pos - 1)] != g)
            throw InadmissibleError("no matching pair at position " + std::to_string(pos));
        out.s = remove_cancel_pair(p.s, pos);
    }
    std::uint64_t o = local_order(p.mu, g);
    if (o <= 2)
        throw InadmissibleError("local group of the pair has order " + std::to_string(o));
    return out;
}

namespace {
std::string hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::uint64_t unhex(const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = std::stoull(s, &used, 16);
    if (used != s.size()) throw Error("bad hash '" + s + "'");
    return v;
}
}  // namespace

json CertStep::to_json() const {
    json j;
    switch (kind) {
        case Kind::Hurwitz:
            j["op"] = "hurwitz";
            j["position"] = position;
            j["dir"] = dir == Direction::Fwd ? "fwd" : "bwd";
            break;
        case Kind::Conj:
            j["op"] = "conj";
            j["strands"] = g.strands();
            j["b"] = word_string(g);
            break;
        case Kind::Insert:
            j["op"] = "insert";
            j["position"] = position;
            j["strands"] = g.strands();
            j["g"] = word_string(g);
            j["e"] = 2;
            break;
        case Kind::Remove:
            j["op"] = "remove";
            j["position"] = position;
            break;
    }
    j["hash"] = hex(hash);
    return j;
}

json EquivalenceCertificate::to_json() const {
    json st = json::array();
    for (const auto& s : steps) st.push_back(s.to_json());
    return {{"source_hash", hex(source_hash)}, {"target_hash", hex(target_hash)}, {"steps", st}};
}

EquivalenceCertificate certificate_from_json(const json& j) {
    EquivalenceCertificate c;
    c.source_hash = unhex(j.at("source_hash").get<std::string>());
    c.target_hash = unhex(j.at("target_hash").get<std::string>());
    for (const json& s : j.at("steps")) {
        CertStep st;
        std::string op = s.at("op").get<std::string>();
        if (op == "hurwitz") {
            st.kind = CertStep::Kind::Hurwitz;
            st.position = s.at("position").get<int>();
            std::string d = s.at("dir").get<std::string>();
            if (d != "fwd" && d != "bwd") throw Error("bad direction '" + d + "'");
            st.dir = d == "fwd" ? Direction::Fwd : Direction::Bwd;
        } else if (op == "conj") {
            st.kind = CertStep::Kind::Conj;
            st.g = parse_braid_word(s.at("b").get<std::string>(), s.at("strands").get<int>());
        } else if (op == "insert") {
            st.kind = CertStep::Kind::Insert;
            st.position = s.at("position").get<int>();
            st.g = parse_braid_word(s.at("g").get<std::string>(), s.at("strands").get<int>());
            if (s.at("e").get<int>() != 2) throw Error("inserted pairs have exponent 2");
        } else if (op == "remove") {
            st.kind = CertStep::Kind::Remove;
            st.position = s.at("position").get<int>();
        } else {
            throw Error("unknown certificate step '" + op + "'");
        }
        st.hash = unhex(s.at("hash").get<std::string>());
        c.steps.push_back(std::move(st));
    }
    return c;
}

MonodromyPair apply_step(const MonodromyPair& p, const CertStep& st) {
    switch (st.kind) {
        case CertStep::Kind::Hurwitz: {
            MonodromyPair out;
            out.s = hurwitz_move(p.s, st.position, st.dir);
            out.mu = p.mu;
            return out;
        }
        case CertStep::Kind::Conj: {
            if (st.g.strands() != p.s.strands) throw RankError("conjugating braid has the wrong strand count");
            Braid inv = st.g.inverse();
            std::vector<Perm> imgs;
            for (int i = 1; i <= p.s.strands; ++i)
                imgs.push_back(evaluate_mu(p.mu, artin_apply(inv, Word::gen(i, p.s.strands))));
            return MonodromyPair::make(conjugate_factorization(p.s, st.g), MonodromyAssignment(p.mu.degree, imgs));
        }
        case CertStep::Kind::Insert:
            return admissible_transform(p, st.position, Factor::tagged(st.g, 2), PairDirection::Create);
        case CertStep::Kind::Remove:
            if (st.position < 1 || st.position > static_cast<int>(p.s.size()))
                throw InadmissibleError("no pair at position " + std::to_string(st.position));
            return admissible_transform(p, st.position, p.s.factors[static_cast<std::size_t>(st.position - 1)],
                                        PairDirection::Cancel);
    }
    throw Error("unreachable");
}

json ReplayResult::to_json() const {
    json j;
    j["ok"] = ok;
    if (failed_step) j["failed_step"] = *failed_step;
    if (!reason.empty()) j["reason"] = reason;
    return j;
}

ReplayResult verify_certificate(const MonodromyPair& source, const MonodromyPair& target,
                                const EquivalenceCertificate& cert) {
    ReplayResult r;
    if (source.hash() != cert.source_hash) {
        r.failed_step = 0;
        r.reason = "source does not match the certificate";
        return r;
    }
    MonodromyPair cur = source;
    for (std::size_t k = 0; k < cert.steps.size(); ++k) {
        try {
            cur = apply_step(cur, cert.steps[k]);
        } catch (const Error& e) {
            r.failed_step = k;
            r.reason = e.what();
            return r;
        }
        if (cur.hash() != cert.steps[k].hash) {
            r.failed_step = k;
            r.reason = "state hash mismatch";
            return r;
        }
    }
    if (cur != target || target.hash() != cert.target_hash) {
        r.failed_step = cert.steps.size();
        r.reason = "replay does not reach the target";
        return r;
    }
    r.ok = true;
    return r;
}

json AlgResult::to_json() const {
    json j;
    j["strands"] = strands;
    j["doublings"] = doublings;
    j["target"] = target;
    j["y1"] = y1;
    j["factors_bar"] = bar.s.size();
    j["factors_tilde"] = tilde.s.size();
    j["alpha_bar"] = alpha_bar;
    j["alpha_tilde"] = alpha_tilde;
    j["input_generic"] = input_generic.to_json();
    j["bar_generic"] = bar_generic.to_json();
    j["tilde_generic"] = tilde_generic.to_json();
    j["certificate_steps"] = cert.steps.size();
    j["bar_hash"] = hex(bar.hash());
    j["tilde_hash"] = hex(tilde.hash());
    return j;
}

AlgResult theorem_alg_construct(const MonodromyPair& p, int i, const Word& y, const std::optional<Braid>& g_hint) {
    const int m = p.s.strands;
    if (i < 1 || i > m) throw RankError("generator index outside rank");
    if (!alpha_is_full_twist(p.s)) throw PreconditionError("input factorization does not multiply to the full twist");
    Word yw = y.with_rank(m);
    auto gc = generator_conjugate(yw);
    if (!gc) throw PreconditionError("y is not conjugate to a generator", to_string(yw));
    Perm ti = p.mu(i), ty = evaluate_mu(p.mu, yw);
    if (ti == ty || ti * ty != ty * ti) {
        json w = {{"mu_xi", to_string(ti)}, {"mu_y", to_string(ty)}};
        throw PreconditionError("mu(x_i) and mu(y) are not distinct commuting transpositions", w.dump());
    }
    AlgResult out;
    out.input_generic = check_generic(p.s, p.mu);
    const Word w = invert(gc->v);  // y = w^-1 x_j w
    const int need = realizing_strands(w, m);
    int n = 0;
    while ((m << n) < need) ++n;
    Factorization s1 = iterate_double(p.s, n);
    const int M1 = s1.strands;
    RealizingBraid rb = realizing_braid(i, gc->index, w, m, M1);
    if (g_hint) {
        if (g_hint->strands() > M1) throw PreconditionError("hint has too many strands");
        rb.g = embed(*g_hint, M1);
        rb.b = rb.g * Braid::gen(1, M1) * rb.g.inverse();
    }
    if (!verify_realizing_braid(rb)) {
        json wit = {{"y1", to_string(rb.y)}, {"target", rb.target}};
        throw PreconditionError(g_hint ? "hint does not realize the good pair" : "missing realizing braid", wit.dump());
    }
    Factorization X = double1(s1);
    Factorization sbar = double1(X);
    Braid b2 = embed(rb.b.pow(2), X.strands);
    Factorization stilde = double_factorization(conjugate_factorization(X, b2), X, X, X);
    const int M = sbar.strands;
    MonodromyAssignment mu = periodic_extension(p.mu, M);
    out.bar = MonodromyPair::make(sbar, mu);
    out.tilde = MonodromyPair::make(stilde, mu);
    out.doublings = n;
    out.strands = M;
    out.target = rb.target;
    out.y1 = to_string(rb.y);
    out.alpha_bar = alpha_is_full_twist(out.bar.s);
    out.alpha_tilde = alpha_is_full_twist(out.tilde.s);
    out.bar_generic = check_generic(out.bar.s, out.bar.mu);
    out.tilde_generic = check_generic(out.tilde.s, out.tilde.mu);

    // create (b^2, b^-2), carry b^2 across the first block of d(s_1) and back, cancel
    EquivalenceCertificate& c = out.cert;
    c.source_hash = out.bar.hash();
    c.target_hash = out.tilde.hash();
    MonodromyPair cur = out.bar;
    auto push = [&](CertStep st) {
        cur = apply_step(cur, st);
        st.hash = cur.hash();
        c.steps.push_back(std::move(st));
    };
    const int nx = static_cast<int>(X.size());
    CertStep ins;
    ins.kind = CertStep::Kind::Insert;
    ins.position = 1;
    ins.g = embed(rb.g, M);
    push(ins);
    auto hur = [&](int k, Direction d) {
        CertStep st;
        st.kind = CertStep::Kind::Hurwitz;
        st.position = k;
        st.dir = d;
        push(st);
    };
    hur(1, Direction::Fwd);
    for (int k = 2; k <= nx + 1; ++k) hur(k, Direction::Bwd);
    for (int k = nx + 1; k >= 2; --k) hur(k, Direction::Bwd);
    hur(1, Direction::Fwd);
    CertStep rem;
    rem.kind = CertStep::Kind::Remove;
    rem.position = 1;
    push(rem);
    if (cur != out.tilde) throw Error("certificate chain does not reach the second pair");
    return out;
}

json TypeSeparation::to_json() const {
    json hs = json::array();
    for (const Hom& h : homs) hs.push_back({{"N", h.n}, {"first", h.first}, {"second", h.second}});
    return {{"verdict", verdict}, {"reason", reason}, {"orbit", orbit.to_json()}, {"hom_counts", hs}};
}

TypeSeparation separate_types(const Factorization& a, const Factorization& b, std::size_t orbit_budget,
                              int hom_max) {
    TypeSeparation t;
    CPresentation pa = presentation_from_factorization(a), pb = presentation_from_factorization(b);
    for (int n = 2; n <= hom_max; ++n) {
        TypeSeparation::Hom h{n, hom_count(pa, n), hom_count(pb, n)};
        t.homs.push_back(h);
        if (h.first != h.second && t.reason.empty())
            t.reason = "hom counts to S_" + std::to_string(n) + " differ";
    }
    MoveSet ms;
    ms.conj = true;
    t.orbit = orbit_search(a, b, ms, orbit_budget);
    if (!t.reason.empty()) {
        t.verdict = "distinct";
    } else {
        t.verdict = verdict_name(t.orbit.verdict);
        t.reason = t.orbit.reason;
    }
    return t;
}

MonodromyAssignment parse_monodromy(std::string_view t) {
    auto lines = text::split_lines(t);
    if (lines.empty()) throw ParseError("empty monodromy file", 1, 1);
    const auto& head = lines.front();
    std::string_view rest = head.body;
    auto val = text::trim(text::take_field(rest, "degree", head.number, head.body));
    if (head.body.find(';') == std::string_view::npos)
        throw ParseError("expected ';' after degree", head.number, static_cast<int>(head.body.size()) + 1);
    long long n = text::parse_int(val, head.number, text::column_of(head.body, val));
    if (n < 2 || n > 64) throw ParseError("degree must be in 2..64", head.number, text::column_of(head.body, val));
    if (!text::trim(rest).empty())
        throw ParseError("unexpected text after header", head.number, text::column_of(head.body, text::trim(rest)));
    std::vector<std::optional<Perm>> imgs;
    int last_line = head.number;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto& ln = lines[k];
        last_line = ln.number;
        std::string_view body = text::trim(ln.body);
        if (body.substr(0, 3) != "mu:") throw ParseError("expected 'mu:'", ln.number, text::column_of(ln.body, body));
        std::string_view r = body.substr(3);
        std::string_view iv = text::trim(text::take_field(r, "i", ln.number, ln.body));
        if (r.data() == nullptr) throw ParseError("expected ';' after i", ln.number, static_cast<int>(ln.body.size()) + 1);
        long long i = text::parse_int(iv, ln.number, text::column_of(ln.body, iv));
        if (i < 1 || i > (1 << 20)) throw ParseError("generator index must be positive", ln.number, text::column_of(ln.body, iv));
        std::string_view tv = text::trim(text::take_field(r, "t", ln.number, ln.body));
        if (!text::trim(r).empty())
            throw ParseError("unexpected text after transposition", ln.number, text::column_of(ln.body, text::trim(r)));
        int tcol = tv.empty() ? static_cast<int>(ln.body.size()) + 1 : text::column_of(ln.body, tv);
        Perm pm = parse_perm(tv, static_cast<int>(n), ln.number, tcol);
        if (!pm.is_transposition()) throw ParseError("image is not a transposition", ln.number, tcol);
        if (imgs.size() < static_cast<std::size_t>(i)) imgs.resize(static_cast<std::size_t>(i));
        if (imgs[static_cast<std::size_t>(i - 1)])
            throw ParseError("x" + std::to_string(i) + " assigned twice", ln.number, text::column_of(ln.body, iv));
        imgs[static_cast<std::size_t>(i - 1)] = pm;
    }
    std::vector<Perm> out;
    for (std::size_t k = 0; k < imgs.size(); ++k) {
        if (!imgs[k]) throw ParseError("x" + std::to_string(k + 1) + " has no image", last_line, 1);
        out.push_back(*imgs[k]);
    }
    return MonodromyAssignment(static_cast<int>(n), std::move(out));
}

std::string to_string(const MonodromyAssignment& mu) {
    std::string out = "degree=" + std::to_string(mu.degree) + ";\n";
    for (int i = 1; i <= mu.rank(); ++i) out += "mu: i=" + std::to_string(i) + "; t=" + to_string(mu(i)) + "\n";
    return out;
}

json to_json(const MonodromyAssignment& mu) {
    json imgs = json::array();
    for (const Perm& p : mu.images) imgs.push_back(to_string(p));
    return {{"degree", mu.degree}, {"images", imgs}};
}

MonodromyPair parse_pair(std::string_view t) {
    auto lines = text::split_lines(t);
    for (const auto& ln : lines) {
        if (text::trim(ln.body).substr(0, 7) != "degree=") continue;
        std::size_t off = static_cast<std::size_t>(ln.body.data() - t.data());
        std::size_t bol = t.rfind('\n', off == 0 ? 0 : off - 1);
        bol = bol == std::string_view::npos || off == 0 ? 0 : bol + 1;
        std::string tail(static_cast<std::size_t>(ln.number - 1), '\n');
        tail += t.substr(bol);
        return MonodromyPair::make(parse_factorization(t.substr(0, bol)), parse_monodromy(tail));
    }
    throw ParseError("pair file has no 'degree=' section", lines.empty() ? 1 : lines.back().number, 1);
}

std::string to_string(const MonodromyPair& p) { return to_string(p.s) + to_string(p.mu); }

}  // namespace braidfac
