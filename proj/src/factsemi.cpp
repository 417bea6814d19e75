#include "braidfac/factsemi.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <map>
#include <mutex>
#include <unordered_map>

#include "braidfac/error.hpp"
#include "text.hpp"

namespace braidfac {

std::string class_name(FactorClass c) {
    switch (c) {
        case FactorClass::Am3: return "A-3";
        case FactorClass::Am1: return "A-1";
        case FactorClass::A0: return "A0";
        case FactorClass::A1: return "A1";
        case FactorClass::A2: return "A2";
        case FactorClass::Generic: return "GENERIC";
    }
    return "GENERIC";
}

Braid generator_conjugator(int k, int strands) {
    std::vector<Letter> w;
    for (int j = k - 1; j >= 1; --j) {
        w.push_back(j);
        w.push_back(j + 1);
    }
    return Braid(strands, std::move(w));
}

Factor Factor::tagged(const Braid& g, int e) {
    if (g.strands() < 2) throw RankError("tagged factors need at least two strands");
    Braid p = Braid::gen(1, g.strands()).pow(e);
    Braid gi = g.inverse();
    return Factor(g, e, true, g * p * gi, g * p.inverse() * gi);
}

Factor Factor::raw(const Braid& value) {
    return Factor(Braid(value.strands()), 0, false, value, value.inverse());
}

FactorClass Factor::cls() const {
    if (!tagged_) return FactorClass::Generic;
    switch (e_) {
        case -2: return FactorClass::Am3;
        case 0: return FactorClass::Am1;
        case 1: return FactorClass::A0;
        case 2: return FactorClass::A1;
        case 3: return FactorClass::A2;
        default: return FactorClass::Generic;
    }
}

int Factor::exponent_sum() const { return tagged_ ? e_ : braidfac::exponent_sum(value_); }

Factor Factor::conjugated(const Braid& b, const Braid& b_inv) const {
    (void)b.form();
    (void)b_inv.form();
    (void)value_.form();
    (void)inv_.form();
    Braid g = tagged_ ? b * g_ : g_;
    return Factor(std::move(g), e_, tagged_, b * value_ * b_inv, b * inv_ * b_inv);
}

Factor Factor::conjugated(const Braid& b) const { return conjugated(b, b.inverse()); }

Factor Factor::embedded(int strands) const {
    return Factor(embed(g_, strands), e_, tagged_, embed(value_, strands), embed(inv_, strands));
}

Factor Factor::shifted() const {
    const int m = strands();
    Braid g = tagged_ ? shift_braid(g_) * generator_conjugator(m + 1, 2 * m) : Braid(2 * m);
    return Factor(std::move(g), e_, tagged_, shift_braid(value_), shift_braid(inv_));
}

Factor Factor::inverse_tagged() const {
    if (!tagged_) return raw(inv_);
    return Factor(g_, -e_, true, inv_, value_);
}

bool Factor::operator==(const Factor& o) const {
    if (tagged_ != o.tagged_) return false;
    if (tagged_ && e_ != o.e_) return false;
    return value_.strands() == o.value_.strands() && value_.form() == o.value_.form();
}

std::uint64_t Factorization::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ static_cast<std::uint64_t>(strands);
    for (const Factor& f : factors) {
        h ^= f.value().hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= static_cast<std::uint64_t>(f.is_tagged() ? f.exponent() + 1000 : 0) * 0x100000001b3ULL;
    }
    return h;
}

Braid alpha(const Factorization& s) {
    Braid acc(s.strands);
    (void)acc.form();
    for (const Factor& f : s.factors) {
        (void)f.value().form();
        acc = acc * f.value();
    }
    return acc;
}

bool alpha_is_full_twist(const Factorization& s) {
    return alpha(s).form() == full_twist(s.strands).form();
}

void check_declared_target(const Factorization& s) {
    if (!s.declared_target) return;
    json d = form_difference(alpha(s).form(), s.declared_target->form());
    if (!d.is_null()) throw PreconditionError("alpha(s) differs from the declared target", d.dump());
}

namespace {
void check_position(const Factorization& s, int k) {
    if (k < 1 || k + 1 > static_cast<int>(s.size()))
        throw PreconditionError("hurwitz position " + std::to_string(k) + " out of range for " +
                                std::to_string(s.size()) + " factors");
}
}  // namespace

Factorization hurwitz_move(const Factorization& s, int k, Direction d) {
    check_position(s, k);
    Factorization out = s;
    const Factor& u = s.factors[k - 1];
    const Factor& v = s.factors[k];
    if (d == Direction::Fwd) {
        out.factors[k - 1] = v;
        out.factors[k] = u.conjugated(v.inverse_value(), v.value());
    } else {
        out.factors[k - 1] = v.conjugated(u.value(), u.inverse_value());
        out.factors[k] = u;
    }
    return out;
}

Factorization conjugate_factorization(const Factorization& s, const Braid& g) {
    if (g.strands() != s.strands) throw RankError("strand mismatch in simultaneous conjugation");
    Braid gi = g.inverse();
    Factorization out(s.strands);
    out.factors.reserve(s.size());
    for (const Factor& f : s.factors) out.factors.push_back(f.conjugated(g, gi));
    if (s.declared_target) out.declared_target = g * *s.declared_target * gi;
    return out;
}

Factorization concat(const Factorization& a, const Factorization& b) {
    if (a.strands != b.strands) throw RankError("strand mismatch in concatenation");
    Factorization out = a;
    out.declared_target.reset();
    out.factors.insert(out.factors.end(), b.factors.begin(), b.factors.end());
    return out;
}

Factorization embed_factorization(const Factorization& s, int strands) {
    Factorization out(strands);
    out.factors.reserve(s.size());
    for (const Factor& f : s.factors) out.factors.push_back(f.embedded(strands));
    return out;
}

Factorization shift_factorization(const Factorization& s) {
    Factorization out(2 * s.strands);
    out.factors.reserve(s.size());
    for (const Factor& f : s.factors) out.factors.push_back(f.shifted());
    return out;
}

const Factorization& r_tilde(int m) {
    static std::mutex mu;
    static std::map<int, Factorization> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    Factorization r(2 * m);
    Braid h = generator_conjugator(m, 2 * m);
    for (int i = m; i >= 1; --i) {
        Factor f = Factor::tagged(c_conjugator(m, i) * h, 1);
        (void)f.value().form();
        (void)f.inverse_value().form();
        r.factors.push_back(f);
    }
    return cache.emplace(m, std::move(r)).first->second;
}

Factorization double_factorization(const Factorization& s1, const Factorization& s2,
                                   const Factorization& s3, const Factorization& s4) {
    const int m = s1.strands;
    const Factorization* in[4] = {&s1, &s2, &s3, &s4};
    ArtinForm twist = full_twist(m).form();
    for (int q = 0; q < 4; ++q) {
        if (in[q]->strands != m) throw RankError("doubling inputs must share the strand count");
        json d = form_difference(alpha(*in[q]).form(), twist);
        if (!d.is_null()) {
            d["input"] = q + 1;
            throw PreconditionError("doubling input " + std::to_string(q + 1) +
                                        " is not a factorization of the full twist",
                                    d.dump());
        }
    }
    Factorization out(2 * m);
    out.factors.reserve(s1.size() + s2.size() + s3.size() + s4.size() + 2 * m);
    for (const Factor& f : s1.factors) out.factors.push_back(f.embedded(2 * m));
    for (const Factor& f : s2.factors) out.factors.push_back(f.embedded(2 * m));
    for (const Factor& f : s3.factors) out.factors.push_back(f.shifted());
    for (const Factor& f : s4.factors) out.factors.push_back(f.shifted());
    const Factorization& r = r_tilde(m);
    for (int t = 0; t < 2; ++t) out.factors.insert(out.factors.end(), r.factors.begin(), r.factors.end());
    return out;
}

Factorization double1(const Factorization& s) { return double_factorization(s, s, s, s); }

Factorization iterate_double(const Factorization& s, int n) {
    Factorization out = s;
    for (int t = 0; t < n; ++t) out = double1(out);
    return out;
}

Factorization insert_cancel_pair(const Factorization& s, int pos, const Factor& g) {
    if (!g.is_tagged() || g.exponent() != 2)
        throw ClassError("cancellation pairs need a factor of class A1");
    if (g.strands() != s.strands) throw RankError("strand mismatch in cancellation pair");
    if (pos < 1 || pos > static_cast<int>(s.size()) + 1)
        throw PreconditionError("insertion position out of range");
    Factorization out = s;
    auto at = out.factors.begin() + (pos - 1);
    at = out.factors.insert(at, g.inverse_tagged());
    out.factors.insert(at, g);
    return out;
}

Factorization remove_cancel_pair(const Factorization& s, int pos) {
    if (pos < 1 || pos + 1 > static_cast<int>(s.size()))
        throw PreconditionError("no cancellation pair at position " + std::to_string(pos));
    const Factor& a = s.factors[pos - 1];
    const Factor& b = s.factors[pos];
    if (!a.is_tagged() || !b.is_tagged() || a.exponent() != 2 || b.exponent() != -2 ||
        a.inverse_value().form() != b.value().form())
        throw PreconditionError("factors at " + std::to_string(pos) +
                                " are not a cancellation pair (g, g^-1)");
    Factorization out = s;
    out.factors.erase(out.factors.begin() + (pos - 1), out.factors.begin() + (pos + 1));
    return out;
}

json Fingerprint::to_json() const {
    json j;
    j["alpha_hash"] = alpha_form.hash();
    json cm = json::array();
    for (const auto& [c, e] : factor_class_multiset) cm.push_back({{"class", c}, {"e", e}});
    j["factor_class_multiset"] = cm;
    j["permutation_word"] = permutation_word;
    j["exponent_sum"] = exponent_sum;
    return j;
}

Fingerprint fingerprint(const Factorization& s) {
    Fingerprint fp;
    fp.alpha_form = alpha(s).form();
    for (const Factor& f : s.factors) {
        fp.factor_class_multiset.emplace_back(class_name(f.cls()), f.exponent_sum());
        fp.permutation_word.push_back(permutation(f.value()));
        fp.exponent_sum += f.exponent_sum();
    }
    std::sort(fp.factor_class_multiset.begin(), fp.factor_class_multiset.end());
    return fp;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::SameOrbit: return "same_orbit";
        case Verdict::Distinct: return "distinct";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

json OrbitMove::to_json() const {
    if (kind == Kind::Hurwitz)
        return json{{"move", "hurwitz"},
                    {"position", position},
                    {"direction", dir == Direction::Fwd ? "fwd" : "bwd"}};
    return json{{"move", "conj"}, {"generator", generator}};
}

json OrbitResult::to_json() const {
    json j;
    j["verdict"] = verdict_name(verdict);
    if (verdict == Verdict::SameOrbit) {
        json p = json::array();
        for (const auto& mv : path) p.push_back(mv.to_json());
        j["path"] = p;
    }
    j["reason"] = reason;
    j["nodes"] = nodes;
    return j;
}

Factorization apply_move(const Factorization& s, const OrbitMove& mv) {
    if (mv.kind == OrbitMove::Kind::Hurwitz) return hurwitz_move(s, mv.position, mv.dir);
    int g = mv.generator > 0 ? mv.generator : -mv.generator;
    Braid b = Braid::gen(g, s.strands, mv.generator > 0 ? 1 : -1);
    Factorization out(s.strands);
    Braid bi = b.inverse();
    for (const Factor& f : s.factors) out.factors.push_back(f.conjugated(b, bi));
    return out;
}

namespace {

std::uint64_t state_key(const Factorization& s) {
    std::uint64_t h = 0x84222325cbf29ce4ULL;
    for (const Factor& f : s.factors) h = (h ^ f.value().hash()) * 0x100000001b3ULL + (h >> 29);
    return h;
}

bool same_state(const Factorization& a, const Factorization& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a.factors[k].value().form() != b.factors[k].value().form()) return false;
    return true;
}

std::vector<OrbitMove> moves_for(const Factorization& s, MoveSet ms) {
    std::vector<OrbitMove> out;
    if (ms.hurwitz)
        for (int k = 1; k + 1 <= static_cast<int>(s.size()); ++k)
            for (Direction d : {Direction::Fwd, Direction::Bwd})
                out.push_back({OrbitMove::Kind::Hurwitz, k, d, 0});
    if (ms.conj)
        for (int g = 1; g < s.strands; ++g)
            for (int sign : {1, -1}) out.push_back({OrbitMove::Kind::Conj, 0, Direction::Fwd, sign * g});
    return out;
}

std::vector<int> cycle_type(const std::vector<int>& p) {
    std::vector<int> seen(p.size(), 0), out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j] - 1)) {
            seen[j] = 1;
            ++len;
        }
        out.push_back(len);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string invariant_difference(const Factorization& a, const Factorization& b, MoveSet ms) {
    if (a.size() != b.size()) return "factor count differs";
    Fingerprint fa = fingerprint(a), fb = fingerprint(b);
    if (fa.factor_class_multiset != fb.factor_class_multiset) return "class multiset differs";
    if (fa.exponent_sum != fb.exponent_sum) return "exponent sum differs";
    if (!ms.conj) {
        if (fa.alpha_form != fb.alpha_form) return "alpha differs";
    } else if (cycle_type(permutation(alpha(a))) != cycle_type(permutation(alpha(b)))) {
        return "alpha permutation cycle type differs";
    }
    return {};
}

struct Node {
    Factorization s;
    std::uint64_t key;
    int parent;
    OrbitMove move;
};

struct Visited {
    std::vector<Node> nodes;
    std::unordered_multimap<std::uint64_t, int> index;

    bool contains(const Factorization& s, std::uint64_t key) const {
        auto [lo, hi] = index.equal_range(key);
        for (auto it = lo; it != hi; ++it)
            if (same_state(nodes[it->second].s, s)) return true;
        return false;
    }
    int add(Node n) {
        int id = static_cast<int>(nodes.size());
        index.emplace(n.key, id);
        nodes.push_back(std::move(n));
        return id;
    }
    std::vector<OrbitMove> path_to(int id, const OrbitMove* last) const {
        std::vector<OrbitMove> p;
        if (last) p.push_back(*last);
        for (; id > 0; id = nodes[id].parent) p.push_back(nodes[id].move);
        std::reverse(p.begin(), p.end());
        return p;
    }
};

struct Successor {
    Factorization s;
    std::uint64_t key;
    OrbitMove move;
};

std::vector<Successor> expand(const Factorization& s, MoveSet ms) {
    std::vector<Successor> out;
    for (const OrbitMove& mv : moves_for(s, ms)) {
        Factorization t = apply_move(s, mv);
        std::uint64_t k = state_key(t);
        out.push_back({std::move(t), k, mv});
    }
    return out;
}

struct Prelude {
    bool done = false;
    OrbitResult result;
};

Prelude start(const Factorization& s1, const Factorization& s2, MoveSet ms, std::size_t budget) {
    Prelude p;
    if (s1.strands != s2.strands) throw RankError("orbit search needs equal strand counts");
    if (budget == 0) throw PreconditionError("orbit budget must be positive");
    std::string diff = invariant_difference(s1, s2, ms);
    if (!diff.empty()) {
        p.done = true;
        p.result.verdict = Verdict::Distinct;
        p.result.reason = diff;
        return p;
    }
    if (same_state(s1, s2)) {
        p.done = true;
        p.result.verdict = Verdict::SameOrbit;
        p.result.reason = "identical";
        p.result.nodes = 1;
    }
    return p;
}

// shared by both drivers: returns true when the search is finished
bool offer(Visited& vis, const Factorization& target, std::uint64_t tkey, int parent,
           Successor&& sc, std::size_t budget, OrbitResult& res, std::vector<int>& next) {
    if (sc.key == tkey && same_state(sc.s, target)) {
        res.verdict = Verdict::SameOrbit;
        res.path = vis.path_to(parent, &sc.move);
        res.reason = "target reached";
        res.nodes = vis.nodes.size();
        return true;
    }
    if (vis.contains(sc.s, sc.key)) return false;
    if (vis.nodes.size() >= budget) {
        res.verdict = Verdict::Inconclusive;
        res.reason = "node budget exhausted";
        res.nodes = vis.nodes.size();
        return true;
    }
    next.push_back(vis.add({std::move(sc.s), sc.key, parent, sc.move}));
    return false;
}

}  // namespace

OrbitResult orbit_search_serial(const Factorization& s1, const Factorization& s2, MoveSet ms,
                                std::size_t budget) {
    Prelude pre = start(s1, s2, ms, budget);
    if (pre.done) return pre.result;
    Visited vis;
    vis.add({s1, state_key(s1), -1, {}});
    std::uint64_t tkey = state_key(s2);
    std::deque<int> queue{0};
    OrbitResult res;
    std::vector<int> fresh;
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        for (Successor& sc : expand(vis.nodes[id].s, ms)) {
            fresh.clear();
            if (offer(vis, s2, tkey, id, std::move(sc), budget, res, fresh)) return res;
            for (int f : fresh) queue.push_back(f);
        }
    }
    res.verdict = Verdict::Distinct;
    res.reason = "orbit exhausted without reaching the target";
    res.nodes = vis.nodes.size();
    return res;
}

OrbitResult orbit_search(const Factorization& s1, const Factorization& s2, MoveSet ms,
                         std::size_t budget) {
    Prelude pre = start(s1, s2, ms, budget);
    if (pre.done) return pre.result;
    Visited vis;
    vis.add({s1, state_key(s1), -1, {}});
    std::uint64_t tkey = state_key(s2);
    std::vector<int> frontier{0};
    OrbitResult res;
    while (!frontier.empty()) {
        const int n = static_cast<int>(frontier.size());
        std::vector<std::vector<Successor>> succ(n);
        std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
        for (int q = 0; q < n; ++q) {
            try {
                succ[q] = expand(vis.nodes[frontier[q]].s, ms);
                for (auto& sc : succ[q])
                    for (const Factor& f : sc.s.factors) {
                        (void)f.value().form();
                        (void)f.inverse_value().form();
                    }
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        std::vector<int> next;
        for (int q = 0; q < n; ++q)
            for (Successor& sc : succ[q])
                if (offer(vis, s2, tkey, frontier[q], std::move(sc), budget, res, next)) return res;
        frontier = std::move(next);
    }
    res.verdict = Verdict::Distinct;
    res.reason = "orbit exhausted without reaching the target";
    res.nodes = vis.nodes.size();
    return res;
}

Factorization parse_factorization(std::string_view t) {
    auto lines = text::split_lines(t);
    if (lines.empty()) throw ParseError("empty factorization file", 1, 1);
    const auto& head = lines.front();
    std::string_view rest = head.body;
    auto val = text::trim(text::take_field(rest, "strands", head.number, head.body));
    if (head.body.find(';') == std::string_view::npos)
        throw ParseError("expected ';' after strand count", head.number,
                         static_cast<int>(head.body.size()) + 1);
    long long m = text::parse_int(val, head.number, text::column_of(head.body, val));
    if (m < 1) throw ParseError("strand count must be positive", head.number, 1);
    if (!text::trim(rest).empty())
        throw ParseError("unexpected text after header", head.number,
                         text::column_of(head.body, text::trim(rest)));
    Factorization s(static_cast<int>(m));
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto& ln = lines[k];
        std::string_view body = text::trim(ln.body);
        int col = text::column_of(ln.body, body);
        if (body.substr(0, 4) == "raw:") {
            std::string_view w = body.substr(4);
            s.factors.push_back(Factor::raw(parse_braid_word(
                w, s.strands, ln.number, text::column_of(ln.body, w))));
        } else if (body.substr(0, 5) == "conj:") {
            std::string_view r = body.substr(5);
            std::string_view g = text::take_field(r, "g", ln.number, ln.body);
            if (r.data() == nullptr || body.find(';') == std::string_view::npos)
                throw ParseError("expected ';' after conjugator", ln.number,
                                 static_cast<int>(ln.body.size()) + 1);
            std::string_view e = text::trim(text::take_field(r, "e", ln.number, ln.body));
            if (!text::trim(r).empty())
                throw ParseError("unexpected text after exponent", ln.number,
                                 text::column_of(ln.body, text::trim(r)));
            Braid gb = parse_braid_word(g, s.strands, ln.number, text::column_of(ln.body, g));
            long long ev = text::parse_int(e, ln.number, text::column_of(ln.body, e));
            if (s.strands < 2) throw ParseError("tagged factor needs two strands", ln.number, col);
            s.factors.push_back(Factor::tagged(gb, static_cast<int>(ev)));
        } else {
            throw ParseError("expected 'raw:' or 'conj:'", ln.number, col);
        }
    }
    return s;
}

std::string to_string(const Factorization& s) {
    std::string out = "strands=" + std::to_string(s.strands) + ";\n";
    for (const Factor& f : s.factors) {
        if (f.is_tagged())
            out += "conj: g=" + word_string(f.conjugator()) + "; e=" + std::to_string(f.exponent()) + "\n";
        else
            out += "raw: " + word_string(f.value()) + "\n";
    }
    return out;
}

json to_json(const Factorization& s) {
    json fs = json::array();
    for (const Factor& f : s.factors) {
        if (f.is_tagged())
            fs.push_back({{"g", word_string(f.conjugator())}, {"e", f.exponent()}});
        else
            fs.push_back({{"raw", word_string(f.value())}});
    }
    return json{{"strands", s.strands}, {"factors", fs}};
}

}  // namespace braidfac
