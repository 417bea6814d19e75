// braidfac command-line driver

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"

#include "braidfac/cgroups.hpp"
#include "braidfac/error.hpp"
#include "braidfac/factsemi.hpp"
#include "braidfac/monodromy.hpp"
#include "braidfac/twist.hpp"
#include "braidfac/words.hpp"

using namespace braidfac;

namespace {

enum Exit { Ok = 0, MathFailure = 1, RunFailure = 2 };

struct RunConfig {
    std::size_t word_length_budget = 1000000;
    std::size_t orbit_node_budget = 100000;
    int hom_degree_max = 5;
    int thread_count = 0;  // 0: OpenMP default
    std::string output;    // empty: stdout
    std::uint64_t seed = 1;

    json to_json() const {
        // thread_count is left out so reports do not depend on it
        return {{"word_length_budget", word_length_budget},
                {"orbit_node_budget", orbit_node_budget},
                {"hom_degree_max", hom_degree_max},
                {"seed", seed}};
    }
};

struct UsageError : Error {
    using Error::Error;
};

void load_config(const std::string& path, RunConfig& c) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config '" + path + "'");
    json j = json::parse(in);
    if (j.contains("word_length_budget")) c.word_length_budget = j["word_length_budget"].get<std::size_t>();
    if (j.contains("orbit_node_budget")) c.orbit_node_budget = j["orbit_node_budget"].get<std::size_t>();
    if (j.contains("hom_degree_max")) c.hom_degree_max = j["hom_degree_max"].get<int>();
    if (j.contains("thread_count")) c.thread_count = j["thread_count"].get<int>();
    if (j.contains("output")) c.output = j["output"].get<std::string>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
}

void validate(const RunConfig& c) {
    if (c.word_length_budget == 0 || c.orbit_node_budget == 0) throw UsageError("budgets must be positive");
    if (c.hom_degree_max < 1 || c.hom_degree_max > 5) throw UsageError("hom_degree_max must be in 1..5");
    if (c.thread_count < 0) throw UsageError("thread_count must be non-negative");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

std::string parsing;  // file being parsed, for error reports

template <class F>
auto parse_file(const std::string& path, F parse) {
    std::string t = slurp(path);
    parsing = path;
    auto v = parse(t);
    parsing.clear();
    return v;
}

json verify_all(const std::vector<Report>& rs, bool& pass) {
    json arr = json::array();
    pass = true;
    for (const Report& r : rs) {
        arr.push_back(r.to_json());
        pass = pass && r.pass;
    }
    return arr;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    bool deterministic = false;
    std::string config_path;
    if (const char* env = std::getenv("BRAIDFAC_CONFIG")) config_path = env;

    CLI::App app{"braid group and factorization toolkit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");
    std::optional<std::size_t> o_word, o_orbit;
    std::optional<int> o_threads, o_hom;
    std::optional<std::uint64_t> o_seed;
    std::optional<std::string> o_output;
    app.add_option("--config", config_path, "JSON run configuration (default: $BRAIDFAC_CONFIG)");
    app.add_option("--threads", o_threads, "OpenMP thread count");
    app.add_option("--seed", o_seed, "seed for randomized sweeps");
    app.add_option("--word-budget", o_word, "maximum word length");
    app.add_option("--orbit-budget", o_orbit, "default orbit node budget");
    app.add_option("--hom-degree-max", o_hom, "largest symmetric group degree for homcount");
    app.add_option("--output", o_output, "report path (default stdout)");
    app.add_flag("--deterministic", deterministic, "omit the timestamp");

    // verify
    auto* verify = app.add_subcommand("verify", "check identities exactly");
    verify->require_subcommand(1);
    std::optional<int> v_m, v_i;
    int v_mmax = 10, v_kmax = 5, v_samples = 100, v_len = 20;
    auto* v_lemma = verify->add_subcommand("lemma-delta", "Delta_2m from the block twists");
    v_lemma->add_option("--m", v_m);
    auto* v_double = verify->add_subcommand("doubling", "doubling formula for the full twist");
    v_double->add_option("--m", v_m);
    auto* v_shift = verify->add_subcommand("claim-shift", "conjugator moving x_m to x_i");
    v_shift->add_option("--m", v_m);
    v_shift->add_option("--i", v_i);
    auto* v_garside = verify->add_subcommand("garside-action", "action of the Garside elements");
    v_garside->add_option("--m-max", v_mmax);
    v_garside->add_option("--k-max", v_kmax);
    auto* v_full = verify->add_subcommand("full-twist", "full twist action and centrality");
    v_full->add_option("--m", v_m);
    v_full->add_option("--samples", v_samples);
    v_full->add_option("--length", v_len);
    auto* v_torus = verify->add_subcommand("torus", "torus twist identity and factorizations");
    std::optional<int> v_p, v_q;
    v_torus->add_option("--p", v_p);
    v_torus->add_option("--q", v_q);

    // compile
    auto* compile = app.add_subcommand("compile", "build a factorization realizing a presentation");
    std::string c_file, c_policy = "fixed", c_emit;
    std::vector<std::string> c_hints;
    std::vector<int> c_hom;
    compile->add_option("presentation", c_file)->required();
    compile->add_option("--policy", c_policy)->check(CLI::IsMember({"fixed", "minimal"}));
    compile->add_option("--hint", c_hints, "k=<braid>, conjugator for relation k");
    compile->add_option("--emit", c_emit, "write the factorization here");
    compile->add_option("--check-hom", c_hom, "compare hom counts to S_N of input and extracted groups");

    auto* present = app.add_subcommand("present", "presentation of the group of a factorization");
    std::string p_file;
    bool p_proj = false;
    present->add_option("factorization", p_file)->required();
    present->add_flag("--projective", p_proj, "add the boundary relation");

    auto* homcount = app.add_subcommand("homcount", "count homomorphisms to S_N");
    std::string h_file;
    int h_n = 0;
    bool h_tr = false;
    homcount->add_option("presentation", h_file)->required();
    homcount->add_option("--N", h_n)->required();
    homcount->add_flag("--transpositions", h_tr, "generators go to transpositions");

    auto* orbit = app.add_subcommand("orbit", "search for moves joining two factorizations");
    std::string o_f1, o_f2;
    std::optional<std::size_t> o_budget;
    bool o_conj = false;
    orbit->add_option("f1", o_f1)->required();
    orbit->add_option("f2", o_f2)->required();
    orbit->add_option("--budget", o_budget);
    orbit->add_flag("--conj", o_conj, "also conjugate by generators");

    auto* algp = app.add_subcommand("alg-pairs", "construct two monodromy pairs and their certificate");
    std::string a_fact, a_mono, a_y, a_hint, a_bar, a_tilde, a_cert;
    int a_i = 0;
    std::size_t a_budget = 20;
    algp->add_option("factorization", a_fact)->required();
    algp->add_option("monodromy", a_mono)->required();
    algp->add_option("--i", a_i)->required();
    algp->add_option("--y", a_y)->required();
    algp->add_option("--hint", a_hint, "conjugator g as a braid");
    algp->add_option("--type-budget", a_budget, "orbit nodes spent comparing the two types");
    algp->add_option("--bar-out", a_bar, "write the first pair");
    algp->add_option("--tilde-out", a_tilde, "write the second pair");
    algp->add_option("--cert-out", a_cert, "write the certificate");

    auto* replay = app.add_subcommand("replay", "check a certificate between two pairs");
    std::string r_src, r_tgt, r_cert;
    replay->add_option("source", r_src)->required();
    replay->add_option("target", r_tgt)->required();
    replay->add_option("certificate", r_cert)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        json r = {{"command", argc > 1 ? argv[1] : ""},
                  {"pass", false},
                  {"error", {{"kind", "usage"}, {"message", e.what()}}},
                  {"exit", RunFailure}};
        std::cout << r.dump(2) << "\n";
        return RunFailure;
    }

    json report;
    std::string command;
    for (auto* s : app.get_subcommands()) {
        command = s->get_name();
        for (auto* t : s->get_subcommands()) command += " " + t->get_name();
    }
    report["command"] = command;
    int status = Ok;

    try {
        if (!config_path.empty()) load_config(config_path, cfg);
        if (o_word) cfg.word_length_budget = *o_word;
        if (o_orbit) cfg.orbit_node_budget = *o_orbit;
        if (o_hom) cfg.hom_degree_max = *o_hom;
        if (o_threads) cfg.thread_count = *o_threads;
        if (o_seed) cfg.seed = *o_seed;
        if (o_output) cfg.output = *o_output;
        validate(cfg);
        report["config"] = cfg.to_json();
        set_word_length_budget(cfg.word_length_budget);
        if (cfg.thread_count > 0) omp_set_num_threads(cfg.thread_count);

        json result;
        bool pass = true, budget_hit = false;
        if (verify->parsed()) {
            std::vector<Report> rs;
            auto ms = [&](int lo, int hi) {
                std::vector<int> out;
                if (v_m) out.push_back(*v_m);
                else
                    for (int m = lo; m <= hi; ++m) out.push_back(m);
                return out;
            };
            if (v_lemma->parsed())
                for (int m : ms(1, 5)) rs.push_back(verify_lemma_delta(m));
            if (v_double->parsed())
                for (int m : ms(1, 5)) rs.push_back(verify_doubling_formula(m));
            if (v_shift->parsed())
                for (int m : ms(1, 4))
                    for (int i = 1; i <= m; ++i)
                        if (!v_i || *v_i == i) rs.push_back(verify_claim_shift(m, i));
            if (v_garside->parsed()) rs.push_back(verify_garside_action(v_mmax, v_kmax));
            if (v_full->parsed())
                for (int m : ms(1, 5)) rs.push_back(verify_full_twist(m, v_samples, cfg.seed, v_len));
            if (v_torus->parsed()) {
                if (v_p && v_q) {
                    rs.push_back(verify_torus_factorization(*v_p, *v_q));
                } else {
                    for (int p = 1; p <= 4; ++p)
                        if (!v_p || *v_p == p) rs.push_back(verify_torus_identity(p));
                    if (!v_p)
                        for (auto [p, q] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{2, 5}})
                            rs.push_back(verify_torus_factorization(p, q));
                }
            }
            if (rs.empty()) throw UsageError("nothing to verify");
            result["reports"] = verify_all(rs, pass);
        } else if (compile->parsed()) {
            CPresentation p = parse_file(c_file, [](const std::string& t) { return parse_presentation(t); });
            std::map<std::size_t, Braid> hints;
            for (const std::string& h : c_hints) {
                auto eq = h.find('=');
                if (eq == std::string::npos) throw UsageError("hint must look like k=<braid>");
                hints[static_cast<std::size_t>(std::stoul(h.substr(0, eq)))] = parse_braid(h.substr(eq + 1));
            }
            CompileResult r = compile_dgroup(p, hints, c_policy == "fixed" ? DoublingPolicy::Fixed : DoublingPolicy::Minimal);
            result = r.to_json();
            result["alpha_full_twist"] = alpha_is_full_twist(r.s);
            pass = result["alpha_full_twist"].get<bool>();
            if (!c_hom.empty()) {
                CPresentation ex = presentation_from_factorization(r.s);
                json hs = json::array();
                for (int n : c_hom) {
                    if (n < 1 || n > cfg.hom_degree_max) throw UsageError("--check-hom degree outside 1..hom_degree_max");
                    std::uint64_t a = hom_count(p, n), b = hom_count(ex, n);
                    hs.push_back({{"N", n}, {"input", a}, {"extracted", b}});
                    pass = pass && a == b;
                }
                result["hom_counts"] = hs;
            }
            if (!c_emit.empty()) write_file(c_emit, to_string(r.s));
        } else if (present->parsed()) {
            Factorization s = parse_file(p_file, [](const std::string& t) { return parse_factorization(t); });
            CPresentation p = presentation_from_factorization(s);
            if (p_proj) p = projective_quotient(p);
            result = to_json(p);
            result["text"] = to_string(p);
        } else if (homcount->parsed()) {
            if (h_n < 1 || h_n > cfg.hom_degree_max)
                throw UsageError("--N must be in 1.." + std::to_string(cfg.hom_degree_max));
            CPresentation p = parse_file(h_file, [](const std::string& t) { return parse_presentation(t); });
            result = {{"rank", p.rank}, {"relations", p.relations.size()}, {"N", h_n},
                      {"transpositions_only", h_tr}, {"count", hom_count(p, h_n, h_tr)}};
        } else if (orbit->parsed()) {
            Factorization a = parse_file(o_f1, [](const std::string& t) { return parse_factorization(t); });
            Factorization b = parse_file(o_f2, [](const std::string& t) { return parse_factorization(t); });
            MoveSet mv;
            mv.conj = o_conj;
            OrbitResult r = orbit_search(a, b, mv, o_budget.value_or(cfg.orbit_node_budget));
            result = r.to_json();
            if (r.verdict == Verdict::Inconclusive) budget_hit = true;
        } else if (algp->parsed()) {
            Factorization s = parse_file(a_fact, [](const std::string& t) { return parse_factorization(t); });
            MonodromyAssignment mu = parse_file(a_mono, [](const std::string& t) { return parse_monodromy(t); });
            MonodromyPair p = MonodromyPair::make(s, mu);
            std::optional<Braid> hint;
            if (!a_hint.empty()) hint = parse_braid(a_hint);
            AlgResult r = theorem_alg_construct(p, a_i, parse_word(a_y, s.strands), hint);
            ReplayResult rep = verify_certificate(r.bar, r.tilde, r.cert);
            result = r.to_json();
            result["replay"] = rep.to_json();
            bool hyp = r.input_generic.generic();
            result["hypothesis_generic"] = hyp;
            result["types"] = separate_types(r.bar.s, r.tilde.s, a_budget, std::min(3, cfg.hom_degree_max)).to_json();
            pass = r.alpha_bar && r.alpha_tilde && rep.ok &&
                   (!hyp || (r.bar_generic.generic() && r.tilde_generic.generic()));
            if (!a_bar.empty()) write_file(a_bar, to_string(r.bar));
            if (!a_tilde.empty()) write_file(a_tilde, to_string(r.tilde));
            if (!a_cert.empty()) write_file(a_cert, r.cert.to_json().dump(1) + "\n");
        } else if (replay->parsed()) {
            MonodromyPair a = parse_file(r_src, [](const std::string& t) { return parse_pair(t); });
            MonodromyPair b = parse_file(r_tgt, [](const std::string& t) { return parse_pair(t); });
            EquivalenceCertificate c =
                parse_file(r_cert, [](const std::string& t) { return certificate_from_json(json::parse(t)); });
            ReplayResult r = verify_certificate(a, b, c);
            result = r.to_json();
            result["steps"] = c.steps.size();
            pass = r.ok;
        }
        report["pass"] = pass;
        report["result"] = result;
        status = !pass ? MathFailure : budget_hit ? RunFailure : Ok;
    } catch (const ParseError& e) {
        report["pass"] = false;
        report["error"] = {{"kind", "parse"}, {"message", e.what()}, {"line", e.line}, {"column", e.column}};
        status = RunFailure;
    } catch (const BudgetError& e) {
        report["pass"] = false;
        report["error"] = {{"kind", "budget"}, {"message", e.what()}, {"length", e.length}};
        status = RunFailure;
    } catch (const PreconditionError& e) {
        report["pass"] = false;
        report["error"] = {{"kind", "precondition"}, {"message", e.what()}};
        if (!e.witness.empty()) report["error"]["witness"] = e.witness;
        status = RunFailure;
    } catch (const RankError& e) {
        report["pass"] = false;
        report["error"] = {{"kind", "rank"}, {"message", e.what()}};
        status = RunFailure;
    } catch (const ClassError& e) {
        report["pass"] = false;
        report["error"] = {{"kind", "class"}, {"message", e.what()}};
        status = RunFailure;
    } catch (const UsageError& e) {
        report["pass"] = false;
        report["error"] = {{"kind", "usage"}, {"message", e.what()}};
        status = RunFailure;
    } catch (const json::exception& e) {
        report["pass"] = false;
        report["error"] = {{"kind", "json"}, {"message", e.what()}};
        status = RunFailure;
    } catch (const std::logic_error& e) {
        report["pass"] = false;
        report["error"] = {{"kind", "usage"}, {"message", e.what()}};
        status = RunFailure;
    } catch (const Error& e) {
        // an identity or construction that should hold did not
        report["pass"] = false;
        report["error"] = {{"kind", "math"}, {"message", e.what()}};
        status = MathFailure;
    }
    if (report.contains("error") && !parsing.empty()) report["error"]["file"] = parsing;
    report["exit"] = status;
    if (!deterministic) {
        auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        report["timestamp"] = buf;
    }
    std::string out = report.dump(2) + "\n";
    if (cfg.output.empty()) {
        std::cout << out;
    } else {
        std::ofstream f(cfg.output, std::ios::binary);
        if (!f) {
            std::cerr << "cannot write '" << cfg.output << "'\n";
            return RunFailure;
        }
        f << out;
    }
    return status;
}
