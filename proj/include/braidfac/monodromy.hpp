#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "braidfac/factsemi.hpp"
#include "braidfac/perm.hpp"

namespace braidfac {

// x_i -> transposition in S_degree
struct MonodromyAssignment {
    int degree = 0;
    std::vector<Perm> images;

    MonodromyAssignment() = default;
    MonodromyAssignment(int n, std::vector<Perm> imgs);

    int rank() const { return static_cast<int>(images.size()); }
    const Perm& operator()(int i) const { return images[static_cast<std::size_t>(i - 1)]; }
    bool operator==(const MonodromyAssignment& o) const {
        return degree == o.degree && images == o.images;
    }
    bool operator!=(const MonodromyAssignment& o) const { return !(*this == o); }
    std::uint64_t hash() const;
};

// x_{tm+q} -> mu(x_q) on the given rank
MonodromyAssignment periodic_extension(const MonodromyAssignment& mu, int rank);

Perm evaluate_mu(const MonodromyAssignment& mu, const Word& w);
bool check_mu_homomorphism(const Factorization& s, const MonodromyAssignment& mu);

std::uint64_t generated_order(const std::vector<Perm>& gens, int degree);
bool generates_symmetric(const std::vector<Perm>& gens, int degree);
// order of the group generated by mu(g(x_1)), mu(g(x_2)) for a tagged factor (g, e)
std::uint64_t local_order(const MonodromyAssignment& mu, const Factor& f);

struct GenericReport {
    struct Local {
        std::size_t factor = 0;  // 1-based
        std::string cls;
        std::uint64_t order = 0;
        bool pass = false;
    };
    bool epimorphism = false;
    bool transpositions = true;
    bool local_orders = true;
    std::uint64_t image_order = 0;
    std::vector<Local> locals;  // restricted classes only

    bool generic() const { return epimorphism && transpositions && local_orders; }
    json to_json() const;
};

GenericReport check_generic(const Factorization& s, const MonodromyAssignment& mu);

struct MonodromyPair {
    Factorization s;
    MonodromyAssignment mu;

    // checks ranks and homomorphy
    static MonodromyPair make(Factorization s, MonodromyAssignment mu);
    bool operator==(const MonodromyPair& o) const { return s == o.s && mu == o.mu; }
    bool operator!=(const MonodromyPair& o) const { return !(*this == o); }
    std::uint64_t hash() const;
};

MonodromyPair transport_mu_double(const MonodromyPair& p);

enum class PairDirection { Create, Cancel };

// create: g, g^-1 at 1-based positions pos, pos+1; cancel: removes that pair, g must match
MonodromyPair admissible_transform(const MonodromyPair& p, int pos, const Factor& g, PairDirection d);

struct CertStep {
    enum class Kind { Hurwitz, Conj, Insert, Remove } kind = Kind::Hurwitz;
    int position = 0;
    Direction dir = Direction::Fwd;
    Braid g;  // conj: b; insert: conjugator of the A_1 factor
    std::uint64_t hash = 0;  // state after the step
    json to_json() const;
};

struct EquivalenceCertificate {
    std::uint64_t source_hash = 0;
    std::uint64_t target_hash = 0;
    std::vector<CertStep> steps;
    json to_json() const;
};
EquivalenceCertificate certificate_from_json(const json& j);

MonodromyPair apply_step(const MonodromyPair& p, const CertStep& st);

struct ReplayResult {
    bool ok = false;
    std::optional<std::size_t> failed_step;  // 0-based; steps.size() for the final comparison
    std::string reason;
    json to_json() const;
};
ReplayResult verify_certificate(const MonodromyPair& source, const MonodromyPair& target,
                                const EquivalenceCertificate& cert);

struct AlgResult {
    MonodromyPair bar;
    MonodromyPair tilde;
    EquivalenceCertificate cert;
    GenericReport input_generic, bar_generic, tilde_generic;
    int doublings = 0;
    int strands = 0;
    int target = 0;
    std::string y1;
    bool alpha_bar = false, alpha_tilde = false;
    json to_json() const;
};

// y conjugate to a generator, mu(x_i) and mu(y) distinct commuting transpositions
AlgResult theorem_alg_construct(const MonodromyPair& p, int i, const Word& y,
                                const std::optional<Braid>& g_hint = std::nullopt);

// evidence on whether two factorizations have different types
struct TypeSeparation {
    struct Hom {
        int n = 0;
        std::uint64_t first = 0, second = 0;
    };
    OrbitResult orbit;
    std::vector<Hom> homs;
    std::string verdict;  // distinct, same_orbit or inconclusive
    std::string reason;
    json to_json() const;
};
TypeSeparation separate_types(const Factorization& a, const Factorization& b, std::size_t orbit_budget,
                              int hom_max = 3);

// "degree=<N>;" then "mu: i=<i>; t=(<a> <b>)" lines
MonodromyAssignment parse_monodromy(std::string_view text);
std::string to_string(const MonodromyAssignment& mu);
json to_json(const MonodromyAssignment& mu);

// factorization text followed by monodromy text
MonodromyPair parse_pair(std::string_view text);
std::string to_string(const MonodromyPair& p);

}  // namespace braidfac
