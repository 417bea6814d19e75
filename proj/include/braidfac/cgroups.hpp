#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "braidfac/braid.hpp"
#include "braidfac/factsemi.hpp"

namespace braidfac {

// conj: x_i = w^-1 x_j w; raw: u = 1
struct CRelation {
    enum class Kind { Conj, Raw } kind = Kind::Raw;
    int i = 0, j = 0;
    Word w;
    Word u;

    static CRelation conj(int i, int j, const Word& w);
    static CRelation raw(const Word& u);

    // the relator as a reduced word of the given rank
    Word relator(int rank) const;
    int max_index() const;
    bool operator==(const CRelation& o) const;
    bool operator!=(const CRelation& o) const { return !(*this == o); }
};

struct CPresentation {
    int rank = 0;
    std::vector<CRelation> relations;

    CPresentation() = default;
    explicit CPresentation(int m) : rank(m) {}
    CPresentation(int m, std::vector<CRelation> rs);

    std::vector<Word> relators() const;
    void add(const CRelation& r);
};

CPresentation presentation_from_factorization(const Factorization& s);
CPresentation projective_quotient(const CPresentation& p);

enum class DoublingMode { Full, Reduced };
CPresentation double_relations(const CPresentation& p, DoublingMode mode);
CPresentation iterate_double_relations(const CPresentation& p, int n, DoublingMode mode);

// x_{i1} = w^-1 x_{i2} w with |w| >= 2 as a chain of |w| conjugation relations in rank m+|w|-1
std::vector<CRelation> rewrite_to_c_relations(int i1, int i2, const Word& w);
CRelation lemma_ak_reduce(const Braid& g, int j, int k);

constexpr std::uint64_t default_hom_node_budget = std::uint64_t{1} << 28;

// maps x_i -> S_n killing every relator; nodes of the search tree are charged to the budget
std::uint64_t hom_count(const CPresentation& p, int n, bool transpositions_only = false,
                        std::uint64_t node_budget = default_hom_node_budget);
std::uint64_t hom_count_serial(const CPresentation& p, int n, bool transpositions_only = false,
                               std::uint64_t node_budget = default_hom_node_budget);

// [x_i^-1, x_1...x_m]
Word full_twist_relator(int i, int m);
bool is_full_twist_class(const CPresentation& p);
CPresentation append_full_twist_relations(const CPresentation& p);

// g with g(x_1) = y and g(x_2) = x_target in Br_strands
struct RealizingBraid {
    Braid g;
    Braid b;  // g a_1 g^-1
    Word y;
    int target = 0;
};
// relation x_i = w^-1 x_j w over F_m, realized modulo the identifications x_{tm+q} = x_q
RealizingBraid realizing_braid(int i, int j, const Word& w, int m, int strands);
// strands needed by realizing_braid
int realizing_strands(const Word& w, int m);
bool verify_realizing_braid(const RealizingBraid& r);

enum class DoublingPolicy { Fixed, Minimal };

struct CompileStep {
    std::size_t relation = 0;  // 1-based
    std::string text;
    bool full_twist = false;
    int doublings = 0;
    int strands_before = 0;
    int strands_after = 0;
    int target = 0;
    std::string y;
    std::size_t g_length = 0;
    bool hint = false;
    std::size_t factors = 0;
    json to_json() const;
};

struct CompileResult {
    Factorization s;
    std::vector<CompileStep> log;
    json to_json() const;
};

// hints: 1-based relation number -> conjugator g
CompileResult compile_dgroup(const CPresentation& p, const std::map<std::size_t, Braid>& hints = {},
                             DoublingPolicy policy = DoublingPolicy::Fixed);

// (a_{l-1} ... a_{k+1}) a_k (a_{l-1} ... a_{k+1})^-1
Braid b_kl(int k, int l, int strands);
Factorization torus_factorization(int p, int q);
// Delta_{p+1}^2 = Delta_p^2 prod b_{k,p+1}^2
Report verify_torus_identity(int p);
// alpha of the torus factorization is Delta_{p+1}^{2q}
Report verify_torus_factorization(int p, int q);

CPresentation parse_presentation(std::string_view text);
std::string to_string(const CRelation& r);
std::string to_string(const CPresentation& p);
json to_json(const CPresentation& p);

}  // namespace braidfac
