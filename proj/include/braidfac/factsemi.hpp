#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "braidfac/braid.hpp"
#include "braidfac/twist.hpp"

namespace braidfac {

// A_{-3}, A_{-1}, A_0, A_1, A_2 for e = -2, 0, 1, 2, 3
enum class FactorClass { Am3, Am1, A0, A1, A2, Generic };
std::string class_name(FactorClass c);

// g a_1^e g^-1, or a raw braid with unknown class
class Factor {
public:
    static Factor tagged(const Braid& g, int e);
    static Factor raw(const Braid& value);

    bool is_tagged() const { return tagged_; }
    const Braid& conjugator() const { return g_; }
    int exponent() const { return e_; }
    FactorClass cls() const;
    const Braid& value() const { return value_; }
    const Braid& inverse_value() const { return inv_; }
    int strands() const { return value_.strands(); }
    int interlacing() const { return 2; }
    int exponent_sum() const;

    // b f b^-1
    Factor conjugated(const Braid& b) const;
    Factor conjugated(const Braid& b, const Braid& b_inv) const;
    Factor embedded(int strands) const;
    Factor shifted() const;
    Factor inverse_tagged() const;  // (g, -e)

    // same tagging, same exponent, equal values
    bool operator==(const Factor& o) const;
    bool operator!=(const Factor& o) const { return !(*this == o); }

private:
    Factor(Braid g, int e, bool tagged, Braid value, Braid inv)
        : g_(std::move(g)), e_(e), tagged_(tagged), value_(std::move(value)), inv_(std::move(inv)) {}
    Braid g_;
    int e_ = 0;
    bool tagged_ = false;
    Braid value_;
    Braid inv_;
};

// a_k = h a_1 h^-1 with h = (a_{k-1} a_k) ... (a_1 a_2)
Braid generator_conjugator(int k, int strands);

struct Factorization {
    int strands = 1;
    std::vector<Factor> factors;
    std::optional<Braid> declared_target;

    Factorization() = default;
    explicit Factorization(int m) : strands(m) {}
    Factorization(int m, std::vector<Factor> fs) : strands(m), factors(std::move(fs)) {}

    std::size_t size() const { return factors.size(); }
    bool operator==(const Factorization& o) const {
        return strands == o.strands && factors == o.factors;
    }
    bool operator!=(const Factorization& o) const { return !(*this == o); }
    std::uint64_t hash() const;
};

Braid alpha(const Factorization& s);
bool alpha_is_full_twist(const Factorization& s);
void check_declared_target(const Factorization& s);

enum class Direction { Fwd, Bwd };

// 1-based position k: acts on factors k and k+1
Factorization hurwitz_move(const Factorization& s, int k, Direction d);
Factorization conjugate_factorization(const Factorization& s, const Braid& g);

Factorization concat(const Factorization& a, const Factorization& b);
Factorization embed_factorization(const Factorization& s, int strands);
Factorization shift_factorization(const Factorization& s);

// (c_{m,m}, ..., c_{m,1}) in Br_2m
const Factorization& r_tilde(int m);
Factorization double_factorization(const Factorization& s1, const Factorization& s2,
                                   const Factorization& s3, const Factorization& s4);
Factorization double1(const Factorization& s);
Factorization iterate_double(const Factorization& s, int n);

// pair (g, g^-1) placed at 1-based positions pos, pos+1
Factorization insert_cancel_pair(const Factorization& s, int pos, const Factor& g);
Factorization remove_cancel_pair(const Factorization& s, int pos);

struct Fingerprint {
    ArtinForm alpha_form;
    std::vector<std::pair<std::string, int>> factor_class_multiset;
    std::vector<std::vector<int>> permutation_word;
    int exponent_sum = 0;
    json to_json() const;
};
Fingerprint fingerprint(const Factorization& s);

struct MoveSet {
    bool hurwitz = true;
    bool conj = false;  // conjugation by a_i^{+-1}
};

struct OrbitMove {
    enum class Kind { Hurwitz, Conj } kind = Kind::Hurwitz;
    int position = 0;  // hurwitz
    Direction dir = Direction::Fwd;
    int generator = 0;  // conj: signed index of a_i^{+-1}
    json to_json() const;
};

enum class Verdict { SameOrbit, Distinct, Inconclusive };
std::string verdict_name(Verdict v);

struct OrbitResult {
    Verdict verdict = Verdict::Inconclusive;
    std::vector<OrbitMove> path;  // same_orbit only
    std::string reason;
    std::size_t nodes = 0;
    json to_json() const;
};

Factorization apply_move(const Factorization& s, const OrbitMove& mv);
// frontier expansion runs on OpenMP threads; the verdict does not depend on their number
OrbitResult orbit_search(const Factorization& s1, const Factorization& s2, MoveSet moves,
                         std::size_t budget);
OrbitResult orbit_search_serial(const Factorization& s1, const Factorization& s2,
                                MoveSet moves, std::size_t budget);

Factorization parse_factorization(std::string_view text);
std::string to_string(const Factorization& s);
json to_json(const Factorization& s);

}  // namespace braidfac
