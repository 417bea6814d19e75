#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "braidfac/braid.hpp"

namespace braidfac {

using json = nlohmann::ordered_json;

enum class TwistKind { A_MI, C_BAR, C, R_BAR, R };

struct TwistElement {
    TwistKind kind;
    int m;
    int i;  // 0 when unused
    Braid value;
};

TwistElement build(TwistKind kind, int m, int i = 0);

Braid a_mi(int m, int i);
Braid c_bar(int m, int i);
Braid c_elem(int m, int i);
// Delta_{m,m}^-1 (a_{m,i} ... a_{m,m-1}); conjugates a_m to c_{m,i}
Braid c_conjugator(int m, int i);
Braid r_bar(int m);
Braid r_elem(int m);

struct Report {
    std::string statement;
    int m = 0;
    std::optional<int> i;
    bool pass = false;
    json witness;  // null on pass
    json to_json() const;
};

// witness describing the first image where two forms differ, or null
json form_difference(const ArtinForm& lhs, const ArtinForm& rhs);

Report verify_lemma_delta(int m);
Report verify_doubling_formula(int m);
Report verify_claim_shift(int m, int i);
// action of every Delta_{k,i} (k <= k_max) embedded in Br_m for all m <= m_max
Report verify_garside_action(int m_max, int k_max = 5);
// boundary conjugation by the full twist and centrality against random braids
Report verify_full_twist(int m, int samples, std::uint64_t seed, int length = 20);

}  // namespace braidfac
