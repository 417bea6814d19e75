#pragma once

#include <cstdint>
#include <random>

#include "braidfac/braid.hpp"

namespace braidfac {

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }

inline Braid random_braid(Rng& rng, int strands, int length) {
    std::vector<Letter> w;
    if (strands < 2) return Braid(strands);
    for (int t = 0; t < length; ++t) {
        int g = 1 + static_cast<int>(uniform(rng, strands - 1));
        w.push_back(uniform(rng, 2) ? g : -g);
    }
    return Braid(strands, std::move(w));
}

inline Word random_word(Rng& rng, int rank, int length) {
    std::vector<Letter> w;
    for (int t = 0; t < length; ++t) {
        int g = 1 + static_cast<int>(uniform(rng, rank));
        w.push_back(uniform(rng, 2) ? g : -g);
    }
    return Word(w, rank);
}

}  // namespace braidfac
