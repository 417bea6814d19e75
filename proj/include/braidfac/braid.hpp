#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "braidfac/words.hpp"

namespace braidfac {

// images (b(x_1), ..., b(x_m)) under the Artin action
struct ArtinForm {
    int strands = 0;
    std::vector<Word> images;

    bool operator==(const ArtinForm& o) const {
        return strands == o.strands && images == o.images;
    }
    bool operator!=(const ArtinForm& o) const { return !(*this == o); }
    std::uint64_t hash() const;
    bool is_identity() const;
};

ArtinForm identity_form(int strands);
ArtinForm form_of_word(int strands, const std::vector<Letter>& word);
// form of the product a*b
ArtinForm compose_forms(const ArtinForm& a, const ArtinForm& b);

class Braid {
public:
    Braid() : Braid(1) {}
    explicit Braid(int strands);
    Braid(int strands, std::vector<Letter> word);

    static Braid gen(int i, int strands, int sign = 1);

    int strands() const { return strands_; }
    const std::vector<Letter>& word() const { return word_; }
    std::size_t length() const { return word_.size(); }
    bool empty() const { return word_.empty(); }

    const ArtinForm& form() const;
    bool has_form() const;

    Braid operator*(const Braid& o) const;
    Braid inverse() const;
    Braid pow(int e) const;

    std::uint64_t hash() const;

private:
    struct State {
        std::once_flag once;
        ArtinForm form;
        std::uint64_t hash = 0;
        std::atomic<bool> ready{false};
    };
    Braid(int strands, std::vector<Letter> word, ArtinForm form);
    int strands_;
    std::vector<Letter> word_;
    std::shared_ptr<State> state_;

    friend Braid shift_braid(const Braid& b);
    friend Braid embed(const Braid& b, int strands);
};

Word artin_apply(const Braid& b, const Word& w);
ArtinForm canonical_form(const Braid& b);
bool braid_equal(const Braid& a, const Braid& b);
std::uint64_t braid_hash(const Braid& b);

// p[i-1] = sigma_b(i); b(x_i) is conjugate to x_{sigma_b(i)}
std::vector<int> permutation(const Braid& b);
int exponent_sum(const Braid& b);

Braid garside(int k, int i, int m);
Braid full_twist(int m);
// full twist on the strands a..b (inclusive), inside Br_m
Braid window_full_twist(int a, int b, int m);
Braid shift_braid(const Braid& b);
Braid embed(const Braid& b, int strands);

// "strands=<m>; a1 a3^-1"
Braid parse_braid(std::string_view text);
Braid parse_braid_word(std::string_view text, int strands, int line = 1, int col = 1);
std::string to_string(const Braid& b);
std::string word_string(const Braid& b);

}  // namespace braidfac
