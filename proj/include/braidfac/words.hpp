#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace braidfac {

// +i is x_i, -i is x_i^-1
using Letter = std::int32_t;

std::size_t word_length_budget();
void set_word_length_budget(std::size_t letters);

class Word {
public:
    Word() = default;
    explicit Word(int rank) : rank_(rank) {}
    Word(const std::vector<Letter>& raw, int rank);

    static Word gen(int i, int rank);
    static Word boundary(int rank);  // x_1 x_2 ... x_m

    int rank() const { return rank_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    const std::vector<Letter>& letters() const { return letters_; }
    Letter operator[](std::size_t k) const { return letters_[k]; }
    int max_index() const;

    Word with_rank(int rank) const;
    std::uint64_t hash() const;

    bool operator==(const Word& o) const { return rank_ == o.rank_ && letters_ == o.letters_; }
    bool operator!=(const Word& o) const { return !(*this == o); }
    bool operator<(const Word& o) const;

private:
    friend class WordBuilder;
    std::vector<Letter> letters_;
    int rank_ = 0;
};

// Stack reducer; appending keeps the buffer freely reduced.
class WordBuilder {
public:
    explicit WordBuilder(int rank) : rank_(rank) {}
    void push(Letter l);
    void append(const Word& w);
    void append_inverse(const Word& w);
    std::size_t size() const { return buf_.size(); }
    Word finish();

private:
    void check_budget() const;
    std::vector<Letter> buf_;
    int rank_;
};

Word reduce(const std::vector<Letter>& raw, int rank);
Word compose(const Word& u, const Word& v);
Word compose(std::initializer_list<Word> ws);
Word invert(const Word& u);
Word conjugate(const Word& u, const Word& by);  // by^-1 u by
Word commutator(const Word& a, const Word& b);  // a b a^-1 b^-1
Word power(const Word& u, int e);

// endomorphism x_i -> images[i-1]
Word substitute(const Word& w, const std::vector<Word>& images, int rank);

Word shift_word(const Word& w, int m);
Word moving_apart(const Word& w, int k, int p);

struct GeneratorConjugate {
    Word v;     // w = v x_j v^-1
    int index;  // j
};
std::optional<GeneratorConjugate> generator_conjugate(const Word& w);
std::optional<int> is_conjugate_to_generator(const Word& w);
bool is_good_geometric_base(const std::vector<Word>& ys);

Word parse_word(std::string_view text, int rank);
std::string to_string(const Word& w);

}  // namespace braidfac
