#include "braidfac/words.hpp"

#include <algorithm>
#include <atomic>

#include "braidfac/error.hpp"
#include "text.hpp"

namespace braidfac {

namespace {
std::atomic<std::size_t> g_budget{1000000};

void check_rank(Letter l, int rank) {
    int i = l > 0 ? l : -l;
    if (l == 0 || i > rank)
        throw RankError("generator index " + std::to_string(i) + " outside rank " +
                        std::to_string(rank));
}

void same_rank(const Word& u, const Word& v) {
    if (u.rank() != v.rank())
        throw RankError("rank mismatch: " + std::to_string(u.rank()) + " vs " +
                        std::to_string(v.rank()));
}
}  // namespace

std::size_t word_length_budget() { return g_budget.load(std::memory_order_relaxed); }
void set_word_length_budget(std::size_t letters) {
    g_budget.store(letters == 0 ? 1 : letters, std::memory_order_relaxed);
}

void WordBuilder::check_budget() const {
    if (buf_.size() > word_length_budget())
        throw BudgetError("word length " + std::to_string(buf_.size()) + " exceeds budget",
                          buf_.size());
}

void WordBuilder::push(Letter l) {
    if (!buf_.empty() && buf_.back() == -l)
        buf_.pop_back();
    else {
        buf_.push_back(l);
        if ((buf_.size() & 1023) == 0) check_budget();
    }
}

void WordBuilder::append(const Word& w) {
    for (Letter l : w.letters()) push(l);
}

void WordBuilder::append_inverse(const Word& w) {
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) push(-*it);
}

Word WordBuilder::finish() {
    check_budget();
    Word w(rank_);
    w.letters_ = std::move(buf_);
    buf_.clear();
    return w;
}

Word::Word(const std::vector<Letter>& raw, int rank) : rank_(rank) {
    WordBuilder b(rank);
    for (Letter l : raw) {
        check_rank(l, rank);
        b.push(l);
    }
    *this = b.finish();
}

Word Word::gen(int i, int rank) { return Word({i}, rank); }

Word Word::boundary(int rank) {
    std::vector<Letter> ls(rank);
    for (int i = 0; i < rank; ++i) ls[i] = i + 1;
    return Word(ls, rank);
}

int Word::max_index() const {
    int m = 0;
    for (Letter l : letters_) m = std::max(m, l > 0 ? l : -l);
    return m;
}

Word Word::with_rank(int rank) const {
    if (max_index() > rank) throw RankError("word does not fit rank " + std::to_string(rank));
    Word w = *this;
    w.rank_ = rank;
    return w;
}

std::uint64_t Word::hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint32_t v) {
        for (int b = 0; b < 4; ++b) {
            h ^= (v >> (8 * b)) & 0xffU;
            h *= 1099511628211ULL;
        }
    };
    mix(static_cast<std::uint32_t>(rank_));
    for (Letter l : letters_) mix(static_cast<std::uint32_t>(l));
    return h;
}

bool Word::operator<(const Word& o) const {
    if (rank_ != o.rank_) return rank_ < o.rank_;
    return letters_ < o.letters_;
}

Word reduce(const std::vector<Letter>& raw, int rank) { return Word(raw, rank); }

Word compose(const Word& u, const Word& v) {
    same_rank(u, v);
    WordBuilder b(u.rank());
    b.append(u);
    b.append(v);
    return b.finish();
}

Word compose(std::initializer_list<Word> ws) {
    if (ws.size() == 0) return Word();
    WordBuilder b(ws.begin()->rank());
    for (const Word& w : ws) {
        same_rank(*ws.begin(), w);
        b.append(w);
    }
    return b.finish();
}

Word invert(const Word& u) {
    WordBuilder b(u.rank());
    b.append_inverse(u);
    return b.finish();
}

Word conjugate(const Word& u, const Word& by) {
    same_rank(u, by);
    WordBuilder b(u.rank());
    b.append_inverse(by);
    b.append(u);
    b.append(by);
    return b.finish();
}

Word commutator(const Word& a, const Word& c) {
    same_rank(a, c);
    WordBuilder b(a.rank());
    b.append(a);
    b.append(c);
    b.append_inverse(a);
    b.append_inverse(c);
    return b.finish();
}

Word power(const Word& u, int e) {
    WordBuilder b(u.rank());
    for (int k = 0; k < (e < 0 ? -e : e); ++k) {
        if (e > 0)
            b.append(u);
        else
            b.append_inverse(u);
    }
    return b.finish();
}

Word substitute(const Word& w, const std::vector<Word>& images, int rank) {
    WordBuilder b(rank);
    for (Letter l : w.letters()) {
        int i = l > 0 ? l : -l;
        if (i > static_cast<int>(images.size())) throw RankError("substitution out of range");
        if (l > 0)
            b.append(images[i - 1]);
        else
            b.append_inverse(images[i - 1]);
    }
    return b.finish();
}

Word shift_word(const Word& w, int m) {
    if (w.rank() != m) throw RankError("shift expects a word of rank m");
    std::vector<Letter> ls = w.letters();
    for (Letter& l : ls) l = l > 0 ? l + m : l - m;
    return Word(ls, 2 * m);
}

Word moving_apart(const Word& w, int k, int p) {
    const int n = static_cast<int>(w.length());
    if (k <= n) throw PreconditionError("moving apart needs k > letter length");
    if (p < 1) throw PreconditionError("moving apart needs p >= 1");
    const int m = w.rank();
    std::vector<Letter> ls;
    ls.reserve(n);
    for (int t = 1; t <= n; ++t) {
        Letter l = w[t - 1];
        int eps = l > 0 ? 1 : -1;
        int j = l * eps;
        int idx = (p * k - eps * (k - t)) * m + j;
        ls.push_back(eps * idx);
    }
    return Word(ls, m * (p + 1) * k);
}

std::optional<GeneratorConjugate> generator_conjugate(const Word& w) {
    const auto& ls = w.letters();
    std::size_t a = 0, b = ls.size();
    while (b - a >= 2 && ls[a] == -ls[b - 1]) {
        ++a;
        --b;
    }
    if (b - a != 1 || ls[a] < 0) return std::nullopt;
    std::vector<Letter> v(ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(a));
    return GeneratorConjugate{Word(v, w.rank()), ls[a]};
}

std::optional<int> is_conjugate_to_generator(const Word& w) {
    auto g = generator_conjugate(w);
    if (!g) return std::nullopt;
    return g->index;
}

bool is_good_geometric_base(const std::vector<Word>& ys) {
    if (ys.empty()) return true;
    const int m = static_cast<int>(ys.size());
    WordBuilder b(m);
    for (const Word& y : ys) {
        if (y.rank() != m) throw RankError("base element of wrong rank");
        if (!is_conjugate_to_generator(y)) return false;
        b.append(y);
    }
    return b.finish() == Word::boundary(m);
}

Word parse_word(std::string_view text, int rank) {
    auto ls = text::parse_letters(text, 'x', 1, 1);
    for (Letter l : ls) {
        int i = l > 0 ? l : -l;
        if (i > rank)
            throw ParseError("generator x" + std::to_string(i) + " outside rank " +
                                 std::to_string(rank),
                             1, 1);
    }
    return Word(ls, rank);
}

std::string to_string(const Word& w) { return text::letters_to_string(w.letters(), 'x'); }

}  // namespace braidfac
