#include "braidfac/braid.hpp"

#include "braidfac/error.hpp"
#include "text.hpp"

namespace braidfac {

std::uint64_t ArtinForm::hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(strands);
    for (const Word& w : images) h = (h ^ w.hash()) * 0x100000001b3ULL + (h << 6) + (h >> 2);
    return h;
}

bool ArtinForm::is_identity() const {
    for (int i = 0; i < strands; ++i)
        if (images[i].length() != 1 || images[i][0] != i + 1) return false;
    return true;
}

ArtinForm identity_form(int strands) {
    ArtinForm f;
    f.strands = strands;
    f.images.reserve(strands);
    for (int i = 1; i <= strands; ++i) f.images.push_back(Word::gen(i, strands));
    return f;
}

ArtinForm form_of_word(int strands, const std::vector<Letter>& word) {
    ArtinForm f = identity_form(strands);
    for (Letter l : word) {
        int k = l > 0 ? l : -l;
        Word& A = f.images[k - 1];
        Word& B = f.images[k];
        WordBuilder nb(strands);
        if (l > 0) {
            nb.append(A);
            nb.append(B);
            nb.append_inverse(A);
            B = A;
            A = nb.finish();
        } else {
            nb.append_inverse(B);
            nb.append(A);
            nb.append(B);
            A = B;
            B = nb.finish();
        }
    }
    return f;
}

ArtinForm compose_forms(const ArtinForm& a, const ArtinForm& b) {
    if (a.strands != b.strands) throw RankError("strand mismatch in composition");
    ArtinForm f;
    f.strands = a.strands;
    f.images.reserve(a.strands);
    for (const Word& w : b.images) f.images.push_back(substitute(w, a.images, a.strands));
    return f;
}

Braid::Braid(int strands) : strands_(strands), state_(std::make_shared<State>()) {
    if (strands < 1) throw RankError("a braid needs at least one strand");
}

Braid::Braid(int strands, std::vector<Letter> word)
    : strands_(strands), word_(std::move(word)), state_(std::make_shared<State>()) {
    if (strands < 1) throw RankError("a braid needs at least one strand");
    for (Letter l : word_) {
        int k = l > 0 ? l : -l;
        if (l == 0 || k > strands - 1)
            throw RankError("generator a" + std::to_string(k) + " outside Br_" +
                            std::to_string(strands));
    }
}

Braid::Braid(int strands, std::vector<Letter> word, ArtinForm form)
    : strands_(strands), word_(std::move(word)), state_(std::make_shared<State>()) {
    std::call_once(state_->once, [&] {
        state_->form = std::move(form);
        state_->hash = state_->form.hash();
        state_->ready.store(true, std::memory_order_release);
    });
}

Braid Braid::gen(int i, int strands, int sign) { return Braid(strands, {sign > 0 ? i : -i}); }

const ArtinForm& Braid::form() const {
    std::call_once(state_->once, [this] {
        state_->form = form_of_word(strands_, word_);
        state_->hash = state_->form.hash();
        state_->ready.store(true, std::memory_order_release);
    });
    return state_->form;
}

std::uint64_t Braid::hash() const {
    (void)form();
    return state_->hash;
}

bool Braid::has_form() const {
    return state_->ready.load(std::memory_order_acquire);
}

Braid Braid::operator*(const Braid& o) const {
    if (strands_ != o.strands_) throw RankError("strand mismatch in braid product");
    std::vector<Letter> w = word_;
    std::size_t skip = 0;
    while (!w.empty() && skip < o.word_.size() && w.back() == -o.word_[skip]) {
        w.pop_back();
        ++skip;
    }
    w.insert(w.end(), o.word_.begin() + static_cast<std::ptrdiff_t>(skip), o.word_.end());
    if (has_form() && o.has_form())
        return Braid(strands_, std::move(w), compose_forms(form(), o.form()));
    return Braid(strands_, std::move(w));
}

Braid Braid::inverse() const {
    std::vector<Letter> w(word_.rbegin(), word_.rend());
    for (Letter& l : w) l = -l;
    return Braid(strands_, std::move(w));
}

Braid Braid::pow(int e) const {
    Braid base = e >= 0 ? *this : inverse();
    std::vector<Letter> w;
    for (int k = 0; k < (e >= 0 ? e : -e); ++k)
        w.insert(w.end(), base.word_.begin(), base.word_.end());
    return Braid(strands_, std::move(w));
}

Word artin_apply(const Braid& b, const Word& w) {
    if (w.rank() != b.strands())
        throw RankError("word rank " + std::to_string(w.rank()) + " does not match Br_" +
                        std::to_string(b.strands()));
    return substitute(w, b.form().images, b.strands());
}

ArtinForm canonical_form(const Braid& b) { return b.form(); }

bool braid_equal(const Braid& a, const Braid& b) {
    if (a.strands() != b.strands()) throw RankError("strand mismatch in braid comparison");
    return a.form() == b.form();
}

std::uint64_t braid_hash(const Braid& b) { return b.hash(); }

std::vector<int> permutation(const Braid& b) {
    const int m = b.strands();
    std::vector<int> p(m);
    for (int i = 1; i <= m; ++i) {
        int idx = i;
        for (auto it = b.word().rbegin(); it != b.word().rend(); ++it) {
            int k = *it > 0 ? *it : -*it;
            if (idx == k)
                idx = k + 1;
            else if (idx == k + 1)
                idx = k;
        }
        p[i - 1] = idx;
    }
    return p;
}

int exponent_sum(const Braid& b) {
    int s = 0;
    for (Letter l : b.word()) s += l > 0 ? 1 : -1;
    return s;
}

Braid garside(int k, int i, int m) {
    if (k < 1 || i < 0 || i + k > m)
        throw RankError("garside element needs k >= 1 and i + k <= m");
    std::vector<Letter> w;
    for (int top = i + k - 1; top >= i + 1; --top)
        for (int g = i + 1; g <= top; ++g) w.push_back(g);
    return Braid(m, std::move(w));
}

Braid full_twist(int m) {
    std::vector<Letter> w;
    for (int r = 0; r < m; ++r)
        for (int g = 1; g <= m - 1; ++g) w.push_back(g);
    return Braid(m, std::move(w));
}

Braid window_full_twist(int a, int b, int m) {
    Braid d = garside(b - a + 1, a - 1, m);
    return d * d;
}

Braid shift_braid(const Braid& b) {
    const int m = b.strands();
    std::vector<Letter> w = b.word();
    for (Letter& l : w) l = l > 0 ? l + m : l - m;
    if (!b.has_form()) return Braid(2 * m, std::move(w));
    ArtinForm f = identity_form(2 * m);
    for (int i = 0; i < m; ++i) f.images[m + i] = shift_word(b.form().images[i], m);
    return Braid(2 * m, std::move(w), std::move(f));
}

Braid embed(const Braid& b, int strands) {
    if (strands < b.strands()) throw RankError("cannot embed into fewer strands");
    if (strands == b.strands()) return b;
    if (!b.has_form()) return Braid(strands, b.word());
    ArtinForm f = identity_form(strands);
    for (int i = 0; i < b.strands(); ++i) f.images[i] = b.form().images[i].with_rank(strands);
    return Braid(strands, b.word(), std::move(f));
}

Braid parse_braid_word(std::string_view text, int strands, int line, int col) {
    auto ls = text::parse_letters(text, 'a', line, col);
    for (Letter l : ls) {
        int k = l > 0 ? l : -l;
        if (k > strands - 1)
            throw ParseError("generator a" + std::to_string(k) + " outside Br_" +
                                 std::to_string(strands),
                             line, col);
    }
    return Braid(strands, std::move(ls));
}

Braid parse_braid(std::string_view t) {
    std::string_view body = t;
    if (body.find(';') == std::string_view::npos)
        throw ParseError("expected 'strands=<m>;' header", 1, 1);
    std::string_view rest = body;
    auto val = text::trim(text::take_field(rest, "strands", 1, body));
    long long m = text::parse_int(val, 1, text::column_of(body, val));
    if (m < 1) throw ParseError("strand count must be positive", 1, text::column_of(body, val));
    int col = rest.empty() ? static_cast<int>(body.size()) + 1 : text::column_of(body, rest);
    return parse_braid_word(rest, static_cast<int>(m), 1, col);
}

std::string word_string(const Braid& b) { return text::letters_to_string(b.word(), 'a'); }

std::string to_string(const Braid& b) {
    std::string w = word_string(b);
    return "strands=" + std::to_string(b.strands()) + ";" + (w.empty() ? "" : " " + w);
}

}  // namespace braidfac
