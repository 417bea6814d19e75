#include "text.hpp"

#include <cctype>
#include <charconv>

#include "braidfac/error.hpp"

namespace braidfac::text {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

int column_of(std::string_view whole, std::string_view part) {
    return static_cast<int>(part.data() - whole.data()) + 1;
}

std::vector<Line> split_lines(std::string_view t) {
    std::vector<Line> out;
    int n = 0;
    while (!t.empty() || n == 0) {
        ++n;
        auto nl = t.find('\n');
        std::string_view line = t.substr(0, nl);
        t = nl == std::string_view::npos ? std::string_view{} : t.substr(nl + 1);
        auto hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!trim(line).empty()) out.push_back({line, n});
        if (nl == std::string_view::npos) break;
    }
    return out;
}

long long parse_int(std::string_view s, int line, int col) {
    long long v = 0;
    auto* first = s.data();
    auto* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    auto [p, ec] = std::from_chars(first, last, v);
    if (s.empty() || ec != std::errc{} || p != last)
        throw ParseError("expected integer, got '" + std::string(s) + "'", line, col);
    return v;
}

std::vector<Letter> parse_letters(std::string_view s, char prefix, int line, int col0) {
    std::vector<Letter> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos >= s.size()) break;
        std::size_t start = pos;
        while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        std::string_view tok = s.substr(start, pos - start);
        int col = col0 + static_cast<int>(start);
        if (tok == "1" && out.empty()) continue;  // explicit identity
        if (tok.size() < 2 || tok[0] != prefix)
            throw ParseError(std::string("expected token ") + prefix + "<k>, got '" +
                                 std::string(tok) + "'",
                             line, col);
        std::string_view idx = tok.substr(1);
        int sign = 1;
        auto caret = idx.find('^');
        if (caret != std::string_view::npos) {
            if (idx.substr(caret) != "^-1")
                throw ParseError("only ^-1 exponents are allowed in '" + std::string(tok) + "'",
                                 line, col + static_cast<int>(caret) + 1);
            sign = -1;
            idx = idx.substr(0, caret);
        }
        long long k = parse_int(idx, line, col + 1);
        if (k < 1 || k > (1LL << 30)) throw ParseError("index must be positive", line, col + 1);
        out.push_back(static_cast<Letter>(sign * k));
    }
    return out;
}

std::string_view take_field(std::string_view& s, std::string_view key, int line,
                            std::string_view whole) {
    std::string_view t = trim(s);
    int col = t.empty() ? static_cast<int>(whole.size()) + 1 : column_of(whole, t);
    if (t.substr(0, key.size()) != key || t.size() <= key.size() || t[key.size()] != '=')
        throw ParseError("expected '" + std::string(key) + "='", line, col);
    t.remove_prefix(key.size() + 1);
    auto semi = t.find(';');
    std::string_view val = t.substr(0, semi);
    s = semi == std::string_view::npos ? std::string_view{} : t.substr(semi + 1);
    return val;
}

std::string letters_to_string(const std::vector<Letter>& ls, char prefix) {
    std::string out;
    for (Letter l : ls) {
        if (!out.empty()) out += ' ';
        out += prefix;
        out += std::to_string(l > 0 ? l : -l);
        if (l < 0) out += "^-1";
    }
    return out;
}

}  // namespace braidfac::text
