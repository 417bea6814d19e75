#include "braidfac/perm.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <memory>
#include <mutex>
#include <numeric>

#include "braidfac/error.hpp"

namespace braidfac {

Perm::Perm(int n) : img_(static_cast<std::size_t>(n)) { std::iota(img_.begin(), img_.end(), 0); }

Perm Perm::from_images(std::vector<int> images0) {
    std::vector<bool> seen(images0.size(), false);
    for (int x : images0) {
        if (x < 0 || x >= static_cast<int>(images0.size()) || seen[x])
            throw Error("not a permutation");
        seen[x] = true;
    }
    Perm p;
    p.img_ = std::move(images0);
    return p;
}

Perm Perm::transposition(int a, int b, int n) {
    if (a < 1 || b < 1 || a > n || b > n || a == b) throw Error("bad transposition");
    Perm p(n);
    std::swap(p.img_[a - 1], p.img_[b - 1]);
    return p;
}

Perm Perm::from_cycles(const std::vector<std::vector<int>>& cycles, int n) {
    Perm p(n);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (const auto& c : cycles) {
        for (int x : c) {
            if (x < 1 || x > n) throw Error("cycle entry " + std::to_string(x) + " outside 1.." + std::to_string(n));
            if (used[x - 1]) throw Error("cycles are not disjoint");
            used[x - 1] = true;
        }
        for (std::size_t k = 0; k < c.size(); ++k) p.img_[c[k] - 1] = c[(k + 1) % c.size()] - 1;
    }
    return p;
}

Perm Perm::operator*(const Perm& o) const {
    if (degree() != o.degree()) throw Error("degree mismatch");
    Perm r;
    r.img_.resize(img_.size());
    for (std::size_t x = 0; x < img_.size(); ++x) r.img_[x] = img_[o.img_[x]];
    return r;
}

Perm Perm::inverse() const {
    Perm r;
    r.img_.resize(img_.size());
    for (std::size_t x = 0; x < img_.size(); ++x) r.img_[img_[x]] = static_cast<int>(x);
    return r;
}

bool Perm::is_identity() const {
    for (std::size_t x = 0; x < img_.size(); ++x)
        if (img_[x] != static_cast<int>(x)) return false;
    return true;
}

bool Perm::is_transposition() const {
    auto ct = cycle_type();
    return ct.size() == 1 && ct[0] == 2;
}

int Perm::order() const {
    int o = 1;
    for (int c : cycle_type()) o = std::lcm(o, c);
    return o;
}

std::vector<int> Perm::cycle_type() const {
    std::vector<int> out;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t x = 0; x < img_.size(); ++x) {
        if (seen[x]) continue;
        int len = 0;
        for (std::size_t y = x; !seen[y]; y = static_cast<std::size_t>(img_[y])) {
            seen[y] = true;
            ++len;
        }
        if (len > 1) out.push_back(len);
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

std::string to_string(const Perm& p) {
    std::string out;
    std::vector<bool> seen(static_cast<std::size_t>(p.degree()), false);
    for (int x = 1; x <= p.degree(); ++x) {
        if (seen[x - 1] || p(x) == x) continue;
        out += '(';
        for (int y = x; !seen[y - 1]; y = p(y)) {
            seen[y - 1] = true;
            if (y != x) out += ' ';
            out += std::to_string(y);
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

Perm parse_perm(std::string_view t, int n, int line, int col) {
    std::vector<std::vector<int>> cycles;
    std::size_t k = 0;
    auto skip = [&] {
        while (k < t.size() && std::isspace(static_cast<unsigned char>(t[k]))) ++k;
    };
    skip();
    if (k == t.size()) throw ParseError("expected a permutation", line, col);
    while (k < t.size()) {
        if (t[k] != '(') throw ParseError("expected '('", line, col + static_cast<int>(k));
        ++k;
        std::vector<int> c;
        while (true) {
            skip();
            if (k < t.size() && t[k] == ')') {
                ++k;
                break;
            }
            std::size_t s = k;
            while (k < t.size() && std::isdigit(static_cast<unsigned char>(t[k]))) ++k;
            if (s == k) throw ParseError("expected a point or ')'", line, col + static_cast<int>(s));
            int v = std::stoi(std::string(t.substr(s, k - s)));
            if (v < 1 || v > n)
                throw ParseError("point " + std::to_string(v) + " outside 1.." + std::to_string(n), line,
                                 col + static_cast<int>(s));
            c.push_back(v);
            if (k < t.size() && t[k] == ',') ++k;
        }
        if (!c.empty()) cycles.push_back(std::move(c));
        skip();
    }
    try {
        return Perm::from_cycles(cycles, n);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what(), line, col);
    }
}

SymmetricTable::SymmetricTable(int n) : n_(n) {
    if (n < 1 || n > 5) throw PreconditionError("symmetric group degree must be in 1..5");
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    do elems_.push_back(Perm::from_images(img));
    while (std::next_permutation(img.begin(), img.end()));
    const std::size_t s = elems_.size();
    mul_.resize(s * s);
    inv_.resize(s);
    transp_.resize(s);
    for (std::size_t a = 0; a < s; ++a) {
        for (std::size_t b = 0; b < s; ++b) mul_[a * s + b] = index(elems_[a] * elems_[b]);
        inv_[a] = index(elems_[a].inverse());
        transp_[a] = elems_[a].is_transposition();
    }
}

int SymmetricTable::index(const Perm& p) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), p);
    if (it == elems_.end() || *it != p) throw Error("permutation of wrong degree");
    return static_cast<int>(it - elems_.begin());
}

const SymmetricTable& symmetric_table(int n) {
    static std::array<std::unique_ptr<SymmetricTable>, 6> tables;
    static std::once_flag flags[6];
    if (n < 1 || n > 5) throw PreconditionError("symmetric group degree must be in 1..5");
    std::call_once(flags[n], [n] { tables[n] = std::make_unique<SymmetricTable>(n); });
    return *tables[n];
}

}  // namespace braidfac
