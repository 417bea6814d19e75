// Independent reference computations used only by the tests.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

// repeated left-to-right scan deleting one adjacent inverse pair at a time
inline std::vector<int> naive_reduce(std::vector<int> w) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k + 1 < w.size(); ++k)
            if (w[k] == -w[k + 1]) {
                w.erase(w.begin() + static_cast<long>(k), w.begin() + static_cast<long>(k) + 2);
                changed = true;
                break;
            }
    }
    return w;
}

// letter at 1-based position t goes to block (p-1)k+t if positive, (p+1)k-t if negative
inline std::vector<int> naive_moving_apart(const std::vector<int>& w, int m, int k, int p) {
    std::vector<int> out;
    for (int t = 1; t <= static_cast<int>(w.size()); ++t) {
        int l = w[t - 1];
        int j = l > 0 ? l : -l;
        int block = l > 0 ? (p - 1) * k + t : (p + 1) * k - t;
        out.push_back((l > 0 ? 1 : -1) * (block * m + j));
    }
    return out;
}

// Artin action by direct substitution, generator by generator, rightmost generator
// applied to the input word first
inline std::vector<int> naive_apply_gen(int g, const std::vector<int>& w) {
    int k = g > 0 ? g : -g;
    std::vector<int> out;
    for (int l : w) {
        int i = l > 0 ? l : -l;
        std::vector<int> img;
        if (i == k)
            img = g > 0 ? std::vector<int>{k, k + 1, -k} : std::vector<int>{k + 1};
        else if (i == k + 1)
            img = g > 0 ? std::vector<int>{k} : std::vector<int>{-(k + 1), k, k + 1};
        else
            img = {i};
        if (l < 0) {
            std::vector<int> inv;
            for (auto it = img.rbegin(); it != img.rend(); ++it) inv.push_back(-*it);
            img = inv;
        }
        out.insert(out.end(), img.begin(), img.end());
    }
    return naive_reduce(out);
}

inline std::vector<int> naive_apply(const std::vector<int>& braid, std::vector<int> w) {
    for (auto it = braid.rbegin(); it != braid.rend(); ++it) w = naive_apply_gen(*it, w);
    return w;
}

// permutations as 0-based image vectors, product p*q = p after q
using Perm = std::vector<int>;

inline Perm perm_mul(const Perm& p, const Perm& q) {
    Perm r(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) r[x] = p[q[x]];
    return r;
}

inline Perm perm_inv(const Perm& p) {
    Perm r(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) r[p[x]] = static_cast<int>(x);
    return r;
}

inline std::vector<Perm> all_perms(int n) {
    std::vector<Perm> out;
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::function<void(int)> rec = [&](int k) {
        if (k == n) {
            out.push_back(p);
            return;
        }
        for (int i = k; i < n; ++i) {
            std::swap(p[k], p[i]);
            rec(k + 1);
            std::swap(p[k], p[i]);
        }
    };
    rec(0);
    return out;
}

inline Perm eval(const std::vector<int>& w, const std::vector<Perm>& images, int n) {
    Perm r(n);
    for (int i = 0; i < n; ++i) r[i] = i;
    for (int l : w) {
        const Perm& p = images[(l > 0 ? l : -l) - 1];
        r = perm_mul(r, l > 0 ? p : perm_inv(p));
    }
    return r;
}

// brute-force count of assignments x_i -> S_n satisfying every relation w = 1
inline std::uint64_t brute_hom_count(int rank, const std::vector<std::vector<int>>& rels, int n,
                                     bool transpositions_only = false) {
    std::vector<Perm> dom;
    for (auto& p : all_perms(n)) {
        int moved = 0;
        for (int x = 0; x < n; ++x) moved += p[x] != x;
        if (!transpositions_only || moved == 2) dom.push_back(p);
    }
    std::vector<std::size_t> idx(rank, 0);
    std::vector<Perm> imgs(rank);
    Perm id(n);
    for (int i = 0; i < n; ++i) id[i] = i;
    std::uint64_t count = 0;
    if (rank == 0) return 1;
    while (true) {
        for (int i = 0; i < rank; ++i) imgs[i] = dom[idx[i]];
        bool ok = true;
        for (const auto& r : rels)
            if (eval(r, imgs, n) != id) {
                ok = false;
                break;
            }
        count += ok;
        int pos = 0;
        while (pos < rank && ++idx[pos] == dom.size()) idx[pos++] = 0;
        if (pos == rank) break;
    }
    return count;
}

}  // namespace oracle
