#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace braidfac {

// Permutation of {1..n}; p * q is p after q.
class Perm {
public:
    Perm() = default;
    explicit Perm(int n);
    static Perm from_images(std::vector<int> images0);  // 0-based images
    static Perm transposition(int a, int b, int n);
    static Perm from_cycles(const std::vector<std::vector<int>>& cycles, int n);

    int degree() const { return static_cast<int>(img_.size()); }
    int operator()(int x) const { return img_[x - 1] + 1; }
    const std::vector<int>& images() const { return img_; }

    Perm operator*(const Perm& o) const;
    Perm inverse() const;
    bool is_identity() const;
    bool is_transposition() const;
    int order() const;
    std::vector<int> cycle_type() const;  // descending, fixed points omitted

    bool operator==(const Perm& o) const { return img_ == o.img_; }
    bool operator!=(const Perm& o) const { return img_ != o.img_; }
    bool operator<(const Perm& o) const { return img_ < o.img_; }

private:
    std::vector<int> img_;
};

// "(1 2)(3 4 5)", "()" for the identity
std::string to_string(const Perm& p);
Perm parse_perm(std::string_view text, int n, int line = 1, int col = 1);

// S_n with elements numbered in lexicographic order of their images
class SymmetricTable {
public:
    explicit SymmetricTable(int n);
    int degree() const { return n_; }
    int size() const { return static_cast<int>(elems_.size()); }
    int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * elems_.size() + b]; }
    int inv(int a) const { return inv_[a]; }
    int identity() const { return 0; }
    const Perm& elem(int k) const { return elems_[k]; }
    int index(const Perm& p) const;
    bool is_transposition(int k) const { return transp_[k]; }

private:
    int n_;
    std::vector<Perm> elems_;
    std::vector<int> mul_, inv_;
    std::vector<bool> transp_;
};

// cached, 1 <= n <= 5
const SymmetricTable& symmetric_table(int n);

}  // namespace braidfac
