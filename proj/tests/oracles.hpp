#pragma once

// Brute-force reference computations used only by tests.  Each one
// follows a definition directly (permutation sorting, recursive
// expansion, elementary elimination, Cramer's rule, closure search)
// and deliberately avoids the code paths of the library kernels it
// checks.

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "pinv/exterior.hpp"
#include "pinv/lattice.hpp"
#include "pinv/numeric.hpp"

namespace oracle {

using pinv::Int;
using pinv::Matrix;

// Sign of the permutation sorting `idx` ascending, by bubble sort swap
// counting; 0 if an index repeats.
inline int sort_sign(std::vector<int>& idx) {
    int sign = 1;
    for (size_t i = 0; i + 1 < idx.size(); ++i)
        for (size_t j = 0; j + 1 < idx.size() - i; ++j) {
            if (idx[j] == idx[j + 1]) return 0;
            if (idx[j] > idx[j + 1]) {
                std::swap(idx[j], idx[j + 1]);
                sign = -sign;
            }
        }
    return sign;
}

inline std::vector<int> mono_indices(pinv::Mono m) {
    std::vector<int> out;
    for (int i = 0; i < 64; ++i)
        if (m >> i & 1) out.push_back(i + 1);
    return out;
}

// Wedge by concatenate-and-sort, term pair by term pair.
inline pinv::ExtElement wedge(const pinv::ExtElement& a, const pinv::ExtElement& b) {
    pinv::ExtElement out(a.rank());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            std::vector<int> idx = mono_indices(ma);
            std::vector<int> bi = mono_indices(mb);
            idx.insert(idx.end(), bi.begin(), bi.end());
            int s = sort_sign(idx);
            if (s == 0) continue;
            pinv::Mono merged = ma | mb;
            out.add_term(merged, s * ca * cb);
        }
    return out;
}

// Pfaffian by recursive expansion along the first row.
// a is the full antisymmetric matrix, idx the (0-based) live indices.
inline Int pfaffian(const Matrix& a, std::vector<int> idx) {
    if (idx.empty()) return 1;
    if (idx.size() % 2) return 0;
    Int total = 0;
    int i0 = idx[0];
    for (size_t p = 1; p < idx.size(); ++p) {
        int j = idx[p];
        std::vector<int> rest;
        for (size_t t = 1; t < idx.size(); ++t)
            if (t != p) rest.push_back(idx[t]);
        Int term = a[i0][j] * pfaffian(a, rest);
        total += (p % 2 ? term : -term);
    }
    return total;
}

inline Int pfaffian(const Matrix& a) {
    std::vector<int> idx(a.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    return pfaffian(a, idx);
}

// Determinant by cofactor expansion along the first row.
inline Int det(const Matrix& a) {
    size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    Int total = 0;
    for (size_t j = 0; j < n; ++j) {
        if (a[0][j] == 0) continue;
        Matrix minor;
        for (size_t r = 1; r < n; ++r) {
            std::vector<Int> row;
            for (size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(a[r][c]);
            minor.push_back(row);
        }
        Int term = a[0][j] * det(minor);
        total += (j % 2 ? -term : term);
    }
    return total;
}

// Diagonal of the Smith form by elementary gcd elimination with
// first-nonzero pivoting (no transform tracking), then a pairwise
// gcd/lcm pass to enforce the divisibility chain.
inline std::vector<Int> snf_diagonal(Matrix a) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    size_t t = 0;
    std::vector<Int> diag;
    while (t < rows && t < cols) {
        // find first nonzero in the remaining block
        size_t pr = rows, pc = cols;
        for (size_t i = t; i < rows && pr == rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (a[i][j] != 0) { pr = i; pc = j; break; }
        if (pr == rows) break;
        std::swap(a[t], a[pr]);
        for (size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pc]);
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (size_t i = t + 1; i < rows; ++i)
                while (a[i][t] != 0) {
                    Int qq = a[i][t] / a[t][t];
                    for (size_t j = t; j < cols; ++j) a[i][j] -= qq * a[t][j];
                    if (a[i][t] != 0) { std::swap(a[t], a[i]); dirty = true; }
                }
            for (size_t j = t + 1; j < cols; ++j)
                while (a[t][j] != 0) {
                    Int qq = a[t][j] / a[t][t];
                    for (size_t i = t; i < rows; ++i) a[i][j] -= qq * a[i][t];
                    if (a[t][j] != 0) {
                        for (size_t i = t; i < rows; ++i) std::swap(a[i][t], a[i][j]);
                        dirty = true;
                    }
                }
        }
        diag.push_back(abs(a[t][t]));
        ++t;
    }
    // divisibility chain
    for (size_t i = 0; i < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j)
            if (diag[j] % diag[i] != 0) {
                Int g = gcd(diag[i], diag[j]);
                diag[j] = diag[i] / g * diag[j];
                diag[i] = g;
            }
    size_t rank_total = std::min(rows, cols);
    while (diag.size() < rank_total) diag.push_back(0);
    return diag;
}

// Membership z in row span of square nonsingular R, by Cramer's rule:
// w R = z has the unique rational solution w_i = det(R with row i
// replaced by z) / det(R); membership iff all w_i are integers.
inline bool in_row_span_square(const Matrix& r, const std::vector<Int>& z) {
    Int d = det(r);
    if (d == 0) return false; // caller must pass nonsingular r
    for (size_t i = 0; i < r.size(); ++i) {
        Matrix m = r;
        m[i] = z;
        if (det(m) % d != 0) return false;
    }
    return true;
}

// Closure of the given generators in (Z/N)^2 by breadth-first search.
inline std::set<std::pair<Int, Int>>
closure_mod(const std::vector<std::pair<Int, Int>>& gens, const Int& N) {
    auto norm = [&](Int x) { Int m = x % N; if (m < 0) m += N; return m; };
    std::set<std::pair<Int, Int>> seen{{0, 0}};
    std::vector<std::pair<Int, Int>> frontier{{0, 0}};
    while (!frontier.empty()) {
        auto cur = frontier.back();
        frontier.pop_back();
        for (const auto& g : gens) {
            std::pair<Int, Int> nxt{norm(cur.first + g.first),
                                    norm(cur.second + g.second)};
            if (seen.insert(nxt).second) frontier.push_back(nxt);
        }
    }
    return seen;
}

// Binomial with stepwise exact division: b(n,i) = b(n,i-1)*(n-i+1)/i.
inline Int binomial_stepwise(const Int& n, unsigned long d) {
    Int b = 1;
    for (unsigned long i = 1; i <= d; ++i) {
        b *= n - static_cast<long>(i) + 1;
        b /= static_cast<long>(i); // exact at every step
    }
    return b;
}

} // namespace oracle
