#pragma once

/**
 * @file linalg.hpp
 * @brief Exact Gaussian elimination over cyclotomic fields.
 */

#include <cstddef>
#include <vector>

#include "scalar.hpp"

namespace twyd {

using CycloMatrix = std::vector<std::vector<Cyclo>>;

namespace detail {

inline int64_t common_conductor(const CycloMatrix& M) {
    int64_t L = 1;
    for (const auto& row : M)
        for (const auto& x : row)
            if (!x.is_zero()) L = lcm64(L, x.conductor());
    return L;
}

}  // namespace detail

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<size_t> rref(CycloMatrix& M) {
    int64_t L = detail::common_conductor(M);
    for (auto& row : M)
        for (auto& x : row) x = x.is_zero() ? Cyclo(0).embed(L) : x.embed(L);
    std::vector<size_t> piv;
    size_t r = M.size(), c = r ? M[0].size() : 0, t = 0;
    for (size_t col = 0; col < c && t < r; ++col) {
        size_t p = r;
        for (size_t i = t; i < r; ++i)
            if (!M[i][col].is_zero()) {
                p = i;
                break;
            }
        if (p == r) continue;
        std::swap(M[t], M[p]);
        Cyclo inv = M[t][col].inv();
        for (size_t j = col; j < c; ++j)
            if (!M[t][j].is_zero()) M[t][j] = M[t][j] * inv;
        for (size_t i = 0; i < r; ++i) {
            if (i == t || M[i][col].is_zero()) continue;
            Cyclo f = M[i][col];
            for (size_t j = col; j < c; ++j)
                if (!M[t][j].is_zero()) M[i][j] = M[i][j] - f * M[t][j];
        }
        piv.push_back(col);
        ++t;
    }
    return piv;
}

inline size_t rank(CycloMatrix M) { return rref(M).size(); }

/// Basis of {x : M x = 0}.
inline std::vector<std::vector<Cyclo>> nullspace(CycloMatrix M, size_t cols) {
    if (!M.empty()) cols = M[0].size();
    auto piv = rref(M);
    std::vector<bool> is_piv(cols, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::vector<Cyclo>> out;
    for (size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Cyclo> x(cols, Cyclo(0));
        x[f] = Cyclo(1);
        for (size_t t = 0; t < piv.size(); ++t) x[piv[t]] = -M[t][f];
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace twyd
