#pragma once

/**
 * @file intlinalg.hpp
 * @brief Smith normal form over Z and linear systems modulo N.
 */

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace twyd {

using IntMatrix = std::vector<std::vector<int64_t>>;

namespace detail {

inline int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("integer overflow in Smith normal form");
    return static_cast<int64_t>(v);
}

inline IntMatrix identity_matrix(size_t n) {
    IntMatrix I(n, std::vector<int64_t>(n, 0));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

// row_a += f * row_b
inline void add_row(IntMatrix& M, size_t a, size_t b, int64_t f) {
    if (f == 0) return;
    for (size_t j = 0; j < M[a].size(); ++j)
        M[a][j] = checked(static_cast<__int128>(M[a][j]) + static_cast<__int128>(f) * M[b][j]);
}
inline void add_col(IntMatrix& M, size_t a, size_t b, int64_t f) {
    if (f == 0) return;
    for (auto& row : M) row[a] = checked(static_cast<__int128>(row[a]) + static_cast<__int128>(f) * row[b]);
}
inline void swap_cols(IntMatrix& M, size_t a, size_t b) {
    for (auto& row : M) std::swap(row[a], row[b]);
}
inline void neg_row(IntMatrix& M, size_t a) {
    for (auto& x : M[a]) x = -x;
}

}  // namespace detail

struct SmithForm {
    IntMatrix D;  ///< diagonal, d_0 | d_1 | ... , nonnegative
    IntMatrix U;  ///< unimodular, rows x rows
    IntMatrix V;  ///< unimodular, cols x cols; U*A*V = D
    size_t rank = 0;
};

/// Smith normal form of an integer matrix with unimodular transforms.
inline SmithForm smith_normal_form(const IntMatrix& A) {
    using namespace detail;
    size_t r = A.size(), c = r ? A[0].size() : 0;
    SmithForm S{A, identity_matrix(r), identity_matrix(c), 0};
    IntMatrix& D = S.D;
    size_t t = 0;
    while (t < r && t < c) {
        // pivot: smallest nonzero |entry| in the trailing block
        size_t pi = r, pj = c;
        for (size_t i = t; i < r; ++i)
            for (size_t j = t; j < c; ++j)
                if (D[i][j] != 0 && (pi == r || std::llabs(D[i][j]) < std::llabs(D[pi][pj]))) pi = i, pj = j;
        if (pi == r) break;
        std::swap(D[t], D[pi]);
        std::swap(S.U[t], S.U[pi]);
        swap_cols(D, t, pj);
        swap_cols(S.V, t, pj);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < r; ++i) {
                if (D[i][t] == 0) continue;
                int64_t q = D[i][t] / D[t][t];
                add_row(D, i, t, -q);
                add_row(S.U, i, t, -q);
                if (D[i][t] != 0) {
                    std::swap(D[t], D[i]);
                    std::swap(S.U[t], S.U[i]);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < c; ++j) {
                if (D[t][j] == 0) continue;
                int64_t q = D[t][j] / D[t][t];
                add_col(D, j, t, -q);
                add_col(S.V, j, t, -q);
                if (D[t][j] != 0) {
                    swap_cols(D, t, j);
                    swap_cols(S.V, t, j);
                    clean = false;
                }
            }
            if (clean) {
                // divisibility of the remaining block
                for (size_t i = t + 1; i < r && clean; ++i)
                    for (size_t j = t + 1; j < c && clean; ++j)
                        if (D[i][j] % D[t][t] != 0) {
                            add_row(D, t, i, 1);
                            add_row(S.U, t, i, 1);
                            clean = false;
                        }
            }
        }
        if (D[t][t] < 0) {
            neg_row(D, t);
            neg_row(S.U, t);
        }
        ++t;
    }
    S.rank = t;
    return S;
}

inline std::vector<int64_t> mat_vec(const IntMatrix& A, const std::vector<int64_t>& x) {
    std::vector<int64_t> y(A.size(), 0);
    for (size_t i = 0; i < A.size(); ++i) {
        __int128 s = 0;
        for (size_t j = 0; j < x.size(); ++j) s += static_cast<__int128>(A[i][j]) * x[j];
        y[i] = detail::checked(s);
    }
    return y;
}

namespace detail {

inline std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
    std::vector<std::pair<int64_t, int>> out;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline int64_t mulmod(int64_t a, int64_t b, int64_t m) {
    return static_cast<int64_t>(static_cast<__int128>(a) * b % m);
}

inline int64_t inv_mod(int64_t a, int64_t m) {
    int64_t g = m, x = 0, x1 = 1, a1 = mod_floor(a, m);
    while (a1 != 0) {
        int64_t q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw std::domain_error("inv_mod: not invertible");
    return mod_floor(x, m);
}

// Solve A x = b over Z/p^k by a local Smith reduction: pivots of minimal p-adic valuation.
inline std::optional<std::vector<int64_t>> solve_prime_power(IntMatrix M, std::vector<int64_t> b, int64_t p, int k) {
    int64_t q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    size_t r = M.size(), c = r ? M[0].size() : 0;
    for (auto& row : M)
        for (auto& x : row) x = mod_floor(x, q);
    for (auto& x : b) x = mod_floor(x, q);
    auto val = [&](int64_t x) {
        int v = 0;
        while (v < k && x % p == 0) x /= p, ++v;
        return v;  // k means zero
    };
    std::vector<size_t> colperm(c);
    std::iota(colperm.begin(), colperm.end(), 0);
    // column operations recorded as V (c x c) acting on the unknowns
    IntMatrix V = identity_matrix(c);
    std::vector<int> pivval;
    size_t t = 0;
    for (; t < r && t < c; ++t) {
        size_t pi = r, pj = c;
        int best = k;
        for (size_t i = t; i < r && best > 0; ++i)
            for (size_t j = t; j < c; ++j) {
                if (M[i][j] == 0) continue;
                int v = val(M[i][j]);
                if (v < best) {
                    best = v, pi = i, pj = j;
                    if (v == 0) break;
                }
            }
        if (pi == r) break;
        std::swap(M[t], M[pi]);
        std::swap(b[t], b[pi]);
        if (pj != t) {
            for (auto& row : M) std::swap(row[t], row[pj]);
            for (auto& row : V) std::swap(row[t], row[pj]);
        }
        int64_t pv = 1;
        for (int i = 0; i < best; ++i) pv *= p;
        int64_t unit_inv = inv_mod(M[t][t] / pv, q);
        for (size_t i = t + 1; i < r; ++i) {
            if (M[i][t] == 0) continue;
            int64_t f = mulmod(M[i][t] / pv, unit_inv, q);
            for (size_t j = t; j < c; ++j)
                if (M[t][j]) M[i][j] = mod_floor(M[i][j] - mulmod(f, M[t][j], q), q);
            b[i] = mod_floor(b[i] - mulmod(f, b[t], q), q);
        }
        for (size_t j = t + 1; j < c; ++j) {
            if (M[t][j] == 0) continue;
            int64_t f = mulmod(M[t][j] / pv, unit_inv, q);
            // column j -= f * column t; only row t is nonzero in column t below the diagonal block
            M[t][j] = 0;
            for (size_t i = 0; i < c; ++i)
                if (V[i][t]) V[i][j] = mod_floor(V[i][j] - mulmod(f, V[i][t], q), q);
        }
        pivval.push_back(best);
    }
    size_t rank = t;
    for (size_t i = rank; i < r; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<int64_t> y(c, 0);
    for (size_t i = 0; i < rank; ++i) {
        int64_t pv = 1;
        for (int j = 0; j < pivval[i]; ++j) pv *= p;
        if (b[i] % pv != 0) return std::nullopt;
        int64_t unit_inv = inv_mod(M[i][i] / pv, q);
        y[i] = mulmod(b[i] / pv, unit_inv, q);
    }
    std::vector<int64_t> x(c, 0);
    for (size_t i = 0; i < c; ++i) {
        __int128 s = 0;
        for (size_t j = 0; j < c; ++j) s += static_cast<__int128>(V[i][j]) * y[j] % q;
        x[i] = mod_floor(static_cast<int64_t>(s % q), q);
    }
    return x;
}

}  // namespace detail

/// Some x with A x = b (mod N), or nullopt when the system is inconsistent.
inline std::optional<std::vector<int64_t>> solve_linear_mod(const IntMatrix& A, const std::vector<int64_t>& b, int64_t N) {
    if (N < 1) throw std::invalid_argument("solve_linear_mod: modulus must be >= 1");
    if (A.size() != b.size()) throw std::invalid_argument("solve_linear_mod: dimension mismatch");
    size_t c = A.empty() ? 0 : A[0].size();
    for (const auto& row : A)
        if (row.size() != c) throw std::invalid_argument("solve_linear_mod: ragged matrix");
    std::vector<int64_t> x(c, 0);
    if (N == 1) return x;
    int64_t acc_mod = 1;
    for (auto [p, k] : detail::factorize(N)) {
        auto part = detail::solve_prime_power(A, b, p, k);
        if (!part) return std::nullopt;
        int64_t q = 1;
        for (int i = 0; i < k; ++i) q *= p;
        // CRT: x = x mod acc_mod, part mod q
        int64_t inv = detail::inv_mod(acc_mod % q, q);
        for (size_t i = 0; i < c; ++i) {
            int64_t t = detail::mulmod(mod_floor((*part)[i] - x[i], q), inv, q);
            x[i] = x[i] + acc_mod * t;
        }
        acc_mod *= q;
        for (auto& xi : x) xi = mod_floor(xi, acc_mod);
    }
    return x;
}

}  // namespace twyd
