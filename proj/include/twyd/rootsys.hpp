#pragma once

/**
 * @file rootsys.hpp
 * @brief Generalized Dynkin diagrams and the Weyl groupoid finiteness test for diagonal braidings.
 */

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "scalar.hpp"
#include "ydmod.hpp"

namespace twyd {

class UndefinedReflection : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Braiding constants c(X_i (x) X_j) = q_ij X_j (x) X_i. Entries are roots of unity.
struct Bichar {
    std::vector<std::vector<Root>> q;

    size_t size() const { return q.size(); }
    Root qt(size_t i, size_t j) const { return q[i][j] * q[j][i]; }
    bool operator==(const Bichar&) const = default;
};

inline Bichar bichar_of(const DiagonalBasis& D) { return {D.q}; }

struct DynkinDiagram {
    std::vector<Root> vertex;
    std::map<std::pair<size_t, size_t>, Root> edges;  ///< i < j

    bool operator==(const DynkinDiagram&) const = default;

    std::string str() const {
        std::string s;
        for (size_t i = 0; i < vertex.size(); ++i) s += (i ? " " : "") + std::to_string(i + 1) + ":" + vertex[i].str();
        for (const auto& [e, r] : edges) s += " " + std::to_string(e.first + 1) + "-" + std::to_string(e.second + 1) + ":" + r.str();
        return s;
    }
};

inline DynkinDiagram dynkin_from(const Bichar& b) {
    DynkinDiagram D;
    for (size_t i = 0; i < b.size(); ++i) D.vertex.push_back(b.q[i][i]);
    for (size_t i = 0; i < b.size(); ++i)
        for (size_t j = i + 1; j < b.size(); ++j)
            if (!b.qt(i, j).is_one()) D.edges[{i, j}] = b.qt(i, j);
    return D;
}

/// Label-preserving graph isomorphism, by backtracking over vertex assignments.
inline bool isomorphic(const DynkinDiagram& A, const DynkinDiagram& B) {
    size_t n = A.vertex.size();
    if (n != B.vertex.size() || A.edges.size() != B.edges.size()) return false;
    auto label = [](const DynkinDiagram& D, size_t i, size_t j) -> Root {
        auto it = D.edges.find({std::min(i, j), std::max(i, j)});
        return it == D.edges.end() ? Root() : it->second;
    };
    std::vector<size_t> img(n);
    std::vector<bool> used(n, false);
    std::function<bool(size_t)> go = [&](size_t i) {
        if (i == n) return true;
        for (size_t k = 0; k < n; ++k) {
            if (used[k] || A.vertex[i] != B.vertex[k]) continue;
            bool ok = true;
            for (size_t j = 0; j < i && ok; ++j) ok = label(A, i, j) == label(B, k, img[j]);
            if (!ok) continue;
            used[k] = true;
            img[i] = k;
            if (go(i + 1)) return true;
            used[k] = false;
        }
        return false;
    };
    return go(0);
}

/// True iff the underlying simple graph has a cycle of length at least 4.
inline bool has_long_cycle(const DynkinDiagram& D) {
    size_t n = D.vertex.size();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (const auto& [e, r] : D.edges) adj[e.first][e.second] = adj[e.second][e.first] = true;
    std::vector<bool> used(n, false);
    // simple paths starting at their least vertex s
    std::function<bool(size_t, size_t, size_t)> dfs = [&](size_t s, size_t v, size_t len) {
        for (size_t w = s; w < n; ++w) {
            if (!adj[v][w]) continue;
            if (w == s && len >= 4) return true;
            if (w == s || used[w]) continue;
            used[w] = true;
            bool found = dfs(s, w, len + 1);
            used[w] = false;
            if (found) return true;
        }
        return false;
    };
    for (size_t s = 0; s < n; ++s) {
        used[s] = true;
        bool found = dfs(s, s, 1);
        used[s] = false;
        if (found) return true;
    }
    return false;
}

/// a_ij for i != j: minus the least m with (m+1)_{q_ii} (q_ii^m q_ij q_ji - 1) = 0; nullopt when no such m exists.
inline std::optional<int> cartan_entry(const Bichar& b, size_t i, size_t j) {
    if (i == j) return 2;
    Root qii = b.q[i][i], qt = b.qt(i, j);
    if (qii.is_one()) {
        if (qt.is_one()) return 0;
        return std::nullopt;
    }
    int64_t N = qii.order();
    for (int64_t m = 0; m < N; ++m) {
        if ((qii.pow(m) * qt).is_one()) return static_cast<int>(-m);
        if ((m + 1) % N == 0) return static_cast<int>(-m);
    }
    return std::nullopt;
}

inline std::vector<int> cartan_row(const Bichar& b, size_t i) {
    std::vector<int> row(b.size());
    for (size_t j = 0; j < b.size(); ++j) {
        auto a = cartan_entry(b, i, j);
        if (!a) throw UndefinedReflection("Cartan entry a_" + std::to_string(i + 1) + std::to_string(j + 1) + " is undefined");
        row[j] = *a;
    }
    return row;
}

inline Bichar reflect(const Bichar& b, size_t i) {
    auto a = cartan_row(b, i);
    Bichar r = b;
    for (size_t j = 0; j < b.size(); ++j)
        for (size_t k = 0; k < b.size(); ++k)
            r.q[j][k] = b.q[j][k] * b.q[i][k].pow(-a[j]) * b.q[j][i].pow(-a[k]) * b.q[i][i].pow(static_cast<int64_t>(a[j]) * a[k]);
    return r;
}

struct RootSystemVerdict {
    enum class Status { Finite, Infinite, ExceededCap };
    Status status = Status::Finite;
    std::vector<std::vector<int>> positive_roots;
    std::string reason;
    std::optional<std::pair<size_t, size_t>> undefined_entry;
    size_t cap = 0;
    size_t objects = 0;

    bool finite() const { return status == Status::Finite; }
    std::string status_name() const {
        switch (status) {
            case Status::Finite: return "Finite";
            case Status::Infinite: return "Infinite";
            default: return "ExceededCap";
        }
    }
};

namespace detail {

using IntMat = std::vector<std::vector<int64_t>>;

inline IntMat identity_mat(size_t n) {
    IntMat M(n, std::vector<int64_t>(n, 0));
    for (size_t i = 0; i < n; ++i) M[i][i] = 1;
    return M;
}

/// Product, or nullopt when an entry leaves [-2^50, 2^50].
inline std::optional<IntMat> mat_mul(const IntMat& A, const IntMat& B) {
    size_t n = A.size();
    IntMat C(n, std::vector<int64_t>(n, 0));
    constexpr __int128 lim = static_cast<__int128>(1) << 50;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            __int128 s = 0;
            for (size_t k = 0; k < n; ++k) s += static_cast<__int128>(A[i][k]) * B[k][j];
            if (s > lim || s < -lim) return std::nullopt;
            C[i][j] = static_cast<int64_t>(s);
        }
    return C;
}

/// s_i(v) = v - (sum_j a_ij v_j) e_i as a matrix.
inline IntMat reflection_mat(const std::vector<int>& a, size_t i) {
    IntMat S = identity_mat(a.size());
    for (size_t j = 0; j < a.size(); ++j) S[i][j] -= a[j];
    return S;
}

/// Finite order test for an invertible integer matrix: its powers either return to I or grow without bound.
inline bool has_finite_order(const IntMat& M, int64_t max_order = 2520) {
    IntMat I = identity_mat(M.size()), P = M;
    for (int64_t k = 1; k <= max_order; ++k) {
        if (P == I) return true;
        auto nxt = mat_mul(P, M);
        if (!nxt) return false;
        P = std::move(*nxt);
    }
    return false;
}

/// Diagram-level representative: q_ij = q~_ij above the diagonal and 1 below.
inline Bichar normalized(const Bichar& b) {
    Bichar r = b;
    for (size_t i = 0; i < b.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) {
            if (i < j) r.q[i][j] = b.qt(i, j);
            if (i > j) r.q[i][j] = Root();
        }
    return r;
}

}  // namespace detail

/// Weyl groupoid exploration: objects by repeated reflection, loops for an infinite-order witness, then root closure.
inline RootSystemVerdict is_finite_type(const Bichar& q, size_t cap = 10000, size_t object_cap = 1000) {
    using Status = RootSystemVerdict::Status;
    RootSystemVerdict v;
    v.cap = cap;
    size_t th = q.size();
    if (th == 0) return v;

    std::vector<Bichar> obj{detail::normalized(q)};
    std::map<std::vector<std::vector<Root>>, size_t> index{{obj[0].q, 0}};
    std::vector<std::vector<std::vector<int>>> cartan;
    std::vector<std::vector<size_t>> nbr;
    // base coordinates -> object coordinates, and back; reflection matrices are involutions
    std::vector<detail::IntMat> path{detail::identity_mat(th)}, path_inv{detail::identity_mat(th)};
    for (size_t x = 0; x < obj.size(); ++x) {
        std::vector<std::vector<int>> A(th);
        for (size_t i = 0; i < th; ++i)
            for (size_t j = 0; j < th; ++j) {
                auto a = cartan_entry(obj[x], i, j);
                if (!a) {
                    v.status = Status::Infinite;
                    v.undefined_entry = {i, j};
                    v.reason = "undefined Cartan entry a_" + std::to_string(i + 1) + std::to_string(j + 1) + " at object " + std::to_string(x);
                    v.objects = obj.size();
                    return v;
                }
                A[i].push_back(*a);
            }
        cartan.push_back(A);
        nbr.emplace_back(th);
        for (size_t i = 0; i < th; ++i) {
            Bichar y = detail::normalized(reflect(obj[x], i));
            auto [it, fresh] = index.emplace(y.q, obj.size());
            if (fresh) {
                if (obj.size() >= object_cap) {
                    v.status = Status::ExceededCap;
                    v.reason = "more than " + std::to_string(object_cap) + " groupoid objects";
                    v.objects = obj.size();
                    return v;
                }
                obj.push_back(y);
                auto S = detail::reflection_mat(A[i], i);
                auto p = detail::mat_mul(S, path[x]);
                auto pi = detail::mat_mul(path_inv[x], S);
                if (!p || !pi) {
                    v.status = Status::ExceededCap;
                    v.reason = "path matrix overflow";
                    return v;
                }
                path.push_back(*p);
                path_inv.push_back(*pi);
            }
            nbr[x][i] = it->second;
        }
    }
    v.objects = obj.size();

    // loops at the base object generate Hom(base, base); an element of infinite order among them or their pairwise products proves the groupoid infinite
    std::set<detail::IntMat> seen{detail::identity_mat(th)};
    std::vector<detail::IntMat> loops;
    for (size_t x = 0; x < obj.size(); ++x)
        for (size_t i = 0; i < th; ++i) {
            auto step = detail::mat_mul(detail::reflection_mat(cartan[x][i], i), path[x]);
            if (!step) continue;
            auto L = detail::mat_mul(path_inv[nbr[x][i]], *step);
            if (L && seen.insert(*L).second) loops.push_back(*L);
        }
    auto infinite_loop = [&]() {
        v.status = Status::Infinite;
        v.reason = "loop of infinite order in the Weyl groupoid";
        return v;
    };
    for (const auto& L : loops)
        if (!detail::has_finite_order(L)) return infinite_loop();
    const size_t pair_limit = 64;
    for (size_t a = 0; a < loops.size() && a < pair_limit; ++a)
        for (size_t b = a + 1; b < loops.size() && b < pair_limit; ++b) {
            auto P = detail::mat_mul(loops[a], loops[b]);
            if (!P || !detail::has_finite_order(*P)) return infinite_loop();
        }

    // Coxeter words: s_{p(th)} ... s_{p(1)} repeated from the base object until the walk returns to it
    std::vector<size_t> perm(th);
    std::iota(perm.begin(), perm.end(), size_t{0});
    size_t perms = 0;
    do {
        size_t x = 0;
        detail::IntMat W = detail::identity_mat(th);
        bool overflow = false;
        for (size_t rep = 0; rep <= obj.size() && !overflow; ++rep) {
            for (size_t i : perm) {
                auto nxt = detail::mat_mul(detail::reflection_mat(cartan[x][i], i), W);
                if (!nxt) {
                    overflow = true;
                    break;
                }
                W = std::move(*nxt);
                x = nbr[x][i];
            }
            if (x == 0) break;
        }
        if (overflow || !detail::has_finite_order(W)) return infinite_loop();
    } while (++perms < 120 && std::next_permutation(perm.begin(), perm.end()));
    const size_t triple_limit = 16;
    for (size_t a = 0; a < loops.size() && a < triple_limit; ++a)
        for (size_t b = a + 1; b < loops.size() && b < triple_limit; ++b)
            for (size_t c = b + 1; c < loops.size() && c < triple_limit; ++c) {
                auto P = detail::mat_mul(loops[a], loops[b]);
                if (P) P = detail::mat_mul(*P, loops[c]);
                if (!P || !detail::has_finite_order(*P)) return infinite_loop();
            }

    // root closure
    std::vector<std::set<std::vector<int>>> R(obj.size());
    std::deque<std::pair<size_t, std::vector<int>>> work;
    for (size_t x = 0; x < obj.size(); ++x)
        for (size_t j = 0; j < th; ++j) {
            std::vector<int> e(th, 0);
            e[j] = 1;
            R[x].insert(e);
            work.push_back({x, e});
        }
    while (!work.empty()) {
        auto [x, r] = work.front();
        work.pop_front();
        bool pos = std::all_of(r.begin(), r.end(), [](int c) { return c >= 0; });
        bool neg = std::all_of(r.begin(), r.end(), [](int c) { return c <= 0; });
        if (!pos && !neg) {
            v.status = Status::Infinite;
            v.reason = "root with mixed signs";
            return v;
        }
        for (size_t i = 0; i < th; ++i) {
            std::vector<int> s = r;
            int dot = 0;
            for (size_t j = 0; j < th; ++j) dot += cartan[x][i][j] * r[j];
            s[i] -= dot;
            size_t y = nbr[x][i];
            if (R[y].insert(s).second) {
                if (R[y].size() > 2 * cap) {
                    v.status = Status::ExceededCap;
                    v.reason = "more than " + std::to_string(cap) + " positive roots";
                    return v;
                }
                work.push_back({y, s});
            }
        }
    }
    for (const auto& r : R[0])
        if (std::all_of(r.begin(), r.end(), [](int c) { return c >= 0; })) v.positive_roots.push_back(r);
    return v;
}

}  // namespace twyd
