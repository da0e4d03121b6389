#pragma once

/**
 * @file nichols.hpp
 * @brief Low-degree engine for T(V) and B(V) in the twisted category: braid operators with associator
 * scalars, quantum symmetrizers, coproducts, braided adjoints and the Cd1-Cd3 checker.
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "ydmod.hpp"

namespace twyd {

class NotHomogeneous : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DegreeCapExceeded : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

using Word = std::vector<uint16_t>;
using Bidegree = std::pair<std::vector<int>, std::vector<int>>;

/// Element of V^{(x) n} in left-parenthesized words over the basis of V.
struct TensorElement {
    size_t degree = 0;
    std::map<Word, Cyclo> coords;

    static TensorElement word(const Word& w, Cyclo c = Cyclo(1)) {
        TensorElement t;
        t.degree = w.size();
        t.coords[w] = std::move(c);
        return t;
    }

    void add(const Word& w, const Cyclo& c) {
        if (c.is_zero()) return;
        auto it = coords.find(w);
        if (it == coords.end()) {
            coords.emplace(w, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) coords.erase(it);
        }
    }
    TensorElement operator+(const TensorElement& o) const {
        TensorElement r = *this;
        if (coords.empty()) r.degree = o.degree;
        for (const auto& [w, c] : o.coords) r.add(w, c);
        return r;
    }
    TensorElement operator-(const TensorElement& o) const { return *this + o.scaled(Cyclo(-1)); }
    TensorElement scaled(const Cyclo& s) const {
        TensorElement r;
        r.degree = degree;
        if (s.is_zero()) return r;
        for (const auto& [w, c] : coords) r.coords.emplace(w, c * s);
        return r;
    }
    bool is_zero() const { return coords.empty(); }
    bool operator==(const TensorElement& o) const { return (*this - o).is_zero(); }
};

/// Delta(x) as a sum over pairs of words; the bidegree of a term is the pair of word lengths.
struct CoproductValue {
    std::map<std::pair<Word, Word>, Cyclo> terms;

    void add(const Word& a, const Word& b, const Cyclo& c) {
        if (c.is_zero()) return;
        auto key = std::make_pair(a, b);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(std::move(key), c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    /// Part of bidegree (p, n-p).
    CoproductValue part(size_t p) const {
        CoproductValue r;
        for (const auto& [k, c] : terms)
            if (k.first.size() == p) r.terms.emplace(k, c);
        return r;
    }
    bool operator==(const CoproductValue& o) const {
        CoproductValue d = *this;
        for (const auto& [k, c] : o.terms) d.add(k.first, k.second, -c);
        return d.terms.empty();
    }
};

/// Monomial operator on V^{(x) n}: word index -> (word index, scalar).
struct MonoOp {
    size_t n = 0;
    std::vector<std::pair<size_t, Root>> image;

    MonoOp operator*(const MonoOp& B) const {
        MonoOp r{B.n, {}};
        for (const auto& [t, s] : B.image) r.image.push_back({image[t].first, s * image[t].second});
        return r;
    }
    bool operator==(const MonoOp&) const = default;
};

/// Sparse matrix over Cyclo indexed by word indices; entry (row, col).
using SparseMatrix = std::map<std::pair<size_t, size_t>, Cyclo>;

/// Engine bound to one module. Caches are filled lazily, so a single instance is not thread-safe.
class Nichols {
public:
    explicit Nichols(YDModule V, size_t cap = 8) : V_(std::move(V)), cap_(cap), G_(V_.group()) {
        L_ = V_.cocycle()->order_bound();
        for (const auto& S : V_.components())
            for (const auto& m : S.table())
                for (const auto& s : m.scal) L_ = lcm64(L_, s.order());
        O_ = static_cast<size_t>(G_.order());
    }

    const YDModule& module() const { return V_; }
    size_t cap() const { return cap_; }
    size_t dim() const { return V_.dim(); }

    // ---- degree bookkeeping

    size_t mul(size_t a, size_t b) const {
        size_t r = 0;
        const auto& m = G_.factors();
        size_t stride = 1;
        // mixed radix with the last factor fastest
        for (size_t i = m.size(); i-- > 0;) {
            size_t mi = static_cast<size_t>(m[i]);
            size_t da = (a / stride) % mi, db = (b / stride) % mi;
            r += ((da + db) % mi) * stride;
            stride *= mi;
        }
        return r;
    }
    size_t degree_of(const Word& w, size_t upto) const {
        size_t d = 0;
        for (size_t j = 0; j < upto; ++j) d = mul(d, V_.degree_index(w[j]));
        return d;
    }
    size_t degree_of(const Word& w) const { return degree_of(w, w.size()); }

    std::vector<int> n0_degree(const Word& w) const {
        std::vector<int> d(V_.theta(), 0);
        for (auto b : w) ++d[V_.label(b).comp];
        return d;
    }

    Root phi(size_t x, size_t y, size_t z) const {
        if (x == 0 || y == 0 || z == 0) return Root();
        uint64_t key = (static_cast<uint64_t>(x) * O_ + y) * O_ + z;
        auto it = phi_cache_.find(key);
        if (it != phi_cache_.end()) return it->second;
        Root r = V_.cocycle()->eval(G_.at(x), G_.at(y), G_.at(z));
        phi_cache_.emplace(key, r);
        return r;
    }
    Root phi_g(size_t g, size_t x, size_t y) const { return phi(g, x, y) * phi(x, y, g) / phi(x, g, y); }

    // ---- monomial maps on words

    /// c_i on a word, 1 <= i < n: associator conjugation gives Phi(x,z,y)/Phi(x,y,z).
    std::pair<Word, Root> braid(const Word& w, size_t i) const {
        if (i < 1 || i >= w.size()) throw std::out_of_range("braid position out of range");
        size_t x = degree_of(w, i - 1), y = V_.degree_index(w[i - 1]), z = V_.degree_index(w[i]);
        auto [b2, s] = V_.act(y, w[i]);
        Word out = w;
        out[i - 1] = static_cast<uint16_t>(b2);
        out[i] = w[i - 1];
        return {out, s * phi(x, z, y) / phi(x, y, z)};
    }

    /// e acting on a left-parenthesized word.
    std::pair<Word, Root> act(size_t e, const Word& w) const {
        Word out = w;
        Root s;
        size_t pre = 0;
        for (size_t j = 0; j < w.size(); ++j) {
            size_t d = V_.degree_index(w[j]);
            if (j > 0) s *= phi_g(e, pre, d);
            auto [b2, r] = V_.act(e, w[j]);
            out[j] = static_cast<uint16_t>(b2);
            s *= r;
            pre = mul(pre, d);
        }
        return {out, s};
    }

    /// Scalar of the product u * w = reassociation of u (x) w to a left-parenthesized word.
    Root concat_scalar(const Word& u, const Word& w) const {
        size_t du = degree_of(u);
        Root s;
        size_t pre = w.empty() ? 0 : V_.degree_index(w[0]);
        for (size_t j = 1; j < w.size(); ++j) {
            size_t d = V_.degree_index(w[j]);
            s *= phi(du, pre, d);
            pre = mul(pre, d);
        }
        return s;
    }

    // ---- elements

    TensorElement letter(size_t b) const { return TensorElement::word(Word{static_cast<uint16_t>(b)}); }

    TensorElement product(const TensorElement& x, const TensorElement& y) const {
        TensorElement r;
        r.degree = x.degree + y.degree;
        for (const auto& [u, a] : x.coords)
            for (const auto& [w, b] : y.coords) {
                Word uw = u;
                uw.insert(uw.end(), w.begin(), w.end());
                r.add(uw, a * b * Cyclo::from(concat_scalar(u, w)));
            }
        return r;
    }

    TensorElement act(const GroupElement& e, const TensorElement& x) const {
        size_t ei = G_.index(e);
        TensorElement r;
        r.degree = x.degree;
        for (const auto& [w, c] : x.coords) {
            auto [w2, s] = act(ei, w);
            r.add(w2, c * Cyclo::from(s));
        }
        return r;
    }

    /// G-degree of a homogeneous element.
    size_t homogeneous_degree(const TensorElement& x) const {
        std::optional<size_t> d;
        for (const auto& [w, c] : x.coords) {
            size_t dw = degree_of(w);
            if (d && *d != dw) throw NotHomogeneous("element is not G-homogeneous");
            d = dw;
        }
        if (!d) throw NotHomogeneous("zero element has no degree");
        return *d;
    }

    /// ad_x(y) = x y - (g.y) x for x of degree one and G-degree g.
    TensorElement ad(const TensorElement& x, const TensorElement& y) const {
        if (x.degree != 1) throw std::invalid_argument("ad: first argument must have degree one");
        if (y.is_zero()) return y;
        size_t g = homogeneous_degree(x);
        return product(x, y) - product(act(G_.at(g), y), x);
    }

    TensorElement apply_braid(const TensorElement& x, size_t i) const {
        TensorElement r;
        r.degree = x.degree;
        for (const auto& [w, c] : x.coords) {
            auto [w2, s] = braid(w, i);
            r.add(w2, c * Cyclo::from(s));
        }
        return r;
    }

    // ---- symmetrizer

    /// S_n(w) with S_n = (S_{n-1} (x) id) T_n and T_n = sum_k c_{n-1} ... c_k.
    const std::map<Word, std::vector<int64_t>>& symmetrize_word(const Word& w) const {
        if (w.size() > cap_) throw DegreeCapExceeded("degree " + std::to_string(w.size()) + " exceeds the degree cap");
        auto it = sym_cache_.find(w);
        if (it != sym_cache_.end()) return it->second;
        std::map<Word, std::vector<int64_t>> out;
        size_t n = w.size();
        if (n <= 1) {
            std::vector<int64_t> one(L_, 0);
            one[0] = 1;
            out[w] = one;
        } else {
            for (size_t k = 1; k <= n; ++k) {
                Word cur = w;
                Root s;
                for (size_t j = k; j < n; ++j) {
                    auto [nw, r] = braid(cur, j);
                    cur = std::move(nw);
                    s *= r;
                }
                Word prefix(cur.begin(), cur.end() - 1);
                uint16_t last = cur.back();
                int64_t e = s.exponent_over(L_);
                const auto& sub = symmetrize_word(prefix);
                for (const auto& [u, coef] : sub) {
                    Word uw = u;
                    uw.push_back(last);
                    auto& acc = out[uw];
                    if (acc.empty()) acc.assign(L_, 0);
                    for (int64_t t = 0; t < L_; ++t)
                        if (coef[t]) acc[(t + e) % L_] += coef[t];
                }
            }
        }
        return sym_cache_.emplace(w, std::move(out)).first->second;
    }

    TensorElement symmetrize(const TensorElement& x) const {
        TensorElement r;
        r.degree = x.degree;
        for (const auto& [w, c] : x.coords)
            for (const auto& [u, coef] : symmetrize_word(w)) r.add(u, c * Cyclo::from_group_ring(L_, coef));
        return r;
    }

    /// x vanishes in B(V) iff S_n(x) = 0.
    bool is_zero_in_nichols(const TensorElement& x) const {
        if (x.degree == 0) return x.is_zero();
        return symmetrize(x).is_zero();
    }

    /// Sum over S_n of lifts of reduced words, picking the leftmost or the rightmost descent.
    TensorElement symmetrize_by_lifts(const TensorElement& x, bool rightmost) const {
        size_t n = x.degree;
        std::vector<size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        TensorElement r;
        r.degree = n;
        do {
            std::vector<size_t> p = perm, word;
            for (;;) {
                std::optional<size_t> d;
                for (size_t i = 0; i + 1 < n; ++i)
                    if (p[i] > p[i + 1]) {
                        d = i;
                        if (!rightmost) break;
                    }
                if (!d) break;
                std::swap(p[*d], p[*d + 1]);
                word.push_back(*d + 1);
            }
            TensorElement y = x;
            for (auto i : word) y = apply_braid(y, i);
            r = r + y;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return r;
    }

    // ---- coproduct

    /// Delta of a word through Delta(w' l) = Delta(w') (l (x) 1 + 1 (x) l).
    const CoproductValue& coproduct_word(const Word& w) const {
        if (w.size() > cap_) throw DegreeCapExceeded("degree " + std::to_string(w.size()) + " exceeds the degree cap");
        auto it = cop_cache_.find(w);
        if (it != cop_cache_.end()) return it->second;
        CoproductValue out;
        if (w.empty()) {
            out.add({}, {}, Cyclo(1));
        } else {
            Word prefix(w.begin(), w.end() - 1);
            uint16_t l = w.back();
            size_t dl = V_.degree_index(l);
            for (const auto& [k, c] : coproduct_word(prefix).terms) {
                const auto& [A, B] = k;
                size_t a = degree_of(A), b = degree_of(B);
                // (A (x) B)(l (x) 1) = Phi(a,l,b)/Phi(a,b,l) A(b.l) (x) B
                auto [l2, s] = V_.act(b, l);
                Word A2 = A;
                A2.push_back(static_cast<uint16_t>(l2));
                out.add(A2, B, c * Cyclo::from(s * phi(a, dl, b) / phi(a, b, dl)));
                // (A (x) B)(1 (x) l) = Phi(a,b,l)^{-1} A (x) Bl
                Word B2 = B;
                B2.push_back(l);
                out.add(A, B2, c * Cyclo::from(phi(a, b, dl).inv()));
            }
        }
        return cop_cache_.emplace(w, std::move(out)).first->second;
    }

    CoproductValue coproduct(const TensorElement& x) const {
        CoproductValue r;
        for (const auto& [w, c] : x.coords)
            for (const auto& [k, d] : coproduct_word(w).terms) r.add(k.first, k.second, c * d);
        return r;
    }

    /// Second zero test: x vanishes in B(V) iff every component y_b of Delta_{n-1,1}(x) = sum y_b (x) v_b vanishes.
    bool is_zero_by_coproduct(const TensorElement& x) const {
        if (x.degree <= 1) return x.is_zero();
        std::map<uint16_t, TensorElement> parts;
        for (const auto& [k, c] : coproduct(x).part(x.degree - 1).terms) {
            auto& y = parts[k.second.at(0)];
            y.degree = x.degree - 1;
            y.add(k.first, c);
        }
        for (const auto& [b, y] : parts)
            if (!is_zero_by_coproduct(y)) return false;
        return true;
    }

    /// Non-extremal coproduct terms grouped by N_0^theta bidegree; empty groups dropped.
    std::map<Bidegree, CoproductValue> standard_decomposition(const TensorElement& x) const {
        std::optional<std::vector<int>> deg;
        for (const auto& [w, c] : x.coords) {
            auto d = n0_degree(w);
            if (deg && *deg != d) throw NotHomogeneous("element is not N0^theta-homogeneous");
            deg = d;
        }
        std::map<Bidegree, CoproductValue> out;
        for (const auto& [k, c] : coproduct(x).terms) {
            if (k.first.empty() || k.second.empty()) continue;
            out[{n0_degree(k.first), n0_degree(k.second)}].add(k.first, k.second, c);
        }
        for (auto it = out.begin(); it != out.end();) it = it->second.terms.empty() ? out.erase(it) : std::next(it);
        return out;
    }

    // ---- matrices

    /// All words of length n in lexicographic order; word index = base-dim expansion.
    std::vector<Word> all_words(size_t n) const {
        std::vector<Word> out;
        Word w(n, 0);
        size_t d = dim();
        for (;;) {
            out.push_back(w);
            size_t j = n;
            while (j > 0 && ++w[j - 1] == d) w[--j] = 0;
            if (j == 0) break;
        }
        return out;
    }
    size_t word_index(const Word& w) const {
        size_t idx = 0;
        for (auto b : w) idx = idx * dim() + b;
        return idx;
    }

    MonoOp braid_op(size_t n, size_t i) const {
        if (n > cap_) throw DegreeCapExceeded("degree exceeds the degree cap");
        MonoOp op{n, {}};
        for (const auto& w : all_words(n)) {
            auto [w2, s] = braid(w, i);
            op.image.push_back({word_index(w2), s});
        }
        return op;
    }

    SparseMatrix quantum_symmetrizer(size_t n) const {
        SparseMatrix M;
        for (const auto& w : all_words(n)) {
            size_t col = word_index(w);
            for (const auto& [u, coef] : symmetrize_word(w)) {
                Cyclo c = Cyclo::from_group_ring(L_, coef);
                if (!c.is_zero()) M[{word_index(u), col}] = c;
            }
        }
        return M;
    }

    /// dim B^n(V) as the rank of S_n, block by block in the N_0^theta grading.
    size_t nichols_dim(size_t n) const {
        if (n == 0) return 1;
        std::map<std::vector<int>, std::vector<Word>> blocks;
        for (const auto& w : all_words(n)) blocks[n0_degree(w)].push_back(w);
        size_t total = 0;
        for (const auto& [deg, words] : blocks) {
            std::map<Word, size_t> row_of;
            for (size_t i = 0; i < words.size(); ++i) row_of[words[i]] = i;
            CycloMatrix M(words.size(), std::vector<Cyclo>(words.size(), Cyclo(0)));
            for (size_t col = 0; col < words.size(); ++col)
                for (const auto& [u, coef] : symmetrize_word(words[col])) M[row_of.at(u)][col] = Cyclo::from_group_ring(L_, coef);
            total += rank(std::move(M));
        }
        return total;
    }

    /// Graded dimensions up to maxdeg, stopping after the first zero degree.
    std::vector<size_t> hilbert_dims(size_t maxdeg) const {
        std::vector<size_t> out;
        for (size_t n = 0; n <= maxdeg; ++n) {
            out.push_back(nichols_dim(n));
            if (out.back() == 0) break;
        }
        return out;
    }

    /// Rank of the images in B(V) of homogeneous elements of one degree.
    size_t rank_in_nichols(const std::vector<TensorElement>& xs) const {
        std::map<Word, size_t> col;
        std::vector<TensorElement> ys;
        for (const auto& x : xs) {
            ys.push_back(symmetrize(x));
            for (const auto& [w, c] : ys.back().coords) col.emplace(w, col.size());
        }
        CycloMatrix M(ys.size(), std::vector<Cyclo>(col.size(), Cyclo(0)));
        for (size_t i = 0; i < ys.size(); ++i)
            for (const auto& [w, c] : ys[i].coords) M[i][col[w]] = c;
        return rank(std::move(M));
    }

    /// Relations among homogeneous elements: coefficient vectors c with sum c_i x_i = 0 in B(V).
    std::vector<std::vector<Cyclo>> relations_among(const std::vector<TensorElement>& xs) const {
        std::map<Word, size_t> row;
        std::vector<TensorElement> ys;
        for (const auto& x : xs) {
            ys.push_back(symmetrize(x));
            for (const auto& [w, c] : ys.back().coords) row.emplace(w, row.size());
        }
        CycloMatrix M(row.size(), std::vector<Cyclo>(ys.size(), Cyclo(0)));
        for (size_t i = 0; i < ys.size(); ++i)
            for (const auto& [w, c] : ys[i].coords) M[row[w]][i] = c;
        return nullspace(std::move(M), ys.size());
    }

    std::string str(const TensorElement& x) const {
        if (x.is_zero()) return "0";
        std::string s;
        for (const auto& [w, c] : x.coords) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")[";
            for (size_t j = 0; j < w.size(); ++j) s += (j ? " " : "") + V_.basis_name(w[j]);
            s += "]";
        }
        return s;
    }

private:
    YDModule V_;
    size_t cap_;
    FAGroup G_;
    int64_t L_ = 1;
    size_t O_ = 1;
    mutable std::unordered_map<uint64_t, Root> phi_cache_;
    mutable std::map<Word, std::map<Word, std::vector<int64_t>>> sym_cache_;
    mutable std::map<Word, CoproductValue> cop_cache_;
};

// ---- homogeneous subalgebra conditions

/// Union of parts {v in N_0^theta : A v >= b}.
struct DegreeSet {
    struct Part {
        std::vector<std::vector<int64_t>> A;
        std::vector<int64_t> b;
    };
    std::vector<Part> parts;

    bool contains(const std::vector<int>& v) const {
        for (const auto& p : parts) {
            bool ok = true;
            for (size_t r = 0; r < p.A.size() && ok; ++r) {
                int64_t s = 0;
                for (size_t t = 0; t < v.size(); ++t) s += p.A[r][t] * v[t];
                ok = s >= p.b[r];
            }
            if (ok) return true;
        }
        return false;
    }
};

struct CdResult {
    bool ok = true;
    std::string failed;  ///< "Cd1", "Cd2" or "Cd3"
    std::string witness;
    bool cd1_symbolic = true;
    bool cd2_symbolic = true;
};

namespace detail {

inline std::string vec_str(const std::vector<int>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

/// A lower bound of a.v over the part, when one follows from a row (plus a nonnegative vector).
inline std::optional<int64_t> lower_bound_on(const std::vector<int64_t>& a, const DegreeSet::Part& P) {
    std::optional<int64_t> best;
    auto nonneg = [](const std::vector<int64_t>& x) {
        return std::all_of(x.begin(), x.end(), [](int64_t y) { return y >= 0; });
    };
    if (nonneg(a)) best = 0;
    for (size_t r = 0; r < P.A.size(); ++r) {
        std::vector<int64_t> diff(a.size());
        for (size_t t = 0; t < a.size(); ++t) diff[t] = a[t] - P.A[r][t];
        if (nonneg(diff) && (!best || P.b[r] > *best)) best = P.b[r];
    }
    return best;
}

inline bool sum_inside_symbolic(const DegreeSet::Part& P, const DegreeSet::Part& Q, const DegreeSet& S) {
    for (const auto& R : S.parts) {
        bool ok = true;
        for (size_t r = 0; r < R.A.size() && ok; ++r) {
            auto lp = lower_bound_on(R.A[r], P), lq = lower_bound_on(R.A[r], Q);
            ok = lp && lq && *lp + *lq >= R.b[r];
        }
        if (ok) return true;
    }
    return false;
}

inline std::vector<std::vector<int>> vectors_up_to(size_t theta, int bound) {
    std::vector<std::vector<int>> out;
    std::vector<int> v(theta, 0);
    std::function<void(size_t, int)> rec = [&](size_t i, int left) {
        if (i == theta) {
            out.push_back(v);
            return;
        }
        for (int a = 0; a <= left; ++a) {
            v[i] = a;
            rec(i + 1, left - a);
        }
        v[i] = 0;
    };
    rec(0, bound);
    return out;
}

inline std::vector<int> add_vec(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline CdResult check_set(const std::string& name, const std::vector<std::vector<int>>& I, const DegreeSet& S, size_t theta, int bound) {
    CdResult res;
    auto fail = [&](const std::string& cd, const std::string& w) {
        res.ok = false;
        res.failed = cd;
        res.witness = name + ": " + w;
        return res;
    };
    // Cd1
    bool symbolic = true;
    for (const auto& P : S.parts)
        for (const auto& Q : S.parts)
            if (!sum_inside_symbolic(P, Q, S)) symbolic = false;
    if (!symbolic) {
        res.cd1_symbolic = false;
        auto vs = vectors_up_to(theta, bound);
        std::vector<std::vector<int>> in;
        for (const auto& v : vs)
            if (S.contains(v)) in.push_back(v);
        for (const auto& a : in)
            for (const auto& b : in)
                if (!S.contains(add_vec(a, b))) return fail("Cd1", vec_str(a) + " + " + vec_str(b) + " leaves the set");
    }
    // Cd2: disjointness from N_0[I]
    if (I.size() == 1) {
        const auto& u = I[0];
        for (const auto& P : S.parts) {
            int64_t lo = 0, hi = INT64_MAX;
            for (size_t r = 0; r < P.A.size(); ++r) {
                int64_t c = 0;
                for (size_t t = 0; t < theta; ++t) c += P.A[r][t] * u[t];
                int64_t b = P.b[r];
                if (c > 0 && b > 0) lo = std::max(lo, (b + c - 1) / c);
                if (c == 0 && b > 0) hi = -1;
                if (c < 0) {
                    // k * c >= b  <=>  k <= floor(-b / -c) when b <= 0
                    if (b > 0) hi = -1;
                    else hi = std::min(hi, (-b) / (-c));
                }
            }
            if (lo <= hi) {
                std::vector<int> w(theta);
                for (size_t t = 0; t < theta; ++t) w[t] = static_cast<int>(lo * u[t]);
                return fail("Cd2", vec_str(w) + " lies in N0[I]");
            }
        }
    } else {
        res.cd2_symbolic = false;
        for (const auto& k : vectors_up_to(I.size(), bound)) {
            std::vector<int> w(theta, 0);
            for (size_t j = 0; j < I.size(); ++j)
                for (size_t t = 0; t < theta; ++t) w[t] += k[j] * I[j][t];
            if (S.contains(w)) return fail("Cd2", vec_str(w) + " lies in N0[I]");
        }
    }
    // Cd2: shift stability
    for (const auto& u : I) {
        std::vector<int64_t> uu(u.begin(), u.end());
        for (const auto& P : S.parts) {
            bool ok = true;
            for (size_t r = 0; r < P.A.size() && ok; ++r) {
                int64_t c = 0;
                for (size_t t = 0; t < theta; ++t) c += P.A[r][t] * uu[t];
                ok = c >= 0;
            }
            if (ok) continue;
            res.cd2_symbolic = false;
            for (const auto& v : vectors_up_to(theta, bound))
                if (S.contains(v) && !S.contains(add_vec(v, u)))
                    return fail("Cd2", vec_str(v) + " + " + vec_str(u) + " leaves the set");
        }
    }
    return res;
}

}  // namespace detail

/// Cd1 (additive closure), Cd2 (disjoint from N_0[I], I-shift stable) for S and T; Cd3 on the supplied bidegrees.
inline CdResult check_cd_conditions(const std::vector<std::vector<int>>& I, const DegreeSet& S, const DegreeSet& T,
                                    const std::vector<Bidegree>& samples, size_t theta, int bound = 6) {
    CdResult r = detail::check_set("S", I, S, theta, bound);
    if (!r.ok) return r;
    CdResult t = detail::check_set("T", I, T, theta, bound);
    if (!t.ok) return t;
    r.cd1_symbolic = r.cd1_symbolic && t.cd1_symbolic;
    r.cd2_symbolic = r.cd2_symbolic && t.cd2_symbolic;
    for (const auto& [l, rt] : samples) {
        if (!S.contains(l) || !T.contains(rt)) {
            r.ok = false;
            r.failed = "Cd3";
            r.witness = "bidegree " + detail::vec_str(l) + " (x) " + detail::vec_str(rt) + " outside S x T";
            return r;
        }
    }
    return r;
}

}  // namespace twyd
