#pragma once

/**
 * @file cohomology.hpp
 * @brief Normalized 3-cocycles in normal form, pullbacks, coboundaries and the hat-group resolver.
 */

#include <memory>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "group.hpp"
#include "scalar.hpp"

namespace twyd {

class NotNormalForm : public std::invalid_argument {
public:
    NotNormalForm() : std::invalid_argument("cocycle is not given in normal form") {}
};

/// The sequence (c_l ; c_st ; c_rst), each block in lexicographic index order.
struct CSeq {
    std::vector<int64_t> c1;
    std::vector<int64_t> c2;
    std::vector<int64_t> c3;

    bool operator==(const CSeq&) const = default;

    static size_t length(size_t n) { return n + n * (n - 1) / 2 + n * (n - 1) * (n - 2) / 6; }

    static CSeq zero(size_t n) {
        return CSeq{std::vector<int64_t>(n, 0), std::vector<int64_t>(n * (n - 1) / 2, 0),
                    std::vector<int64_t>(n * (n - 1) * (n - 2) / 6, 0)};
    }

    static CSeq from_flat(size_t n, const std::vector<int64_t>& flat) {
        if (flat.size() != length(n)) throw std::invalid_argument("c-sequence has wrong length");
        CSeq c;
        size_t p = 0;
        for (size_t i = 0; i < n; ++i) c.c1.push_back(flat[p++]);
        for (size_t i = 0; i < n * (n - 1) / 2; ++i) c.c2.push_back(flat[p++]);
        while (p < flat.size()) c.c3.push_back(flat[p++]);
        return c;
    }
    std::vector<int64_t> flat() const {
        std::vector<int64_t> f = c1;
        f.insert(f.end(), c2.begin(), c2.end());
        f.insert(f.end(), c3.begin(), c3.end());
        return f;
    }

    /// Upper bounds m_l, (m_s,m_t), (m_r,m_s,m_t) in flat order.
    static std::vector<int64_t> bounds(const FAGroup& G) {
        const auto& m = G.factors();
        size_t n = m.size();
        std::vector<int64_t> b;
        for (size_t l = 0; l < n; ++l) b.push_back(m[l]);
        for (size_t s = 0; s < n; ++s)
            for (size_t t = s + 1; t < n; ++t) b.push_back(std::gcd(m[s], m[t]));
        for (size_t r = 0; r < n; ++r)
            for (size_t s = r + 1; s < n; ++s)
                for (size_t t = s + 1; t < n; ++t) b.push_back(std::gcd(m[r], std::gcd(m[s], m[t])));
        return b;
    }

    /// Index of the first entry violating its bound, if any.
    std::optional<size_t> out_of_range(const FAGroup& G) const {
        auto b = bounds(G);
        auto f = flat();
        if (f.size() != b.size()) return 0;
        for (size_t i = 0; i < f.size(); ++i)
            if (f[i] < 0 || f[i] >= b[i]) return i;
        return std::nullopt;
    }

    /// Every c-sequence allowed on G.
    static std::vector<CSeq> all(const FAGroup& G) {
        auto b = bounds(G);
        std::vector<CSeq> out;
        std::vector<int64_t> cur(b.size(), 0);
        for (;;) {
            out.push_back(from_flat(G.rank(), cur));
            size_t i = 0;
            while (i < cur.size() && ++cur[i] == b[i]) cur[i++] = 0;
            if (i == cur.size()) break;
        }
        return out;
    }
};

/// Normalized 2-cochain with values zeta_N^{e(a,b)}.
class Cochain2 {
public:
    Cochain2() = default;
    Cochain2(FAGroup base, int64_t N) : base_(std::move(base)), N_(N) {
        size_t o = static_cast<size_t>(base_.order());
        e_.assign(o * o, 0);
    }

    const FAGroup& base() const { return base_; }
    int64_t root_order() const { return N_; }

    int64_t exponent(const GroupElement& a, const GroupElement& b) const {
        return e_[base_.index(a) * static_cast<size_t>(base_.order()) + base_.index(b)];
    }
    void set_exponent(const GroupElement& a, const GroupElement& b, int64_t e) {
        e_[base_.index(a) * static_cast<size_t>(base_.order()) + base_.index(b)] = mod_floor(e, N_);
    }
    Root value(const GroupElement& a, const GroupElement& b) const { return Root(exponent(a, b), N_); }

    bool is_normalized() const {
        auto one = base_.identity();
        for (const auto& g : base_.elements())
            if (exponent(one, g) != 0 || exponent(g, one) != 0) return false;
        return true;
    }

    Cochain2 inverse() const {
        Cochain2 r = *this;
        for (auto& x : r.e_) x = mod_floor(-x, N_);
        return r;
    }

    /// Pointwise product.
    Cochain2 operator*(const Cochain2& o) const {
        if (!(base_ == o.base_)) throw std::invalid_argument("Cochain2: different base groups");
        int64_t N = lcm64(N_, o.N_);
        Cochain2 r(base_, N);
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = mod_floor(e_[i] * (N / N_) + o.e_[i] * (N / o.N_), N);
        return r;
    }

    bool operator==(const Cochain2& o) const {
        if (!(base_ == o.base_)) return false;
        for (size_t i = 0; i < e_.size(); ++i)
            if (Root(e_[i], N_) != Root(o.e_[i], o.N_)) return false;
        return true;
    }

    template <class F>
    static Cochain2 from_function(const FAGroup& G, int64_t N, F&& f) {
        Cochain2 J(G, N);
        for (const auto& a : G.elements())
            for (const auto& b : G.elements()) J.set_exponent(a, b, f(a, b));
        return J;
    }

private:
    FAGroup base_;
    int64_t N_ = 1;
    std::vector<int64_t> e_;
};

/// Evaluable normalized 3-cocycle: a normal form, a pullback, or a product with a coboundary.
class Cocycle3 {
public:
    struct NormalForm {
        CSeq c;
    };
    struct Pullback {
        GroupHom pi;
        std::shared_ptr<const Cocycle3> inner;
    };
    struct Product {
        std::shared_ptr<const Cocycle3> inner;
        Cochain2 cochain;
        int sign;  ///< inner * (dJ)^sign
    };

    Cocycle3() = default;

    static Cocycle3 normal_form(const FAGroup& G, const CSeq& c) {
        if (auto bad = c.out_of_range(G))
            throw std::invalid_argument("c-sequence entry " + std::to_string(*bad) + " out of range");
        Cocycle3 r;
        r.base_ = G;
        r.kind_ = NormalForm{c};
        return r;
    }
    static Cocycle3 trivial(const FAGroup& G) { return normal_form(G, CSeq::zero(G.rank())); }

    const FAGroup& base() const { return base_; }
    bool is_normal_form() const { return std::holds_alternative<NormalForm>(kind_); }
    const CSeq& cseq() const {
        if (!is_normal_form()) throw NotNormalForm();
        return std::get<NormalForm>(kind_).c;
    }
    const auto& kind() const { return kind_; }

    Root eval(const GroupElement& a, const GroupElement& b, const GroupElement& c) const {
        if (auto* nf = std::get_if<NormalForm>(&kind_)) return eval_normal(nf->c, a, b, c);
        if (auto* pb = std::get_if<Pullback>(&kind_)) return pb->inner->eval(pb->pi(a), pb->pi(b), pb->pi(c));
        const auto& pr = std::get<Product>(kind_);
        Root d = coboundary_value(pr.cochain, a, b, c);
        return pr.inner->eval(a, b, c) * d.pow(pr.sign);
    }
    Cyclo value(const GroupElement& a, const GroupElement& b, const GroupElement& c) const {
        return Cyclo::from(eval(a, b, c));
    }

    /// A multiple of the order of every value.
    int64_t order_bound() const {
        if (is_normal_form()) {
            int64_t L = 1;
            for (auto m : base_.factors()) L = lcm64(L, m);
            return L;
        }
        if (auto* pb = std::get_if<Pullback>(&kind_)) return pb->inner->order_bound();
        const auto& pr = std::get<Product>(kind_);
        return lcm64(pr.inner->order_bound(), pr.cochain.root_order());
    }

    static Root coboundary_value(const Cochain2& J, const GroupElement& x, const GroupElement& y, const GroupElement& z) {
        const FAGroup& G = J.base();
        GroupElement yz = G.mul(y, z), xy = G.mul(x, y);
        int64_t e = J.exponent(y, z) + J.exponent(x, yz) - J.exponent(xy, z) - J.exponent(x, y);
        return Root(e, J.root_order());
    }

    static Cocycle3 product(const Cocycle3& inner, const Cochain2& J, int sign) {
        if (!(inner.base() == J.base())) throw std::invalid_argument("Cocycle3::product: base mismatch");
        Cocycle3 r;
        r.base_ = inner.base_;
        r.kind_ = Product{std::make_shared<const Cocycle3>(inner), J, sign};
        return r;
    }
    static Cocycle3 pullback(const Cocycle3& inner, const GroupHom& pi) {
        if (!(pi.dst == inner.base())) throw std::invalid_argument("pullback: homomorphism target differs from cocycle base");
        Cocycle3 r;
        r.base_ = pi.src;
        r.kind_ = Pullback{pi, std::make_shared<const Cocycle3>(inner)};
        return r;
    }

private:
    Root eval_normal(const CSeq& c, const GroupElement& a, const GroupElement& b, const GroupElement& d) const {
        const auto& m = base_.factors();
        size_t n = m.size();
        Root r;
        for (size_t l = 0; l < n; ++l)
            if (c.c1[l]) r *= Root(c.c1[l] * a.exps[l] * ((b.exps[l] + d.exps[l]) / m[l]), m[l]);
        size_t p = 0;
        for (size_t s = 0; s < n; ++s)
            for (size_t t = s + 1; t < n; ++t, ++p)
                if (c.c2[p]) r *= Root(c.c2[p] * a.exps[t] * ((b.exps[s] + d.exps[s]) / m[s]), m[t]);
        p = 0;
        for (size_t q = 0; q < n; ++q)
            for (size_t s = q + 1; s < n; ++s)
                for (size_t t = s + 1; t < n; ++t, ++p)
                    if (c.c3[p])
                        r *= Root(c.c3[p] * a.exps[q] * b.exps[s] * d.exps[t], std::gcd(m[q], std::gcd(m[s], m[t])));
        return r;
    }

    FAGroup base_;
    std::variant<NormalForm, Pullback, Product> kind_;
};

/// True iff all c_rst vanish.
inline bool is_abelian(const Cocycle3& phi) {
    const CSeq& c = phi.cseq();
    for (auto x : c.c3)
        if (x) return false;
    return true;
}

/// Phi_g(x,y) = Phi(g,x,y) Phi(x,y,g) / Phi(x,g,y).
inline Root phi_g_value(const Cocycle3& phi, const GroupElement& g, const GroupElement& x, const GroupElement& y) {
    return phi.eval(g, x, y) * phi.eval(x, y, g) / phi.eval(x, g, y);
}

inline Cochain2 phi_g(const Cocycle3& phi, const GroupElement& g) {
    const FAGroup& G = phi.base();
    int64_t N = phi.order_bound();
    return Cochain2::from_function(G, N, [&](const GroupElement& x, const GroupElement& y) {
        return phi_g_value(phi, g, x, y).exponent_over(N);
    });
}

/// Phi_{g_i}(g_j,g_k) / Phi_{g_i}(g_k,g_j).
inline Root phi_ratio(const Cocycle3& phi, const GroupElement& gi, const GroupElement& gj, const GroupElement& gk) {
    return phi_g_value(phi, gi, gj, gk) / phi_g_value(phi, gi, gk, gj);
}

/// Abelianness of the restriction of phi to the subgroup generated by gens.
inline bool is_abelian_on(const Cocycle3& phi, const std::vector<GroupElement>& gens) {
    for (const auto& a : gens)
        for (const auto& b : gens)
            for (const auto& c : gens)
                if (!phi_ratio(phi, a, b, c).is_one()) return false;
    return true;
}

inline Cocycle3 coboundary(const Cochain2& J) { return Cocycle3::product(Cocycle3::trivial(J.base()), J, 1); }

inline Cocycle3 pullback(const Cocycle3& phi, const GroupHom& pi) { return Cocycle3::pullback(phi, pi); }

/// Exhaustive check of the 3-cocycle identity and normalization.
inline bool satisfies_cocycle_identity(const Cocycle3& phi) {
    const FAGroup& G = phi.base();
    auto el = G.elements();
    auto one = G.identity();
    for (const auto& f : el)
        for (const auto& g : el)
            if (!phi.eval(f, one, g).is_one()) return false;
    for (const auto& e : el)
        for (const auto& f : el)
            for (const auto& g : el)
                for (const auto& h : el) {
                    Root lhs = phi.eval(G.mul(e, f), g, h) * phi.eval(e, f, G.mul(g, h));
                    Root rhs = phi.eval(e, f, g) * phi.eval(e, G.mul(f, g), h) * phi.eval(f, g, h);
                    if (lhs != rhs) return false;
                }
    return true;
}

/// Exhaustive check that a 2-cochain with Root values is a 2-cocycle.
inline bool is_two_cocycle(const Cochain2& c) {
    const FAGroup& G = c.base();
    auto el = G.elements();
    for (const auto& x : el)
        for (const auto& y : el)
            for (const auto& z : el)
                if (!Cocycle3::coboundary_value(c, x, y, z).is_one()) return false;
    return true;
}

/// Solve dJ = pi^* phi on the source of pi.
///
/// Uses that a 3-cocycle D with D(x,y,s) = 1 for all x,y and generators s is trivial, so J is
/// determined by its values J(a,s) on generators s; the remaining unknowns are constrained by the
/// non-tree edges of the Cayley graph.
inline std::optional<Cochain2> resolve_coboundary(const Cocycle3& phi, const FAGroup& target, const GroupHom& pi) {
    if (!(pi.src == target) || !(pi.dst == phi.base())) throw std::invalid_argument("resolve_coboundary: projection mismatch");
    const FAGroup& H = target;
    int64_t N = phi.order_bound();
    for (auto m : H.factors()) N = lcm64(N, m);
    N *= 2;
    const size_t O = static_cast<size_t>(H.order());
    if (O > 256) throw std::length_error("resolve_coboundary: target group too large for the exponent solver");
    std::vector<size_t> gens;
    for (size_t i = 0; i < H.rank(); ++i)
        if (H.factors()[i] > 1) gens.push_back(i);
    const size_t S = gens.size();
    auto el = H.elements();
    std::vector<size_t> gidx(S);
    for (size_t s = 0; s < S; ++s) gidx[s] = H.index(H.gen(gens[s]));
    // f(x, u, s): exponent of phi(x, u, generator s)
    auto f = [&](size_t x, size_t u, size_t s) { return phi.eval(pi(el[x]), pi(el[u]), pi(el[gidx[s]])).exponent_over(N); };
    std::vector<std::vector<size_t>> step(O, std::vector<size_t>(S));
    for (size_t a = 0; a < O; ++a)
        for (size_t s = 0; s < S; ++s) step[a][s] = H.index(H.mul(el[a], H.gen(gens[s])));
    std::vector<size_t> mt(O * O);
    for (size_t x = 0; x < O; ++x)
        for (size_t u = 0; u < O; ++u) mt[x * O + u] = H.index(H.mul(el[x], el[u]));
    // unknown index for e(a, s), a != identity
    const size_t U = (O - 1) * S;
    auto unk = [&](size_t a, size_t s) -> long { return a == 0 ? -1 : static_cast<long>((a - 1) * S + s); };
    using Affine = std::vector<std::pair<size_t, int64_t>>;  // sparse; index U is the constant
    auto add = [&](Affine& acc, const Affine& v, int64_t k) {
        for (auto [i, c] : v) {
            auto it = std::lower_bound(acc.begin(), acc.end(), std::make_pair(i, INT64_MIN));
            if (it != acc.end() && it->first == i) {
                it->second = mod_floor(it->second + k * c, N);
                if (it->second == 0) acc.erase(it);
            } else if (mod_floor(k * c, N) != 0) {
                acc.insert(it, {i, mod_floor(k * c, N)});
            }
        }
    };
    auto gen_var = [&](size_t a, size_t s) {
        Affine v;
        long u = unk(a, s);
        if (u >= 0) v.push_back({static_cast<size_t>(u), 1});
        return v;
    };
    // tree parent of w: remove one unit of its last nonzero generator coordinate
    std::vector<std::pair<size_t, size_t>> parent(O, {0, 0});
    for (size_t w = 1; w < O; ++w) {
        const auto& ex = el[w].exps;
        size_t s = S;
        for (size_t t = S; t-- > 0;)
            if (ex[gens[t]] != 0) {
                s = t;
                break;
            }
        GroupElement u = el[w];
        u.exps[gens[s]] -= 1;
        parent[w] = {H.index(u), s};
    }
    // E[x][w]: e(x,w) as affine combination; w processed in index order, parents have smaller index
    std::vector<std::vector<Affine>> E(O, std::vector<Affine>(O));
    for (size_t w = 1; w < O; ++w) {
        auto [u, s] = parent[w];
        for (size_t x = 0; x < O; ++x) {
            Affine v = E[x][u];
            add(v, gen_var(mt[x * O + u], s), 1);
            add(v, gen_var(u, s), -1);
            add(v, Affine{{U, f(x, u, s)}}, 1);
            E[x][w] = std::move(v);
        }
    }
    IntMatrix A;
    std::vector<int64_t> b;
    for (size_t u = 0; u < O; ++u)
        for (size_t s = 0; s < S; ++s) {
            size_t w = step[u][s];
            if (w != 0 && parent[w] == std::make_pair(u, s)) continue;
            for (size_t x = 0; x < O; ++x) {
                size_t xu = mt[x * O + u];
                Affine rhs = E[x][u];
                add(rhs, gen_var(xu, s), 1);
                add(rhs, gen_var(u, s), -1);
                add(rhs, Affine{{U, f(x, u, s)}}, 1);
                Affine diff = E[x][w];
                add(diff, rhs, -1);
                if (diff.empty()) continue;
                std::vector<int64_t> row(U, 0);
                int64_t cst = 0;
                for (auto [i, c] : diff) {
                    if (i == U) cst = c;
                    else row[i] = c;
                }
                A.push_back(std::move(row));
                b.push_back(mod_floor(-cst, N));
            }
        }
    std::vector<int64_t> t(U, 0);
    if (!A.empty()) {
        auto sol = solve_linear_mod(A, b, N);
        if (!sol) return std::nullopt;
        t = *sol;
    }
    Cochain2 J(H, N);
    for (size_t x = 0; x < O; ++x)
        for (size_t w = 0; w < O; ++w) {
            int64_t e = 0;
            for (auto [i, c] : E[x][w]) e += (i == U ? c : c * t[i]) % N;
            J.set_exponent(el[x], el[w], e);
        }
    // pointwise recheck
    Cocycle3 pb = pullback(phi, pi);
    for (size_t x = 0; x < O; ++x)
        for (size_t y = 0; y < O; ++y)
            for (size_t z = 0; z < O; ++z)
                if (Cocycle3::coboundary_value(J, el[x], el[y], el[z]) != pb.eval(el[x], el[y], el[z]))
                    throw std::logic_error("resolve_coboundary: solution failed pointwise recheck");
    return J;
}

}  // namespace twyd
