#pragma once

/**
 * @file ydmod.hpp
 * @brief Twisted Yetter-Drinfeld modules over (kG, Phi): simples with monomial actions, direct sums,
 * braidings, diagonality, twisting and change of based group.
 */

#include <algorithm>
#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cohomology.hpp"
#include "group.hpp"
#include "linalg.hpp"
#include "scalar.hpp"

namespace twyd {

class NotProjectiveCharacter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConstraintViolated : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class MixedCategory : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using CocyclePtr = std::shared_ptr<const Cocycle3>;

/// Monomial matrix: basis vector l is sent to scal[l] times basis vector perm[l].
struct MonoMat {
    std::vector<size_t> perm;
    std::vector<Root> scal;

    static MonoMat identity(size_t n) {
        MonoMat m;
        for (size_t i = 0; i < n; ++i) m.perm.push_back(i), m.scal.emplace_back();
        return m;
    }
    size_t dim() const { return perm.size(); }

    /// Composition (*this) after B.
    MonoMat operator*(const MonoMat& B) const {
        MonoMat r;
        r.perm.resize(B.dim());
        r.scal.resize(B.dim());
        for (size_t l = 0; l < B.dim(); ++l) {
            r.perm[l] = perm[B.perm[l]];
            r.scal[l] = B.scal[l] * scal[B.perm[l]];
        }
        return r;
    }
    MonoMat scaled(const Root& s) const {
        MonoMat r = *this;
        for (auto& x : r.scal) x *= s;
        return r;
    }
    bool operator==(const MonoMat&) const = default;

    std::optional<Root> as_scalar() const {
        for (size_t l = 0; l < dim(); ++l)
            if (perm[l] != l || scal[l] != scal[0]) return std::nullopt;
        return dim() ? scal[0] : Root();
    }

    std::vector<Cyclo> apply(const std::vector<Cyclo>& v) const {
        std::vector<Cyclo> out(dim(), Cyclo(0));
        for (size_t l = 0; l < dim(); ++l)
            if (!v[l].is_zero()) out[perm[l]] = out[perm[l]] + Cyclo::from(scal[l]) * v[l];
        return out;
    }

    CycloMatrix dense() const {
        CycloMatrix M(dim(), std::vector<Cyclo>(dim(), Cyclo(0)));
        for (size_t l = 0; l < dim(); ++l) M[perm[l]][l] = Cyclo::from(scal[l]);
        return M;
    }
};

struct CharacterData {
    std::vector<Root> chi;  ///< value on each canonical generator
};
struct Rank3Data {
    int role = 1;  ///< i in {1,2,3}
    Root alpha, beta, gamma;
    std::array<GroupElement, 3> gens;
};
struct DerivedData {
    std::string how;
};
using SimpleKind = std::variant<CharacterData, Rank3Data, DerivedData>;

/// Simple object: a degree g and a projective representation for the 2-cocycle Phi_g, stored for every group element.
class SimpleYD {
public:
    SimpleYD(FAGroup G, CocyclePtr phi, GroupElement degree, std::vector<MonoMat> table, SimpleKind kind)
        : G_(std::move(G)), phi_(std::move(phi)), deg_(std::move(degree)), table_(std::move(table)), kind_(std::move(kind)) {}

    const FAGroup& group() const { return G_; }
    const CocyclePtr& cocycle() const { return phi_; }
    const GroupElement& degree() const { return deg_; }
    size_t dim() const { return table_.at(0).dim(); }
    const SimpleKind& kind() const { return kind_; }

    const MonoMat& act(const GroupElement& e) const { return table_.at(G_.index(e)); }
    const MonoMat& act_index(size_t idx) const { return table_.at(idx); }
    const MonoMat& action(size_t generator) const { return act(G_.gen(generator)); }
    const std::vector<MonoMat>& table() const { return table_; }

    /// e.(f.v) = Phi_g(e,f) (ef).v for all pairs of group elements.
    bool check_projective_relation() const {
        auto el = G_.elements();
        for (const auto& e : el)
            for (const auto& f : el)
                if (act(e) * act(f) != act(G_.mul(e, f)).scaled(phi_g_value(*phi_, deg_, e, f))) return false;
        return true;
    }

private:
    FAGroup G_;
    CocyclePtr phi_;
    GroupElement deg_;
    std::vector<MonoMat> table_;
    SimpleKind kind_;
};

namespace detail {

/// Extends generator images to all of G through rho(es) = Phi_g(e,s)^{-1} rho(e) rho(s); nullopt on inconsistency.
inline std::optional<std::vector<MonoMat>> build_table(const FAGroup& G, const Cocycle3& phi, const GroupElement& g,
                                                      const std::vector<GroupElement>& gens, const std::vector<MonoMat>& mats) {
    size_t d = mats.empty() ? 1 : mats[0].dim();
    const size_t O = static_cast<size_t>(G.order());
    std::vector<std::optional<MonoMat>> tab(O);
    tab[G.index(G.identity())] = MonoMat::identity(d);
    std::queue<GroupElement> work;
    work.push(G.identity());
    while (!work.empty()) {
        GroupElement e = work.front();
        work.pop();
        const MonoMat re = *tab[G.index(e)];
        for (size_t s = 0; s < gens.size(); ++s) {
            GroupElement es = G.mul(e, gens[s]);
            MonoMat cand = (re * mats[s]).scaled(phi_g_value(phi, g, e, gens[s]).inv());
            auto& slot = tab[G.index(es)];
            if (!slot) {
                slot = cand;
                work.push(es);
            } else if (*slot != cand) {
                return std::nullopt;
            }
        }
    }
    std::vector<MonoMat> out;
    for (auto& t : tab) {
        if (!t) throw std::invalid_argument("designated generators do not generate the group");
        out.push_back(std::move(*t));
    }
    return out;
}

inline Root require_root(const Cyclo& c, const char* what) {
    auto r = c.as_root();
    if (!r) throw std::invalid_argument(std::string(what) + " must be a root of unity");
    return *r;
}

}  // namespace detail

/// One-dimensional simple of degree g with generator values chi.
inline SimpleYD make_character_simple(const FAGroup& G, CocyclePtr phi, const GroupElement& g, const std::vector<Root>& chi) {
    G.check(g);
    if (chi.size() != G.rank()) throw std::invalid_argument("character: one value per generator required");
    std::vector<GroupElement> gens;
    std::vector<MonoMat> mats;
    for (size_t i = 0; i < G.rank(); ++i) {
        gens.push_back(G.gen(i));
        mats.push_back(MonoMat{{0}, {chi[i]}});
    }
    auto tab = detail::build_table(G, *phi, g, gens, mats);
    if (!tab) throw NotProjectiveCharacter("values do not satisfy chi(e)chi(f) = Phi_g(e,f)chi(ef)");
    return SimpleYD(G, std::move(phi), g, std::move(*tab), CharacterData{chi});
}

inline SimpleYD make_character_simple(const FAGroup& G, CocyclePtr phi, const GroupElement& g, const std::vector<Cyclo>& chi) {
    std::vector<Root> r;
    for (const auto& c : chi) {
        auto x = c.as_root();
        if (!x) throw NotProjectiveCharacter("character value is not a root of unity");
        r.push_back(*x);
    }
    return make_character_simple(G, std::move(phi), g, r);
}

/// Roles (i, j, k) of the designated generators for component index i.
inline std::array<int, 3> rank3_roles(int i) {
    switch (i) {
        case 1: return {0, 1, 2};
        case 2: return {1, 0, 2};
        case 3: return {2, 1, 0};
    }
    throw std::invalid_argument("rank-3 component index must be 1, 2 or 3");
}

/// The Phi-ratio q = Phi_{g_i}(g_j,g_k) / Phi_{g_i}(g_k,g_j) for component index i.
inline Root rank3_ratio(const Cocycle3& phi, const std::array<GroupElement, 3>& g, int i) {
    auto r = rank3_roles(i);
    return phi_ratio(phi, g[r[0]], g[r[1]], g[r[2]]);
}

/// Right-hand sides of the power constraints on alpha, beta, gamma.
struct Rank3Constraints {
    Root q;
    int64_t n, mi, mj, mk;
    Root alpha_rhs, beta_rhs, gamma_rhs;  ///< targets of alpha^mi, beta^mj, gamma^(mk/n)
};

inline Rank3Constraints rank3_constraints(const FAGroup& G, const Cocycle3& phi, const std::array<GroupElement, 3>& g, int i) {
    auto r = rank3_roles(i);
    const GroupElement &gi = g[r[0]], &gj = g[r[1]], &gk = g[r[2]];
    Rank3Constraints c;
    c.q = phi_ratio(phi, gi, gj, gk);
    c.n = c.q.order();
    c.mi = G.order_of(gi), c.mj = G.order_of(gj), c.mk = G.order_of(gk);
    auto prod = [&](const GroupElement& x, int64_t m) {
        Root acc;
        for (int64_t l = 1; l < m; ++l) acc *= phi_g_value(phi, gi, x, G.pow(x, l));
        return acc;
    };
    c.alpha_rhs = prod(gi, c.mi);
    c.beta_rhs = prod(gj, c.mj);
    c.gamma_rhs = prod(gk, c.mk);
    return c;
}

inline std::array<GroupElement, 3> canonical_triple(const FAGroup& G) {
    if (G.rank() != 3) throw std::invalid_argument("rank-3 simple: designate three generators for groups of rank != 3");
    return {G.gen(0), G.gen(1), G.gen(2)};
}

/// n-dimensional simple of degree g_i: g_i acts by alpha, g_j by diag(beta q^(l-1)), g_k by the shift with corner gamma.
inline SimpleYD make_simple_rank3(const FAGroup& G, CocyclePtr phi, int i, const Root& alpha, const Root& beta, const Root& gamma,
                                  std::optional<std::array<GroupElement, 3>> designated = std::nullopt) {
    auto g = designated ? *designated : canonical_triple(G);
    for (const auto& x : g) G.check(x);
    if (support_subgroup(G, {g[0], g[1], g[2]}).presentation.order() != G.order())
        throw std::invalid_argument("rank-3 simple: designated generators do not generate the group");
    auto r = rank3_roles(i);
    Rank3Constraints c = rank3_constraints(G, *phi, g, i);
    if (c.mk % c.n != 0) throw ConstraintViolated("shift order constraint: order of the Phi-ratio must divide the order of g_k");
    if (alpha.pow(c.mi) != c.alpha_rhs) throw ConstraintViolated("alpha^m constraint violated");
    if (beta.pow(c.mj) != c.beta_rhs) throw ConstraintViolated("beta^m constraint violated");
    if (gamma.pow(c.mk / c.n) != c.gamma_rhs) throw ConstraintViolated("gamma^(m/n) constraint violated");
    size_t n = static_cast<size_t>(c.n);
    MonoMat Mi = MonoMat::identity(n).scaled(alpha), Mj = MonoMat::identity(n), Mk;
    for (size_t l = 0; l < n; ++l) {
        Mj.scal[l] = beta * c.q.pow(static_cast<int64_t>(l));
        Mk.perm.push_back((l + 1) % n);
        Mk.scal.push_back(l + 1 == n ? gamma : Root());
    }
    auto tab = detail::build_table(G, *phi, g[r[0]], {g[r[0]], g[r[1]], g[r[2]]}, {Mi, Mj, Mk});
    if (!tab) throw ConstraintViolated("projective relation violated by the parameters");
    return SimpleYD(G, std::move(phi), g[r[0]], std::move(*tab), Rank3Data{i, alpha, beta, gamma, g});
}

/// Irreducibility: the span of the action matrices is all of End(V).
inline bool is_simple(const SimpleYD& V) {
    size_t d = V.dim();
    CycloMatrix rows;
    for (const auto& m : V.table()) {
        std::vector<Cyclo> flat(d * d, Cyclo(0));
        for (size_t l = 0; l < d; ++l) flat[m.perm[l] * d + l] = Cyclo::from(m.scal[l]);
        rows.push_back(std::move(flat));
    }
    return rank(rows) == d * d;
}

struct BasisLabel {
    size_t comp;
    size_t inner;
    GroupElement degree;
};

inline bool same_cocycle(const CocyclePtr& a, const CocyclePtr& b) {
    if (a == b) return true;
    if (!(a->base() == b->base())) return false;
    if (a->is_normal_form() && b->is_normal_form()) return a->cseq() == b->cseq();
    auto el = a->base().elements();
    for (const auto& x : el)
        for (const auto& y : el)
            for (const auto& z : el)
                if (a->eval(x, y, z) != b->eval(x, y, z)) return false;
    return true;
}

/// V = V_1 + ... + V_theta with basis ordered by component.
class YDModule {
public:
    explicit YDModule(std::vector<SimpleYD> parts) : comps_(std::move(parts)) {
        if (comps_.empty()) throw std::invalid_argument("direct_sum: at least one component required");
        G_ = comps_[0].group();
        phi_ = comps_[0].cocycle();
        for (const auto& c : comps_)
            if (!(c.group() == G_) || !same_cocycle(c.cocycle(), phi_))
                throw MixedCategory("direct_sum: components live in different categories");
        for (size_t c = 0; c < comps_.size(); ++c) {
            offset_.push_back(labels_.size());
            for (size_t l = 0; l < comps_[c].dim(); ++l) {
                labels_.push_back({c, l, comps_[c].degree()});
                deg_idx_.push_back(G_.index(comps_[c].degree()));
            }
        }
    }

    const FAGroup& group() const { return G_; }
    const CocyclePtr& cocycle() const { return phi_; }
    size_t dim() const { return labels_.size(); }
    size_t theta() const { return comps_.size(); }
    const std::vector<SimpleYD>& components() const { return comps_; }
    const SimpleYD& component(size_t c) const { return comps_.at(c); }
    const BasisLabel& label(size_t b) const { return labels_.at(b); }
    size_t offset(size_t c) const { return offset_.at(c); }
    size_t degree_index(size_t b) const { return deg_idx_[b]; }

    /// e.X_b = r X_{b'} for the group element with index e.
    std::pair<size_t, Root> act(size_t e, size_t b) const {
        const auto& L = labels_[b];
        const MonoMat& m = comps_[L.comp].act_index(e);
        return {offset_[L.comp] + m.perm[L.inner], m.scal[L.inner]};
    }

    std::vector<GroupElement> component_degrees() const {
        std::vector<GroupElement> out;
        for (const auto& c : comps_) out.push_back(c.degree());
        return out;
    }

    std::string basis_name(size_t b) const {
        return "v" + std::to_string(labels_[b].comp + 1) + "_" + std::to_string(labels_[b].inner + 1);
    }

private:
    FAGroup G_;
    CocyclePtr phi_;
    std::vector<SimpleYD> comps_;
    std::vector<BasisLabel> labels_;
    std::vector<size_t> offset_;
    std::vector<size_t> deg_idx_;
};

inline YDModule direct_sum(std::vector<SimpleYD> parts) { return YDModule(std::move(parts)); }

/// c(X_a (x) X_b) = (deg X_a).X_b (x) X_a, stored per basis pair a*dim+b.
struct BraidingMatrix {
    size_t dim = 0;
    std::vector<std::pair<size_t, Root>> image;

    CycloMatrix dense() const {
        size_t N = dim * dim;
        CycloMatrix M(N, std::vector<Cyclo>(N, Cyclo(0)));
        for (size_t col = 0; col < N; ++col) M[image[col].first][col] = Cyclo::from(image[col].second);
        return M;
    }
};

inline BraidingMatrix braiding(const YDModule& V) {
    BraidingMatrix B;
    B.dim = V.dim();
    for (size_t a = 0; a < V.dim(); ++a)
        for (size_t b = 0; b < V.dim(); ++b) {
            auto [b2, s] = V.act(V.degree_index(a), b);
            B.image.push_back({b2 * V.dim() + a, s});
        }
    return B;
}

/// Simultaneous eigenbasis of the degree actions, with c(v_u (x) v_w) = q[u][w] v_w (x) v_u.
struct DiagonalBasis {
    std::vector<GroupElement> support;
    std::vector<size_t> comp_of;
    std::vector<std::vector<Cyclo>> vectors;  ///< coordinates in the basis of V
    std::vector<std::vector<Root>> q;
};

namespace detail {

inline std::vector<Root> monomial_eigenvalues(const MonoMat& M) {
    std::vector<bool> seen(M.dim(), false);
    std::vector<Root> out;
    for (size_t s = 0; s < M.dim(); ++s) {
        if (seen[s]) continue;
        Root c;
        int64_t len = 0;
        for (size_t l = s; !seen[l]; l = M.perm[l]) {
            seen[l] = true;
            c *= M.scal[l];
            ++len;
        }
        for (const auto& r : c.roots(len))
            if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    }
    return out;
}

inline std::vector<std::vector<Cyclo>> split_eigenspaces(const std::vector<std::vector<Cyclo>>& W, const MonoMat& M) {
    std::vector<std::vector<std::vector<Cyclo>>> parts;
    size_t total = 0;
    std::vector<std::vector<Cyclo>> out;
    for (const auto& lam : monomial_eigenvalues(M)) {
        Cyclo L = Cyclo::from(lam);
        size_t d = M.dim();
        CycloMatrix K(d, std::vector<Cyclo>(W.size(), Cyclo(0)));
        for (size_t i = 0; i < W.size(); ++i) {
            auto mw = M.apply(W[i]);
            for (size_t r = 0; r < d; ++r) K[r][i] = mw[r] - L * W[i][r];
        }
        for (const auto& c : nullspace(K, W.size())) {
            std::vector<Cyclo> v(d, Cyclo(0));
            for (size_t i = 0; i < W.size(); ++i)
                if (!c[i].is_zero())
                    for (size_t r = 0; r < d; ++r) v[r] = v[r] + c[i] * W[i][r];
            out.push_back(std::move(v));
            ++total;
        }
    }
    if (total != W.size()) throw std::logic_error("diagonalization: operator not diagonalizable on an invariant subspace");
    return out;
}

inline Root eigenvalue_of(const MonoMat& M, const std::vector<Cyclo>& v) {
    auto mv = M.apply(v);
    for (size_t l = 0; l < v.size(); ++l)
        if (!v[l].is_zero()) {
            Cyclo lam = mv[l] / v[l];
            for (size_t r = 0; r < v.size(); ++r)
                if (mv[r] != lam * v[r]) throw std::logic_error("diagonalization: not an eigenvector");
            return require_root(lam, "eigenvalue");
        }
    throw std::logic_error("diagonalization: zero vector");
}

}  // namespace detail

/// Diagonal basis when Phi restricted to the support group is abelian; nullopt means nondiagonal.
inline std::optional<DiagonalBasis> is_diagonal(const YDModule& V) {
    DiagonalBasis D;
    for (const auto& g : V.component_degrees())
        if (std::find(D.support.begin(), D.support.end(), g) == D.support.end()) D.support.push_back(g);
    if (!is_abelian_on(*V.cocycle(), D.support)) return std::nullopt;
    std::vector<std::vector<Cyclo>> local;
    for (size_t c = 0; c < V.theta(); ++c) {
        const SimpleYD& S = V.component(c);
        std::vector<std::vector<Cyclo>> W;
        for (size_t l = 0; l < S.dim(); ++l) {
            std::vector<Cyclo> e(S.dim(), Cyclo(0));
            e[l] = Cyclo(1);
            W.push_back(std::move(e));
        }
        for (const auto& g : D.support) W = detail::split_eigenspaces(W, S.act(g));
        for (auto& w : W) {
            std::vector<Cyclo> full(V.dim(), Cyclo(0));
            for (size_t l = 0; l < S.dim(); ++l) full[V.offset(c) + l] = w[l];
            D.vectors.push_back(std::move(full));
            local.push_back(std::move(w));
            D.comp_of.push_back(c);
        }
    }
    size_t n = D.vectors.size();
    D.q.assign(n, std::vector<Root>(n));
    for (size_t u = 0; u < n; ++u)
        for (size_t w = 0; w < n; ++w) {
            const SimpleYD& S = V.component(D.comp_of[w]);
            D.q[u][w] = detail::eigenvalue_of(S.act(V.component(D.comp_of[u]).degree()), local[w]);
        }
    return D;
}

/// Module in the category with cocycle Phi * dJ; g acts by J(g,x)/J(x,g) g.
inline YDModule twist(const YDModule& V, const Cochain2& J) {
    const FAGroup& G = V.group();
    if (!(J.base() == G)) throw std::invalid_argument("twist: cochain lives on a different group");
    auto phi = std::make_shared<const Cocycle3>(Cocycle3::product(*V.cocycle(), J, 1));
    std::vector<SimpleYD> parts;
    auto el = G.elements();
    for (const auto& S : V.components()) {
        std::vector<MonoMat> tab;
        const GroupElement& x = S.degree();
        for (size_t e = 0; e < el.size(); ++e) tab.push_back(S.act_index(e).scaled(J.value(el[e], x) / J.value(x, el[e])));
        parts.emplace_back(G, phi, x, std::move(tab), DerivedData{"twist"});
    }
    return YDModule(std::move(parts));
}

/// Pull V back along f: H -> G, with degrees sent through lift.
inline YDModule pull_along(const YDModule& V, const GroupHom& f, const std::function<GroupElement(const GroupElement&)>& lift,
                           const std::string& how) {
    if (!(f.dst == V.group())) throw std::invalid_argument("pull_along: homomorphism target differs from the module group");
    const FAGroup& H = f.src;
    auto phi = std::make_shared<const Cocycle3>(pullback(*V.cocycle(), f));
    auto el = H.elements();
    std::vector<size_t> img;
    for (const auto& h : el) img.push_back(V.group().index(f(h)));
    std::vector<SimpleYD> parts;
    for (const auto& S : V.components()) {
        GroupElement d = lift(S.degree());
        if (f(d) != S.degree()) throw std::invalid_argument("pull_along: lifted degree does not map back");
        std::vector<MonoMat> tab;
        for (size_t h = 0; h < el.size(); ++h) tab.push_back(S.act_index(img[h]));
        parts.emplace_back(H, phi, d, std::move(tab), DerivedData{how});
    }
    return YDModule(std::move(parts));
}

/// Change of based group along an epimorphism pi: H -> G with section iota.
inline YDModule change_base(const YDModule& V, const GroupHom& pi, const std::function<GroupElement(const GroupElement&)>& iota) {
    return pull_along(V, pi, iota, "change_base");
}

/// V viewed over its support group G_V.
inline std::pair<Subgroup, YDModule> restrict_to_support(const YDModule& V) {
    Subgroup S = support_subgroup(V.group(), V.component_degrees());
    YDModule R = pull_along(
        V, S.embed,
        [&](const GroupElement& g) {
            auto p = S.preimage(g);
            if (!p) throw std::logic_error("restrict_to_support: degree outside the support group");
            return *p;
        },
        "restrict");
    return {S, R};
}

}  // namespace twyd
