#pragma once

/**
 * @file group.hpp
 * @brief Finite abelian groups Z_{m_1} x ... x Z_{m_n}, homomorphisms, support subgroups and hat groups.
 */

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "intlinalg.hpp"

namespace twyd {

class InvalidElement : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GroupElement {
    std::vector<int64_t> exps;

    bool operator==(const GroupElement&) const = default;
    auto operator<=>(const GroupElement&) const = default;

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < exps.size(); ++i) s += (i ? "," : "") + std::to_string(exps[i]);
        return s + ")";
    }
};

class FAGroup {
public:
    FAGroup() = default;
    explicit FAGroup(std::vector<int64_t> factors) : m_(std::move(factors)) {
        for (auto m : m_)
            if (m < 1) throw std::invalid_argument("FAGroup: invariant factors must be >= 1");
        order_ = 1;
        for (auto m : m_) order_ *= m;
    }

    const std::vector<int64_t>& factors() const { return m_; }
    size_t rank() const { return m_.size(); }
    int64_t order() const { return order_; }

    GroupElement identity() const { return GroupElement{std::vector<int64_t>(m_.size(), 0)}; }
    GroupElement gen(size_t i) const {
        GroupElement g = identity();
        g.exps.at(i) = m_.size() ? 1 % m_[i] : 0;
        return g;
    }
    GroupElement element(std::vector<int64_t> exps) const {
        if (exps.size() != m_.size()) throw InvalidElement("element length does not match the group");
        for (size_t i = 0; i < exps.size(); ++i) exps[i] = mod_floor(exps[i], m_[i]);
        return GroupElement{std::move(exps)};
    }
    void check(const GroupElement& a) const {
        if (a.exps.size() != m_.size()) throw InvalidElement("element length does not match the group");
        for (size_t i = 0; i < m_.size(); ++i)
            if (a.exps[i] < 0 || a.exps[i] >= m_[i]) throw InvalidElement("element exponent not reduced");
    }

    GroupElement mul(const GroupElement& a, const GroupElement& b) const {
        if (a.exps.size() != m_.size() || b.exps.size() != m_.size())
            throw InvalidElement("element length does not match the group");
        GroupElement r = a;
        for (size_t i = 0; i < m_.size(); ++i) r.exps[i] = mod_floor(a.exps[i] + b.exps[i], m_[i]);
        return r;
    }
    GroupElement inv(const GroupElement& a) const {
        GroupElement r = a;
        for (size_t i = 0; i < m_.size(); ++i) r.exps[i] = mod_floor(-a.exps[i], m_[i]);
        return r;
    }
    GroupElement pow(const GroupElement& a, int64_t k) const {
        GroupElement r = a;
        for (size_t i = 0; i < m_.size(); ++i)
            r.exps[i] = static_cast<int64_t>(mod_floor(static_cast<int64_t>(static_cast<__int128>(a.exps[i]) * k % m_[i]), m_[i]));
        return r;
    }
    int64_t order_of(const GroupElement& a) const {
        check(a);
        int64_t o = 1;
        for (size_t i = 0; i < m_.size(); ++i) o = lcm64(o, m_[i] / std::gcd(m_[i], a.exps[i]));
        return o;
    }

    /// Mixed-radix index in [0, order()).
    size_t index(const GroupElement& a) const {
        size_t idx = 0;
        for (size_t i = 0; i < m_.size(); ++i) idx = idx * static_cast<size_t>(m_[i]) + static_cast<size_t>(a.exps[i]);
        return idx;
    }
    GroupElement at(size_t idx) const {
        GroupElement g = identity();
        for (size_t i = m_.size(); i-- > 0;) {
            g.exps[i] = static_cast<int64_t>(idx % static_cast<size_t>(m_[i]));
            idx /= static_cast<size_t>(m_[i]);
        }
        return g;
    }
    std::vector<GroupElement> elements() const {
        std::vector<GroupElement> out;
        out.reserve(static_cast<size_t>(order_));
        for (size_t i = 0; i < static_cast<size_t>(order_); ++i) out.push_back(at(i));
        return out;
    }

    bool operator==(const FAGroup& o) const { return m_ == o.m_; }

    std::string str() const {
        std::string s;
        for (size_t i = 0; i < m_.size(); ++i) s += (i ? " x " : "") + ("Z" + std::to_string(m_[i]));
        return s.empty() ? "1" : s;
    }

private:
    std::vector<int64_t> m_;
    int64_t order_ = 1;
};

/// Homomorphism given by the images of the source generators.
struct GroupHom {
    FAGroup src;
    FAGroup dst;
    std::vector<GroupElement> images;

    GroupHom() = default;
    GroupHom(FAGroup s, FAGroup d, std::vector<GroupElement> imgs) : src(std::move(s)), dst(std::move(d)), images(std::move(imgs)) {
        if (images.size() != src.rank()) throw std::invalid_argument("GroupHom: one image per source generator required");
        for (size_t i = 0; i < images.size(); ++i) {
            dst.check(images[i]);
            if (dst.pow(images[i], src.factors()[i]) != dst.identity())
                throw std::invalid_argument("GroupHom: generator relation not respected");
        }
    }

    static GroupHom identity(const FAGroup& G) {
        std::vector<GroupElement> imgs;
        for (size_t i = 0; i < G.rank(); ++i) imgs.push_back(G.gen(i));
        return GroupHom(G, G, imgs);
    }

    GroupElement operator()(const GroupElement& x) const {
        GroupElement r = dst.identity();
        for (size_t i = 0; i < images.size(); ++i) r = dst.mul(r, dst.pow(images[i], x.exps.at(i)));
        return r;
    }

    bool is_injective() const {
        for (const auto& x : src.elements())
            if (x != src.identity() && (*this)(x) == dst.identity()) return false;
        return true;
    }
};

struct Subgroup {
    FAGroup parent;
    std::vector<GroupElement> generators;
    FAGroup presentation;
    GroupHom embed;

    /// Presentation element mapping to g, if g lies in the subgroup.
    std::optional<GroupElement> preimage(const GroupElement& g) const {
        for (const auto& h : presentation.elements())
            if (embed(h) == g) return h;
        return std::nullopt;
    }
};

/// Subgroup generated by gens, with invariant-factor presentation from Smith normal forms.
inline Subgroup support_subgroup(const FAGroup& G, const std::vector<GroupElement>& gens) {
    if (gens.empty()) throw std::invalid_argument("support_subgroup: generators required");
    size_t n = G.rank(), k = gens.size();
    for (const auto& g : gens) G.check(g);
    // relation lattice: kernel of Z^k -> G, via [H | diag(m)] (n x (k+n))
    IntMatrix A(n, std::vector<int64_t>(k + n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < k; ++j) A[i][j] = gens[j].exps[i];
        A[i][k + i] = G.factors()[i];
    }
    SmithForm S = smith_normal_form(A);
    IntMatrix R(k);  // k x (#kernel vectors)
    for (size_t col = S.rank; col < k + n; ++col)
        for (size_t j = 0; j < k; ++j) R[j].push_back(S.V[j][col]);
    SmithForm T = smith_normal_form(R);
    // Z^k/L with P R Q = D: generator i of the quotient is the image of P^{-1} e_i
    // P^{-1} is found by solving over Z via the adjugate-free route: invert the unimodular U.
    const IntMatrix& P = T.U;
    // invert P by Gauss-Jordan over Z (P is unimodular)
    IntMatrix Pinv = detail::identity_matrix(k);
    {
        IntMatrix M = P;
        for (size_t col = 0; col < k; ++col) {
            // Euclid on the column to bring a unit to the diagonal
            for (;;) {
                size_t best = k;
                for (size_t i = col; i < k; ++i)
                    if (M[i][col] != 0 && (best == k || std::llabs(M[i][col]) < std::llabs(M[best][col]))) best = i;
                std::swap(M[col], M[best]);
                std::swap(Pinv[col], Pinv[best]);
                bool done = true;
                for (size_t i = col + 1; i < k; ++i) {
                    if (M[i][col] == 0) continue;
                    int64_t q = M[i][col] / M[col][col];
                    detail::add_row(M, i, col, -q);
                    detail::add_row(Pinv, i, col, -q);
                    if (M[i][col] != 0) done = false;
                }
                if (done) break;
            }
            if (M[col][col] < 0) {
                detail::neg_row(M, col);
                detail::neg_row(Pinv, col);
            }
        }
        for (size_t col = k; col-- > 0;)
            for (size_t i = 0; i < col; ++i) {
                int64_t q = M[i][col];
                detail::add_row(M, i, col, -q);
                detail::add_row(Pinv, i, col, -q);
            }
    }
    std::vector<int64_t> factors;
    std::vector<GroupElement> images;
    for (size_t i = 0; i < k; ++i) {
        int64_t d = i < T.rank ? T.D[i][i] : 0;
        if (d == 0) throw std::logic_error("support_subgroup: relation lattice not of full rank");
        if (d == 1) continue;
        GroupElement img = G.identity();
        for (size_t j = 0; j < k; ++j) img = G.mul(img, G.pow(gens[j], Pinv[j][i]));
        factors.push_back(d);
        images.push_back(img);
    }
    FAGroup pres(factors);
    return Subgroup{G, gens, pres, GroupHom(pres, G, images)};
}

/// Hat group with squared invariant factors, its projection and the least-residue section.
struct HatGroup {
    FAGroup hat;
    GroupHom pi;
    FAGroup base;

    GroupElement lift(const GroupElement& g) const {
        base.check(g);
        return GroupElement{g.exps};
    }
};

inline HatGroup hat_of(const FAGroup& G) {
    std::vector<int64_t> f;
    for (auto m : G.factors()) f.push_back(m * m);
    FAGroup H(f);
    std::vector<GroupElement> imgs;
    for (size_t i = 0; i < G.rank(); ++i) imgs.push_back(G.gen(i));
    return HatGroup{H, GroupHom(H, G, imgs), G};
}

}  // namespace twyd
