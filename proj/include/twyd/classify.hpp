#pragma once

/**
 * @file classify.hpp
 * @brief GK-dimension verdicts for objects of the twisted category, with replayable certificates.
 */

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "cohomology.hpp"
#include "rootsys.hpp"
#include "ydmod.hpp"

namespace twyd {

class NondiagonalInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class EmptyFamily : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Finiteness { FiniteGK, InfiniteGK, Unresolved };

inline std::string finiteness_name(Finiteness f) {
    switch (f) {
        case Finiteness::FiniteGK: return "FiniteGK";
        case Finiteness::InfiniteGK: return "InfiniteGK";
        default: return "Unresolved";
    }
}

struct CertStep {
    std::string step;
    std::string detail;
};

struct Verdict {
    Finiteness finiteness = Finiteness::Unresolved;
    std::string reason;
    std::vector<CertStep> trail;
    bool nondiagonal = false;
    std::optional<Bichar> bichar;  ///< braiding constants the root-system test ran on
    std::optional<DynkinDiagram> diagram;
    std::optional<RootSystemVerdict> roots;

    std::string name() const { return finiteness_name(finiteness); }
};

struct Caps {
    size_t roots = 10000;
    size_t objects = 1000;
};

// ---- simple objects

struct SimpleType {
    enum class Tag { T1, T2, T3, Other };
    Tag tag = Tag::Other;
    Root zeta;
    size_t dim = 0;

    std::string name() const {
        switch (tag) {
            case Tag::T1: return "T1";
            case Tag::T2: return "T2";
            case Tag::T3: return "T3";
            default: return "Other";
        }
    }
};

inline SimpleType simple_type(const SimpleYD& S) {
    auto z = S.act(S.degree()).as_scalar();
    if (!z) throw std::invalid_argument("simple_type: the degree does not act by a scalar, so the object is not simple");
    SimpleType t;
    t.zeta = *z;
    t.dim = S.dim();
    if (z->is_one()) t.tag = SimpleType::Tag::T1;
    else if (*z == Root::minus_one()) t.tag = SimpleType::Tag::T2;
    else if (z->order() == 3 && S.dim() == 2) t.tag = SimpleType::Tag::T3;
    return t;
}

inline std::pair<SimpleType, Verdict> simple_verdict(const SimpleYD& S) {
    SimpleType t = simple_type(S);
    Verdict v;
    v.trail.push_back({"self-action", "deg(V) acts by " + t.zeta.str() + " on a space of dimension " + std::to_string(t.dim)});
    bool finite = t.tag != SimpleType::Tag::Other || t.dim == 1;
    v.finiteness = finite ? Finiteness::FiniteGK : Finiteness::InfiniteGK;
    v.reason = "simple object of type " + t.name();
    // the diagram of a simple object: vertices zeta, edges zeta^2 between all pairs
    auto D = is_diagonal(direct_sum({S}));
    if (D) {
        v.bichar = bichar_of(*D);
        v.diagram = dynkin_from(*v.bichar);
        v.trail.push_back({"diagram", v.diagram->str()});
    }
    return {t, v};
}

// ---- minimal nondiagonal objects

inline bool minimal_nondiagonal(const YDModule& V) {
    return V.theta() == 3 && !is_abelian_on(*V.cocycle(), V.component_degrees());
}

// ---- reduction to an ordinary diagonal braiding

struct Reduction {
    Subgroup support;
    HatGroup hat;
    Cochain2 J;      ///< dJ = pi^* Phi on the hat group
    YDModule module; ///< over the hat group, with trivial cocycle
};

inline bool cocycle_is_trivial(const Cocycle3& phi) {
    auto el = phi.base().elements();
    for (const auto& x : el)
        for (const auto& y : el)
            for (const auto& z : el)
                if (!phi.eval(x, y, z).is_one()) return false;
    return true;
}

/// Restrict to the support, pass to the hat group, and twist away the cocycle. nullopt when the hat group is too large for the solver.
inline std::optional<Reduction> pre_nichols_reduction(const YDModule& V) {
    if (!is_abelian_on(*V.cocycle(), V.component_degrees())) throw NondiagonalInput("pre_nichols_reduction: object is not of diagonal type");
    auto [S, W] = restrict_to_support(V);
    // the support group itself suffices when the restricted class is already trivial
    HatGroup H{S.presentation, GroupHom::identity(S.presentation), S.presentation};
    std::optional<Cochain2> J;
    try {
        J = resolve_coboundary(*W.cocycle(), H.hat, H.pi);
    } catch (const std::length_error&) {
    }
    if (!J) {
        H = hat_of(S.presentation);
        try {
            J = resolve_coboundary(*W.cocycle(), H.hat, H.pi);
        } catch (const std::length_error&) {
            return std::nullopt;
        }
    }
    if (!J) throw std::logic_error("pre_nichols_reduction: abelian cocycle did not become a coboundary on the hat group");
    YDModule U = change_base(W, H.pi, [&](const GroupElement& g) { return H.lift(g); });
    YDModule T = twist(U, J->inverse());
    return Reduction{S, H, *J, T};
}

// ---- the verdict pipeline

inline Verdict gkdim_verdict(const YDModule& V, Caps caps = {}) {
    Verdict v;
    Subgroup S = support_subgroup(V.group(), V.component_degrees());
    v.trail.push_back({"support group", S.presentation.str()});
    if (!is_abelian_on(*V.cocycle(), V.component_degrees())) {
        v.trail.push_back({"abelianness", "the cocycle is nonabelian on the support group"});
        v.trail.push_back({"nondiagonal witness", "no simultaneous eigenbasis for the degree actions"});
        v.nondiagonal = true;
        v.finiteness = Finiteness::InfiniteGK;
        v.reason = "nondiagonal object";
        return v;
    }
    v.trail.push_back({"abelianness", "the cocycle is abelian on the support group"});
    auto D = is_diagonal(V);
    if (!D) throw std::logic_error("gkdim_verdict: abelian support without a diagonal basis");
    DynkinDiagram direct = dynkin_from(bichar_of(*D));
    auto red = pre_nichols_reduction(V);
    if (red) {
        if (!cocycle_is_trivial(*red->module.cocycle())) throw std::logic_error("gkdim_verdict: twisted cocycle is not trivial");
        v.trail.push_back({"resolved J", "dJ = pi^* Phi on " + red->hat.hat.str() + ", root order " + std::to_string(red->J.root_order())});
        auto DT = is_diagonal(red->module);
        if (!DT) throw std::logic_error("gkdim_verdict: reduced module is not diagonal");
        v.bichar = bichar_of(*DT);
        if (!isomorphic(dynkin_from(*v.bichar), direct)) throw std::logic_error("gkdim_verdict: twisting changed the diagram");
        v.trail.push_back({"diagonal basis", std::to_string(DT->vectors.size()) + " vectors over the ordinary category"});
    } else {
        v.bichar = bichar_of(*D);
        v.trail.push_back({"diagonal basis", std::to_string(D->vectors.size()) + " vectors; hat group too large, constants taken before twisting"});
    }
    v.diagram = dynkin_from(*v.bichar);
    v.trail.push_back({"diagram", v.diagram->str()});
    v.roots = is_finite_type(*v.bichar, caps.roots, caps.objects);
    v.trail.push_back({"root system", v.roots->status_name() + (v.roots->reason.empty() ? "" : ": " + v.roots->reason)});
    switch (v.roots->status) {
        case RootSystemVerdict::Status::Finite:
            v.finiteness = Finiteness::FiniteGK;
            v.reason = "diagonal type with finite root system (" + std::to_string(v.roots->positive_roots.size()) + " positive roots)";
            break;
        case RootSystemVerdict::Status::Infinite:
            v.finiteness = Finiteness::InfiniteGK;
            v.reason = "diagonal type with infinite root system";
            break;
        default:
            v.finiteness = Finiteness::Unresolved;
            v.reason = "root system exploration exceeded the cap";
    }
    return v;
}

/// Re-derive a verdict from its certificate.
inline bool replay_certificate(const YDModule& V, const Verdict& v, Caps caps = {}) {
    if (v.nondiagonal) return !is_abelian_on(*V.cocycle(), V.component_degrees()) && !is_diagonal(V) && v.finiteness == Finiteness::InfiniteGK;
    if (!v.bichar || !v.diagram || !v.roots) return false;
    if (!isomorphic(dynkin_from(*v.bichar), *v.diagram)) return false;
    auto D = is_diagonal(V);
    if (!D || !isomorphic(dynkin_from(bichar_of(*D)), *v.diagram)) return false;
    auto r = is_finite_type(*v.bichar, caps.roots, caps.objects);
    if (r.status != v.roots->status || r.positive_roots != v.roots->positive_roots) return false;
    Finiteness f = r.finite() ? Finiteness::FiniteGK
                   : r.status == RootSystemVerdict::Status::Infinite ? Finiteness::InfiniteGK
                                                                       : Finiteness::Unresolved;
    return f == v.finiteness;
}

// ---- the families F_n

struct PairEvidence {
    size_t a = 0, b = 0;
    DynkinDiagram diagram;
    bool long_cycle = false;
    Finiteness verdict = Finiteness::Unresolved;
};

struct FamilyMember {
    std::array<Rank3Data, 3> params;
    std::array<SimpleType, 3> types;
    YDModule module;
    Verdict verdict;
    std::vector<PairEvidence> pairs;
    size_t orbit_size = 1;
    bool orbit_uniform = true;
};

namespace detail {

struct ComponentChoice {
    Root alpha, beta, gamma;
    SimpleYD simple;
};

/// Parameter triples of one component, grouped by the gauge beta ~ beta q^s; the first of each group represents it.
inline std::vector<std::vector<ComponentChoice>> component_orbits(const FAGroup& G, const CocyclePtr& phi, int i) {
    auto c = rank3_constraints(G, *phi, canonical_triple(G), i);
    std::map<std::tuple<Root, Root, Root>, std::vector<ComponentChoice>> orbits;
    for (const auto& a : c.alpha_rhs.roots(c.mi))
        for (const auto& b : c.beta_rhs.roots(c.mj))
            for (const auto& g : c.gamma_rhs.roots(c.mk / c.n)) {
                try {
                    auto S = make_simple_rank3(G, phi, i, a, b, g);
                    Root rep = b;
                    for (int64_t s = 1; s < c.n; ++s) rep = std::min(rep, b * c.q.pow(s));
                    orbits[{a, rep, g}].push_back({a, b, g, S});
                } catch (const ConstraintViolated&) {
                }
            }
    std::vector<std::vector<ComponentChoice>> out;
    for (auto& [k, v] : orbits) out.push_back(std::move(v));
    return out;
}

}  // namespace detail

/// All V1 + V2 + V3 with V_i the rank-3 simple of degree g_i, up to gauge, each with its verdict and subobject evidence.
inline std::vector<FamilyMember> enumerate_minimal_nondiagonal(const FAGroup& G, const CocyclePtr& phi, int64_t n, Caps caps = {}) {
    if (G.rank() != 3) throw std::invalid_argument("enumerate_minimal_nondiagonal: the group must be 3-generated");
    auto g = canonical_triple(G);
    if (is_abelian_on(*phi, {g[0], g[1], g[2]})) throw EmptyFamily("abelian cocycle: no minimal nondiagonal objects");
    for (int i = 1; i <= 3; ++i)
        if (rank3_constraints(G, *phi, g, i).n != n)
            throw EmptyFamily("the Phi-ratio has order " + std::to_string(rank3_constraints(G, *phi, g, i).n) + ", not " + std::to_string(n));
    std::array<std::vector<std::vector<detail::ComponentChoice>>, 3> orb;
    for (int i = 1; i <= 3; ++i) orb[i - 1] = detail::component_orbits(G, phi, i);
    std::map<std::tuple<size_t, size_t, size_t, size_t>, PairEvidence> pair_cache;
    auto pair = [&](size_t a, size_t b, size_t oa, size_t ob) {
        auto key = std::make_tuple(a, b, oa, ob);
        auto it = pair_cache.find(key);
        if (it != pair_cache.end()) return it->second;
        YDModule P = direct_sum({orb[a][oa][0].simple, orb[b][ob][0].simple});
        PairEvidence e;
        e.a = a;
        e.b = b;
        Verdict pv = gkdim_verdict(P, caps);
        e.diagram = *pv.diagram;
        e.long_cycle = has_long_cycle(e.diagram);
        e.verdict = pv.finiteness;
        pair_cache.emplace(key, e);
        return e;
    };
    std::vector<FamilyMember> out;
    for (size_t o1 = 0; o1 < orb[0].size(); ++o1)
        for (size_t o2 = 0; o2 < orb[1].size(); ++o2)
            for (size_t o3 = 0; o3 < orb[2].size(); ++o3) {
                std::array<size_t, 3> o{o1, o2, o3};
                FamilyMember m{{}, {}, direct_sum({orb[0][o1][0].simple, orb[1][o2][0].simple, orb[2][o3][0].simple}), {}, {}, 1, true};
                for (size_t c = 0; c < 3; ++c) {
                    m.params[c] = std::get<Rank3Data>(orb[c][o[c]][0].simple.kind());
                    m.types[c] = simple_type(orb[c][o[c]][0].simple);
                }
                m.verdict = gkdim_verdict(m.module, caps);
                for (size_t a = 0; a < 3; ++a)
                    for (size_t b = a + 1; b < 3; ++b) m.pairs.push_back(pair(a, b, o[a], o[b]));
                // every gauge-equivalent member gets the same verdict
                m.orbit_size = orb[0][o1].size() * orb[1][o2].size() * orb[2][o3].size();
                for (const auto& x : orb[0][o1])
                    for (const auto& y : orb[1][o2])
                        for (const auto& z : orb[2][o3])
                            if (gkdim_verdict(direct_sum({x.simple, y.simple, z.simple}), caps).finiteness != m.verdict.finiteness)
                                m.orbit_uniform = false;
                out.push_back(std::move(m));
            }
    return out;
}

}  // namespace twyd
